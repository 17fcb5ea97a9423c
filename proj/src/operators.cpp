#include "entsat/operators.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace entsat {

OperatorMatrix OperatorMatrix::from_diagonal(int n_qubits, Eigen::VectorXd diag) {
    if (n_qubits < 1)
        throw ValidationError("operator needs at least one qubit");
    OperatorMatrix op;
    op.n_qubits_ = n_qubits;
    op.dim_ = Eigen::Index{1} << n_qubits;
    if (diag.size() != op.dim_)
        throw ValidationError("diagonal length does not match 2^n");
    op.diagonal_ = true;
    op.diag_ = std::move(diag);
    return op;
}

OperatorMatrix OperatorMatrix::from_dense(int n_qubits, Eigen::MatrixXd mat) {
    if (n_qubits < 1)
        throw ValidationError("operator needs at least one qubit");
    OperatorMatrix op;
    op.n_qubits_ = n_qubits;
    op.dim_ = Eigen::Index{1} << n_qubits;
    if (mat.rows() != op.dim_ || mat.cols() != op.dim_)
        throw ValidationError("matrix shape does not match 2^n x 2^n");
    for (Eigen::Index c = 0; c < op.dim_; ++c)
        for (Eigen::Index r = c + 1; r < op.dim_; ++r)
            if (mat(r, c) != mat(c, r))
                throw ValidationError("operator matrix is not exactly symmetric");
    op.diagonal_ = false;
    op.mat_ = std::move(mat);
    return op;
}

OperatorMatrix OperatorMatrix::identity(int n_qubits) {
    return from_diagonal(n_qubits, Eigen::VectorXd::Ones(Eigen::Index{1} << n_qubits));
}

OperatorMatrix OperatorMatrix::zero(int n_qubits) {
    return from_diagonal(n_qubits, Eigen::VectorXd::Zero(Eigen::Index{1} << n_qubits));
}

const Eigen::VectorXd& OperatorMatrix::diagonal() const {
    if (!diagonal_)
        throw ValidationError("operator is not stored diagonally");
    return diag_;
}

const Eigen::MatrixXd& OperatorMatrix::dense() const {
    if (diagonal_)
        throw ValidationError("operator is stored diagonally; use to_dense()");
    return mat_;
}

Eigen::MatrixXd OperatorMatrix::to_dense() const {
    if (!diagonal_) return mat_;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
    m.diagonal() = diag_;
    return m;
}

double OperatorMatrix::entry(Eigen::Index row, Eigen::Index col) const {
    if (row < 0 || row >= dim_ || col < 0 || col >= dim_)
        throw ValidationError("operator entry index out of range");
    if (diagonal_) return row == col ? diag_[row] : 0.0;
    return mat_(row, col);
}

double OperatorMatrix::trace() const {
    return diagonal_ ? diag_.sum() : mat_.trace();
}

Eigen::VectorXd OperatorMatrix::apply(const Eigen::VectorXd& v) const {
    if (v.size() != dim_)
        throw ValidationError("vector length does not match operator dimension");
    if (diagonal_) return diag_.cwiseProduct(v);
    return mat_ * v;
}

Eigen::VectorXd apply(const OperatorMatrix& op, const Eigen::VectorXd& v) {
    return op.apply(v);
}

OperatorMatrix linear_combination(double a, const OperatorMatrix& x,
                                  double b, const OperatorMatrix& y) {
    if (x.dim() != y.dim() || x.n_qubits() != y.n_qubits())
        throw ValidationError("operator dimensions do not match");
    if (x.is_diagonal() && y.is_diagonal())
        return OperatorMatrix::from_diagonal(x.n_qubits(),
                                             a * x.diagonal() + b * y.diagonal());
    Eigen::MatrixXd m;
    if (x.is_diagonal()) {
        m = b * y.dense();
        m.diagonal() += a * x.diagonal();
    } else if (y.is_diagonal()) {
        m = a * x.dense();
        m.diagonal() += b * y.diagonal();
    } else {
        m = a * x.dense() + b * y.dense();
    }
    return OperatorMatrix::from_dense(x.n_qubits(), std::move(m));
}

namespace {

std::string clause_name(const Clause& c) {
    return "(" + std::to_string(c.i()) + "," + std::to_string(c.j()) + "," +
           std::to_string(c.m()) + ")";
}

// Diagonal of (1 + z_i z_j + z_j z_m + z_m z_i)/4: exactly 1 on basis states
// where the three bits agree, 0 elsewhere.
Eigen::VectorXd projector_diag(int n, const Clause& c) {
    if (c.max_index() > n)
        throw ValidationError("clause index exceeds qubit count");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::VectorXd d(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const int zi = (b >> (c.i() - 1)) & 1 ? -1 : 1;
        const int zj = (b >> (c.j() - 1)) & 1 ? -1 : 1;
        const int zm = (b >> (c.m() - 1)) & 1 ? -1 : 1;
        d[b] = (1.0 + zi * zj + zj * zm + zm * zi) / 4.0;
    }
    return d;
}

std::vector<Eigen::Index> mask_indices(const Eigen::VectorXd& diag) {
    std::vector<Eigen::Index> idx;
    idx.reserve(static_cast<std::size_t>(diag.size()) / 4);
    for (Eigen::Index b = 0; b < diag.size(); ++b)
        if (diag[b] == 1.0) idx.push_back(b);
    return idx;
}

// Accumulate C_row * A * C_col into h, where both C's are 0/1 diagonal masks.
void add_masked(Eigen::MatrixXd& h, const std::vector<Eigen::Index>& rows,
                const std::vector<Eigen::Index>& cols, const OperatorMatrix& a) {
    if (a.is_diagonal()) {
        const Eigen::VectorXd& d = a.diagonal();
        // Row and column masks intersect on the diagonal only.
        std::size_t ri = 0;
        for (Eigen::Index c : cols) {
            while (ri < rows.size() && rows[ri] < c) ++ri;
            if (ri < rows.size() && rows[ri] == c) h(c, c) += d[c];
        }
        return;
    }
    const Eigen::MatrixXd& m = a.dense();
    for (Eigen::Index c : cols)
        for (Eigen::Index r : rows) h(r, c) += m(r, c);
}

} // namespace

namespace {

void check_assignment_dim(const Instance& inst, const OperatorMatrix& a) {
    if (a.n_qubits() != inst.n_qubits())
        throw ValidationError("assigned operator acts on " + std::to_string(a.n_qubits()) +
                              " qubits, instance has " + std::to_string(inst.n_qubits()));
}

} // namespace

ClauseAssignment ClauseAssignment::uniform(const Instance& inst, OperatorMatrix a) {
    check_assignment_dim(inst, a);
    ClauseAssignment out;
    auto shared = std::make_shared<const OperatorMatrix>(std::move(a));
    for (const Clause& c : inst.clauses()) out.ops_[c] = shared;
    return out;
}

void ClauseAssignment::set(const Clause& c, OperatorMatrix a) {
    ops_[c] = std::make_shared<const OperatorMatrix>(std::move(a));
}

const OperatorMatrix& ClauseAssignment::at(const Clause& c) const {
    auto it = ops_.find(c);
    if (it == ops_.end())
        throw ValidationError("no operator assigned to clause " + clause_name(c));
    return *it->second;
}

bool ClauseAssignment::contains(const Clause& c) const { return ops_.count(c) > 0; }

PairAssignment PairAssignment::diagonal(const Instance& inst, OperatorMatrix a) {
    check_assignment_dim(inst, a);
    PairAssignment out;
    auto shared = std::make_shared<const OperatorMatrix>(std::move(a));
    for (const Clause& c : inst.clauses()) out.ops_[{c, c}] = shared;
    return out;
}

PairAssignment PairAssignment::uniform(const Instance& inst, OperatorMatrix a) {
    check_assignment_dim(inst, a);
    PairAssignment out;
    auto shared = std::make_shared<const OperatorMatrix>(std::move(a));
    for (const Clause& c1 : inst.clauses())
        for (const Clause& c2 : inst.clauses()) out.ops_[{c1, c2}] = shared;
    return out;
}

void PairAssignment::set(const Clause& c1, const Clause& c2, OperatorMatrix a) {
    auto shared = std::make_shared<const OperatorMatrix>(std::move(a));
    ops_[{c1, c2}] = shared;
    ops_[{c2, c1}] = shared;
}

void PairAssignment::set_oriented(const Clause& c1, const Clause& c2, OperatorMatrix a) {
    ops_[{c1, c2}] = std::make_shared<const OperatorMatrix>(std::move(a));
}

const OperatorMatrix* PairAssignment::find(const Clause& c1, const Clause& c2) const {
    auto it = ops_.find({c1, c2});
    return it == ops_.end() ? nullptr : it->second.get();
}

void PairAssignment::validate_symmetric() const {
    for (const auto& [key, op] : ops_) {
        const auto& [c1, c2] = key;
        if (c1 == c2) continue;
        auto mirror = ops_.find({c2, c1});
        if (mirror == ops_.end())
            throw ValidationError("pair map is asymmetric: " + clause_name(c1) + "," +
                                  clause_name(c2) + " has no mirror entry");
        const OperatorMatrix& a = *op;
        const OperatorMatrix& b = *mirror->second;
        if (a.dim() != b.dim())
            throw ValidationError("pair map mirror entries differ in dimension");
        if (op.get() == mirror->second.get()) continue;
        for (Eigen::Index c = 0; c < a.dim(); ++c)
            for (Eigen::Index r = 0; r < a.dim(); ++r)
                if (a.entry(r, c) != b.entry(r, c))
                    throw ValidationError("pair map is asymmetric: operators for " +
                                          clause_name(c1) + "," + clause_name(c2) +
                                          " and its mirror differ");
    }
}

OperatorMatrix build_clause_projector(int n, const Clause& c) {
    return OperatorMatrix::from_diagonal(n, projector_diag(n, c));
}

OperatorMatrix build_hp(const Instance& inst) {
    const Eigen::Index dim = Eigen::Index{1} << inst.n_qubits();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(dim);
    for (const Clause& c : inst.clauses()) d += projector_diag(inst.n_qubits(), c);
    return OperatorMatrix::from_diagonal(inst.n_qubits(), std::move(d));
}

OperatorMatrix build_a_uniform_x(int n) {
    if (n < 1)
        throw ValidationError("operator needs at least one qubit");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    const double w = 1.0 / n;
    for (Eigen::Index b = 0; b < dim; ++b) {
        m(b, b) = 1.0;
        for (int i = 0; i < n; ++i) m(b ^ (Eigen::Index{1} << i), b) = w;
    }
    return OperatorMatrix::from_dense(n, std::move(m));
}

OperatorMatrix build_hent(const Instance& inst, const ClauseAssignment& a) {
    const int n = inst.n_qubits();
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (const Clause& c : inst.clauses()) {
        const OperatorMatrix& ac = a.at(c);
        if (ac.dim() != dim)
            throw ValidationError("operator for clause " + clause_name(c) +
                                  " has mismatched dimension");
        const auto idx = mask_indices(projector_diag(n, c));
        add_masked(h, idx, idx, ac);
    }
    return OperatorMatrix::from_dense(n, std::move(h));
}

OperatorMatrix build_hent_general(const Instance& inst, const PairAssignment& a) {
    a.validate_symmetric();
    const int n = inst.n_qubits();
    const Eigen::Index dim = Eigen::Index{1} << n;
    const auto& clauses = inst.clauses();

    std::vector<std::vector<Eigen::Index>> masks;
    masks.reserve(clauses.size());
    for (const Clause& c : clauses) masks.push_back(mask_indices(projector_diag(n, c)));

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t p = 0; p < clauses.size(); ++p) {
        for (std::size_t q = p; q < clauses.size(); ++q) {
            const OperatorMatrix* op = a.find(clauses[p], clauses[q]);
            if (!op) continue; // absent pair acts as the zero operator
            if (op->dim() != dim)
                throw ValidationError("operator for clause pair " + clause_name(clauses[p]) +
                                      "," + clause_name(clauses[q]) +
                                      " has mismatched dimension");
            add_masked(h, masks[p], masks[q], *op);
            if (q != p) add_masked(h, masks[q], masks[p], *op);
        }
    }
    return OperatorMatrix::from_dense(n, std::move(h));
}

OperatorMatrix build_ising(int n) {
    if (n < 1)
        throw ValidationError("operator needs at least one qubit");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<double> field(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j)
        field[static_cast<std::size_t>(j - 1)] = 0.8 * (1.0 - 0.3 * j / n);
    for (Eigen::Index b = 0; b < dim; ++b) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            const int zj = (b >> j) & 1 ? -1 : 1;
            diag += field[static_cast<std::size_t>(j)] * zj;
            if (j + 1 < n) {
                const int zj1 = (b >> (j + 1)) & 1 ? -1 : 1;
                diag += zj * zj1;
            }
            m(b ^ (Eigen::Index{1} << j), b) = 0.9;
        }
        m(b, b) = diag;
    }
    return OperatorMatrix::from_dense(n, std::move(m));
}

OperatorMatrix build_h0_transverse(int n) {
    if (n < 1)
        throw ValidationError("operator needs at least one qubit");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        m(b, b) = 0.5 * n;
        for (int j = 0; j < n; ++j) m(b ^ (Eigen::Index{1} << j), b) = -0.5;
    }
    return OperatorMatrix::from_dense(n, std::move(m));
}

void write_operator_coo(std::ostream& out, const OperatorMatrix& op, bool diagonal_format) {
    if (diagonal_format && !op.is_diagonal())
        throw ValidationError("dense operator cannot be exported in diagonal format");
    std::ostringstream body;
    body.precision(17);
    Eigen::Index nnz = 0;
    if (diagonal_format) {
        const Eigen::VectorXd& d = op.diagonal();
        for (Eigen::Index b = 0; b < d.size(); ++b)
            if (d[b] != 0.0) {
                body << b << ' ' << d[b] << '\n';
                ++nnz;
            }
        out << op.dim() << ' ' << nnz << " diagonal\n";
    } else {
        for (Eigen::Index r = 0; r < op.dim(); ++r)
            for (Eigen::Index c = 0; c < op.dim(); ++c) {
                const double v = op.entry(r, c);
                if (v != 0.0) {
                    body << r << ' ' << c << ' ' << v << '\n';
                    ++nnz;
                }
            }
        out << op.dim() << ' ' << nnz << '\n';
    }
    out << body.str();
}

OperatorMatrix read_operator_coo(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        throw ValidationError("operator file: missing header");
    std::istringstream hs(header);
    Eigen::Index dim = 0, nnz = 0;
    if (!(hs >> dim >> nnz))
        throw ValidationError("operator file: header must be 'dim nnz'");
    std::string marker;
    const bool diagonal_format = static_cast<bool>(hs >> marker) && marker == "diagonal";
    if (dim < 2 || (dim & (dim - 1)) != 0)
        throw ValidationError("operator file: dim must be a power of two >= 2");
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;

    if (diagonal_format) {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(dim);
        for (Eigen::Index k = 0; k < nnz; ++k) {
            Eigen::Index b = 0;
            double v = 0.0;
            if (!(in >> b >> v))
                throw ValidationError("operator file: truncated diagonal entries");
            if (b < 0 || b >= dim)
                throw ValidationError("operator file: index out of range");
            d[b] = v;
        }
        return OperatorMatrix::from_diagonal(n, std::move(d));
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < nnz; ++k) {
        Eigen::Index r = 0, c = 0;
        double v = 0.0;
        if (!(in >> r >> c >> v))
            throw ValidationError("operator file: truncated triplets");
        if (r < 0 || r >= dim || c < 0 || c >= dim)
            throw ValidationError("operator file: index out of range");
        m(r, c) = v;
    }
    return OperatorMatrix::from_dense(n, std::move(m)); // validates symmetry
}

} // namespace entsat
