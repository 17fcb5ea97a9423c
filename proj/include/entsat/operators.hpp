#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <utility>

#include <Eigen/Dense>

#include "entsat/instance.hpp"

namespace entsat {

/// Real symmetric operator on N qubits in the computational basis, with a
/// diagonal-only storage variant for diagonal operators. Entries are exactly
/// symmetric by construction; dense factory validates this bit-for-bit.
class OperatorMatrix {
public:
    OperatorMatrix() = default;

    static OperatorMatrix from_diagonal(int n_qubits, Eigen::VectorXd diag);
    static OperatorMatrix from_dense(int n_qubits, Eigen::MatrixXd mat);
    static OperatorMatrix identity(int n_qubits);
    static OperatorMatrix zero(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    Eigen::Index dim() const { return dim_; }
    bool is_diagonal() const { return diagonal_; }

    const Eigen::VectorXd& diagonal() const;
    const Eigen::MatrixXd& dense() const;
    Eigen::MatrixXd to_dense() const;

    double entry(Eigen::Index row, Eigen::Index col) const;
    double trace() const;

    /// Matrix-vector product.
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

private:
    int n_qubits_ = 0;
    Eigen::Index dim_ = 0;
    bool diagonal_ = true;
    Eigen::VectorXd diag_;
    Eigen::MatrixXd mat_;
};

/// a*x + b*y, preserving diagonal storage when both operands are diagonal.
OperatorMatrix linear_combination(double a, const OperatorMatrix& x,
                                  double b, const OperatorMatrix& y);

Eigen::VectorXd apply(const OperatorMatrix& op, const Eigen::VectorXd& v);

/// Per-clause map of sandwich operators; one shared matrix is the common case.
class ClauseAssignment {
public:
    static ClauseAssignment uniform(const Instance& inst, OperatorMatrix a);

    void set(const Clause& c, OperatorMatrix a);
    const OperatorMatrix& at(const Clause& c) const; // throws naming the clause
    bool contains(const Clause& c) const;

private:
    std::map<Clause, std::shared_ptr<const OperatorMatrix>> ops_;
};

/// Symmetric per-clause-pair map; missing pairs act as zero operators.
class PairAssignment {
public:
    /// Diagonal pairs only, all sharing one matrix (collapses to the
    /// per-clause construction).
    static PairAssignment diagonal(const Instance& inst, OperatorMatrix a);
    /// Every ordered pair shares one matrix.
    static PairAssignment uniform(const Instance& inst, OperatorMatrix a);

    /// Stores both orientations.
    void set(const Clause& c1, const Clause& c2, OperatorMatrix a);
    /// Stores one orientation only; validate_symmetric() will reject a map
    /// left asymmetric this way.
    void set_oriented(const Clause& c1, const Clause& c2, OperatorMatrix a);

    const OperatorMatrix* find(const Clause& c1, const Clause& c2) const;
    void validate_symmetric() const;

private:
    std::map<std::pair<Clause, Clause>, std::shared_ptr<const OperatorMatrix>> ops_;
};

/// Diagonal 0/1 projector onto basis states whose bits i, j, m all agree.
OperatorMatrix build_clause_projector(int n, const Clause& c);

/// Diagonal problem Hamiltonian: sum of clause projectors, in clause order.
OperatorMatrix build_hp(const Instance& inst);

/// 1 + (1/n) * sum of sigma^x_i: identity plus uniform single-bit flips.
OperatorMatrix build_a_uniform_x(int n);

/// Entangling problem Hamiltonian: sum over clauses of C * A_c * C. Each C is
/// a 0/1 diagonal mask, so every term is A_c restricted to masked rows and
/// columns; no dense products are formed.
OperatorMatrix build_hent(const Instance& inst, const ClauseAssignment& a);

/// Generalized form: sum over clause pairs (p, q) of C_p * A_pq * C_q.
OperatorMatrix build_hent_general(const Instance& inst, const PairAssignment& a);

/// Nonintegrable Ising chain: 0.9 * sum sigma^x_j
/// + 0.8 * sum (1 - 0.3 j/n) sigma^z_j + sum sigma^z_j sigma^z_{j+1}.
OperatorMatrix build_ising(int n);

/// Driver with uniform-superposition ground state: sum_j (1 - sigma^x_j)/2.
OperatorMatrix build_h0_transverse(int n);

// Coordinate-format operator files: header "dim nnz" (plus a "diagonal"
// marker for the diagonal variant), then one "row col value" (or "index
// value") line per nonzero, 0-based. Symmetry is validated on load.
void write_operator_coo(std::ostream& out, const OperatorMatrix& op, bool diagonal_format);
OperatorMatrix read_operator_coo(std::istream& in);

} // namespace entsat
