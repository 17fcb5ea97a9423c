#include "entsat/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>

namespace entsat {

namespace {

void check_dim_cap(Eigen::Index dim, Eigen::Index cap) {
    if (dim > cap)
        throw ResourceCapError("diagonalization dimension " + std::to_string(dim) +
                               " exceeds cap " + std::to_string(cap) + " (raise --dim-cap)");
}

SpectrumResult diagonal_spectrum(const OperatorMatrix& h, bool with_vectors) {
    const Eigen::VectorXd& d = h.diagonal();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return d[a] < d[b]; });
    SpectrumResult out;
    out.eigenvalues.resize(d.size());
    for (Eigen::Index k = 0; k < d.size(); ++k) out.eigenvalues[k] = d[order[static_cast<std::size_t>(k)]];
    if (with_vectors) {
        out.eigenvectors = Eigen::MatrixXd::Zero(d.size(), d.size());
        for (Eigen::Index k = 0; k < d.size(); ++k)
            out.eigenvectors(order[static_cast<std::size_t>(k)], k) = 1.0;
    }
    return out;
}

} // namespace

SpectrumResult full_spectrum(const OperatorMatrix& h, Eigen::Index dim_cap) {
    check_dim_cap(h.dim(), dim_cap);
    if (h.is_diagonal()) return diagonal_spectrum(h, true);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense());
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd eigenvalues_only(const OperatorMatrix& h, Eigen::Index dim_cap) {
    check_dim_cap(h.dim(), dim_cap);
    if (h.is_diagonal()) return diagonal_spectrum(h, false).eigenvalues;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed to converge");
    return solver.eigenvalues();
}

double max_residual(const OperatorMatrix& h, const SpectrumResult& s) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
        const Eigen::VectorXd v = s.eigenvectors.col(k);
        worst = std::max(worst, (h.apply(v) - s.eigenvalues[k] * v).norm());
    }
    return worst;
}

double max_orthonormality_dev(const SpectrumResult& s) {
    const Eigen::MatrixXd g = s.eigenvectors * s.eigenvectors.transpose();
    return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

std::vector<int> default_keep(int n_qubits) {
    std::vector<int> keep;
    for (int q = 1; q <= n_qubits / 2; ++q) keep.push_back(q);
    return keep;
}

namespace {

struct Cut {
    std::vector<int> keep_bits; // 0-based bit positions, ascending
    std::vector<int> env_bits;
    Eigen::Index keep_dim;
    Eigen::Index env_dim;
};

Cut make_cut(int n_qubits, const std::vector<int>& keep) {
    if (keep.empty())
        throw ValidationError("keep set must be nonempty");
    std::set<int> uniq(keep.begin(), keep.end());
    if (uniq.size() != keep.size())
        throw ValidationError("keep set has duplicate qubits");
    if (*uniq.begin() < 1 || *uniq.rbegin() > n_qubits)
        throw ValidationError("keep set qubit out of range");
    if (static_cast<int>(uniq.size()) == n_qubits)
        throw ValidationError("keep set must be a proper subset");
    Cut cut;
    for (int q : uniq) cut.keep_bits.push_back(q - 1);
    for (int b = 0; b < n_qubits; ++b)
        if (!uniq.count(b + 1)) cut.env_bits.push_back(b);
    cut.keep_dim = Eigen::Index{1} << cut.keep_bits.size();
    cut.env_dim = Eigen::Index{1} << cut.env_bits.size();
    return cut;
}

Eigen::Index spread_bits(Eigen::Index compact, const std::vector<int>& positions) {
    Eigen::Index out = 0;
    for (std::size_t t = 0; t < positions.size(); ++t)
        if ((compact >> t) & 1) out |= Eigen::Index{1} << positions[t];
    return out;
}

} // namespace

DensityMatrix reduced_density(const Eigen::VectorXd& state, int n_qubits,
                              const std::vector<int>& keep) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    if (state.size() != dim)
        throw ValidationError("state length does not match qubit count");
    if (std::abs(state.norm() - 1.0) > 1e-8)
        throw ValidationError("state is not normalized");
    const Cut cut = make_cut(n_qubits, keep);

    DensityMatrix rho;
    rho.kept_qubits.assign(keep.begin(), keep.end());
    std::sort(rho.kept_qubits.begin(), rho.kept_qubits.end());
    rho.entries = Eigen::MatrixXd::Zero(cut.keep_dim, cut.keep_dim);

    Eigen::VectorXd amp(cut.keep_dim);
    for (Eigen::Index e = 0; e < cut.env_dim; ++e) {
        const Eigen::Index base = spread_bits(e, cut.env_bits);
        for (Eigen::Index a = 0; a < cut.keep_dim; ++a)
            amp[a] = state[base | spread_bits(a, cut.keep_bits)];
        rho.entries.selfadjointView<Eigen::Lower>().rankUpdate(amp);
    }
    rho.entries.triangularView<Eigen::StrictlyUpper>() =
        rho.entries.transpose().triangularView<Eigen::StrictlyUpper>();
    return rho;
}

double entanglement_entropy(const Eigen::VectorXd& state, int n_qubits,
                            const std::vector<int>& keep) {
    const DensityMatrix rho = reduced_density(state, n_qubits, keep);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho.entries, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("density-matrix eigendecomposition failed");
    double s = 0.0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const double p = solver.eigenvalues()[k];
        if (p < 1e-12) continue; // exact zero by convention
        s -= p * std::log2(p);
    }
    return s;
}

EntropyProfile entropy_profile(const SpectrumResult& spec, int n_qubits,
                               std::vector<int> keep, const Instance* rebase_instance,
                               double zero_tol, double span_tol, int exhaustive_cap) {
    if (keep.empty()) keep = default_keep(n_qubits);
    const Eigen::Index dim = spec.eigenvalues.size();

    EntropyProfile profile;
    profile.keep = keep;

    // Degeneracy flags from eigenvalue clustering.
    const double scale = dim > 0 ? std::max({1.0, std::abs(spec.eigenvalues[0]),
                                             std::abs(spec.eigenvalues[dim - 1])})
                                 : 1.0;
    const double deg_tol = 1e-12 * scale;
    std::vector<bool> degenerate(static_cast<std::size_t>(dim), false);
    for (Eigen::Index k = 0; k + 1 < dim; ++k)
        if (spec.eigenvalues[k + 1] - spec.eigenvalues[k] <= deg_tol) {
            degenerate[static_cast<std::size_t>(k)] = true;
            degenerate[static_cast<std::size_t>(k + 1)] = true;
        }

    std::vector<std::uint64_t> rebase_targets;
    if (rebase_instance) {
        const GroundSpaceReport report =
            ground_space_check(*rebase_instance, spec, zero_tol, exhaustive_cap);
        profile.n_zero_states = report.n_zero_eigenvalues;
        if (report.energy_ok && report.count_ok && report.max_projector_dev <= span_tol) {
            rebase_targets = satisfying_indices(*rebase_instance, exhaustive_cap);
            profile.rebased_ground = true;
        }
    }

    profile.records.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index k = 0; k < dim; ++k) {
        Eigen::VectorXd state;
        if (profile.rebased_ground && k < static_cast<Eigen::Index>(rebase_targets.size())) {
            state = Eigen::VectorXd::Zero(dim);
            state[static_cast<Eigen::Index>(rebase_targets[static_cast<std::size_t>(k)])] = 1.0;
        } else {
            state = spec.eigenvectors.col(k);
        }
        profile.records.push_back({k, spec.eigenvalues[k],
                                   entanglement_entropy(state, n_qubits, keep),
                                   degenerate[static_cast<std::size_t>(k)]});
    }
    return profile;
}

FrustrationReport verify_frustration_free(const Instance& inst, double tol,
                                          const OperatorMatrix& hent, int exhaustive_cap) {
    FrustrationReport report;
    report.tol = tol;
    const auto sat = satisfying_indices(inst, exhaustive_cap);
    report.n_satisfying = sat.size();
    if (sat.empty()) {
        report.status = FrustrationReport::Status::VacuouslyInapplicable;
        return report;
    }

    const Eigen::Index dim = Eigen::Index{1} << inst.n_qubits();
    if (hent.dim() != dim)
        throw ValidationError("Hamiltonian dimension does not match instance");

    for (const Clause& c : inst.clauses()) {
        const OperatorMatrix proj = build_clause_projector(inst.n_qubits(), c);
        for (std::uint64_t z : sat) {
            ++report.n_checks;
            const double violation = std::abs(proj.diagonal()[static_cast<Eigen::Index>(z)]);
            report.max_clause_violation = std::max(report.max_clause_violation, violation);
            if (violation != 0.0)
                report.violations.push_back("clause (" + std::to_string(c.i()) + "," +
                                            std::to_string(c.j()) + "," + std::to_string(c.m()) +
                                            ") does not annihilate satisfying state " +
                                            std::to_string(z));
        }
    }
    for (std::uint64_t z : sat) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
        e[static_cast<Eigen::Index>(z)] = 1.0;
        const double residual = hent.apply(e).norm();
        report.max_residual = std::max(report.max_residual, residual);
        if (residual > tol)
            report.violations.push_back("||H_ent |z>|| = " + std::to_string(residual) +
                                        " at satisfying state " + std::to_string(z));
    }
    report.status = report.violations.empty() ? FrustrationReport::Status::Pass
                                              : FrustrationReport::Status::Fail;
    return report;
}

FrustrationReport verify_frustration_free(const Instance& inst, double tol, int exhaustive_cap) {
    const OperatorMatrix a = build_a_uniform_x(inst.n_qubits());
    const OperatorMatrix hent = build_hent(inst, ClauseAssignment::uniform(inst, a));
    return verify_frustration_free(inst, tol, hent, exhaustive_cap);
}

GroundSpaceReport ground_space_check(const Instance& inst, const SpectrumResult& spec,
                                     double tol, int exhaustive_cap) {
    GroundSpaceReport report;
    report.tol = tol;
    const Eigen::Index dim = spec.eigenvalues.size();
    if (dim != Eigen::Index{1} << inst.n_qubits())
        throw ValidationError("spectrum dimension does not match instance");

    const auto sat = satisfying_indices(inst, exhaustive_cap);
    report.n_satisfying = sat.size();
    report.min_eigenvalue = spec.eigenvalues[0];
    report.energy_ok = std::abs(report.min_eigenvalue) <= tol;

    Eigen::Index n_zero = 0;
    while (n_zero < dim && spec.eigenvalues[n_zero] <= tol) ++n_zero;
    report.n_zero_eigenvalues = static_cast<std::size_t>(n_zero);
    report.count_ok = report.n_zero_eigenvalues == report.n_satisfying;

    std::vector<char> is_sat(static_cast<std::size_t>(dim), 0);
    for (std::uint64_t z : sat) is_sat[static_cast<std::size_t>(z)] = 1;

    // Max-norm of (V0 V0^T - P_sat), streamed in row blocks.
    const auto v0 = spec.eigenvectors.leftCols(n_zero);
    const Eigen::Index block = 256;
    double dev = 0.0;
    for (Eigen::Index r0 = 0; r0 < dim; r0 += block) {
        const Eigen::Index nb = std::min(block, dim - r0);
        Eigen::MatrixXd p = v0.middleRows(r0, nb) * v0.transpose();
        for (Eigen::Index r = 0; r < nb; ++r)
            if (is_sat[static_cast<std::size_t>(r0 + r)]) p(r, r0 + r) -= 1.0;
        dev = std::max(dev, p.cwiseAbs().maxCoeff());
    }
    report.max_projector_dev = dev;
    report.span_ok = dev <= tol;
    return report;
}

GapRatioResult gap_ratio_stat(const Eigen::VectorXd& eigenvalues,
                              Eigen::Index first, Eigen::Index last) {
    if (first < 0 || last > eigenvalues.size() || last - first < 3)
        throw ValidationError("gap-ratio window needs at least 3 eigenvalues");
    const double deg_tol = 1e-12;

    GapRatioResult out;
    std::vector<double> gaps;
    gaps.reserve(static_cast<std::size_t>(last - first - 1));
    for (Eigen::Index k = first; k + 1 < last; ++k) {
        const double g = eigenvalues[k + 1] - eigenvalues[k];
        if (g < deg_tol) ++out.n_degenerate_excluded;
        gaps.push_back(g);
    }
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < gaps.size(); ++k) {
        if (gaps[k] < deg_tol || gaps[k + 1] < deg_tol) continue;
        sum += std::min(gaps[k], gaps[k + 1]) / std::max(gaps[k], gaps[k + 1]);
        ++out.n_ratios;
    }
    out.mean = out.n_ratios ? sum / static_cast<double>(out.n_ratios)
                            : std::numeric_limits<double>::quiet_NaN();
    return out;
}

void write_spectrum_csv(std::ostream& out, const Eigen::VectorXd& eigenvalues) {
    out << "index,eigenvalue\n";
    out.precision(12);
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k)
        out << k << ',' << eigenvalues[k] << '\n';
}

void write_entropy_csv(std::ostream& out, const EntropyProfile& profile) {
    out << "index,energy,entropy_bits,degenerate_flag\n";
    out.precision(12);
    for (const EntropyRecord& r : profile.records)
        out << r.index << ',' << r.energy << ',' << r.entropy_bits << ','
            << (r.degenerate ? 1 : 0) << '\n';
}

nlohmann::json report_json(const FrustrationReport& r) {
    const char* status = r.status == FrustrationReport::Status::Pass ? "pass"
                         : r.status == FrustrationReport::Status::Fail
                             ? "fail"
                             : "vacuously-inapplicable";
    return {{"status", status},
            {"tol", r.tol},
            {"n_satisfying", r.n_satisfying},
            {"n_checks", r.n_checks},
            {"max_clause_violation", r.max_clause_violation},
            {"max_residual", r.max_residual},
            {"violations", r.violations}};
}

nlohmann::json report_json(const GroundSpaceReport& r) {
    return {{"pass", r.pass()},
            {"tol", r.tol},
            {"min_eigenvalue", r.min_eigenvalue},
            {"energy_ok", r.energy_ok},
            {"n_zero_eigenvalues", r.n_zero_eigenvalues},
            {"n_satisfying", r.n_satisfying},
            {"count_ok", r.count_ok},
            {"max_projector_dev", r.max_projector_dev},
            {"span_ok", r.span_ok}};
}

} // namespace entsat
