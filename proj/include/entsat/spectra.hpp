#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "entsat/instance.hpp"
#include "entsat/operators.hpp"

namespace entsat {

/// Ascending eigenvalues with orthonormal eigenvector columns.
struct SpectrumResult {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

/// Diagonalization cap on matrix dimension (default 2^14).
inline Eigen::Index default_dim_cap() { return Eigen::Index{1} << 14; }

/// Full eigendecomposition. Diagonal operators take an exact sorting path
/// whose eigenvectors are computational basis states (ties kept in ascending
/// basis-index order).
SpectrumResult full_spectrum(const OperatorMatrix& h, Eigen::Index dim_cap = default_dim_cap());

/// Ascending eigenvalues without eigenvectors (cheaper; used by gap scans).
Eigen::VectorXd eigenvalues_only(const OperatorMatrix& h, Eigen::Index dim_cap = default_dim_cap());

// Verification helpers for SpectrumResult invariants.
double max_residual(const OperatorMatrix& h, const SpectrumResult& s);
double max_orthonormality_dev(const SpectrumResult& s);

/// Reduced density matrix on the kept qubits (1-based labels).
struct DensityMatrix {
    Eigen::MatrixXd entries;
    std::vector<int> kept_qubits;
    Eigen::Index dim() const { return entries.rows(); }
};

/// Default bipartition: keep qubits 1..floor(N/2).
std::vector<int> default_keep(int n_qubits);

/// Partial trace of |state><state| over the complement of `keep`.
DensityMatrix reduced_density(const Eigen::VectorXd& state, int n_qubits,
                              const std::vector<int>& keep);

/// Von Neumann entropy in bits of the reduced state; density-matrix
/// eigenvalues below 1e-12 count as exact zeros.
double entanglement_entropy(const Eigen::VectorXd& state, int n_qubits,
                            const std::vector<int>& keep);

struct EntropyRecord {
    Eigen::Index index;
    double energy;
    double entropy_bits;
    bool degenerate;
};

struct EntropyProfile {
    std::vector<EntropyRecord> records;
    std::vector<int> keep;
    bool rebased_ground = false; // zero-energy eigenvectors replaced by satisfying basis states
    std::size_t n_zero_states = 0;
};

/// Per-eigenstate entropy, ordered by eigenvalue. When an instance is given
/// and its satisfying basis states span the zero-energy subspace (within
/// span_tol), that subspace is re-based onto those product states before
/// entropies are taken; excited degenerate subspaces are reported as
/// returned, with degeneracy flags.
EntropyProfile entropy_profile(const SpectrumResult& spec, int n_qubits,
                               std::vector<int> keep = {},
                               const Instance* rebase_instance = nullptr,
                               double zero_tol = 1e-8, double span_tol = 1e-6,
                               int exhaustive_cap = default_exhaustive_cap());

struct FrustrationReport {
    enum class Status { Pass, Fail, VacuouslyInapplicable };
    Status status = Status::Fail;
    double tol = 0.0;
    std::size_t n_satisfying = 0;
    std::size_t n_checks = 0;          // (assignment, clause) pairs checked
    double max_clause_violation = 0.0; // |C_ijm e_z| entries; must be exactly 0
    double max_residual = 0.0;         // max ||H_ent e_z||_2 over satisfying z
    std::vector<std::string> violations;
};

/// Checks C_ijm |z> = 0 exactly for every clause and satisfying z, and
/// ||hent |z>|| <= tol. Unsatisfiable instances report VacuouslyInapplicable.
FrustrationReport verify_frustration_free(const Instance& inst, double tol,
                                          const OperatorMatrix& hent,
                                          int exhaustive_cap = default_exhaustive_cap());
/// Same check against the entangling Hamiltonian built with the uniform-x A.
FrustrationReport verify_frustration_free(const Instance& inst, double tol,
                                          int exhaustive_cap = default_exhaustive_cap());

struct GroundSpaceReport {
    double tol = 0.0;
    double min_eigenvalue = 0.0;
    bool energy_ok = false;
    std::size_t n_zero_eigenvalues = 0;
    std::size_t n_satisfying = 0;
    bool count_ok = false;
    double max_projector_dev = 0.0; // ||P_zero - P_satisfying||_max
    bool span_ok = false;
    bool pass() const { return energy_ok && count_ok && span_ok; }
};

/// Verifies that the zero-energy space of a spectrum computed from this
/// instance's Hamiltonian is exactly the span of its satisfying basis
/// states. Failures are reported, not thrown.
GroundSpaceReport ground_space_check(const Instance& inst, const SpectrumResult& spec,
                                     double tol, int exhaustive_cap = default_exhaustive_cap());

struct GapRatioResult {
    double mean = 0.0;
    std::size_t n_ratios = 0;
    std::size_t n_degenerate_excluded = 0; // gaps below 1e-12 dropped
};

/// Mean consecutive-gap ratio min(d_k, d_{k+1})/max(d_k, d_{k+1}) over the
/// eigenvalue window [first, last).
GapRatioResult gap_ratio_stat(const Eigen::VectorXd& eigenvalues,
                              Eigen::Index first, Eigen::Index last);

// CSV / JSON exports.
void write_spectrum_csv(std::ostream& out, const Eigen::VectorXd& eigenvalues);
void write_entropy_csv(std::ostream& out, const EntropyProfile& profile);
nlohmann::json report_json(const FrustrationReport& r);
nlohmann::json report_json(const GroundSpaceReport& r);

} // namespace entsat
