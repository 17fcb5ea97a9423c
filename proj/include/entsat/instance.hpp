#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "entsat/errors.hpp"

namespace entsat {

/// A monotone NAE clause: three pairwise distinct 1-based qubit indices,
/// stored in canonical ascending order. Satisfied unless all three bits agree.
class Clause {
public:
    Clause(int i, int j, int m);

    int i() const { return i_; }
    int j() const { return j_; }
    int m() const { return m_; }
    int max_index() const { return m_; }

    auto operator<=>(const Clause&) const = default;

private:
    int i_, j_, m_; // i_ < j_ < m_
};

/// An assignment of +1/-1 to N bits. Doubles as a computational-basis label:
/// qubit j maps to bit position j-1, bit 0 encodes z_j = +1, bit 1 encodes -1.
class BitString {
public:
    explicit BitString(std::vector<int> bits);
    static BitString from_index(std::uint64_t basis_index, int n_bits);

    int size() const { return static_cast<int>(bits_.size()); }
    int bit(int qubit) const { return bits_[static_cast<std::size_t>(qubit) - 1]; } // 1-based
    const std::vector<int>& bits() const { return bits_; }

    std::uint64_t basis_index() const;
    BitString flipped() const; // global flip z -> -z

    bool operator==(const BitString&) const = default;

private:
    std::vector<int> bits_;
};

/// A set of M clauses over N qubits. Clause order is preserved; duplicates
/// and out-of-range indices are rejected at construction.
class Instance {
public:
    Instance(int n_qubits, std::vector<Clause> clauses);

    int n_qubits() const { return n_qubits_; }
    int n_clauses() const { return static_cast<int>(clauses_.size()); }
    const std::vector<Clause>& clauses() const { return clauses_; }

private:
    int n_qubits_;
    std::vector<Clause> clauses_;
};

/// Exhaustive-search cap (qubits). Default 24, overridable through the
/// ENTSAT_EXHAUSTIVE_CAP environment variable.
int default_exhaustive_cap();

/// 1 if z_i = z_j = z_m, else 0.
int eval_clause(const BitString& z, const Clause& c);

/// Number of violated clauses; zero exactly for satisfying assignments.
int classical_cost(const BitString& z, const Instance& inst);

/// All satisfying assignments in ascending basis-index order, as indices.
std::vector<std::uint64_t> satisfying_indices(const Instance& inst,
                                              int exhaustive_cap = default_exhaustive_cap());

/// All satisfying assignments in ascending basis-index order.
std::vector<BitString> enumerate_satisfying(const Instance& inst,
                                            int exhaustive_cap = default_exhaustive_cap());

/// Rejection-sample an instance with exactly `target_solutions` satisfying
/// assignments: m distinct clauses drawn uniformly without replacement per
/// attempt, attempts derived deterministically from (seed, attempt index).
/// Throws GenerationError when max_tries attempts all miss the target.
Instance random_instance(int n, int m, int target_solutions, std::uint64_t seed,
                         int max_tries = 1000, int* attempts_used = nullptr);

// Instance files: text ("N M" header then one "i j m" line per clause) or a
// JSON mirror {"n_qubits": N, "clauses": [[i,j,m], ...]}, picked by extension.
Instance read_instance_text(std::istream& in);
void write_instance_text(std::ostream& out, const Instance& inst);
Instance read_instance_json(std::istream& in);
void write_instance_json(std::ostream& out, const Instance& inst);
Instance read_instance_file(const std::filesystem::path& path);
void write_instance_file(const std::filesystem::path& path, const Instance& inst);

} // namespace entsat
