#include "entsat/instance.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

namespace entsat {

Clause::Clause(int i, int j, int m) : i_(i), j_(j), m_(m) {
    if (i_ > j_) std::swap(i_, j_);
    if (j_ > m_) std::swap(j_, m_);
    if (i_ > j_) std::swap(i_, j_);
    if (i_ < 1)
        throw ValidationError("clause indices must be >= 1");
    if (i_ == j_ || j_ == m_)
        throw ValidationError("clause indices must be pairwise distinct");
}

BitString::BitString(std::vector<int> bits) : bits_(std::move(bits)) {
    if (bits_.empty())
        throw ValidationError("bit string must be nonempty");
    for (int b : bits_)
        if (b != 1 && b != -1)
            throw ValidationError("bit values must be +1 or -1");
}

BitString BitString::from_index(std::uint64_t basis_index, int n_bits) {
    if (n_bits < 1 || n_bits > 63)
        throw ValidationError("bit count out of range");
    if (n_bits < 64 && basis_index >> n_bits)
        throw ValidationError("basis index out of range");
    std::vector<int> bits(static_cast<std::size_t>(n_bits));
    for (int j = 0; j < n_bits; ++j)
        bits[static_cast<std::size_t>(j)] = (basis_index >> j) & 1 ? -1 : 1;
    return BitString(std::move(bits));
}

std::uint64_t BitString::basis_index() const {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < bits_.size(); ++j)
        if (bits_[j] == -1) idx |= std::uint64_t{1} << j;
    return idx;
}

BitString BitString::flipped() const {
    std::vector<int> bits(bits_.size());
    for (std::size_t j = 0; j < bits_.size(); ++j) bits[j] = -bits_[j];
    return BitString(std::move(bits));
}

Instance::Instance(int n_qubits, std::vector<Clause> clauses)
    : n_qubits_(n_qubits), clauses_(std::move(clauses)) {
    if (n_qubits_ < 1)
        throw ValidationError("instance must have at least one qubit");
    std::set<Clause> seen;
    for (const Clause& c : clauses_) {
        if (c.max_index() > n_qubits_)
            throw ValidationError("clause index exceeds qubit count");
        if (!seen.insert(c).second)
            throw ValidationError("duplicate clause rejected");
    }
}

int default_exhaustive_cap() {
    if (const char* env = std::getenv("ENTSAT_EXHAUSTIVE_CAP")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 62)
            return static_cast<int>(v);
    }
    return 24;
}

int eval_clause(const BitString& z, const Clause& c) {
    if (c.max_index() > z.size())
        throw ValidationError("clause index exceeds bit string length");
    const int zi = z.bit(c.i()), zj = z.bit(c.j()), zm = z.bit(c.m());
    return (zi == zj && zj == zm) ? 1 : 0;
}

int classical_cost(const BitString& z, const Instance& inst) {
    if (z.size() != inst.n_qubits())
        throw ValidationError("bit string length does not match instance");
    int cost = 0;
    for (const Clause& c : inst.clauses()) cost += eval_clause(z, c);
    return cost;
}

namespace {

// Per-clause bit masks: a basis index violates the clause iff the three
// selected bits are all 0 or all 1.
std::vector<std::uint64_t> clause_masks(const Instance& inst) {
    std::vector<std::uint64_t> masks;
    masks.reserve(inst.clauses().size());
    for (const Clause& c : inst.clauses())
        masks.push_back((std::uint64_t{1} << (c.i() - 1)) |
                        (std::uint64_t{1} << (c.j() - 1)) |
                        (std::uint64_t{1} << (c.m() - 1)));
    return masks;
}

bool index_satisfies(std::uint64_t b, const std::vector<std::uint64_t>& masks) {
    for (std::uint64_t m : masks) {
        const std::uint64_t sel = b & m;
        if (sel == 0 || sel == m) return false;
    }
    return true;
}

void check_exhaustive_cap(const Instance& inst, int cap) {
    if (inst.n_qubits() > cap)
        throw ResourceCapError("exhaustive search over " + std::to_string(inst.n_qubits()) +
                               " qubits exceeds cap " + std::to_string(cap) +
                               " (raise ENTSAT_EXHAUSTIVE_CAP or --exhaustive-cap)");
}

// Unbiased bounded draw on raw mt19937_64 output; keeps sampling portable.
std::uint64_t bounded_u64(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

} // namespace

std::vector<std::uint64_t> satisfying_indices(const Instance& inst, int exhaustive_cap) {
    check_exhaustive_cap(inst, exhaustive_cap);
    const auto masks = clause_masks(inst);
    const std::uint64_t dim = std::uint64_t{1} << inst.n_qubits();
    std::vector<std::uint64_t> out;
    for (std::uint64_t b = 0; b < dim; ++b)
        if (index_satisfies(b, masks)) out.push_back(b);
    return out;
}

std::vector<BitString> enumerate_satisfying(const Instance& inst, int exhaustive_cap) {
    std::vector<BitString> out;
    for (std::uint64_t b : satisfying_indices(inst, exhaustive_cap))
        out.push_back(BitString::from_index(b, inst.n_qubits()));
    return out;
}

Instance random_instance(int n, int m, int target_solutions, std::uint64_t seed,
                         int max_tries, int* attempts_used) {
    if (n < 3)
        throw ValidationError("need at least 3 qubits to form a clause");
    if (m < 1)
        throw ValidationError("need at least one clause");
    if (target_solutions < 2 || target_solutions % 2 != 0)
        throw ValidationError("target solution count must be even and >= 2");
    if (max_tries < 1)
        throw ValidationError("max_tries must be positive");

    const long long n_triples =
        static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
    if (m > n_triples)
        throw ValidationError("more clauses requested than distinct triples exist");

    std::vector<Clause> all;
    all.reserve(static_cast<std::size_t>(n_triples));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) all.emplace_back(i, j, k);

    const std::uint64_t dim = std::uint64_t{1} << n;

    for (int attempt = 1; attempt <= max_tries; ++attempt) {
        // Each attempt is an independent deterministic stream.
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(attempt)};
        std::mt19937_64 rng(seq);

        // Partial Fisher-Yates: first m entries are a uniform sample
        // without replacement.
        std::vector<Clause> pool = all;
        for (int k = 0; k < m; ++k) {
            const auto r = k + static_cast<std::size_t>(
                                   bounded_u64(rng, pool.size() - static_cast<std::size_t>(k)));
            std::swap(pool[static_cast<std::size_t>(k)], pool[r]);
        }
        pool.erase(pool.begin() + m, pool.end());
        std::sort(pool.begin(), pool.end());

        Instance candidate(n, std::move(pool));
        const auto masks = clause_masks(candidate);
        int count = 0;
        for (std::uint64_t b = 0; b < dim && count <= target_solutions; ++b)
            if (index_satisfies(b, masks)) ++count;

        if (count == target_solutions) {
            if (attempts_used) *attempts_used = attempt;
            return candidate;
        }
    }
    throw GenerationError("no instance with " + std::to_string(target_solutions) +
                              " solutions found in " + std::to_string(max_tries) + " attempts",
                          max_tries);
}

Instance read_instance_text(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m))
        throw ValidationError("instance file: cannot read 'N M' header");
    if (m < 0)
        throw ValidationError("instance file: negative clause count");
    std::vector<Clause> clauses;
    clauses.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        int i = 0, j = 0, q = 0;
        if (!(in >> i >> j >> q))
            throw ValidationError("instance file: expected " + std::to_string(m) +
                                  " clause lines, got " + std::to_string(k));
        clauses.emplace_back(i, j, q);
    }
    return Instance(n, std::move(clauses));
}

void write_instance_text(std::ostream& out, const Instance& inst) {
    out << inst.n_qubits() << ' ' << inst.n_clauses() << '\n';
    for (const Clause& c : inst.clauses())
        out << c.i() << ' ' << c.j() << ' ' << c.m() << '\n';
}

Instance read_instance_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("instance JSON: ") + e.what());
    }
    if (!j.contains("n_qubits") || !j.contains("clauses"))
        throw ValidationError("instance JSON: need fields 'n_qubits' and 'clauses'");
    std::vector<Clause> clauses;
    for (const auto& arr : j.at("clauses")) {
        if (!arr.is_array() || arr.size() != 3)
            throw ValidationError("instance JSON: each clause must be a 3-array");
        clauses.emplace_back(arr.at(0).get<int>(), arr.at(1).get<int>(), arr.at(2).get<int>());
    }
    return Instance(j.at("n_qubits").get<int>(), std::move(clauses));
}

void write_instance_json(std::ostream& out, const Instance& inst) {
    nlohmann::json j;
    j["n_qubits"] = inst.n_qubits();
    auto& arr = j["clauses"] = nlohmann::json::array();
    for (const Clause& c : inst.clauses()) arr.push_back({c.i(), c.j(), c.m()});
    out << j.dump(2) << '\n';
}

Instance read_instance_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open instance file: " + path.string());
    return path.extension() == ".json" ? read_instance_json(in) : read_instance_text(in);
}

void write_instance_file(const std::filesystem::path& path, const Instance& inst) {
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write instance file: " + path.string());
    if (path.extension() == ".json")
        write_instance_json(out, inst);
    else
        write_instance_text(out, inst);
}

} // namespace entsat
