// entsat command-line tool: generate NAE-3SAT instances, build diagonal and
// entangling problem Hamiltonians, diagonalize, profile eigenstate
// entanglement entropies, and scan adiabatic spectral gaps.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "entsat/anneal.hpp"
#include "entsat/instance.hpp"
#include "entsat/operators.hpp"
#include "entsat/spectra.hpp"

namespace {

using namespace entsat;

struct CommonOpts {
    std::string instance_path;
    int n = 0;
    std::string ham = "hp";
    std::string a_kind = "uniform-x";
    std::string a_file;
    std::string out_path;
    Eigen::Index dim_cap = default_dim_cap();
    int exhaustive_cap = default_exhaustive_cap();
    double tol = 1e-8;
};

std::optional<Instance> load_instance(const CommonOpts& o) {
    if (o.instance_path.empty()) return std::nullopt;
    return read_instance_file(o.instance_path);
}

OperatorMatrix make_a_operator(const CommonOpts& o, int n) {
    if (o.a_kind == "uniform-x") return build_a_uniform_x(n);
    if (o.a_kind == "identity") return OperatorMatrix::identity(n);
    if (o.a_kind == "from-file") {
        if (o.a_file.empty())
            throw ValidationError("--a from-file requires --a-file");
        std::ifstream in(o.a_file);
        if (!in)
            throw ValidationError("cannot open operator file: " + o.a_file);
        OperatorMatrix a = read_operator_coo(in);
        if (a.n_qubits() != n)
            throw ValidationError("custom A acts on " + std::to_string(a.n_qubits()) +
                                  " qubits, expected " + std::to_string(n));
        return a;
    }
    throw ValidationError("unknown A operator: " + o.a_kind);
}

// Problem-size resolution: instance-based Hamiltonians take N from the file,
// standalone ones (ising, h0) from --n.
int resolve_n(const CommonOpts& o, const std::optional<Instance>& inst) {
    if (inst) {
        if (o.n != 0 && o.n != inst->n_qubits())
            throw ValidationError("--n disagrees with the instance file");
        return inst->n_qubits();
    }
    if (o.n == 0)
        throw ValidationError("either --instance or --n is required");
    return o.n;
}

OperatorMatrix build_hamiltonian(const CommonOpts& o, const std::optional<Instance>& inst, int n) {
    const bool needs_instance = o.ham == "hp" || o.ham == "hent" || o.ham == "hent-general";
    if (needs_instance && !inst)
        throw ValidationError("--ham " + o.ham + " requires --instance");
    if (o.ham == "hp") return build_hp(*inst);
    if (o.ham == "hent")
        return build_hent(*inst, ClauseAssignment::uniform(*inst, make_a_operator(o, n)));
    if (o.ham == "hent-general")
        return build_hent_general(*inst, PairAssignment::uniform(*inst, make_a_operator(o, n)));
    if (o.ham == "ising") return build_ising(n);
    if (o.ham == "h0") return build_h0_transverse(n);
    throw ValidationError("unknown Hamiltonian: " + o.ham);
}

std::vector<int> parse_cut(const std::string& spec, int n) {
    if (spec.empty()) return default_keep(n);
    std::vector<int> keep;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-');
        try {
            if (dash == std::string::npos) {
                keep.push_back(std::stoi(item));
            } else {
                const int lo = std::stoi(item.substr(0, dash));
                const int hi = std::stoi(item.substr(dash + 1));
                for (int q = lo; q <= hi; ++q) keep.push_back(q);
            }
        } catch (const std::logic_error&) {
            throw ValidationError("cannot parse cut spec: " + spec);
        }
    }
    if (keep.empty())
        throw ValidationError("cut spec selects no qubits: " + spec);
    return keep;
}

// stdout unless --out was given.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw ValidationError("cannot write output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void write_json_to(const std::string& path, const nlohmann::json& j) {
    if (path.empty()) {
        std::cerr << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write report file: " + path);
    out << j.dump(2) << '\n';
}

int cmd_gen(int n, int m, int solutions, std::uint64_t seed, int max_tries,
            const std::string& out_path) {
    int attempts = 0;
    const Instance inst = random_instance(n, m, solutions, seed, max_tries, &attempts);
    write_instance_file(out_path, inst);

    nlohmann::json sidecar;
    sidecar["n_qubits"] = inst.n_qubits();
    sidecar["n_clauses"] = inst.n_clauses();
    sidecar["seed"] = seed;
    sidecar["attempts"] = attempts;
    auto& sols = sidecar["solutions"] = nlohmann::json::array();
    auto& idx = sidecar["basis_indices"] = nlohmann::json::array();
    for (const BitString& z : enumerate_satisfying(inst)) {
        sols.push_back(z.bits());
        idx.push_back(z.basis_index());
    }
    std::ofstream side(out_path + ".solutions.json");
    if (!side)
        throw ValidationError("cannot write sidecar next to " + out_path);
    side << sidecar.dump(2) << '\n';
    std::cerr << "instance with " << sols.size() << " solutions after " << attempts
              << " attempts -> " << out_path << '\n';
    return 0;
}

int cmd_solve(const CommonOpts& o) {
    const auto inst = load_instance(o);
    if (!inst)
        throw ValidationError("solve requires --instance");
    const auto sat = enumerate_satisfying(*inst, o.exhaustive_cap);
    OutputTarget out(o.out_path);
    out.stream() << inst->n_qubits() << ' ' << sat.size() << '\n';
    for (const BitString& z : sat) {
        for (int q = 1; q <= z.size(); ++q)
            out.stream() << (q > 1 ? " " : "") << z.bit(q);
        out.stream() << '\n';
    }
    return 0;
}

int cmd_spectrum(const CommonOpts& o, const std::string& export_op,
                 const std::string& export_format) {
    const auto inst = load_instance(o);
    const int n = resolve_n(o, inst);
    const OperatorMatrix h = build_hamiltonian(o, inst, n);
    if (!export_op.empty()) {
        std::ofstream out(export_op);
        if (!out)
            throw ValidationError("cannot write operator file: " + export_op);
        write_operator_coo(out, h, export_format == "diag");
    }
    const Eigen::VectorXd ev = eigenvalues_only(h, o.dim_cap);
    OutputTarget out(o.out_path);
    write_spectrum_csv(out.stream(), ev);
    return 0;
}

int cmd_entropy(const CommonOpts& o, const std::string& cut_spec, const std::string& window,
                const std::string& report_path, bool strict) {
    const auto inst = load_instance(o);
    const int n = resolve_n(o, inst);
    const std::vector<int> keep = parse_cut(cut_spec, n);
    const OperatorMatrix h = build_hamiltonian(o, inst, n);
    const SpectrumResult spec = full_spectrum(h, o.dim_cap);

    const bool instance_based = inst.has_value() && o.ham != "ising" && o.ham != "h0";
    EntropyProfile profile =
        entropy_profile(spec, n, keep, instance_based ? &*inst : nullptr, o.tol, 1e-6,
                        o.exhaustive_cap);

    if (window == "first-quarter") {
        const std::size_t quarter = (profile.records.size() + 3) / 4;
        profile.records.resize(quarter);
    } else if (window != "all") {
        throw ValidationError("unknown --window: " + window);
    }

    OutputTarget out(o.out_path);
    write_entropy_csv(out.stream(), profile);

    bool ok = true;
    if (instance_based) {
        const GroundSpaceReport ground = ground_space_check(*inst, spec, o.tol, o.exhaustive_cap);
        FrustrationReport frustration;
        if (o.ham == "hent")
            frustration = verify_frustration_free(*inst, o.tol, h, o.exhaustive_cap);
        else
            frustration = verify_frustration_free(*inst, o.tol, o.exhaustive_cap);
        nlohmann::json report;
        report["ground_space"] = report_json(ground);
        report["frustration_free"] = report_json(frustration);
        report["rebased_ground"] = profile.rebased_ground;
        write_json_to(report_path, report);
        ok = ground.pass() && frustration.status != FrustrationReport::Status::Fail;
    }
    return strict && !ok ? 3 : 0;
}

int cmd_gapscan(const CommonOpts& o, int grid_points, const std::string& summary_path) {
    const auto inst = load_instance(o);
    const int n = resolve_n(o, inst);
    if (o.ham != "hp" && o.ham != "hent")
        throw ValidationError("gapscan supports --ham hp or hent");
    const OperatorMatrix h = build_hamiltonian(o, inst, n);
    const GapScan scan = gap_scan(build_h0_transverse(n), h, uniform_grid(grid_points), o.dim_cap);
    OutputTarget out(o.out_path);
    write_gapscan_csv(out.stream(), scan);
    write_json_to(summary_path, gapscan_summary_json(scan));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"NAE-3SAT problem Hamiltonians: construction, exact diagonalization,\n"
                 "eigenstate entanglement profiles, and adiabatic gap scans."};
    app.require_subcommand(1);
    app.footer("Environment: ENTSAT_EXHAUSTIVE_CAP overrides the default exhaustive-search\n"
               "cap of 24 qubits (per-run --exhaustive-cap wins over the environment).\n"
               "Exit codes: 0 ok, 1 input error, 2 resource cap, 3 failed check with --strict.");

    CommonOpts o;
    int gen_n = 0, gen_m = 0, gen_solutions = 2, gen_max_tries = 1000;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    std::string export_op, export_format = "coo";
    std::string cut_spec, window = "all", report_path, summary_path;
    int grid_points = 101;
    bool strict = false;

    auto add_common = [&](CLI::App* cmd, bool with_ham) {
        cmd->add_option("--instance", o.instance_path, "instance file (.json or text)");
        cmd->add_option("--exhaustive-cap", o.exhaustive_cap,
                        "max qubits for exhaustive enumeration");
        if (with_ham) {
            cmd->add_option("--n", o.n, "qubit count for instance-free Hamiltonians");
            cmd->add_option("--ham", o.ham, "hp | hent | hent-general | ising | h0")
                ->check(CLI::IsMember({"hp", "hent", "hent-general", "ising", "h0"}));
            cmd->add_option("--a", o.a_kind, "sandwich operator: uniform-x | identity | from-file")
                ->check(CLI::IsMember({"uniform-x", "identity", "from-file"}));
            cmd->add_option("--a-file", o.a_file, "coordinate-format operator for --a from-file");
            cmd->add_option("--dim-cap", o.dim_cap, "max matrix dimension to diagonalize");
            cmd->add_option("--tol", o.tol, "verification tolerance");
        }
        cmd->add_option("--out", o.out_path, "output file (default: stdout)");
    };

    CLI::App* gen = app.add_subcommand("gen", "generate an instance with a fixed solution count");
    gen->add_option("--n", gen_n, "qubit count")->required();
    gen->add_option("--m", gen_m, "clause count")->required();
    gen->add_option("--solutions", gen_solutions, "target number of satisfying assignments");
    gen->add_option("--seed", gen_seed, "generator seed")->required();
    gen->add_option("--max-tries", gen_max_tries, "rejection-sampling attempt budget");
    gen->add_option("--out", gen_out, "instance file to write")->required();

    CLI::App* solve = app.add_subcommand("solve", "brute-force satisfying assignments");
    add_common(solve, false);

    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of a Hamiltonian");
    add_common(spectrum, true);
    spectrum->add_option("--export-op", export_op, "also write the operator in coordinate format");
    spectrum->add_option("--export-format", export_format, "coo | diag")
        ->check(CLI::IsMember({"coo", "diag"}));

    CLI::App* entropy = app.add_subcommand("entropy", "per-eigenstate entanglement entropy");
    add_common(entropy, true);
    entropy->add_option("--cut", cut_spec, "kept qubits, e.g. 1-4,7 (default 1..N/2)");
    entropy->add_option("--window", window, "all | first-quarter")
        ->check(CLI::IsMember({"all", "first-quarter"}));
    entropy->add_option("--report", report_path, "verification JSON file (default: stderr)");
    entropy->add_flag("--strict", strict, "exit 3 when a verification report fails");

    CLI::App* gapscan = app.add_subcommand("gapscan", "spectral gaps along the linear schedule");
    add_common(gapscan, true);
    gapscan->add_option("--grid", grid_points, "number of schedule points");
    gapscan->add_option("--summary", summary_path, "minima JSON file (default: stderr)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_n, gen_m, gen_solutions, gen_seed, gen_max_tries, gen_out);
        if (solve->parsed()) return cmd_solve(o);
        if (spectrum->parsed()) return cmd_spectrum(o, export_op, export_format);
        if (entropy->parsed()) return cmd_entropy(o, cut_spec, window, report_path, strict);
        if (gapscan->parsed()) return cmd_gapscan(o, grid_points, summary_path);
    } catch (const ResourceCapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const GenerationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
