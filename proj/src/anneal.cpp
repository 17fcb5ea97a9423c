#include "entsat/anneal.hpp"

#include <ostream>
#include <string>

namespace entsat {

OperatorMatrix interpolate(const OperatorMatrix& h0, const OperatorMatrix& hp, double s) {
    if (h0.dim() != hp.dim() || h0.n_qubits() != hp.n_qubits())
        throw ValidationError("interpolation endpoints have mismatched dimensions");
    if (!(s >= 0.0 && s <= 1.0))
        throw ValidationError("schedule parameter s must lie in [0,1]");
    return linear_combination(1.0 - s, h0, s, hp);
}

std::vector<double> uniform_grid(int points) {
    if (points < 3)
        throw ValidationError("grid needs at least 3 points");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
    return grid;
}

GapScan gap_scan(const OperatorMatrix& h0, const OperatorMatrix& hp,
                 const std::vector<double>& s_grid, Eigen::Index dim_cap) {
    if (h0.dim() < 3)
        throw ValidationError("gap scan needs at least 3 levels");
    if (s_grid.size() < 3)
        throw ValidationError("gap scan grid needs at least 3 points");
    if (s_grid.front() != 0.0 || s_grid.back() != 1.0)
        throw ValidationError("gap scan grid must cover s=0 and s=1");
    for (std::size_t i = 0; i + 1 < s_grid.size(); ++i)
        if (!(s_grid[i] < s_grid[i + 1]))
            throw ValidationError("gap scan grid must be strictly increasing");

    GapScan scan;
    scan.records.reserve(s_grid.size());
    for (double s : s_grid) {
        Eigen::VectorXd ev;
        try {
            ev = eigenvalues_only(interpolate(h0, hp, s), dim_cap);
        } catch (const ResourceCapError& e) {
            throw ResourceCapError(std::string(e.what()) + " (at s=" + std::to_string(s) + ")");
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(std::string(e.what()) + " (at s=" + std::to_string(s) + ")");
        }
        scan.records.push_back({s, ev[1] - ev[0], ev[2] - ev[0]});
    }

    scan.min_gap01 = scan.records.front().gap01;
    scan.s_at_min_gap01 = scan.records.front().s;
    scan.min_gap02 = scan.records.front().gap02;
    scan.s_at_min_gap02 = scan.records.front().s;
    for (const GapRecord& r : scan.records) {
        if (r.gap01 < scan.min_gap01) {
            scan.min_gap01 = r.gap01;
            scan.s_at_min_gap01 = r.s;
        }
        if (r.gap02 < scan.min_gap02) {
            scan.min_gap02 = r.gap02;
            scan.s_at_min_gap02 = r.s;
        }
    }
    return scan;
}

void write_gapscan_csv(std::ostream& out, const GapScan& scan) {
    out << "s,gap01,gap02\n";
    out.precision(12);
    for (const GapRecord& r : scan.records)
        out << r.s << ',' << r.gap01 << ',' << r.gap02 << '\n';
}

nlohmann::json gapscan_summary_json(const GapScan& scan) {
    return {{"min_gap01", scan.min_gap01},
            {"s_at_min_gap01", scan.s_at_min_gap01},
            {"min_gap02", scan.min_gap02},
            {"s_at_min_gap02", scan.s_at_min_gap02},
            {"grid_points", scan.records.size()}};
}

} // namespace entsat
