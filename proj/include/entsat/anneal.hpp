#pragma once

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "entsat/operators.hpp"
#include "entsat/spectra.hpp"

namespace entsat {

struct GapRecord {
    double s;
    double gap01; // lambda_1 - lambda_0
    double gap02; // lambda_2 - lambda_0
};

/// Gap records over a schedule grid. gap01 closes at s=1 whenever the problem
/// ground space is degenerate (global flip pairs), so both minima are kept.
struct GapScan {
    std::vector<GapRecord> records;
    double min_gap01;
    double s_at_min_gap01;
    double min_gap02;
    double s_at_min_gap02;
};

/// Linear schedule (1-s) h0 + s hp.
OperatorMatrix interpolate(const OperatorMatrix& h0, const OperatorMatrix& hp, double s);

/// Uniform grid over [0,1] with exact endpoints.
std::vector<double> uniform_grid(int points);

/// Diagonalizes the interpolated Hamiltonian at every grid point.
GapScan gap_scan(const OperatorMatrix& h0, const OperatorMatrix& hp,
                 const std::vector<double>& s_grid, Eigen::Index dim_cap = default_dim_cap());

void write_gapscan_csv(std::ostream& out, const GapScan& scan);
nlohmann::json gapscan_summary_json(const GapScan& scan);

} // namespace entsat
