#pragma once

#include <string>

#include "pfn/bounds.hpp"
#include "pfn/incidence.hpp"
#include "pfn/joints.hpp"

namespace pfn {

struct ExperimentSpec {
    /// incidence_line_grid | incidence_circles | incidence_exp | joints_axis_grid
    std::string family = "incidence_line_grid";
    /// paired bound: st_plane | kst | joints
    std::string bound = "st_plane";
    std::vector<long> ladder = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    std::uint64_t seed = 0xC0FFEE;
    int s = 2, t = 2, r = 0;
    Rational eps = 0;
};

struct ExperimentRow {
    long size_param = 0; // ladder value k
    long points = 0;
    long curves = 0;
    long measured = 0;
    long uncertain = 0;
    double bound_at_c1 = 0.0;
    double ratio = 0.0;
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<ExperimentRow> rows;
    double fitted_exponent = 0.0; // log-log slope of measured vs points
    double fitted_constant = 0.0; // exp(intercept)
    double max_ratio = 0.0;
    double wall_ms = 0.0;
    std::string version;
};

/// Runs the named generator over the ladder, measures counts with certified
/// counting, evaluates the paired bound with all constants 1, and fits the
/// growth exponent by least squares on the log-log cloud. Generator/bound
/// mismatches are refused.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Least-squares slope and intercept of log(y) against log(x); zero sizes
/// are skipped.
std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

std::string experiment_csv(const ExperimentReport& report);

} // namespace pfn
