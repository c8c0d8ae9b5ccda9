#include "pfn/experiment.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pfn/rng.hpp"

namespace pfn {

namespace {

const char* kVersion = "pfn 0.1.0";

} // namespace

std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 2) return {0.0, 0.0};
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    double slope = sxx == 0.0 ? 0.0 : sxy / sxx;
    double intercept = my - slope * mx;
    return {slope, std::exp(intercept)};
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.spec = spec;
    rep.version = kVersion;

    const bool is_incidence = spec.family.rfind("incidence_", 0) == 0;
    const bool is_joints = spec.family == "joints_axis_grid";
    if (!is_incidence && !is_joints) {
        throw std::invalid_argument("unknown experiment family: " + spec.family);
    }
    if (is_incidence && spec.bound == "joints") {
        throw std::invalid_argument("refused: joints bound paired with an incidence generator");
    }
    if (is_joints && spec.bound != "joints") {
        throw std::invalid_argument("refused: incidence bound paired with the joints generator");
    }

    std::vector<double> xs, ys;
    for (std::size_t li = 0; li < spec.ladder.size(); ++li) {
        long k = spec.ladder[li];
        ExperimentRow row;
        row.size_param = k;
        Rng ladder_rng(spec.seed);
        std::uint64_t inst_seed = ladder_rng.split(static_cast<std::uint64_t>(k)).next_u64();

        if (is_incidence) {
            IncidenceGenParams gp;
            IncidenceInstance inst;
            if (spec.family == "incidence_line_grid") {
                gp.k = k;
                inst = gen_incidence("line_grid", gp, inst_seed);
            } else if (spec.family == "incidence_circles") {
                gp.centers = k;
                gp.point_count = 4;
                inst = gen_incidence("circles", gp, inst_seed);
            } else if (spec.family == "incidence_exp") {
                gp.curve_count = k;
                gp.point_count = k;
                inst = gen_incidence("exp_curves", gp, inst_seed);
            } else {
                throw std::invalid_argument("unknown experiment family: " + spec.family);
            }
            IncidenceCount cnt = count_incidences(inst);
            row.points = static_cast<long>(inst.points.size());
            row.curves = static_cast<long>(inst.curves.size());
            row.measured = cnt.count;
            row.uncertain = static_cast<long>(cnt.uncertain.size());

            BoundQuery q;
            q.n = 2;
            q.r = spec.r;
            q.s = spec.s;
            q.t = spec.t;
            q.eps = spec.eps;
            q.cardinalities = {Rational(row.points), Rational(row.curves)};
            if (spec.bound == "st_plane") {
                row.bound_at_c1 = st_bound(q, true).approx;
            } else if (spec.bound == "kst") {
                row.bound_at_c1 = kst_bound(q).approx;
            } else {
                throw std::invalid_argument("unknown bound: " + spec.bound);
            }
            xs.push_back(static_cast<double>(row.points));
        } else {
            JointsInstance inst = gen_joints_axis_grid(k);
            JointsResult jr = find_joints(inst);
            row.points = static_cast<long>(jr.joints.size());
            row.curves = static_cast<long>(inst.families[0].size());
            row.measured = static_cast<long>(jr.joints.size());
            row.uncertain = static_cast<long>(jr.uncertain.size());
            BoundQuery q;
            q.n = 3;
            q.r = spec.r;
            q.eps = spec.eps;
            q.cardinalities = {Rational(row.curves), Rational(row.curves), Rational(row.curves)};
            row.bound_at_c1 = joints_bound(q).approx;
            xs.push_back(static_cast<double>(row.curves));
        }
        row.ratio = row.bound_at_c1 > 0.0 ? static_cast<double>(row.measured) / row.bound_at_c1 : 0.0;
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        ys.push_back(static_cast<double>(row.measured));
        rep.rows.push_back(row);
    }

    auto [slope, constant] = loglog_fit(xs, ys);
    rep.fitted_exponent = slope;
    rep.fitted_constant = constant;
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

std::string experiment_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "generator,n,r,s,t,size_param,points,curves,measured,bound_at_c1,ratio,fitted_exponent\n";
    int n = report.spec.family == "joints_axis_grid" ? 3 : 2;
    os.precision(12);
    for (const ExperimentRow& row : report.rows) {
        os << report.spec.family << "," << n << "," << report.spec.r << "," << report.spec.s << ","
           << report.spec.t << "," << row.size_param << "," << row.points << "," << row.curves
           << "," << row.measured << "," << row.bound_at_c1 << "," << row.ratio << ","
           << report.fitted_exponent << "\n";
    }
    return os.str();
}

} // namespace pfn
