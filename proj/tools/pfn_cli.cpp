#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "pfn/serialize.hpp"
#include "pfn/svg.hpp"

namespace {

using pfn::Json;

constexpr std::uint64_t kDefaultSeed = 0xC0FFEE; // documented reproducibility default

enum ExitCode { kOk = 0, kCertifiedFailure = 1, kInputError = 2, kBudgetExhausted = 3 };

Json read_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    Json j;
    in >> j;
    return j;
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << payload << "\n";
}

std::vector<std::vector<pfn::Point>> collections_from_json(const Json& j) {
    std::vector<std::vector<pfn::Point>> out;
    for (const Json& col : j) {
        std::vector<pfn::Point> pts;
        for (const Json& p : col) pts.push_back(pfn::point_from_json(p));
        out.push_back(std::move(pts));
    }
    return out;
}

int run_bounds(const Json& in, const std::string& output) {
    pfn::BoundQuery q = pfn::bound_query_from_json(in.at("query"));
    std::string name = in.at("bound").get<std::string>();
    pfn::BoundValue v;
    if (name == "khovanskii") {
        v = pfn::khovanskii_bound(q);
    } else if (name == "khovanskii_degenerate") {
        std::string variant = in.value("variant", std::string("stated"));
        if (variant == "max") {
            v = pfn::khovanskii_degenerate_max(q);
        } else {
            v = pfn::khovanskii_degenerate_bound(q, variant == "substituted"
                                                        ? pfn::DegenerateVariant::substituted
                                                        : pfn::DegenerateVariant::stated);
        }
    } else if (name == "component") {
        v = pfn::component_bound(q);
    } else if (name == "partition_guarantee") {
        std::string kind = in.value("kind", std::string("poly"));
        v = pfn::partition_guarantee(
            q, kind == "pfaffian" ? pfn::PartitionKind::pfaffian : pfn::PartitionKind::poly);
    } else if (name == "kst") {
        v = pfn::kst_bound(q);
    } else if (name == "st") {
        v = pfn::st_bound(q, in.value("plane", q.n == 2));
    } else if (name == "joints") {
        v = pfn::joints_bound(q);
    } else if (name == "irreducible_components") {
        v = pfn::irreducible_component_bound(q);
    } else {
        throw std::invalid_argument("unknown bound name: " + name);
    }
    Json out{{"query", pfn::bound_query_to_json(q)},
             {"bound_name", name},
             {"value", pfn::bound_value_to_json(v)}};
    write_output(output, out.dump(2));
    return v.invalid ? kInputError : kOk;
}

int run_roots(const Json& in, const std::string& output, std::uint64_t seed, long budget) {
    pfn::PfaffianFunction f = pfn::function_from_json(in.at("f"));
    pfn::SolveConfig cfg =
        in.contains("config") ? pfn::solve_config_from_json(in.at("config")) : pfn::SolveConfig{};
    cfg.seed = seed;
    if (budget > 0) cfg.budget = budget;
    pfn::Rational lo = pfn::rational_from_json(in.at("domain").at(0));
    pfn::Rational hi = pfn::rational_from_json(in.at("domain").at(1));
    pfn::RootResult r = pfn::isolate_roots_1d(f, lo, hi, cfg);
    write_output(output, pfn::root_result_to_json(r).dump(2));
    if (pfn::Rational(static_cast<long>(r.roots.size())) > r.khovanskii) return kCertifiedFailure;
    return r.complete ? kOk : kBudgetExhausted;
}

int run_components(const Json& in, const std::string& output, std::uint64_t seed, long budget) {
    pfn::MultiPoly P = pfn::poly_from_json(in.at("P"));
    pfn::ParametricCurve curve = pfn::curve_from_json(in.at("curve"));
    pfn::SolveConfig cfg =
        in.contains("config") ? pfn::solve_config_from_json(in.at("config")) : pfn::SolveConfig{};
    cfg.seed = seed;
    if (budget > 0) cfg.budget = budget;
    pfn::ComponentCount c = pfn::components_along_curve(P, curve, cfg);
    write_output(output, pfn::component_count_to_json(c).dump(2));
    return c.complete ? kOk : kBudgetExhausted;
}

int run_solve2d(const Json& in, const std::string& output, std::uint64_t seed, long budget) {
    pfn::ChainPtr chain = pfn::chain_from_json(in.at("chain"));
    pfn::PfaffianFunction f1(chain, pfn::poly_from_json(in.at("Q1")));
    pfn::PfaffianFunction f2(chain, pfn::poly_from_json(in.at("Q2")));
    pfn::SolveConfig cfg =
        in.contains("config") ? pfn::solve_config_from_json(in.at("config")) : pfn::SolveConfig{};
    cfg.seed = seed;
    if (budget > 0) cfg.budget = budget;
    const Json& b = in.at("box");
    pfn::Box2 box{pfn::Interval(b.at(0).at(0).get<double>(), b.at(0).at(1).get<double>()),
                  pfn::Interval(b.at(1).at(0).get<double>(), b.at(1).at(1).get<double>())};
    pfn::Solve2dResult r =
        pfn::solve_system_2d(f1, f2, box, cfg, in.value("eps_cascade_mode", false));
    write_output(output, pfn::solve2d_result_to_json(r).dump(2));
    if (pfn::Rational(static_cast<long>(r.solutions.size())) > r.bound) return kCertifiedFailure;
    return r.complete ? kOk : kBudgetExhausted;
}

int run_partition(const Json& in, const std::string& output, std::uint64_t seed, long budget,
                  const std::string& format, bool pfaffian) {
    auto collections = collections_from_json(in.at("collections"));
    int D = in.at("D").get<int>();
    double tol = in.value("tol", 0.05);
    long search_budget = budget > 0 ? budget : in.value("budget", 40000L);
    if (in.contains("seed")) seed = in.at("seed").get<std::uint64_t>();

    if (pfaffian) {
        pfn::ChainPtr chain = pfn::chain_from_json(in.at("chain"));
        pfn::PfaffianPartition pp =
            pfn::pfaffian_partition(collections, chain, D, tol, search_budget, seed);
        write_output(output, pfn::pfaffian_partition_to_json(pp).dump(2));
        return pp.lifted.met_tolerance ? kOk : kBudgetExhausted;
    }
    int n = in.contains("n") ? in.at("n").get<int>()
                             : (collections.empty() || collections[0].empty()
                                    ? 2
                                    : static_cast<int>(collections[0][0].size()));
    pfn::Partition part = pfn::build_partition(collections, n, D, tol, search_budget, seed);
    if (format == "svg") {
        if (n != 2) throw std::invalid_argument("svg output is only valid for plane partitions");
        write_output(output, pfn::render_partition_svg(part, collections));
    } else {
        write_output(output, pfn::partition_to_json(part).dump(2));
    }
    return part.met_tolerance ? kOk : kBudgetExhausted;
}

int run_incidence(const Json& in, const std::string& output, std::uint64_t seed,
                  const std::string& format) {
    if (in.contains("experiment")) {
        pfn::ExperimentSpec spec = pfn::experiment_spec_from_json(in.at("experiment"));
        if (!in.at("experiment").contains("seed")) spec.seed = seed;
        pfn::ExperimentReport rep = pfn::run_experiment(spec);
        write_output(output, format == "csv" ? pfn::experiment_csv(rep)
                                             : pfn::experiment_report_to_json(rep).dump(2));
        return kOk;
    }
    pfn::IncidenceInstance inst;
    if (in.contains("generate")) {
        const Json& g = in.at("generate");
        pfn::IncidenceGenParams params;
        params.k = g.value("k", params.k);
        params.curve_count = g.value("curve_count", params.curve_count);
        params.point_count = g.value("point_count", params.point_count);
        if (g.contains("rate")) params.rate = pfn::rational_from_json(g.at("rate"));
        params.concentric = g.value("concentric", params.concentric);
        params.centers = g.value("centers", params.centers);
        params.planted_kind = g.value("planted_kind", params.planted_kind);
        inst = pfn::gen_incidence(g.at("kind").get<std::string>(), params,
                                  g.value("seed", seed));
    } else {
        inst = pfn::incidence_instance_from_json(in.at("instance"));
    }
    pfn::IncidenceCount cnt = pfn::count_incidences(inst);
    Json out{{"instance", pfn::incidence_instance_to_json(inst)},
             {"result", pfn::incidence_count_to_json(cnt)}};
    if (in.value("check_kst_free", false)) {
        out["kst_free"] = pfn::kst_free(cnt.graph, inst.s_designed, inst.t_designed);
    }
    write_output(output, out.dump(2));
    return kOk;
}

int run_joints(const Json& in, const std::string& output, std::uint64_t seed,
               const std::string& format) {
    if (in.contains("experiment")) {
        pfn::ExperimentSpec spec = pfn::experiment_spec_from_json(in.at("experiment"));
        if (!in.at("experiment").contains("seed")) spec.seed = seed;
        pfn::ExperimentReport rep = pfn::run_experiment(spec);
        write_output(output, format == "csv" ? pfn::experiment_csv(rep)
                                             : pfn::experiment_report_to_json(rep).dump(2));
        return kOk;
    }
    pfn::JointsInstance inst;
    if (in.contains("grid_k")) {
        inst = pfn::gen_joints_axis_grid(in.at("grid_k").get<long>());
    } else {
        inst.n = in.value("n", 3);
        inst.seed = seed;
        for (const Json& fam : in.at("families")) {
            std::vector<pfn::ParametricCurve> curves;
            for (const Json& c : fam) curves.push_back(pfn::curve_from_json(c));
            inst.families.push_back(std::move(curves));
        }
    }
    double tol_span = in.value("tol_span", 1e-9);
    pfn::JointsResult r = pfn::find_joints(inst, tol_span);
    write_output(output, pfn::joints_result_to_json(r).dump(2));
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pfaffian partitioning toolkit: certified counting, bound evaluation, "
                 "partitioning, and incidence/joints experiments"};
    app.require_subcommand(1);

    std::string input, output, format = "json";
    std::uint64_t seed = kDefaultSeed;
    int precision = 53;
    int threads = 1;
    long budget = 0;
    app.add_option("--input", input, "input JSON file")->required(false);
    app.add_option("--output", output, "output file ('-' for stdout)");
    app.add_option("--seed", seed, "root seed (default 0xC0FFEE)");
    app.add_option("--precision", precision, "evaluation precision in bits");
    app.add_option("--format", format, "json | csv | svg")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
    app.add_option("--threads", threads, "worker threads for experiments");
    app.add_option("--budget", budget, "node/iteration budget override");

    app.fallthrough(); // global flags may follow the subcommand
    auto* bounds = app.add_subcommand("bounds", "evaluate a closed-form bound");
    auto* roots = app.add_subcommand("roots", "isolate roots of a 1-d Pfaffian function");
    auto* components = app.add_subcommand("components", "components of a curve minus a zero set");
    auto* solve2d = app.add_subcommand("solve2d", "certified 2-d Pfaffian system solving");
    auto* partition = app.add_subcommand("partition", "polynomial partitioning of point sets");
    auto* pfaffian_part =
        app.add_subcommand("pfaffian-partition", "partitioning through the chain-graph lift");
    auto* incidence = app.add_subcommand("incidence", "incidence counting and experiments");
    auto* joints = app.add_subcommand("joints", "joint detection and experiments");

    CLI11_PARSE(app, argc, argv);

    try {
        pfn::set_precision_bits(precision);
        if (threads < 1) throw std::invalid_argument("threads must be >= 1");
        Json in = input.empty() ? Json::object() : read_input(input);
        if (bounds->parsed()) return run_bounds(in, output);
        if (roots->parsed()) return run_roots(in, output, seed, budget);
        if (components->parsed()) return run_components(in, output, seed, budget);
        if (solve2d->parsed()) return run_solve2d(in, output, seed, budget);
        if (partition->parsed()) return run_partition(in, output, seed, budget, format, false);
        if (pfaffian_part->parsed()) return run_partition(in, output, seed, budget, format, true);
        if (incidence->parsed()) return run_incidence(in, output, seed, format);
        if (joints->parsed()) return run_joints(in, output, seed, format);
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCertifiedFailure;
    }
    return kInputError;
}
