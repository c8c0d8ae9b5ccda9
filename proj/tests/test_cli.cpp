#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pfn/rng.hpp"
#include "pfn/serialize.hpp"

using namespace pfn;

namespace {

struct CliRun {
    int exit_code = -1;
    Json output;
};

CliRun run_cli(const std::string& args, const Json& input, const std::string& tag) {
    std::string in_path = "/tmp/pfn_cli_in_" + tag + ".json";
    std::string out_path = "/tmp/pfn_cli_out_" + tag + ".json";
    {
        std::ofstream f(in_path);
        f << input.dump();
    }
    std::string cmd = std::string(PFN_CLI_PATH) + " " + args + " --input " + in_path +
                      " --output " + out_path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    CliRun r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream f(out_path);
    if (f) {
        try {
            f >> r.output;
        } catch (...) {
        }
    }
    std::remove(in_path.c_str());
    std::remove(out_path.c_str());
    return r;
}

} // namespace

TEST_CASE("bounds subcommand evaluates the Bezout case") {
    Json in{{"bound", "khovanskii"},
            {"query", {{"n", 2}, {"r", 0}, {"betas", Json::array({2, 3})}}}};
    CliRun r = run_cli("bounds", in, "bezout");
    CHECK(r.exit_code == 0);
    CHECK(r.output.at("bound_name") == "khovanskii");
    CHECK(r.output.at("value").at("exact") == "6");
}

TEST_CASE("roots subcommand isolates e^t = 2") {
    ChainPtr chain = make_chain(ChainKind::exp, {Rational(1)});
    MultiPoly q(2);
    q.add_term({0, 1}, Rational(1));
    q.add_term({0, 0}, Rational(-2));
    Json in{{"f", function_to_json(PfaffianFunction(chain, q))},
            {"domain", Json::array({-2, 2})}};
    CliRun r = run_cli("roots", in, "ln2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.at("count") == 1);
    CHECK(r.output.at("khovanskii_bound") == "2");
}

TEST_CASE("partition subcommand reports cells and loads") {
    Rng rng(2718);
    Json cols = Json::array();
    Json col = Json::array();
    for (int i = 0; i < 64; ++i) {
        col.push_back(Json::array({Json(std::to_string(rng.uniform_int(0, 996)) + "/997"),
                                   Json(std::to_string(rng.uniform_int(0, 990)) + "/991")}));
    }
    cols.push_back(col);
    Json in{{"collections", cols}, {"D", 4}, {"tol", 0.05}};
    CliRun r = run_cli("partition --seed 9", in, "part");
    CHECK(r.exit_code == 0);
    CHECK(r.output.at("schedule").at("s") == 2);
    CHECK(r.output.at("cells").size() <= 4);
}

TEST_CASE("malformed input exits with the input-error code") {
    std::string in_path = "/tmp/pfn_cli_bad.json";
    {
        std::ofstream f(in_path);
        f << "{ not json";
    }
    std::string cmd = std::string(PFN_CLI_PATH) + " bounds --input " + in_path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 2);
    std::remove(in_path.c_str());
}

TEST_CASE("incidence experiment emits CSV when asked") {
    Json in{{"experiment",
             {{"family", "incidence_line_grid"}, {"bound", "st_plane"},
              {"ladder", Json::array({2, 3, 4})}}}};
    std::string in_path = "/tmp/pfn_cli_exp.json";
    std::string out_path = "/tmp/pfn_cli_exp.csv";
    {
        std::ofstream f(in_path);
        f << in.dump();
    }
    std::string cmd = std::string(PFN_CLI_PATH) + " incidence --format csv --input " + in_path +
                      " --output " + out_path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 0);
    std::ifstream f(out_path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string csv = ss.str();
    CHECK(csv.find("generator,n,r,s,t,size_param") != std::string::npos);
    CHECK(csv.find("incidence_line_grid") != std::string::npos);
    std::remove(in_path.c_str());
    std::remove(out_path.c_str());
}

TEST_CASE("svg rendering of a plane partition") {
    Rng rng(999);
    Json cols = Json::array();
    Json col = Json::array();
    for (int i = 0; i < 32; ++i) {
        col.push_back(Json::array({Json(std::to_string(rng.uniform_int(0, 996)) + "/997"),
                                   Json(std::to_string(rng.uniform_int(0, 990)) + "/991")}));
    }
    cols.push_back(col);
    Json in{{"collections", cols}, {"D", 4}};
    std::string in_path = "/tmp/pfn_cli_svg_in.json";
    std::string out_path = "/tmp/pfn_cli_svg_out.svg";
    {
        std::ofstream f(in_path);
        f << in.dump();
    }
    std::string cmd = std::string(PFN_CLI_PATH) + " partition --format svg --input " + in_path +
                      " --output " + out_path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 0);
    std::ifstream f(out_path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().rfind("<svg", 0) == 0);
    std::remove(in_path.c_str());
    std::remove(out_path.c_str());
}

TEST_CASE("deterministic payloads for equal seeds") {
    ChainPtr chain = make_chain(ChainKind::exp, {Rational(1)});
    MultiPoly q(2);
    q.add_term({2, 0}, Rational(1));
    q.add_term({0, 1}, Rational(1));
    q.add_term({0, 0}, Rational(-3));
    Json in{{"f", function_to_json(PfaffianFunction(chain, q))},
            {"domain", Json::array({-3, 3})}};
    CliRun a = run_cli("roots --seed 42", in, "det_a");
    CliRun b = run_cli("roots --seed 42", in, "det_b");
    CHECK(a.exit_code == 0);
    CHECK(a.output.dump() == b.output.dump());
}
