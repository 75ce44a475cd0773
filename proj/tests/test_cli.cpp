#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "entrocone/analysis.hpp"
#include "entrocone/cli.hpp"

using namespace entrocone;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content)
{
    auto path = std::filesystem::temp_directory_path() / ("entrocone_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_CASE("verify prints a tight report")
{
    auto r = run({"verify", "pn:4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("rays: 10") != std::string::npos);
    CHECK(r.out.find("verdict: tight") != std::string::npos);
    CHECK(run({"verify", "bell"}).code == 1);
}

TEST_CASE("bc-eval on deterministic tables prints zero")
{
    auto path = temp_file("det.json", R"({"x_size": 2, "y_size": 2, "tables": {
        "00": [1, 0, 0, 0], "01": [1, 0, 0, 0], "10": [1, 0, 0, 0], "11": [1, 0, 0, 0]}})");
    auto r = run({"bc-eval", path});
    CHECK(r.code == 0);
    CHECK(r.out == "0\n");
    auto j = run({"--format", "json", "bc-eval", path});
    CHECK(j.out.find("\"value\": 0.0") != std::string::npos);

    auto bad = temp_file("bad.json", R"({"x_size": 2, "y_size": 2, "tables": {"00": [1, 0, 0, 0]}})");
    auto e = run({"bc-eval", bad});
    CHECK(e.code == 1);
    CHECK(e.err.find("tables.01") != std::string::npos);
}

TEST_CASE("argument errors")
{
    CHECK(run({}).code == 1);
    CHECK(run({"outer", "pn:3", "--bogus"}).code == 1);
    CHECK(run({"outer", "pn:3", "verify", "pn:3"}).code == 1);
    CHECK(run({"--format", "xml", "outer", "pn:3"}).code == 1);
    CHECK(run({"outer", "nowhere.json"}).code == 1);
    CHECK(run({"bc-cone", "7"}).code == 1);

    auto g = run({"marginalize", "pn:4"});
    CHECK(g.code == 1);
    CHECK(g.err.find("--max-nodes") != std::string::npos);
    CHECK(run({"--max-nodes", "4", "marginalize", "bell"}).code == 1);
    CHECK(run({"marginalize", "bell"}).code == 0);
}

TEST_CASE("output is the library report, byte for byte")
{
    auto r = run({"--format", "json", "outer", "bell"});
    CHECK(r.code == 0);
    CHECK(r.out == analysis::report_to_json(analysis::observed_outer_cone(causal::build_bell_structure())) + "\n");
    CHECK(run({"--format", "json", "outer", "bell"}).out == r.out);

    auto t = run({"verify", "pn:3"});
    CHECK(t.out == analysis::report_to_text(analysis::verify_line_tightness(3)));
}

TEST_CASE("rays and facets of cone files")
{
    auto h = temp_file("quad_h.json", R"({"dimension": 2, "inequalities": [[1, 0], [0, 1], [1, 1]]})");
    auto r = run({"--format", "json", "rays", h});
    CHECK(r.code == 0);
    auto v = temp_file("quad_v.json", r.out);
    auto f = run({"--format", "json", "facets", v});
    CHECK(f.code == 0);
    auto j = nlohmann::json::parse(f.out);
    CHECK(j["inequalities"].size() == 2);
    CHECK(nlohmann::json::parse(r.out)["rays"].size() == 2);
    CHECK(run({"facets", h}).out.find("INEQUALITIES") != std::string::npos);

    auto bad = temp_file("bad_cone.json", R"({"dimension": 2, "rays": [[1]]})");
    CHECK(run({"rays", bad}).code == 1);
}

TEST_CASE("entropy of a model file")
{
    auto m = temp_file("model.json", R"({"structure": "pn:2",
        "cpts": {"X1": {"alphabet": 2, "rows": [[1, 0], [0, 1]]},
                 "X2": {"alphabet": 2, "rows": [[1, 0], [0, 1]]},
                 "C1": {"alphabet": 2, "rows": [[0.5, 0.5]]}}})");
    auto r = run({"entropy", m});
    CHECK(r.code == 0);
    CHECK(r.out == "H(X1) = 1\nH(X2) = 1\nH(X1X2) = 1\n");
    auto all = run({"entropy", "--all-nodes", m});
    CHECK(all.out.find("H(X1X2C1) = 1") != std::string::npos);
}
