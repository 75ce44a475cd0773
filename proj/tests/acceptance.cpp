// Acceptance checks, one PASS/FAIL line per criterion. With arguments, only
// the listed criterion numbers run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entrocone/analysis.hpp"
#include "entrocone/cli.hpp"
#include "entrocone/distributions.hpp"
#include "entrocone/polyhedra.hpp"
#include "oracles.hpp"
#include "reference.hpp"

using namespace entrocone;
using nlohmann::json;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

void expect(Outcome& o, bool cond, const std::string& what)
{
    if (!cond && o.ok) {
        o.ok = false;
        o.detail = what;
    }
}

json run_cli(const std::vector<std::string>& args, int expected_code = 0)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (code != expected_code)
        throw std::runtime_error("exit code " + std::to_string(code) + ": " + err.str());
    return json::parse(out.str());
}

std::set<std::vector<long>> ray_set(const json& report)
{
    std::set<std::vector<long>> out;
    for (const auto& r : report["rays"]) out.insert(r["vector"].get<std::vector<long>>());
    return out;
}

std::set<std::vector<long>> ray_set(const std::vector<IntVec>& rays)
{
    std::set<std::vector<long>> out;
    for (const auto& r : rays) {
        std::vector<long> v;
        for (const auto& x : r) v.push_back(x.get_si());
        out.insert(v);
    }
    return out;
}

std::set<std::vector<long>> ray_set(const std::vector<std::vector<long>>& rays)
{
    return {rays.begin(), rays.end()};
}

// 1. Extremal rays of the four-node line cone.
Outcome line4_rays()
{
    Outcome o;
    auto r = run_cli({"--format", "json", "outer", "pn:4"});
    expect(o, r["rays"].size() == 10, "ray count " + std::to_string(r["rays"].size()));
    expect(o, ray_set(r) == ray_set(ref::line4_rays), "ray set differs from the reference table");
    return o;
}

// 2. Tightness of the line outer cone, n = 1..7.
Outcome line_tightness()
{
    Outcome o;
    for (std::size_t n = 1; n <= 7; ++n) {
        const std::string tag = "n=" + std::to_string(n) + ": ";
        auto r = run_cli({"--format", "json", "--tolerance", "1e-9", "verify", "pn:" + std::to_string(n)});
        const std::size_t expected = n * (n + 1) / 2;
        expect(o, r["rays"].size() == expected, tag + "ray count");
        expect(o, r["verdict"] == "tight", tag + "verdict");
        expect(o, r["witnesses"].size() == expected, tag + "witness count");
        std::set<std::string> hit;
        for (const auto& w : r["witnesses"]) {
            expect(o, w["positive_forms"] == 1, tag + w["name"].get<std::string>() + " positive forms");
            expect(o, w["in_cone"] == true, tag + w["name"].get<std::string>() + " not in cone");
            expect(o, w["ray"].is_string(), tag + w["name"].get<std::string>() + " matches no ray");
            if (w["ray"].is_string()) hit.insert(w["ray"].get<std::string>());
        }
        expect(o, hit.size() == expected, tag + "witness rays are not distinct");
    }
    return o;
}

// 3. Number of elemental inequalities.
Outcome elemental_counts()
{
    Outcome o;
    for (std::size_t n = 2; n <= 8; ++n) {
        const std::size_t formula = n + n * (n - 1) * (std::size_t{1} << n) / 8;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("V" + std::to_string(i));
        const auto sys = entropy::elemental_shannon_system(names);
        expect(o, sys.inequalities.size() == formula && entropy::elemental_count(n) == formula,
               "n=" + std::to_string(n));
    }
    expect(o, entropy::elemental_count(4) == 28 && entropy::elemental_count(5) == 85, "n=4 or n=5 value");
    return o;
}

// 4. Shannon plus observed d-separation equals the reduced line cone.
Outcome reduced_equivalence()
{
    Outcome o;
    for (std::size_t n = 3; n <= 6; ++n) {
        auto g = causal::build_line_structure(n);
        auto full = entropy::elemental_shannon_system(entropy::line_names(n));
        expect(o, full.index == causal::observed_index(g), "index mismatch");
        full.equalities = causal::observed_d_separation_constraints(g);
        auto reduced = entropy::reduced_line_system(n);
        reduced.equalities = entropy::run_equalities(reduced.index);
        expect(o, reduced.inequalities.size() == n * (n + 1) / 2, "reduced size");
        expect(o, poly::cones_equal(full.to_hrep(), reduced.to_hrep()), "cones differ at n=" + std::to_string(n));
    }
    return o;
}

// 5. Marginalizing the hidden node of the Bell structure gives the line cone.
Outcome marginal_consistency()
{
    Outcome o;
    const auto target = analysis::observed_outer_cone(causal::build_line_structure(4)).hrep;
    for (const std::string engine : {"fm", "dd"}) {
        const auto start = std::chrono::steady_clock::now();
        auto r = run_cli({"--format", "json", "--engine", engine, "marginalize", "bell"});
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        expect(o, secs < (engine == "fm" ? 300.0 : 60.0), engine + " over budget");
        expect(o, ray_set(r) == ray_set(ref::line4_rays), engine + ": ray set differs");
        poly::HRep h;
        h.dimension = r["coordinates"].size();
        for (const auto& e : r["equalities"]) h.equalities.push_back(to_int(e["row"].get<std::vector<long>>()));
        for (const auto& e : r["inequalities"]) h.inequalities.push_back(to_int(e["row"].get<std::vector<long>>()));
        expect(o, poly::cones_equal(h, target), engine + ": cone differs");
    }
    return o;
}

// 6. Post-selected scenario with three positions.
Outcome post_selected3()
{
    Outcome o;
    auto r = run_cli({"--format", "json", "bc-cone", "3"});
    expect(o, r["rays"].size() == 20, "ray count");
    expect(o, ray_set(r) == ray_set(ref::post_selected3_rays), "ray set differs from the reference table");
    expect(o, r["non_shannon"] == 36, "non-Shannon count " + r["non_shannon"].dump());

    const auto index = analysis::bc_marginal_index(3);
    std::vector<IntVec> eqs, ineqs;
    std::vector<bool> shannon;
    for (const auto& e : r["equalities"]) eqs.push_back(to_int(e["row"].get<std::vector<long>>()));
    for (const auto& e : r["inequalities"]) {
        ineqs.push_back(to_int(e["row"].get<std::vector<long>>()));
        shannon.push_back(e["shannon"].get<bool>());
    }
    poly::HRep h{index.size(), eqs, ineqs, {}};
    for (const auto& f : ref::post_selected3_families()) {
        const IntVec row = f.row(index);
        bool found = false;
        if (f.relation() == entropy::Relation::equal) {
            found = poly::implies_equality(h, row);
        } else {
            for (std::size_t i = 0; i < ineqs.size(); ++i)
                if (!shannon[i] && poly::same_facet(row, ineqs[i], eqs)) found = true;
        }
        expect(o, found, "family missing: " + f.to_string(index));
    }
    return o;
}

// 7. Splitting the line witnesses recovers the same rays.
Outcome split_witnesses()
{
    Outcome o;
    const auto index = analysis::bc_marginal_index(3);
    const std::vector<dist::SplitMode> modes = {dist::SplitMode::keep0, dist::SplitMode::keep1,
                                                dist::SplitMode::copy};
    poly::VRep gens;
    gens.dimension = index.size();
    std::size_t witnesses = 0;
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = i; j <= 3; ++j) {
            ++witnesses;
            const auto model = dist::witness_line(i, j, 3);
            for (auto xm : modes)
                for (auto zm : modes) {
                    auto h = dist::entropy_vector(dist::split_p3_witness(model, xm, zm), index);
                    auto s = dist::snap_to_integers(h, 1e-9);
                    expect(o, s.has_value(), "witness not integral");
                    if (s && !is_zero(*s)) gens.rays.push_back(*s);
                }
        }
    expect(o, witnesses == 6, "witness count");
    auto e = poly::extremal_subset(gens);
    expect(o, e.rays.size() == 20, "extremal subset has " + std::to_string(e.rays.size()) + " rays");
    expect(o, ray_set(e.rays) == ray_set(ref::post_selected3_rays), "ray set differs from the reference table");
    return o;
}

// 8. Post-selected scenario with four positions.
Outcome post_selected4()
{
    Outcome o;
    auto r = run_cli({"--format", "json", "bc-cone", "4"});
    expect(o, r["equalities"].size() == 16, "equality count " + std::to_string(r["equalities"].size()));
    expect(o, r["inequalities"].size() == 153, "inequality count " + std::to_string(r["inequalities"].size()));
    return o;
}

// 9. The Bell functional is nonnegative on classical line models.
Outcome bell_positivity()
{
    Outcome o;
    const std::uint64_t seed = 20240909;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> hidden(1, 4), outer(2, 3);
    const auto g = causal::build_line_structure(4);
    double worst = INFINITY;
    for (int trial = 0; trial < 1000; ++trial) {
        // X1..X4 then C1..C3; the settings X1 and X4 are binary.
        std::vector<std::size_t> alph = {2, outer(rng), outer(rng), 2, hidden(rng), hidden(rng), hidden(rng)};
        auto p = dist::observed_distribution(dist::random_model(g, alph, rng));
        auto v = dist::bc_variants(dist::conditional_tables(p, "X1", "X2", "X3", "X4"));
        for (double x : v) worst = std::min(worst, x);
    }
    std::ostringstream os;
    os << "minimum " << worst << " (seed " << seed << ")";
    expect(o, worst >= -1e-9, os.str());
    if (o.ok) o.detail = os.str();
    return o;
}

// 10. d-separated observed triples are conditionally independent.
Outcome d_separation_soundness()
{
    Outcome o;
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> alphabet(2, 3);
    std::size_t checked = 0;
    double worst = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const auto g = causal::build_line_structure(n);
        std::vector<std::size_t> alph(g.size());
        for (auto& a : alph) a = alphabet(rng);
        const auto p = dist::observed_distribution(dist::random_model(g, alph, rng));
        const entropy::CoordinateIndex index(p.names());
        const auto h = dist::entropy_vector(p, index);
        auto H = [&](entropy::VarSet s) { return s == 0 ? 0.0 : h[index.at(s)]; };
        const auto obs = g.observed();
        // Observed nodes are the first n positions, so node bits equal index bits.
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= 4;
        for (std::size_t code = 0; code < total; ++code) {
            entropy::VarSet x = 0, y = 0, z = 0;
            std::size_t c = code;
            for (std::size_t i = 0; i < n; ++i, c /= 4) {
                if (c % 4 == 1) x |= entropy::singleton(i);
                if (c % 4 == 2) y |= entropy::singleton(i);
                if (c % 4 == 3) z |= entropy::singleton(i);
            }
            if (x == 0 || y == 0 || ((x | y | z) & ~obs)) continue;
            if (!causal::d_separated(g, x, y, z)) continue;
            const double i = H(x | z) + H(y | z) - H(x | y | z) - H(z);
            worst = std::max(worst, std::abs(i));
            ++checked;
        }
    }
    std::ostringstream os;
    os << checked << " triples, largest |I| " << worst;
    expect(o, worst < 1e-9, os.str());
    expect(o, checked > 1000, "too few triples: " + os.str());
    if (o.ok) o.detail = os.str();
    return o;
}

// 11. FM and DD projections agree; H/V conversions round-trip.
Outcome engine_equivalence()
{
    Outcome o;
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<std::size_t> dim(2, 7);
    std::size_t projections = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = dim(rng);
        const std::size_t m = std::min<std::size_t>(14, d + 1 + rng() % 8);
        const auto h = oracle::random_cone(rng, d, m, trial % 2 == 0);
        const std::string tag = "cone " + std::to_string(trial) + ": ";

        const auto v = poly::enumerate_rays(h);
        const auto back = poly::facets_from_rays(v);
        expect(o, poly::cones_equal(h, back), tag + "H->V->H changed the cone");
        expect(o, poly::enumerate_rays(back).rays == v.rays, tag + "V->H->V changed the rays");
        if (v.lineality.empty()) expect(o, v.rays == oracle::rays_by_subsets(h), tag + "rays differ from oracle");

        if (d >= 3) {
            std::vector<std::size_t> drop = {rng() % d};
            if (d >= 4 && trial % 2) drop.push_back((drop[0] + 1 + rng() % (d - 1)) % d);
            const auto fm = poly::fm_eliminate(h, drop);
            const auto dd = poly::dd_project(h, drop);
            expect(o, poly::cones_equal(fm, dd), tag + "FM and DD projections differ");
            ++projections;
        }
    }
    expect(o, projections > 100, "too few projections");
    return o;
}

struct Criterion {
    int id;
    std::string name;
    double budget;   // seconds
    std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> all = {
        {1, "four-node line rays", 1, line4_rays},
        {2, "line tightness n=1..7", 10, line_tightness},
        {3, "elemental inequality counts", 1, elemental_counts},
        {4, "reduced cone equivalence n=3..6", 60, reduced_equivalence},
        {5, "hidden-node marginalization", 360, marginal_consistency},
        {6, "post-selected cone, k=3", 60, post_selected3},
        {7, "split witnesses recover the rays", 10, split_witnesses},
        {8, "post-selected cone counts, k=4", 1800, post_selected4},
        {9, "Bell functional positivity", 30, bell_positivity},
        {10, "d-separation soundness", 60, d_separation_soundness},
        {11, "FM/DD equivalence and round trips", 60, engine_equivalence},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));

    int failures = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome res;
        try {
            res = c.check();
        } catch (const std::exception& e) {
            res = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (res.ok && secs > c.budget) {
            std::ostringstream os;
            os << "over the " << c.budget << " s budget";
            res = {false, os.str()};
        }
        failures += !res.ok;
        std::cout << (res.ok ? "PASS" : "FAIL") << " criterion " << std::setw(2) << c.id << ": " << c.name << " ["
                  << std::fixed << std::setprecision(2) << secs << " s]";
        if (!res.detail.empty()) std::cout << " " << res.detail;
        std::cout << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
