#include <doctest.h>

#include <algorithm>

#include "entrocone/analysis.hpp"
#include "entrocone/errors.hpp"
#include "reference.hpp"

using namespace entrocone;
using namespace entrocone::analysis;

namespace {

std::vector<IntVec> rows(const std::vector<std::vector<long>>& v)
{
    std::vector<IntVec> out;
    for (const auto& r : v) out.push_back(to_int(r));
    return out;
}

std::vector<IntVec> sorted(std::vector<IntVec> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("outer cones of short lines")
{
    auto p1 = observed_outer_cone(causal::build_line_structure(1));
    CHECK(p1.vrep.rays == rows({{1}}));

    auto p2 = observed_outer_cone(causal::build_line_structure(2));
    CHECK(p2.vrep.rays == rows({{1, 1, 1}, {1, 0, 1}, {0, 1, 1}}));
    CHECK(p2.hrep.equalities.empty());

    auto p4 = observed_outer_cone(causal::build_line_structure(4));
    CHECK(sorted(p4.vrep.rays) == sorted(rows(ref::line4_rays)));
    CHECK(p4.index.labels().size() == 15);
}

TEST_CASE("line tightness")
{
    auto r1 = verify_line_tightness(1);
    CHECK(r1.verdict == Verdict::tight);
    REQUIRE(r1.witnesses.size() == 1);
    CHECK(r1.witnesses[0].name == "D(1,1)");

    auto r4 = verify_line_tightness(4);
    CHECK(r4.verdict == Verdict::tight);
    CHECK(r4.witnesses.size() == 10);
    CHECK(sorted(r4.vrep.rays) == sorted(rows(ref::line4_rays)));
    for (const auto& w : r4.witnesses) {
        CHECK(w.in_cone);
        CHECK(w.positive_forms == 1);
        REQUIRE(w.ray.has_value());
        CHECK(w.snapped == r4.vrep.rays[*w.ray]);
    }
    CHECK_THROWS_AS(verify_line_tightness(0), InvalidParameter);
    CHECK_THROWS_AS(verify_line_tightness(13), InvalidParameter);
}

TEST_CASE("marginalizing hidden nodes")
{
    Options fm, dd;
    dd.engine = Engine::dd;
    auto p3 = causal::build_line_structure(3);
    auto m = full_marginal_outer_cone(p3, fm);
    CHECK(poly::cones_equal(m.hrep, observed_outer_cone(p3).hrep));
    CHECK(poly::cones_equal(m.hrep, full_marginal_outer_cone(p3, dd).hrep));
    CHECK(m.hrep.equalities.size() == 1);

    // A hidden parent of a single node adds nothing.
    causal::CausalStructure g({{"U", causal::NodeKind::unobserved}, {"X", causal::NodeKind::observed},
                               {"Y", causal::NodeKind::observed}},
                              {{"U", "X"}, {"X", "Y"}});
    auto s = full_marginal_outer_cone(g, fm);
    auto shannon = entropy::elemental_shannon_system({"X", "Y"}).to_hrep();
    CHECK(poly::cones_equal(s.hrep, shannon));

    try {
        full_marginal_outer_cone(causal::build_line_structure(4), fm);
        FAIL("expected a guard violation");
    } catch (const GuardViolation& e) {
        CHECK(e.flag() == "--max-nodes");
    }
    Options small;
    small.max_nodes = 4;
    CHECK_THROWS_AS(full_marginal_outer_cone(causal::build_bell_structure(), small), GuardViolation);
}

TEST_CASE("post-selected scenario, three observed positions")
{
    auto r = bc_marginal_cone(3);
    CHECK(r.index.size() == 17);
    CHECK(sorted(r.vrep.rays) == sorted(rows(ref::post_selected3_rays)));
    CHECK(r.hrep.equalities.size() == 4);
    CHECK(r.hrep.inequalities.size() == 52);
    CHECK(r.non_shannon_count == 36);
    CHECK(r.families.size() == 7);

    // Each reference family is a facet (or the equality) of the computed cone.
    for (const auto& f : ref::post_selected3_families()) {
        const IntVec row = f.row(r.index);
        bool found = false;
        if (f.relation() == entropy::Relation::equal)
            found = poly::implies_equality(r.hrep, row);
        else
            for (const auto& g : r.hrep.inequalities)
                if (poly::same_facet(row, g, r.hrep.equalities)) found = true;
        CHECK_MESSAGE(found, f.to_string(r.index));
    }
    CHECK_THROWS_AS(bc_marginal_cone(5), InvalidParameter);
}

TEST_CASE("reports are deterministic")
{
    auto a = report_to_json(observed_outer_cone(causal::build_bell_structure()));
    auto b = report_to_json(observed_outer_cone(causal::build_bell_structure()));
    CHECK(a == b);
    auto t = report_to_text(verify_line_tightness(3));
    CHECK(t.find("verdict: tight") != std::string::npos);
    CHECK(t.find("D(1,3) -> (") != std::string::npos);
    CHECK(roman(1) == "i");
    CHECK(roman(14) == "xiv");
    CHECK(roman(20) == "xx");
    CHECK(parse_engine("dd") == Engine::dd);
    CHECK_THROWS_AS(parse_engine("lrs"), InvalidParameter);
}
