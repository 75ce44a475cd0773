#include "entrocone/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "entrocone/errors.hpp"

namespace entrocone::analysis {

using entropy::ConstraintSystem;
using entropy::CoordinateIndex;
using entropy::LinearForm;
using entropy::Relation;
using entropy::VarSet;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::optional<std::size_t> find_ray(const std::vector<IntVec>& rays, IntVec v)
{
    make_primitive(v);
    auto it = std::find(rays.begin(), rays.end(), v);
    if (it == rays.end()) return std::nullopt;
    return static_cast<std::size_t>(it - rays.begin());
}

// Permutation of variable positions acting on coordinates of an index that
// is closed under it.
using Perm = std::vector<std::size_t>;

VarSet apply(const Perm& p, VarSet s)
{
    VarSet out = 0;
    for (auto m : entropy::members(s)) out |= entropy::singleton(p[m]);
    return out;
}

IntVec apply(const Perm& p, const IntVec& row, const CoordinateIndex& index)
{
    IntVec out(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] != 0) out[index.at(apply(p, index.subset(i)))] = row[i];
    return out;
}

std::vector<Perm> group_closure(const std::vector<Perm>& gens)
{
    std::vector<Perm> group;
    Perm id(gens.front().size());
    std::iota(id.begin(), id.end(), 0);
    group.push_back(id);
    for (std::size_t k = 0; k < group.size(); ++k) {
        for (const auto& g : gens) {
            Perm c(id.size());
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = g[group[k][i]];
            if (std::find(group.begin(), group.end(), c) == group.end()) group.push_back(c);
        }
    }
    return group;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x)
{
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

// Orbits of the listed facets (ids as in ConeReport::families) under the group.
std::vector<std::vector<std::size_t>> facet_orbits(const poly::HRep& h, const CoordinateIndex& index,
                                                   const std::vector<Perm>& group,
                                                   const std::vector<std::size_t>& ids)
{
    const std::size_t ne = h.equalities.size();
    const std::size_t total = ne + h.inequalities.size();
    linalg::Echelon ech = linalg::rref(h.equalities, h.dimension, true);
    std::vector<IntVec> eq_oriented = h.equalities;
    for (auto& e : eq_oriented) make_oriented(e);

    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<char> listed(total, 0);
    for (auto id : ids) listed[id] = 1;

    for (auto id : ids) {
        for (const auto& g : group) {
            std::optional<std::size_t> match;
            if (id < ne) {
                IntVec e = apply(g, h.equalities[id], index);
                make_oriented(e);
                auto it = std::find(eq_oriented.begin(), eq_oriented.end(), e);
                if (it != eq_oriented.end()) match = static_cast<std::size_t>(it - eq_oriented.begin());
            } else {
                IntVec f = linalg::reduce_modulo(apply(g, h.inequalities[id - ne], index), ech);
                auto it = std::find(h.inequalities.begin(), h.inequalities.end(), f);
                if (it != h.inequalities.end()) match = ne + static_cast<std::size_t>(it - h.inequalities.begin());
            }
            if (match && listed[*match]) parent[find_root(parent, id)] = find_root(parent, *match);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> orbits;
    for (auto id : ids) orbits[find_root(parent, id)].push_back(id);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : orbits) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Engine parse_engine(const std::string& s)
{
    if (s == "fm") return Engine::fm;
    if (s == "dd") return Engine::dd;
    throw InvalidParameter("engine must be fm or dd, got " + s);
}

std::string to_string(Engine e) { return e == Engine::fm ? "fm" : "dd"; }

std::string to_string(Verdict v) { return v == Verdict::tight ? "tight" : "outer-only"; }

ConeReport observed_outer_cone(const causal::CausalStructure& g)
{
    const auto t0 = Clock::now();
    ConeReport r;
    r.structure = g.name();
    r.index = causal::observed_index(g);
    ConstraintSystem sys{r.index, causal::observed_independence_constraints(g),
                         entropy::elemental_inequalities(r.index.ground())};
    r.hrep = poly::remove_redundancies(sys.to_hrep());
    r.vrep = poly::enumerate_rays(r.hrep);
    r.seconds = since(t0);
    return r;
}

ConeReport verify_line_tightness(std::size_t n, const Options& opts)
{
    if (n == 0) throw InvalidParameter("line structure needs n >= 1");
    if (n > 12) throw InvalidParameter("line structure too large for witness compilation");
    const auto t0 = Clock::now();
    ConeReport r;
    r.structure = "pn:" + std::to_string(n);
    const auto names = entropy::line_names(n);
    r.index = CoordinateIndex(names);
    const CoordinateIndex blocks = entropy::contiguous_index(names);

    const ConstraintSystem reduced = entropy::reduced_line_system(n);
    const poly::HRep block_h = poly::remove_redundancies(entropy::to_contiguous(reduced).to_hrep());
    const poly::VRep block_v = poly::enumerate_rays(block_h);

    ConstraintSystem full{r.index, entropy::run_equalities(r.index), reduced.inequalities};
    r.hrep = poly::remove_redundancies(full.to_hrep());
    r.vrep.dimension = r.index.size();
    r.vrep.labels = r.index.labels();
    for (const auto& y : block_v.rays) r.vrep.rays.push_back(entropy::expand_runs(y, blocks, r.index));
    std::sort(r.vrep.rays.begin(), r.vrep.rays.end(), std::greater<IntVec>());
    for (const auto& l : block_v.lineality) r.vrep.lineality.push_back(entropy::expand_runs(l, blocks, r.index));

    std::vector<IntVec> form_rows;
    for (const auto& f : reduced.inequalities) form_rows.push_back(f.row(r.index));

    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = i; j <= n; ++j) {
            Witness w;
            w.name = "D(" + std::to_string(i) + "," + std::to_string(j) + ")";
            auto p = dist::observed_distribution(dist::witness_line(i, j, n));
            w.entropies = dist::entropy_vector(p, r.index);
            if (auto s = dist::snap_to_integers(w.entropies, opts.tolerance)) {
                w.snapped = *s;
                w.in_cone = poly::membership(r.hrep, w.snapped);
                w.ray = find_ray(r.vrep.rays, w.snapped);
                for (const auto& f : form_rows) w.positive_forms += dot(f, w.snapped) > 0;
            }
            r.witnesses.push_back(std::move(w));
        }
    }
    std::stable_sort(r.witnesses.begin(), r.witnesses.end(), [](const Witness& a, const Witness& b) {
        return a.ray.value_or(SIZE_MAX) < b.ray.value_or(SIZE_MAX);
    });

    std::vector<char> hit(r.vrep.rays.size(), 0);
    bool tight = r.vrep.lineality.empty();
    for (const auto& w : r.witnesses) {
        if (!w.ray || !w.in_cone || w.positive_forms != 1 || hit[*w.ray]) {
            tight = false;
            continue;
        }
        hit[*w.ray] = 1;
    }
    tight = tight && std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
    r.verdict = tight ? Verdict::tight : Verdict::outer_only;
    r.seconds = since(t0);
    return r;
}

namespace {

poly::HRep project(const poly::HRep& h, const std::vector<std::size_t>& drop, Engine engine)
{
    if (drop.empty()) return poly::remove_redundancies(h);
    return engine == Engine::fm ? poly::fm_eliminate(h, drop) : poly::dd_project(h, drop);
}

}  // namespace

ConeReport full_marginal_outer_cone(const causal::CausalStructure& g, const Options& opts)
{
    if (g.size() > opts.max_nodes)
        throw GuardViolation("structure has " + std::to_string(g.size()) + " nodes, above the limit of " +
                                 std::to_string(opts.max_nodes) + "; raise it with --max-nodes",
                             "--max-nodes");
    const auto t0 = Clock::now();
    ConeReport r;
    r.structure = g.name();
    r.index = causal::observed_index(g);

    std::vector<std::string> all_names;
    for (const auto& node : g.nodes()) all_names.push_back(node.id);
    ConstraintSystem sys{CoordinateIndex(all_names), entropy::classical_ci_system(g), {}};
    sys.inequalities = entropy::elemental_inequalities(sys.index.ground());

    std::vector<std::size_t> drop;
    for (std::size_t i = 0; i < sys.index.size(); ++i)
        if (sys.index.subset(i) & g.unobserved()) drop.push_back(i);
    r.hrep = project(sys.to_hrep(), drop, opts.engine);
    r.hrep.labels = r.index.labels();
    r.vrep = poly::enumerate_rays(r.hrep);
    r.seconds = since(t0);
    return r;
}

namespace {

struct Scenario {
    std::vector<std::pair<std::string, std::string>> pairs;        // doubled variables
    std::vector<std::vector<std::string>> contexts;                // maximal jointly observed sets
    std::vector<std::vector<std::pair<std::string, std::string>>> symmetries;   // generators as swaps
};

Scenario scenario(std::size_t k)
{
    if (k == 3)
        return {{{"X0", "X1"}, {"Z0", "Z1"}},
                {{"X0", "Y", "Z0"}, {"X0", "Y", "Z1"}, {"X1", "Y", "Z0"}, {"X1", "Y", "Z1"}},
                {{{"X0", "X1"}}, {{"Z0", "Z1"}}, {{"X0", "Z0"}, {"X1", "Z1"}}}};
    if (k == 4)
        return {{{"X0", "X1"}, {"W0", "W1"}},
                {{"X0", "Y", "Z", "W0"}, {"X0", "Y", "Z", "W1"}, {"X1", "Y", "Z", "W0"}, {"X1", "Y", "Z", "W1"}},
                {{{"X0", "X1"}}, {{"W0", "W1"}}, {{"X0", "W0"}, {"X1", "W1"}, {"Y", "Z"}}}};
    throw InvalidParameter("post-selected scenario is available for k = 3 and k = 4 only");
}

}  // namespace

CoordinateIndex bc_marginal_index(std::size_t k)
{
    const Scenario sc = scenario(k);
    const CoordinateIndex full = causal::observed_index(causal::build_post_selected_line(k));
    std::vector<VarSet> keep;
    for (auto s : full.subsets()) {
        bool ok = true;
        for (const auto& [a, b] : sc.pairs) {
            const VarSet both = full.set_of({a, b});
            if ((s & both) == both) ok = false;
        }
        if (ok) keep.push_back(s);
    }
    return CoordinateIndex(full.names(), keep);
}

ConeReport bc_marginal_cone(std::size_t k, const Options& opts)
{
    const Scenario sc = scenario(k);
    const auto t0 = Clock::now();
    const auto g = causal::build_post_selected_line(k);
    ConeReport r;
    r.structure = g.name();
    r.index = bc_marginal_index(k);

    ConstraintSystem sys{causal::observed_index(g), causal::observed_independence_constraints(g), {}};
    sys.inequalities = entropy::elemental_inequalities(sys.index.ground());
    std::vector<std::size_t> drop;
    for (std::size_t i = 0; i < sys.index.size(); ++i)
        if (!r.index.find(sys.index.subset(i))) drop.push_back(i);
    r.hrep = project(sys.to_hrep(), drop, opts.engine);
    r.hrep.labels = r.index.labels();
    r.vrep = poly::enumerate_rays(r.hrep);

    // Shannon-type facets: implied by the elemental inequalities inside the
    // contexts together with the equalities.
    poly::HRep context_h;
    context_h.dimension = r.index.size();
    context_h.equalities = r.hrep.equalities;
    for (const auto& ctx : sc.contexts)
        for (const auto& f : entropy::elemental_inequalities(r.index.set_of(ctx)))
            context_h.inequalities.push_back(f.row(r.index));
    std::vector<std::size_t> non_shannon_ids;
    for (std::size_t i = 0; i < r.hrep.equalities.size(); ++i) non_shannon_ids.push_back(i);
    for (std::size_t i = 0; i < r.hrep.inequalities.size(); ++i) {
        const bool s = poly::implies(context_h, r.hrep.inequalities[i]);
        r.shannon.push_back(s);
        if (!s) non_shannon_ids.push_back(r.hrep.equalities.size() + i);
    }
    r.non_shannon_count = non_shannon_ids.size();

    std::vector<Perm> gens;
    for (const auto& swaps : sc.symmetries) {
        Perm p(r.index.variable_count());
        std::iota(p.begin(), p.end(), 0);
        for (const auto& [a, b] : swaps) std::swap(p[r.index.variable(a)], p[r.index.variable(b)]);
        gens.push_back(p);
    }
    r.families = facet_orbits(r.hrep, r.index, group_closure(gens), non_shannon_ids);
    r.seconds = since(t0);
    return r;
}

std::string roman(std::size_t k)
{
    if (k == 0) return "0";
    static const std::pair<std::size_t, const char*> table[] = {{1000, "m"}, {900, "cm"}, {500, "d"}, {400, "cd"},
                                                                 {100, "c"},  {90, "xc"},  {50, "l"},  {40, "xl"},
                                                                 {10, "x"},   {9, "ix"},   {5, "v"},   {4, "iv"},
                                                                 {1, "i"}};
    std::string out;
    for (const auto& [v, s] : table)
        while (k >= v) {
            out += s;
            k -= v;
        }
    return out;
}

namespace {

std::string form_text(const IntVec& row, const CoordinateIndex& index, Relation rel)
{
    return LinearForm::from_row(row, index, rel).to_string(index);
}

nlohmann::json int_row(const IntVec& v)
{
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : v) {
        if (x.fits_slong_p())
            row.push_back(x.get_si());
        else
            row.push_back(x.get_str());
    }
    return row;
}

}  // namespace

std::string report_to_json(const ConeReport& r)
{
    using nlohmann::json;
    json j;
    j["structure"] = r.structure;
    j["coordinates"] = r.index.labels();
    j["rays"] = json::array();
    for (std::size_t i = 0; i < r.vrep.rays.size(); ++i)
        j["rays"].push_back({{"label", roman(i + 1)}, {"vector", int_row(r.vrep.rays[i])}});
    j["lineality"] = json::array();
    for (const auto& l : r.vrep.lineality) j["lineality"].push_back(int_row(l));
    j["equalities"] = json::array();
    for (const auto& e : r.hrep.equalities)
        j["equalities"].push_back({{"form", form_text(e, r.index, Relation::equal)}, {"row", int_row(e)}});
    j["inequalities"] = json::array();
    for (std::size_t i = 0; i < r.hrep.inequalities.size(); ++i) {
        const auto& f = r.hrep.inequalities[i];
        json e = {{"form", form_text(f, r.index, Relation::greater_equal)}, {"row", int_row(f)}};
        if (!r.shannon.empty()) e["shannon"] = static_cast<bool>(r.shannon[i]);
        j["inequalities"].push_back(std::move(e));
    }
    if (!r.witnesses.empty()) {
        j["witnesses"] = json::array();
        for (const auto& w : r.witnesses) {
            json e = {{"name", w.name}, {"in_cone", w.in_cone}, {"positive_forms", w.positive_forms}};
            e["ray"] = w.ray ? json(roman(*w.ray + 1)) : json(nullptr);
            e["entropies"] = w.snapped.empty() ? json(w.entropies) : int_row(w.snapped);
            j["witnesses"].push_back(std::move(e));
        }
    }
    if (r.verdict) j["verdict"] = to_string(*r.verdict);
    if (!r.shannon.empty() || !r.families.empty()) {
        j["non_shannon"] = r.non_shannon_count;
        j["families"] = r.families;
    }
    return j.dump(2);
}

std::string report_to_text(const ConeReport& r)
{
    std::ostringstream os;
    os << "structure: " << r.structure << "\n";
    os << "coordinates:";
    for (const auto& l : r.index.labels()) os << " " << l;
    os << "\n";

    os << "rays: " << r.vrep.rays.size() << "\n";
    std::size_t width = 0;
    for (std::size_t i = 0; i < r.vrep.rays.size(); ++i) width = std::max(width, roman(i + 1).size() + 2);
    for (std::size_t i = 0; i < r.vrep.rays.size(); ++i) {
        std::string label = "(" + roman(i + 1) + ")";
        label.resize(width, ' ');
        os << "  " << label << " " << entrocone::to_string(r.vrep.rays[i]) << "\n";
    }
    if (!r.vrep.lineality.empty()) {
        os << "lineality: " << r.vrep.lineality.size() << "\n";
        for (const auto& l : r.vrep.lineality) os << "  " << entrocone::to_string(l) << "\n";
    }

    os << "equalities: " << r.hrep.equalities.size() << "\n";
    for (const auto& e : r.hrep.equalities) os << "  " << form_text(e, r.index, Relation::equal) << "\n";
    os << "inequalities: " << r.hrep.inequalities.size() << "\n";
    for (std::size_t i = 0; i < r.hrep.inequalities.size(); ++i) {
        os << "  " << form_text(r.hrep.inequalities[i], r.index, Relation::greater_equal);
        if (!r.shannon.empty()) os << (r.shannon[i] ? "" : "   [non-shannon]");
        os << "\n";
    }

    if (!r.shannon.empty() || !r.families.empty()) {
        os << "non-shannon (in)equalities: " << r.non_shannon_count << " in " << r.families.size()
           << " symmetry classes\n";
        const std::size_t ne = r.hrep.equalities.size();
        for (std::size_t k = 0; k < r.families.size(); ++k) {
            const auto id = r.families[k].front();
            const std::string rep = id < ne ? form_text(r.hrep.equalities[id], r.index, Relation::equal)
                                            : form_text(r.hrep.inequalities[id - ne], r.index, Relation::greater_equal);
            os << "  class " << k + 1 << " (" << r.families[k].size() << "): " << rep << "\n";
        }
    }

    if (!r.witnesses.empty()) {
        os << "witnesses: " << r.witnesses.size() << "\n";
        for (const auto& w : r.witnesses) {
            os << "  " << w.name << " -> " << (w.ray ? "(" + roman(*w.ray + 1) + ")" : std::string("no ray"));
            if (!w.in_cone) os << "  outside cone";
            if (w.positive_forms != 1) os << "  " << w.positive_forms << " positive forms";
            os << "\n";
        }
    }
    if (r.verdict) {
        os << "verdict: " << to_string(*r.verdict) << "\n";
        if (*r.verdict == Verdict::tight)
            os << "every ray is achieved classically, so the classical and quantum closures coincide\n";
    }
    return os.str();
}

}  // namespace entrocone::analysis
