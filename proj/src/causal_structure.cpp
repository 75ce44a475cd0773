#include "entrocone/causal_structure.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "entrocone/errors.hpp"

namespace entrocone::causal {

using entropy::LinearForm;
using entropy::members;
using entropy::Relation;
using entropy::singleton;

CausalStructure::CausalStructure(std::vector<Node> nodes, std::vector<std::pair<std::string, std::string>> edges,
                                 std::string name)
    : name_(std::move(name)), nodes_(std::move(nodes)), edges_(std::move(edges))
{
    const std::size_t n = nodes_.size();
    if (n == 0) throw InvalidModel("structure has no nodes");
    if (n > 64) throw InvalidModel("structure has more than 64 nodes");
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) {
        if (nodes_[i].id.empty()) throw InvalidModel("node " + std::to_string(i) + " has an empty id");
        if (!pos.emplace(nodes_[i].id, i).second) throw InvalidModel("duplicate node id " + nodes_[i].id);
        if (nodes_[i].kind == NodeKind::observed) observed_ |= singleton(i);
    }
    parents_.assign(n, 0);
    children_.assign(n, 0);
    for (const auto& [p, c] : edges_) {
        auto ip = pos.find(p), ic = pos.find(c);
        if (ip == pos.end()) throw InvalidModel("edge names unknown node " + p);
        if (ic == pos.end()) throw InvalidModel("edge names unknown node " + c);
        if (ip->second == ic->second) throw InvalidModel("self loop on " + p);
        parents_[ic->second] |= singleton(ip->second);
        children_[ip->second] |= singleton(ic->second);
    }

    // Kahn's algorithm, always taking the lowest ready position.
    std::vector<std::size_t> indegree(n);
    for (std::size_t i = 0; i < n; ++i) indegree[i] = entropy::cardinality(parents_[i]);
    std::set<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.insert(i);
    while (!ready.empty()) {
        std::size_t v = *ready.begin();
        ready.erase(ready.begin());
        topo_.push_back(v);
        for (auto c : members(children_[v]))
            if (--indegree[c] == 0) ready.insert(c);
    }
    if (topo_.size() != n) throw InvalidModel("edges contain a directed cycle");

    ancestors_.assign(n, 0);
    for (auto v : topo_)
        for (auto p : members(parents_[v])) ancestors_[v] |= ancestors_[p] | singleton(p);
    descendants_.assign(n, 0);
    for (std::size_t k = n; k-- > 0;) {
        auto v = topo_[k];
        for (auto c : members(children_[v])) descendants_[v] |= descendants_[c] | singleton(c);
    }
}

std::size_t CausalStructure::index_of(const std::string& id) const
{
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].id == id) return i;
    throw InvalidParameter("unknown node " + id);
}

VarSet CausalStructure::set_of(const std::vector<std::string>& ids) const
{
    VarSet s = 0;
    for (const auto& id : ids) s |= singleton(index_of(id));
    return s;
}

std::vector<std::string> CausalStructure::ids(VarSet s) const
{
    std::vector<std::string> out;
    for (auto i : members(s)) out.push_back(nodes_.at(i).id);
    return out;
}

VarSet CausalStructure::ancestral_closure(VarSet s) const
{
    VarSet out = s;
    for (auto i : members(s)) out |= ancestors_.at(i);
    return out;
}

CausalStructure build_line_structure(std::size_t n)
{
    if (n == 0) throw InvalidParameter("line structure needs n >= 1");
    std::vector<Node> nodes;
    for (std::size_t i = 1; i <= n; ++i) nodes.push_back({"X" + std::to_string(i), NodeKind::observed});
    for (std::size_t i = 1; i < n; ++i) nodes.push_back({"C" + std::to_string(i), NodeKind::unobserved});
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 1; i < n; ++i) {
        edges.emplace_back("C" + std::to_string(i), "X" + std::to_string(i));
        edges.emplace_back("C" + std::to_string(i), "X" + std::to_string(i + 1));
    }
    return CausalStructure(std::move(nodes), std::move(edges), "pn:" + std::to_string(n));
}

CausalStructure build_bell_structure()
{
    std::vector<Node> nodes = {{"A", NodeKind::observed},
                               {"X", NodeKind::observed},
                               {"Y", NodeKind::observed},
                               {"B", NodeKind::observed},
                               {"C", NodeKind::unobserved}};
    std::vector<std::pair<std::string, std::string>> edges = {{"A", "X"}, {"C", "X"}, {"C", "Y"}, {"B", "Y"}};
    return CausalStructure(std::move(nodes), std::move(edges), "bell");
}

CausalStructure build_post_selected_line(std::size_t k)
{
    using O = std::pair<std::string, std::string>;
    if (k == 3) {
        std::vector<Node> nodes = {{"X0", NodeKind::observed}, {"X1", NodeKind::observed},
                                   {"Y", NodeKind::observed},  {"Z0", NodeKind::observed},
                                   {"Z1", NodeKind::observed}, {"C", NodeKind::unobserved},
                                   {"D", NodeKind::unobserved}};
        std::vector<O> edges = {{"C", "X0"}, {"C", "X1"}, {"C", "Y"}, {"D", "Y"}, {"D", "Z0"}, {"D", "Z1"}};
        return CausalStructure(std::move(nodes), std::move(edges), "ptilde:3");
    }
    if (k == 4) {
        std::vector<Node> nodes = {{"X0", NodeKind::observed}, {"X1", NodeKind::observed},
                                   {"Y", NodeKind::observed},  {"Z", NodeKind::observed},
                                   {"W0", NodeKind::observed}, {"W1", NodeKind::observed},
                                   {"C", NodeKind::unobserved}, {"D", NodeKind::unobserved},
                                   {"E", NodeKind::unobserved}};
        std::vector<O> edges = {{"C", "X0"}, {"C", "X1"}, {"C", "Y"}, {"D", "Y"},
                                {"D", "Z"},  {"E", "Z"},  {"E", "W0"}, {"E", "W1"}};
        return CausalStructure(std::move(nodes), std::move(edges), "ptilde:4");
    }
    throw InvalidParameter("post-selected line is available for k = 3 and k = 4 only");
}

namespace {

std::size_t parse_count(const std::string& text, const std::string& selector)
{
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw InvalidParameter("bad structure selector " + selector);
    if (text.size() > 3) throw InvalidParameter("structure size too large in " + selector);
    return static_cast<std::size_t>(std::stoul(text));
}

}  // namespace

CausalStructure structure_from_selector(const std::string& selector)
{
    if (selector.rfind("pn:", 0) == 0) return build_line_structure(parse_count(selector.substr(3), selector));
    if (selector == "bell") return build_bell_structure();
    if (selector.rfind("ptilde:", 0) == 0)
        return build_post_selected_line(parse_count(selector.substr(7), selector));
    std::ifstream in(selector);
    if (!in) throw InvalidParameter("cannot open structure file " + selector);
    std::stringstream ss;
    ss << in.rdbuf();
    return structure_from_json(ss.str(), selector);
}

CausalStructure structure_from_json(const std::string& text, const std::string& name)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("structure file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("structure file: top level must be an object");
    if (!j.contains("nodes") || !j["nodes"].is_array()) throw FormatError("structure file: \"nodes\" must be an array");
    std::vector<Node> nodes;
    for (std::size_t i = 0; i < j["nodes"].size(); ++i) {
        const auto& n = j["nodes"][i];
        const std::string where = "structure file: nodes[" + std::to_string(i) + "]";
        if (!n.is_object() || !n.contains("id") || !n["id"].is_string())
            throw FormatError(where + ".id must be a string");
        Node node{n["id"].get<std::string>(), NodeKind::observed};
        if (n.contains("kind")) {
            if (!n["kind"].is_string()) throw FormatError(where + ".kind must be a string");
            const auto kind = n["kind"].get<std::string>();
            if (kind == "observed")
                node.kind = NodeKind::observed;
            else if (kind == "unobserved")
                node.kind = NodeKind::unobserved;
            else
                throw FormatError(where + ".kind must be \"observed\" or \"unobserved\"");
        }
        nodes.push_back(std::move(node));
    }
    std::vector<std::pair<std::string, std::string>> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw FormatError("structure file: \"edges\" must be an array");
        for (std::size_t i = 0; i < j["edges"].size(); ++i) {
            const auto& e = j["edges"][i];
            if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
                throw FormatError("structure file: edges[" + std::to_string(i) + "] must be [parent, child]");
            edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
    }
    std::string label = name;
    if (j.contains("name") && j["name"].is_string()) label = j["name"].get<std::string>();
    return CausalStructure(std::move(nodes), std::move(edges), label);
}

std::string structure_to_json(const CausalStructure& g)
{
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (const auto& n : g.nodes())
        j["nodes"].push_back({{"id", n.id}, {"kind", n.kind == NodeKind::observed ? "observed" : "unobserved"}});
    j["edges"] = nlohmann::json::array();
    for (const auto& [p, c] : g.edges()) j["edges"].push_back({p, c});
    return j.dump(2);
}

bool d_separated(const CausalStructure& g, VarSet x, VarSet y, VarSet z)
{
    const VarSet all = g.all();
    if ((x | y | z) & ~all) throw InvalidParameter("d_separated: node set outside the structure");
    if ((x & y) || (x & z) || (y & z)) throw InvalidParameter("d_separated: sets must be pairwise disjoint");
    if (x == 0 || y == 0) return true;

    // Nodes that are in Z or have a descendant in Z: colliders there are open.
    const VarSet opened = g.ancestral_closure(z);

    const std::size_t n = g.size();
    std::vector<char> seen_up(n, 0), seen_down(n, 0);
    std::vector<std::pair<std::size_t, bool>> stack;   // (node, arrived from a child)
    for (auto v : members(x)) stack.emplace_back(v, true);
    while (!stack.empty()) {
        auto [v, up] = stack.back();
        stack.pop_back();
        auto& seen = up ? seen_up : seen_down;
        if (seen[v]) continue;
        seen[v] = 1;
        const bool blocked = (z >> v) & 1;
        if (!blocked && ((y >> v) & 1)) return false;
        if (up) {
            if (blocked) continue;
            for (auto p : members(g.parents(v))) stack.emplace_back(p, true);
            for (auto c : members(g.children(v))) stack.emplace_back(c, false);
        } else {
            if (!blocked)
                for (auto c : members(g.children(v))) stack.emplace_back(c, false);
            if ((opened >> v) & 1)
                for (auto p : members(g.parents(v))) stack.emplace_back(p, true);
        }
    }
    return true;
}

bool d_separated(const CausalStructure& g, const std::vector<std::string>& x, const std::vector<std::string>& y,
                 const std::vector<std::string>& z)
{
    return d_separated(g, g.set_of(x), g.set_of(y), g.set_of(z));
}

entropy::CoordinateIndex observed_index(const CausalStructure& g)
{
    auto names = g.observed_ids();
    if (names.empty()) throw InvalidModel("structure has no observed nodes");
    return entropy::CoordinateIndex(std::move(names));
}

VarSet to_observed_bits(const CausalStructure& g, VarSet nodes)
{
    if (nodes & ~g.observed()) throw InvalidParameter("set contains unobserved nodes");
    VarSet out = 0;
    std::size_t k = 0;
    for (auto i : members(g.observed())) {
        if ((nodes >> i) & 1) out |= singleton(k);
        ++k;
    }
    return out;
}

VarSet from_observed_bits(const CausalStructure& g, VarSet bits)
{
    auto obs = members(g.observed());
    VarSet out = 0;
    for (auto b : members(bits)) {
        if (b >= obs.size()) throw InvalidParameter("observed bit out of range");
        out |= singleton(obs[b]);
    }
    return out;
}

namespace {

std::vector<std::size_t> observed_positions(const CausalStructure& g)
{
    auto obs = members(g.observed());
    if (obs.size() > 20) throw InvalidParameter("too many observed nodes for subset enumeration");
    return obs;
}

}  // namespace

std::vector<LinearForm> observed_independence_constraints(const CausalStructure& g)
{
    const auto obs = observed_positions(g);
    const std::size_t m = obs.size();
    std::vector<VarSet> closure(m);
    for (std::size_t i = 0; i < m; ++i) closure[i] = g.ancestral_closure(singleton(obs[i]));

    // Pairs are over observed bit positions; S holds the lowest member of S|T.
    std::vector<std::pair<VarSet, VarSet>> pairs;
    const VarSet full = (VarSet{1} << m) - 1;
    for (VarSet u = 1; u <= full; ++u) {
        if (entropy::cardinality(u) < 2) continue;
        const VarSet low = u & (~u + 1);
        const VarSet rest = u & ~low;
        for (VarSet t = rest; t; t = (t - 1) & rest) {
            const VarSet s = u & ~t;
            VarSet cs = 0, ct = 0;
            for (auto b : members(s)) cs |= closure[b];
            for (auto b : members(t)) ct |= closure[b];
            if ((cs & ct) == 0) pairs.emplace_back(s, t);
        }
    }
    auto dominated = [&](const std::pair<VarSet, VarSet>& a) {
        for (const auto& b : pairs) {
            if (b == a) continue;
            const bool same = (a.first & ~b.first) == 0 && (a.second & ~b.second) == 0;
            const bool swapped = (a.first & ~b.second) == 0 && (a.second & ~b.first) == 0;
            if (same || swapped) return true;
        }
        return false;
    };
    std::vector<std::pair<VarSet, VarSet>> maximal;
    for (const auto& p : pairs)
        if (!dominated(p)) maximal.push_back(p);
    std::sort(maximal.begin(), maximal.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return entropy::canonical_less(a.first, b.first);
        return entropy::canonical_less(a.second, b.second);
    });

    std::vector<LinearForm> out;
    for (const auto& [s, t] : maximal) {
        if (!d_separated(g, from_observed_bits(g, s), from_observed_bits(g, t), 0))
            throw std::logic_error("ancestor-disjoint pair is not d-separated");
        out.push_back(LinearForm::mutual_information(s, t, 0, Relation::equal));
    }
    return out;
}

std::vector<LinearForm> observed_d_separation_constraints(const CausalStructure& g, bool conditional)
{
    const auto obs = observed_positions(g);
    const std::size_t m = obs.size();
    const auto index = observed_index(g);
    std::vector<LinearForm> out;
    std::set<IntVec> rows;

    // Assign each observed node to S, T, U or nothing; S holds the lowest
    // member of S|T to skip mirrored pairs.
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
        VarSet s = 0, t = 0, u = 0;
        std::size_t c = code;
        for (std::size_t i = 0; i < m; ++i, c /= 4) {
            switch (c % 4) {
            case 1: s |= singleton(i); break;
            case 2: t |= singleton(i); break;
            case 3: u |= singleton(i); break;
            default: break;
            }
        }
        if (s == 0 || t == 0) continue;
        if (u != 0 && !conditional) continue;
        if ((t & (~t + 1)) < (s & (~s + 1))) continue;
        if (!d_separated(g, from_observed_bits(g, s), from_observed_bits(g, t), from_observed_bits(g, u)))
            continue;
        LinearForm f = LinearForm::mutual_information(s, t, u, Relation::equal);
        IntVec r = f.row(index);
        make_oriented(r);
        if (rows.insert(r).second) out.push_back(std::move(f));
    }
    return out;
}

}  // namespace entrocone::causal
