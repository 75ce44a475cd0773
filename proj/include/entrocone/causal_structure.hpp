#pragma once

// Causal structures: DAGs over observed and unobserved nodes, graph queries,
// and the built-in line, Bell and post-selected structures.

#include <string>
#include <utility>
#include <vector>

#include "entrocone/entropy_space.hpp"

namespace entrocone::causal {

using entropy::VarSet;

enum class NodeKind { observed, unobserved };

struct Node {
    std::string id;
    NodeKind kind = NodeKind::observed;
};

// Node sets are bitmasks over node positions, so a structure holds at most 64
// nodes.
class CausalStructure {
public:
    CausalStructure() = default;
    // Throws InvalidModel on duplicate ids, unknown endpoints, self loops or cycles.
    CausalStructure(std::vector<Node> nodes, std::vector<std::pair<std::string, std::string>> edges,
                    std::string name = "");

    const std::string& name() const { return name_; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(std::size_t i) const { return nodes_.at(i); }
    const std::vector<std::pair<std::string, std::string>>& edges() const { return edges_; }

    std::size_t index_of(const std::string& id) const;   // throws InvalidParameter
    VarSet set_of(const std::vector<std::string>& ids) const;
    std::vector<std::string> ids(VarSet s) const;

    VarSet all() const { return size() == 64 ? ~VarSet{0} : (VarSet{1} << size()) - 1; }
    VarSet observed() const { return observed_; }
    VarSet unobserved() const { return all() & ~observed_; }
    std::vector<std::string> observed_ids() const { return ids(observed_); }

    VarSet parents(std::size_t i) const { return parents_.at(i); }
    VarSet children(std::size_t i) const { return children_.at(i); }
    // Strict descendants / ancestors.
    VarSet descendants(std::size_t i) const { return descendants_.at(i); }
    VarSet ancestors(std::size_t i) const { return ancestors_.at(i); }
    // Union of the sets themselves and their ancestors.
    VarSet ancestral_closure(VarSet s) const;

    // Parents before children, ties by node position.
    const std::vector<std::size_t>& topological_order() const { return topo_; }

private:
    std::string name_;
    std::vector<Node> nodes_;
    std::vector<std::pair<std::string, std::string>> edges_;
    VarSet observed_ = 0;
    std::vector<VarSet> parents_, children_, descendants_, ancestors_;
    std::vector<std::size_t> topo_;
};

// X1..Xn observed, C1..C(n-1) unobserved, Ci -> Xi and Ci -> X(i+1).
CausalStructure build_line_structure(std::size_t n);

// A, X, Y, B observed and C unobserved: A -> X <- C -> Y <- B.
CausalStructure build_bell_structure();

// k = 3: X0, X1, Y, Z0, Z1 with C -> X0, X1, Y and D -> Y, Z0, Z1.
// k = 4: X0, X1, Y, Z, W0, W1 with C -> X0, X1, Y; D -> Y, Z; E -> Z, W0, W1.
CausalStructure build_post_selected_line(std::size_t k);

// "pn:<n>", "bell", "ptilde:<k>", or a path to a JSON DAG file.
CausalStructure structure_from_selector(const std::string& selector);

CausalStructure structure_from_json(const std::string& text, const std::string& name = "");
std::string structure_to_json(const CausalStructure& g);

// Bayes-ball reachability. Sets are node bitmasks and must be pairwise disjoint.
bool d_separated(const CausalStructure& g, VarSet x, VarSet y, VarSet z);
bool d_separated(const CausalStructure& g, const std::vector<std::string>& x, const std::vector<std::string>& y,
                 const std::vector<std::string>& z);

// Coordinates over the observed nodes, in node order. Forms returned by the
// two functions below use bit positions of this index, not of the structure.
entropy::CoordinateIndex observed_index(const CausalStructure& g);
VarSet to_observed_bits(const CausalStructure& g, VarSet nodes);
VarSet from_observed_bits(const CausalStructure& g, VarSet bits);

// I(S:T) = 0 for every maximal pair of observed sets whose ancestral closures
// are disjoint. Valid whatever the unobserved nodes are.
std::vector<entropy::LinearForm> observed_independence_constraints(const CausalStructure& g);

// I(S:T|U) = 0 for every d-separated triple of disjoint observed sets
// (S, T nonempty); the unconditional ones only when `conditional` is false.
// Duplicates after expansion into coordinates are dropped.
std::vector<entropy::LinearForm> observed_d_separation_constraints(const CausalStructure& g,
                                                                    bool conditional = true);

}  // namespace entrocone::causal
