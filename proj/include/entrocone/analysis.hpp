#pragma once

// End-to-end cone pipelines: observed-level outer cones, tightness checks for
// line structures, marginalization of hidden nodes, and the post-selected
// Bell scenarios.

#include <optional>
#include <string>
#include <vector>

#include "entrocone/causal_structure.hpp"
#include "entrocone/distributions.hpp"
#include "entrocone/entropy_space.hpp"
#include "entrocone/polyhedra.hpp"

namespace entrocone::analysis {

enum class Engine { fm, dd };
Engine parse_engine(const std::string& s);
std::string to_string(Engine e);

enum class Verdict { tight, outer_only };
std::string to_string(Verdict v);

struct Options {
    Engine engine = Engine::fm;
    double tolerance = 1e-9;
    std::size_t max_nodes = 6;
};

struct Witness {
    std::string name;               // e.g. "D(1,4)"
    std::vector<double> entropies;  // observed entropy vector
    IntVec snapped;                 // integer-snapped; empty if not integral
    std::optional<std::size_t> ray; // index into the report's rays
    bool in_cone = false;
    std::size_t positive_forms = 0; // reduced-system forms strictly positive
};

struct ConeReport {
    std::string structure;
    entropy::CoordinateIndex index;
    poly::HRep hrep;
    poly::VRep vrep;
    std::vector<Witness> witnesses;
    std::optional<Verdict> verdict;

    // Post-selected scenarios only: per inequality, whether the elemental
    // inequalities of the maximal contexts plus the equalities imply it;
    // groups of facet ids under the variable symmetries (ids index
    // equalities first, then inequalities).
    std::vector<bool> shannon;
    std::vector<std::vector<std::size_t>> families;
    std::size_t non_shannon_count = 0;

    double seconds = 0;
};

// Shannon inequalities on the observed nodes plus the ancestor-disjointness
// equalities, made irredundant, with its rays.
ConeReport observed_outer_cone(const causal::CausalStructure& g);

// Line structure with n observed nodes, computed in contiguous-block
// coordinates and reported over all subsets; each ray is matched to a line
// witness.
ConeReport verify_line_tightness(std::size_t n, const Options& opts = {});

// Shannon over every node plus the classical CI equalities, with every
// coordinate involving an unobserved node projected out. Throws
// GuardViolation when the node count exceeds opts.max_nodes.
ConeReport full_marginal_outer_cone(const causal::CausalStructure& g, const Options& opts = {});

// Post-selected line (k = 3 or 4) projected onto the subsets holding at most
// one variable of each doubled pair.
ConeReport bc_marginal_cone(std::size_t k, const Options& opts = {});

// The marginal coordinate index used by bc_marginal_cone.
entropy::CoordinateIndex bc_marginal_index(std::size_t k);

// Lower-case roman numeral, 1 -> "i".
std::string roman(std::size_t k);

std::string report_to_json(const ConeReport& r);
std::string report_to_text(const ConeReport& r);

}  // namespace entrocone::analysis
