#pragma once

// Exact polyhedral cones: H- and V-representations, double description ray
// enumeration, Fourier-Motzkin projection, redundancy removal and cone
// comparison. Everything is integer/rational; there is no floating point here.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "entrocone/exact.hpp"

namespace entrocone::poly {

// {x : e.x = 0 for e in equalities, r.x >= 0 for r in inequalities}
struct HRep {
    std::size_t dimension = 0;
    std::vector<IntVec> equalities;
    std::vector<IntVec> inequalities;
    std::vector<std::string> labels;    // coordinate names; empty or dimension-sized
};

// cone(rays) + span(lineality)
struct VRep {
    std::size_t dimension = 0;
    std::vector<IntVec> rays;
    std::vector<IntVec> lineality;
    std::vector<std::string> labels;
};

using Cone = std::variant<HRep, VRep>;

// Checks the row-length invariants; throws InvalidParameter.
void validate(const HRep& h);
void validate(const VRep& v);

// Number of worker threads for the pair-combination loops. Reads
// ENTROCONE_THREADS, falls back to the hardware concurrency.
unsigned worker_threads();

// All extremal rays, each a primitive integer vector, sorted in descending
// lexicographic order. A cone with lineality reports a basis of the lineality
// space and the rays of its intersection with a coordinate complement of it.
VRep enumerate_rays(const HRep& h);

// Minimal H-representation of cone(rays) + span(lineality). Equalities come
// back as an echelon basis; each facet normal is reduced modulo that basis so
// it vanishes on the echelon pivot columns. Redundant generators are allowed.
HRep facets_from_rays(const VRep& v);

// Extremal subset of a (possibly redundant) generator list, canonical order.
VRep extremal_subset(const VRep& v);

// One redundancy certificate: dropped = sum(weights[i] * kept[i]) +
// sum(equality_weights[j] * equalities[j]), all weights nonnegative.
struct Certificate {
    IntVec dropped;
    std::vector<std::pair<std::size_t, Rational>> weights;
    std::vector<Rational> equality_weights;
};

struct RedundancyReport {
    std::vector<Certificate> certificates;      // only filled when requested
    std::size_t implicit_equalities = 0;        // inequalities promoted to equalities
};

// Irredundant H-representation of the same cone: equalities in echelon form,
// implicit equalities detected and promoted, every remaining inequality a
// facet. With `report`, a certificate is stored for every dropped row.
HRep remove_redundancies(const HRep& h, RedundancyReport* report = nullptr,
                         bool with_certificates = false);

// Project out `coords` (indices into 0..dimension-1) by Fourier-Motzkin
// elimination. Output lives in the remaining coordinates, in their original
// order, and is irredundant.
struct FmStats {
    std::size_t steps = 0;
    std::size_t peak_rows = 0;
    std::size_t chernikov_dropped = 0;
};
HRep fm_eliminate(const HRep& h, const std::vector<std::size_t>& coords, FmStats* stats = nullptr);

// Same projection through the generators: enumerate rays, drop coordinates,
// recompute the facets.
HRep dd_project(const HRep& h, const std::vector<std::size_t>& coords);

// Remaining coordinates after removing `coords`, in order.
std::vector<std::size_t> complement(std::size_t dimension, const std::vector<std::size_t>& coords);

bool membership(const Cone& cone, const RatVec& v);
bool membership(const Cone& cone, const IntVec& v);

// outer ⊇ inner
bool contains(const Cone& outer, const Cone& inner);
bool cones_equal(const Cone& a, const Cone& b);

// Is `target` a nonnegative combination of the generators (plus any element
// of span(free))? Returns the nonnegative weights on success.
struct Combination {
    std::vector<Rational> weights;
    std::vector<Rational> free_weights;
};
std::optional<Combination> conic_combination(const std::vector<IntVec>& generators,
                                             const std::vector<IntVec>& free,
                                             const IntVec& target);

// Is inequality a.x >= 0 (resp. equality) valid on the cone of h?
bool implies(const HRep& h, const IntVec& a);
bool implies_equality(const HRep& h, const IntVec& a);

// Facet-level equality modulo the equality space: f and g define the same
// half-space on span(equalities)^perp up to positive scaling.
bool same_facet(const IntVec& f, const IntVec& g, const std::vector<IntVec>& equalities);

}  // namespace entrocone::poly
