#pragma once

// Entropy coordinates (one per nonempty subset of variables), linear forms
// over them, and the Shannon / conditional-independence constraint systems.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entrocone/exact.hpp"
#include "entrocone/polyhedra.hpp"

namespace entrocone::causal {
class CausalStructure;
}

namespace entrocone::entropy {

// Bit i set <=> variable i of the ground list is a member.
using VarSet = std::uint64_t;

constexpr VarSet singleton(std::size_t i) { return VarSet{1} << i; }
std::size_t cardinality(VarSet s);
std::vector<std::size_t> members(VarSet s);

// Cardinality first, then lexicographic by member positions.
bool canonical_less(VarSet a, VarSet b);

class CoordinateIndex {
public:
    CoordinateIndex() = default;

    // Every nonempty subset of the ground set.
    explicit CoordinateIndex(std::vector<std::string> names);

    // Only the given subsets (e.g. a marginal scenario); stored canonically.
    CoordinateIndex(std::vector<std::string> names, std::vector<VarSet> subsets);

    std::size_t size() const { return subsets_.size(); }
    std::size_t variable_count() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<VarSet>& subsets() const { return subsets_; }
    VarSet subset(std::size_t i) const { return subsets_.at(i); }
    VarSet ground() const;

    std::optional<std::size_t> find(VarSet s) const;
    std::size_t at(VarSet s) const;     // throws InvalidParameter

    // "AX" for {A, X}; variable names are concatenated in ground order.
    std::string set_name(VarSet s) const;
    std::string label(std::size_t i) const { return "H(" + set_name(subsets_.at(i)) + ")"; }
    std::vector<std::string> labels() const;

    // Position of a variable name; throws InvalidParameter.
    std::size_t variable(const std::string& name) const;
    VarSet set_of(const std::vector<std::string>& vars) const;

    bool operator==(const CoordinateIndex& o) const { return names_ == o.names_ && subsets_ == o.subsets_; }

private:
    void build_lookup();

    std::vector<std::string> names_;
    std::vector<VarSet> subsets_;
    std::vector<std::pair<VarSet, std::size_t>> lookup_;    // sorted by VarSet
};

enum class Relation { greater_equal, equal };

// Sum of coeff * H(S) terms, kept in insertion order (that is the order the
// plaintext form prints in). H(empty) is identically zero and never stored.
class LinearForm {
public:
    using Term = std::pair<VarSet, Rational>;

    LinearForm() = default;
    explicit LinearForm(Relation rel) : relation_(rel) {}

    static LinearForm entropy(VarSet s, Relation rel = Relation::greater_equal);
    // H(a|c) = H(ac) - H(c)
    static LinearForm conditional_entropy(VarSet a, VarSet given, Relation rel = Relation::greater_equal);
    // I(a:b|c) = H(ac) + H(bc) - H(abc) - H(c)
    static LinearForm mutual_information(VarSet a, VarSet b, VarSet given = 0,
                                         Relation rel = Relation::greater_equal);

    LinearForm& add(VarSet s, const Rational& c);
    LinearForm& operator+=(const LinearForm& o);
    LinearForm& operator-=(const LinearForm& o);
    LinearForm& operator*=(const Rational& c);

    Relation relation() const { return relation_; }
    void set_relation(Relation r) { relation_ = r; }
    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    Rational coefficient(VarSet s) const;
    VarSet support() const;

    // Coefficient row over an index; throws if a term is not a coordinate.
    IntVec row(const CoordinateIndex& index) const;
    static LinearForm from_row(const IntVec& row, const CoordinateIndex& index, Relation rel);
    bool references_only(const CoordinateIndex& index) const;

    double evaluate(const std::vector<double>& h, const CoordinateIndex& index) const;

    // "H(AX)+H(AY)-H(AXY)-H(A) >= 0", coefficients scaled to coprime integers.
    std::string to_string(const CoordinateIndex& index) const;

private:
    std::vector<Term> terms_;
    Relation relation_ = Relation::greater_equal;
};

LinearForm operator+(LinearForm a, const LinearForm& b);
LinearForm operator-(LinearForm a, const LinearForm& b);

struct ConstraintSystem {
    CoordinateIndex index;
    std::vector<LinearForm> equalities;
    std::vector<LinearForm> inequalities;

    poly::HRep to_hrep() const;
    void validate() const;
};

// Elemental inequalities on the variables of `ground`: one monotonicity per
// variable and one I(i:j|S) >= 0 per pair and subset of the rest. A single
// variable gets H(X) >= 0.
std::vector<LinearForm> elemental_inequalities(VarSet ground);

std::size_t elemental_count(std::size_t n);

ConstraintSystem elemental_shannon_system(const std::vector<std::string>& vars);

// I(X : nondescendants(X) | parents(X)) = 0 for every node with a nonempty
// non-descendant set, over coordinates of all nodes in node order.
std::vector<LinearForm> classical_ci_system(const causal::CausalStructure& g);

// Line structure helpers. Variables are X1..Xn in order; a contiguous block
// is a set of consecutive positions.
bool is_contiguous(VarSet s);
std::vector<VarSet> runs(VarSet s);     // maximal contiguous blocks, in order

// n monotonicities and the n(n-1)/2 forms I(X_i:X_j|X_{i+1}..X_{j-1}) >= 0.
ConstraintSystem reduced_line_system(std::size_t n);

std::vector<std::string> line_names(std::size_t n);

// Contiguous-block coordinates of a line with the given variable names.
CoordinateIndex contiguous_index(const std::vector<std::string>& names);

// Rewrite every non-contiguous H(S) as the sum of H over its runs.
LinearForm substitute_runs(const LinearForm& f);
ConstraintSystem to_contiguous(const ConstraintSystem& s);

// Lift a vector in contiguous coordinates to all subsets.
IntVec expand_runs(const IntVec& y, const CoordinateIndex& contiguous, const CoordinateIndex& full);

// H(S) - sum of H(runs of S) = 0 for every non-contiguous S of the index.
std::vector<LinearForm> run_equalities(const CoordinateIndex& full);

}  // namespace entrocone::entropy
