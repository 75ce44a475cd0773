#pragma once

// Finite-alphabet causal models, joint distributions and their entropy
// vectors, plus the explicit witness constructions for line structures and
// the post-selected Bell scenario.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "entrocone/causal_structure.hpp"
#include "entrocone/entropy_space.hpp"
#include "entrocone/exact.hpp"

namespace entrocone::dist {

// Probabilities over the product of the alphabets, row-major: the last
// variable varies fastest.
class JointDistribution {
public:
    JointDistribution() = default;
    // Throws InvalidModel unless sizes match, entries are >= 0 and sum to 1
    // within 1e-12.
    JointDistribution(std::vector<std::string> names, std::vector<std::size_t> alphabets, std::vector<double> probs);

    std::size_t variable_count() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::size_t>& alphabets() const { return alphabets_; }
    const std::vector<double>& probabilities() const { return probs_; }
    std::size_t outcome_count() const { return probs_.size(); }

    std::size_t variable(const std::string& name) const;
    std::vector<std::size_t> outcome(std::size_t flat) const;
    std::size_t flat_index(const std::vector<std::size_t>& outcome) const;
    double probability(const std::vector<std::size_t>& outcome) const { return probs_.at(flat_index(outcome)); }

private:
    std::vector<std::string> names_;
    std::vector<std::size_t> alphabets_;
    std::vector<double> probs_;
};

// Marginal on the listed variables, in the listed order.
JointDistribution marginal(const JointDistribution& p, const std::vector<std::string>& vars);
JointDistribution marginal(const JointDistribution& p, const std::vector<std::size_t>& vars);

// Distribution of the remaining variables given fixed values of `given`;
// throws InvalidParameter if the conditioning event has probability zero.
JointDistribution conditional(const JointDistribution& p, const std::vector<std::string>& given,
                              const std::vector<std::size_t>& values);

// Shannon entropy in bits of the marginal on a set of variable positions.
double entropy(const JointDistribution& p, entropy::VarSet vars);

// One component per nonempty subset, in CoordinateIndex order over p's names.
std::vector<double> entropy_vector(const JointDistribution& p);
// Components for the subsets of `index` (whose names must be p's names).
std::vector<double> entropy_vector(const JointDistribution& p, const entropy::CoordinateIndex& index);

// Round every component to the nearest integer when all are within `tol`.
std::optional<IntVec> snap_to_integers(const std::vector<double>& h, double tol = 1e-10);

// Per node: the alphabet size and a table with one row per joint outcome of
// the parents (parents in node order, row-major, last parent fastest).
struct Cpt {
    std::size_t alphabet = 2;
    std::vector<std::vector<double>> rows;
};

class CausalModel {
public:
    CausalModel() = default;
    // Throws InvalidModel if a CPT has the wrong shape or a row is not a
    // distribution (within 1e-12).
    CausalModel(causal::CausalStructure g, std::vector<Cpt> cpts);

    const causal::CausalStructure& structure() const { return g_; }
    const std::vector<Cpt>& cpts() const { return cpts_; }
    const Cpt& cpt(std::size_t node) const { return cpts_.at(node); }
    std::size_t alphabet(std::size_t node) const { return cpts_.at(node).alphabet; }
    std::vector<std::size_t> parent_alphabets(std::size_t node) const;

private:
    causal::CausalStructure g_;
    std::vector<Cpt> cpts_;
};

// Row count of a CPT for a node given parent alphabet sizes.
std::size_t parent_outcomes(const std::vector<std::size_t>& parent_alphabets);

// Deterministic CPT: value = f(parent outcomes in node order).
Cpt deterministic_cpt(std::size_t alphabet, const std::vector<std::size_t>& parent_alphabets,
                      const std::function<std::size_t(const std::vector<std::size_t>&)>& f);
Cpt uniform_cpt(std::size_t alphabet, std::size_t rows = 1);
Cpt constant_cpt(std::size_t alphabet, std::size_t value, std::size_t rows = 1);

// Joint over all nodes, in node order.
JointDistribution compile(const CausalModel& m);
// Marginal of the compiled joint on the observed nodes.
JointDistribution observed_distribution(const CausalModel& m);

// Every CPT row drawn uniformly from the simplex. Alphabet sizes per node.
CausalModel random_model(const causal::CausalStructure& g, const std::vector<std::size_t>& alphabets,
                         std::mt19937_64& rng);

// The line witness with support on positions i..j of P_n (1-based), built on
// uniform binary hidden nodes; positions outside i..j are the constant 1.
CausalModel witness_line(std::size_t i, std::size_t j, std::size_t n);

// Post-selected joint over (X0, X1, Y, Z0, Z1) from a model on the 5-node
// line, reading X1..X5 as A, X, Y, Z, B. A and B must be binary and both of
// their values must occur.
JointDistribution post_select_joint(const CausalModel& model);

enum class SplitMode { keep0, keep1, copy };
SplitMode parse_split_mode(const std::string& s);
std::string to_string(SplitMode m);

// Split the outer variables of a 3-node line model into two copies each:
// keep0 puts the variable in copy 0 and the constant 1 in copy 1, keep1 the
// reverse, copy puts it in both. Output order X0, X1, Y, Z0, Z1.
JointDistribution split_p3_witness(const CausalModel& model, SplitMode x_mode, SplitMode z_mode);

// P(x, y | A = a, B = b) for a, b in {0, 1}, each row-major in (x, y).
struct ConditionalTables {
    std::size_t x_size = 0;
    std::size_t y_size = 0;
    std::array<std::array<std::vector<double>, 2>, 2> table;   // table[a][b]

    void validate() const;
};

// H(Y|X)_11 + H(X|Y)_10 + H(X|Y)_01 - H(X|Y)_00, in bits.
double bc_functional(const ConditionalTables& t);

// The eight relabelings H(U_a|V_b) <= H(U_a|V_b') + H(V_b'|U_a') + H(U_a'|V_b)
// with (U, V) = (X, Y) or (Y, X) and a, b in {0, 1}; each entry is the slack
// (right side minus left side). Entry 0 is bc_functional.
std::array<double, 8> bc_variants(const ConditionalTables& t);

// Tables of X, Y given binary A, B from a joint that contains all four.
ConditionalTables conditional_tables(const JointDistribution& p, const std::string& a, const std::string& x,
                                     const std::string& y, const std::string& b);

// JSON readers; errors name the offending field.
CausalModel model_from_json(const std::string& text);
ConditionalTables tables_from_json(const std::string& text);
std::string tables_to_json(const ConditionalTables& t);

}  // namespace entrocone::dist
