#pragma once

// Reference values: the extremal rays of the four-variable line
// cone and of the post-selected three-variable marginal cone, and the seven
// inequality families bounding the latter.

#include <string>
#include <vector>

#include "entrocone/analysis.hpp"
#include "entrocone/entropy_space.hpp"

namespace ref {

// Coordinates H(A) H(X) H(Y) H(B) H(AX) H(AY) H(AB) H(XY) H(XB) H(YB)
// H(AXY) H(AXB) H(AYB) H(XYB) H(AXYB).
inline const std::vector<std::vector<long>> line4_rays = {
    {1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3},   // (i)
    {0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2},   // (ii)
    {1, 1, 1, 0, 2, 2, 1, 2, 1, 1, 2, 2, 2, 2, 2},   // (iii)
    {0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1},   // (iv)
    {0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1, 0, 1, 1, 1},   // (v)
    {0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 1, 1, 0, 1, 1},   // (vi)
    {1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 1},   // (vii)
    {0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},   // (viii)
    {0, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1},   // (ix)
    {1, 1, 0, 0, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1},   // (x)
};

// Coordinates H(X0) H(X1) H(Y) H(Z0) H(Z1) H(X0Y) H(X0Z0) H(X0Z1) H(X1Y)
// H(X1Z0) H(X1Z1) H(YZ0) H(YZ1) H(X0YZ0) H(X0YZ1) H(X1YZ0) H(X1YZ1).
inline const std::vector<std::vector<long>> post_selected3_rays = {
    {1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},   // (i)
    {0, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2},   // (ii)
    {0, 1, 1, 0, 1, 1, 0, 1, 2, 1, 2, 1, 2, 1, 2, 2, 2},   // (iii)
    {0, 1, 1, 1, 0, 1, 1, 0, 2, 2, 1, 2, 1, 2, 1, 2, 2},   // (iv)
    {1, 0, 1, 1, 1, 2, 2, 2, 1, 1, 1, 2, 2, 2, 2, 2, 2},   // (v)
    {1, 0, 1, 0, 1, 2, 1, 2, 1, 0, 1, 1, 2, 2, 2, 1, 2},   // (vi)
    {1, 0, 1, 1, 0, 2, 2, 1, 1, 1, 0, 2, 1, 2, 2, 2, 1},   // (vii)
    {1, 1, 1, 0, 1, 2, 1, 2, 2, 1, 2, 1, 2, 2, 2, 2, 2},   // (viii)
    {1, 1, 1, 1, 0, 2, 2, 1, 2, 2, 1, 2, 1, 2, 2, 2, 2},   // (ix)
    {0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1},   // (x)
    {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0},   // (xi)
    {0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1},   // (xii)
    {0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 1},   // (xiii)
    {1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0},   // (xiv)
    {0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},   // (xv)
    {0, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1},   // (xvi)
    {0, 0, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1},   // (xvii)
    {1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},   // (xviii)
    {1, 0, 1, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1},   // (xix)
    {0, 1, 1, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1},   // (xx)
};

// The seven reference families over bc_marginal_index(3). The last one is an
// equality.
inline std::vector<entrocone::entropy::LinearForm> post_selected3_families()
{
    using entrocone::entropy::LinearForm;
    using entrocone::entropy::Relation;
    const auto index = entrocone::analysis::bc_marginal_index(3);
    auto S = [&](std::vector<std::string> v) { return index.set_of(v); };
    auto H = [&](std::vector<std::string> v) { return LinearForm::entropy(S(v)); };
    auto Hc = [&](std::vector<std::string> a, std::vector<std::string> b) {
        return LinearForm::conditional_entropy(S(a), S(b));
    };
    std::vector<LinearForm> out;
    out.push_back(Hc({"X1"}, {"Y", "Z1"}) + Hc({"Z0"}, {"X1", "Y"}) + Hc({"Z1"}, {"X0", "Y"}) -
                  Hc({"Z0"}, {"X0", "Y"}));
    out.push_back(Hc({"X0"}, {"Y", "Z1"}) + Hc({"Z0"}, {"Y", "X1"}) - Hc({"X0"}, {"Y", "Z0"}) + H({"X0", "Y"}) -
                  H({"X0", "Z0"}));
    out.push_back(Hc({"Y"}, {"X0", "Z0"}) + Hc({"X1"}, {"Y", "Z1"}) - Hc({"X1"}, {"Y", "Z0"}));
    out.push_back(Hc({"X1"}, {"Y", "Z0"}) + H({"X0", "Y"}) + H({"Y", "Z1"}) - H({"X1", "Y"}) - H({"X0", "Z1"}));
    out.push_back(H({"X0", "Y", "Z1"}) + H({"X1", "Y", "Z0"}) - H({"X1", "Y", "Z1"}) - H({"X0", "Z0"}));
    out.push_back(Hc({"X0"}, {"Y", "Z1"}) + H({"Y", "Z0"}) - H({"X0", "Z0"}));
    LinearForm eq = LinearForm::mutual_information(S({"X0"}), S({"Z0"}), 0, Relation::equal);
    out.push_back(eq);
    return out;
}

}  // namespace ref
