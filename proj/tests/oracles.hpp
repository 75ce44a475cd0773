#pragma once

// Slow, independent reference implementations used to cross-check the
// library on small inputs.

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "entrocone/causal_structure.hpp"
#include "entrocone/exact.hpp"
#include "entrocone/polyhedra.hpp"

namespace oracle {

using entrocone::IntVec;
using entrocone::causal::CausalStructure;
using entrocone::causal::VarSet;

// d-separation by listing every simple undirected path from X to Y and
// checking each interior node against the blocking rules.
inline bool d_separated_by_paths(const CausalStructure& g, VarSet x, VarSet y, VarSet z)
{
    const std::size_t n = g.size();
    auto in = [](VarSet s, std::size_t i) { return ((s >> i) & 1) != 0; };
    auto edge = [&](std::size_t a, std::size_t b) { return in(g.children(a), b); };   // a -> b

    std::vector<std::size_t> path;
    std::vector<char> on_path(n, 0);
    bool open_path = false;

    auto blocked = [&]() {
        for (std::size_t k = 1; k + 1 < path.size(); ++k) {
            const std::size_t a = path[k - 1], m = path[k], b = path[k + 1];
            const bool collider = edge(a, m) && edge(b, m);
            if (collider) {
                if (!in(z, m) && (g.descendants(m) & z) == 0) return true;
            } else if (in(z, m)) {
                return true;
            }
        }
        return false;
    };

    std::function<void(std::size_t)> walk = [&](std::size_t v) {
        if (open_path) return;
        if (path.size() > 1 && in(y, v)) {
            if (!blocked()) open_path = true;
            return;
        }
        for (std::size_t w = 0; w < n; ++w) {
            if (on_path[w] || !(edge(v, w) || edge(w, v))) continue;
            if (in(x, w)) continue;   // a shorter path from that start covers it
            path.push_back(w);
            on_path[w] = 1;
            walk(w);
            on_path[w] = 0;
            path.pop_back();
        }
    };
    for (std::size_t s = 0; s < n; ++s) {
        if (!in(x, s)) continue;
        path = {s};
        on_path.assign(n, 0);
        on_path[s] = 1;
        walk(s);
        if (open_path) return false;
    }
    return true;
}

// Extremal rays of a pointed cone {x : E x = 0, A x >= 0} by trying every
// subset of d-1 inequalities (with all equalities) whose solution space is a
// line.
inline std::vector<IntVec> rays_by_subsets(const entrocone::poly::HRep& h)
{
    const std::size_t d = h.dimension;
    const std::size_t m = h.inequalities.size();
    std::vector<IntVec> found;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> choose = [&](std::size_t start) {
        std::vector<IntVec> rows = h.equalities;
        for (auto p : pick) rows.push_back(h.inequalities[p]);
        const auto ker = entrocone::linalg::kernel(rows, d);
        if (ker.basis.empty()) return;   // adding more rows cannot help
        if (ker.basis.size() == 1) {
            for (int sgn : {1, -1}) {
                IntVec r = ker.basis[0];
                for (auto& v : r) v *= sgn;
                entrocone::make_primitive(r);
                bool ok = true;
                for (const auto& a : h.inequalities)
                    if (entrocone::dot(a, r) < 0) ok = false;
                if (ok) found.push_back(r);
            }
            return;
        }
        for (std::size_t i = start; i < m; ++i) {
            pick.push_back(i);
            choose(i + 1);
            pick.pop_back();
        }
    };
    choose(0);
    std::sort(found.begin(), found.end(), std::greater<IntVec>());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

// Random cone with small integer coefficients.
inline entrocone::poly::HRep random_cone(std::mt19937_64& rng, std::size_t d, std::size_t m, bool orthant)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    entrocone::poly::HRep h;
    h.dimension = d;
    if (orthant)
        for (std::size_t i = 0; i < d; ++i) {
            IntVec e(d, 0);
            e[i] = 1;
            h.inequalities.push_back(e);
        }
    while (h.inequalities.size() < m) {
        IntVec r(d);
        for (auto& v : r) v = coef(rng);
        if (!entrocone::is_zero(r)) h.inequalities.push_back(r);
    }
    return h;
}

}  // namespace oracle
