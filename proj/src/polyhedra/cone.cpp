#include <algorithm>
#include <set>

#include "entrocone/errors.hpp"
#include "polyhedra_detail.hpp"

namespace entrocone::poly {

namespace detail {

IntVec pull_back(const IntVec& a, const std::vector<IntVec>& basis)
{
    IntVec out(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) out[j] = dot(a, basis[j]);
    return out;
}

IntVec push_forward(const IntVec& y, const std::vector<IntVec>& basis, std::size_t dimension)
{
    IntVec x(dimension, 0);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (y[j] == 0) continue;
        for (std::size_t i = 0; i < dimension; ++i)
            if (basis[j][i] != 0) x[i] += y[j] * basis[j][i];
    }
    return x;
}

void sort_desc(std::vector<IntVec>& v)
{
    std::sort(v.begin(), v.end(), [](const IntVec& a, const IntVec& b) {
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

using detail::pull_back;
using detail::push_forward;
using detail::sort_desc;

namespace {

void check_rows(const std::vector<IntVec>& rows, std::size_t d, const char* what)
{
    for (const auto& r : rows)
        if (r.size() != d)
            throw InvalidParameter(std::string(what) + " row has length " + std::to_string(r.size()) +
                                   ", expected " + std::to_string(d));
}

void check_labels(const std::vector<std::string>& labels, std::size_t d)
{
    if (!labels.empty() && labels.size() != d)
        throw InvalidParameter("label count " + std::to_string(labels.size()) + " does not match dimension " +
                               std::to_string(d));
}

std::size_t dimension_of(const Cone& c)
{
    return std::visit([](const auto& x) { return x.dimension; }, c);
}

}  // namespace

void validate(const HRep& h)
{
    if (h.dimension == 0) throw InvalidParameter("cone dimension must be positive");
    check_rows(h.equalities, h.dimension, "equality");
    check_rows(h.inequalities, h.dimension, "inequality");
    check_labels(h.labels, h.dimension);
}

void validate(const VRep& v)
{
    if (v.dimension == 0) throw InvalidParameter("cone dimension must be positive");
    check_rows(v.rays, v.dimension, "ray");
    check_rows(v.lineality, v.dimension, "lineality");
    check_labels(v.labels, v.dimension);
}

std::vector<std::size_t> complement(std::size_t dimension, const std::vector<std::size_t>& coords)
{
    std::vector<char> drop(dimension, 0);
    for (auto c : coords) {
        if (c >= dimension) throw InvalidParameter("coordinate " + std::to_string(c) + " out of range");
        drop[c] = 1;
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < dimension; ++i)
        if (!drop[i]) keep.push_back(i);
    return keep;
}

VRep enumerate_rays(const HRep& h)
{
    validate(h);
    const std::size_t d = h.dimension;

    // Substitute the equalities away: x = N y over the free coordinates.
    linalg::Kernel ker = linalg::kernel(h.equalities, d);
    const std::vector<IntVec>& n_basis = ker.basis;
    const std::size_t k = n_basis.size();

    std::vector<IntVec> rows;
    for (const auto& a : h.inequalities) {
        IntVec r = pull_back(a, n_basis);
        make_primitive(r);
        if (!is_zero(r)) rows.push_back(std::move(r));
    }

    VRep out;
    out.dimension = d;
    out.labels = h.labels;

    // Lineality of the reduced system; intersect with a coordinate complement.
    linalg::Kernel lin = linalg::kernel(rows, k);
    std::vector<IntVec> lin_x;
    for (const auto& l : lin.basis) lin_x.push_back(push_forward(l, n_basis, d));
    out.lineality = linalg::row_basis(lin_x, d);

    std::vector<char> pinned(k, 0);
    {
        linalg::Echelon e = linalg::rref(lin.basis, k, true);
        for (auto p : e.pivots) pinned[p] = 1;
    }
    std::vector<std::size_t> live;
    for (std::size_t j = 0; j < k; ++j)
        if (!pinned[j]) live.push_back(j);

    std::vector<IntVec> reduced;
    for (const auto& r : rows) {
        IntVec s(live.size());
        for (std::size_t j = 0; j < live.size(); ++j) s[j] = r[live[j]];
        if (!is_zero(s)) reduced.push_back(std::move(s));
    }

    std::vector<IntVec> zs = detail::double_description(std::move(reduced), live.size());
    for (auto& z : zs) {
        IntVec y(k, 0);
        for (std::size_t j = 0; j < live.size(); ++j) y[live[j]] = z[j];
        IntVec x = push_forward(y, n_basis, d);
        make_primitive(x);
        out.rays.push_back(std::move(x));
    }
    sort_desc(out.rays);
    return out;
}

namespace {

HRep canonical_h(std::size_t d, std::vector<IntVec> eqs, std::vector<IntVec> ineqs,
                 std::vector<std::string> labels)
{
    HRep h;
    h.dimension = d;
    h.labels = std::move(labels);
    h.equalities = linalg::row_basis(eqs, d);
    linalg::Echelon e = linalg::rref(h.equalities, d, true);
    for (auto& f : ineqs) {
        IntVec g = linalg::reduce_modulo(f, e);
        if (!is_zero(g)) h.inequalities.push_back(std::move(g));
    }
    sort_desc(h.inequalities);
    return h;
}

}  // namespace

HRep facets_from_rays(const VRep& v)
{
    validate(v);
    HRep dual;
    dual.dimension = v.dimension;
    dual.equalities = v.lineality;
    dual.inequalities = v.rays;
    VRep dv = enumerate_rays(dual);
    return canonical_h(v.dimension, std::move(dv.lineality), std::move(dv.rays), v.labels);
}

VRep extremal_subset(const VRep& v)
{
    HRep h = facets_from_rays(v);
    return enumerate_rays(h);
}

std::optional<Combination> conic_combination(const std::vector<IntVec>& generators,
                                             const std::vector<IntVec>& free, const IntVec& target)
{
    std::vector<IntVec> cols = generators;
    for (const auto& f : free) {
        cols.push_back(f);
        IntVec neg(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) neg[i] = -f[i];
        cols.push_back(std::move(neg));
    }
    for (const auto& c : cols)
        if (c.size() != target.size()) throw InvalidParameter("conic_combination: dimension mismatch");
    auto x = detail::feasible_point(cols, target);
    if (!x) return std::nullopt;
    Combination out;
    out.weights.assign(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(generators.size()));
    for (std::size_t j = 0; j < free.size(); ++j) {
        Rational w = (*x)[generators.size() + 2 * j] - (*x)[generators.size() + 2 * j + 1];
        out.free_weights.push_back(w);
    }
    return out;
}

bool implies(const HRep& h, const IntVec& a)
{
    if (a.size() != h.dimension) throw InvalidParameter("implies: dimension mismatch");
    if (is_zero(a)) return true;
    // Work modulo the equalities so the LP only sees the quotient space.
    linalg::Kernel ker = linalg::kernel(h.equalities, h.dimension);
    IntVec t = pull_back(a, ker.basis);
    if (is_zero(t)) return true;
    std::vector<IntVec> gens;
    for (const auto& r : h.inequalities) {
        IntVec g = pull_back(r, ker.basis);
        if (!is_zero(g)) gens.push_back(std::move(g));
    }
    return detail::feasible_point(gens, t).has_value();
}

bool implies_equality(const HRep& h, const IntVec& a)
{
    IntVec neg(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
    return implies(h, a) && implies(h, neg);
}

bool membership(const Cone& cone, const IntVec& v)
{
    if (v.size() != dimension_of(cone)) throw InvalidParameter("membership: dimension mismatch");
    if (const auto* h = std::get_if<HRep>(&cone)) {
        for (const auto& e : h->equalities)
            if (dot(e, v) != 0) return false;
        for (const auto& r : h->inequalities)
            if (dot(r, v) < 0) return false;
        return true;
    }
    const auto& vr = std::get<VRep>(cone);
    return conic_combination(vr.rays, vr.lineality, v).has_value();
}

bool membership(const Cone& cone, const RatVec& v)
{
    if (v.size() != dimension_of(cone)) throw InvalidParameter("membership: dimension mismatch");
    return membership(cone, primitive_of(v));
}

bool contains(const Cone& outer, const Cone& inner)
{
    if (dimension_of(outer) != dimension_of(inner)) throw InvalidParameter("contains: dimension mismatch");

    if (const auto* iv = std::get_if<VRep>(&inner)) {
        for (const auto& r : iv->rays)
            if (!membership(outer, r)) return false;
        for (const auto& l : iv->lineality) {
            IntVec neg(l.size());
            for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
            if (!membership(outer, l) || !membership(outer, neg)) return false;
        }
        return true;
    }
    const auto& ih = std::get<HRep>(inner);
    HRep oh = std::holds_alternative<HRep>(outer) ? std::get<HRep>(outer) : facets_from_rays(std::get<VRep>(outer));
    for (const auto& e : oh.equalities)
        if (!implies_equality(ih, e)) return false;
    for (const auto& r : oh.inequalities)
        if (!implies(ih, r)) return false;
    return true;
}

bool cones_equal(const Cone& a, const Cone& b)
{
    return contains(a, b) && contains(b, a);
}

bool same_facet(const IntVec& f, const IntVec& g, const std::vector<IntVec>& equalities)
{
    if (f.size() != g.size()) throw InvalidParameter("same_facet: dimension mismatch");
    linalg::Echelon e = linalg::rref(equalities, f.size(), true);
    return linalg::reduce_modulo(f, e) == linalg::reduce_modulo(g, e);
}

HRep dd_project(const HRep& h, const std::vector<std::size_t>& coords)
{
    validate(h);
    std::vector<std::size_t> keep = complement(h.dimension, coords);
    if (keep.empty()) throw InvalidParameter("cannot eliminate every coordinate");
    VRep v = enumerate_rays(h);
    VRep p;
    p.dimension = keep.size();
    auto project = [&](const IntVec& x) {
        IntVec y(keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) y[i] = x[keep[i]];
        return y;
    };
    for (const auto& r : v.rays) {
        IntVec y = project(r);
        make_primitive(y);
        if (!is_zero(y)) p.rays.push_back(std::move(y));
    }
    for (const auto& l : v.lineality) {
        IntVec y = project(l);
        if (!is_zero(y)) p.lineality.push_back(std::move(y));
    }
    sort_desc(p.rays);
    if (!h.labels.empty())
        for (auto i : keep) p.labels.push_back(h.labels[i]);
    return facets_from_rays(p);
}

}  // namespace entrocone::poly
