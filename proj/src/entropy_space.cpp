#include "entrocone/entropy_space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "entrocone/causal_structure.hpp"
#include "entrocone/errors.hpp"

namespace entrocone::entropy {

std::size_t cardinality(VarSet s) { return static_cast<std::size_t>(std::popcount(s)); }

std::vector<std::size_t> members(VarSet s)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; s; ++i, s >>= 1)
        if (s & 1) out.push_back(i);
    return out;
}

bool canonical_less(VarSet a, VarSet b)
{
    std::size_t ca = cardinality(a), cb = cardinality(b);
    if (ca != cb) return ca < cb;
    auto ma = members(a), mb = members(b);
    return ma < mb;
}

CoordinateIndex::CoordinateIndex(std::vector<std::string> names) : names_(std::move(names))
{
    if (names_.empty()) throw InvalidParameter("coordinate index needs at least one variable");
    if (names_.size() > 24) throw InvalidParameter("too many variables for a full entropy index");
    const VarSet full = (VarSet{1} << names_.size()) - 1;
    subsets_.reserve(full);
    for (VarSet s = 1; s <= full; ++s) subsets_.push_back(s);
    std::sort(subsets_.begin(), subsets_.end(), canonical_less);
    build_lookup();
}

CoordinateIndex::CoordinateIndex(std::vector<std::string> names, std::vector<VarSet> subsets)
    : names_(std::move(names)), subsets_(std::move(subsets))
{
    if (names_.empty()) throw InvalidParameter("coordinate index needs at least one variable");
    if (names_.size() > 63) throw InvalidParameter("too many variables");
    const VarSet full = (VarSet{1} << names_.size()) - 1;
    for (auto s : subsets_)
        if (s == 0 || (s & ~full)) throw InvalidParameter("subset outside the ground set");
    std::sort(subsets_.begin(), subsets_.end(), canonical_less);
    subsets_.erase(std::unique(subsets_.begin(), subsets_.end()), subsets_.end());
    build_lookup();
}

void CoordinateIndex::build_lookup()
{
    lookup_.clear();
    for (std::size_t i = 0; i < subsets_.size(); ++i) lookup_.emplace_back(subsets_[i], i);
    std::sort(lookup_.begin(), lookup_.end());
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw InvalidParameter("duplicate variable name " + names_[i]);
}

VarSet CoordinateIndex::ground() const { return (VarSet{1} << names_.size()) - 1; }

std::optional<std::size_t> CoordinateIndex::find(VarSet s) const
{
    auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(s, std::size_t{0}));
    if (it == lookup_.end() || it->first != s) return std::nullopt;
    return it->second;
}

std::size_t CoordinateIndex::at(VarSet s) const
{
    auto i = find(s);
    if (!i) throw InvalidParameter("H(" + set_name(s) + ") is not a coordinate of this index");
    return *i;
}

std::string CoordinateIndex::set_name(VarSet s) const
{
    std::string out;
    for (auto m : members(s)) {
        if (m >= names_.size()) throw InvalidParameter("subset outside the ground set");
        out += names_[m];
    }
    return out;
}

std::vector<std::string> CoordinateIndex::labels() const
{
    std::vector<std::string> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(label(i));
    return out;
}

std::size_t CoordinateIndex::variable(const std::string& name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    throw InvalidParameter("unknown variable " + name);
}

VarSet CoordinateIndex::set_of(const std::vector<std::string>& vars) const
{
    VarSet s = 0;
    for (const auto& v : vars) s |= singleton(variable(v));
    return s;
}

// LinearForm

LinearForm LinearForm::entropy(VarSet s, Relation rel)
{
    LinearForm f(rel);
    f.add(s, 1);
    return f;
}

LinearForm LinearForm::conditional_entropy(VarSet a, VarSet given, Relation rel)
{
    LinearForm f(rel);
    f.add(a | given, 1);
    f.add(given, -1);
    return f;
}

LinearForm LinearForm::mutual_information(VarSet a, VarSet b, VarSet given, Relation rel)
{
    LinearForm f(rel);
    f.add(a | given, 1);
    f.add(b | given, 1);
    f.add(a | b | given, -1);
    f.add(given, -1);
    return f;
}

LinearForm& LinearForm::add(VarSet s, const Rational& c)
{
    if (s == 0 || c == 0) return *this;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->first == s) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
            return *this;
        }
    }
    terms_.emplace_back(s, c);
    return *this;
}

LinearForm& LinearForm::operator+=(const LinearForm& o)
{
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o)
{
    for (const auto& [s, c] : o.terms_) add(s, -c);
    return *this;
}

LinearForm& LinearForm::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }

Rational LinearForm::coefficient(VarSet s) const
{
    for (const auto& t : terms_)
        if (t.first == s) return t.second;
    return 0;
}

VarSet LinearForm::support() const
{
    VarSet u = 0;
    for (const auto& t : terms_) u |= t.first;
    return u;
}

IntVec LinearForm::row(const CoordinateIndex& index) const
{
    RatVec r(index.size(), 0);
    for (const auto& [s, c] : terms_) r[index.at(s)] += c;
    return primitive_of(r);
}

LinearForm LinearForm::from_row(const IntVec& row, const CoordinateIndex& index, Relation rel)
{
    if (row.size() != index.size()) throw InvalidParameter("row length does not match index");
    LinearForm f(rel);
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] != 0) f.add(index.subset(i), Rational(row[i]));
    return f;
}

bool LinearForm::references_only(const CoordinateIndex& index) const
{
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return index.find(t.first).has_value(); });
}

double LinearForm::evaluate(const std::vector<double>& h, const CoordinateIndex& index) const
{
    if (h.size() != index.size()) throw InvalidParameter("entropy vector length does not match index");
    double s = 0;
    for (const auto& [set, c] : terms_) s += c.get_d() * h[index.at(set)];
    return s;
}

std::string LinearForm::to_string(const CoordinateIndex& index) const
{
    RatVec coeffs;
    for (const auto& t : terms_) coeffs.push_back(t.second);
    IntVec ints = primitive_of(coeffs);
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const Integer& c = ints[i];
        if (c < 0)
            os << "-";
        else if (i > 0)
            os << "+";
        if (abs(c) != 1) os << Integer(abs(c)).get_str();
        os << "H(" << index.set_name(terms_[i].first) << ")";
    }
    if (terms_.empty()) os << "0";
    os << (relation_ == Relation::equal ? " = 0" : " >= 0");
    return os.str();
}

// ConstraintSystem

void ConstraintSystem::validate() const
{
    for (const auto* list : {&equalities, &inequalities})
        for (const auto& f : *list)
            if (!f.references_only(index))
                throw InvalidParameter("constraint " + f.to_string(index) + " uses coordinates outside the index");
}

poly::HRep ConstraintSystem::to_hrep() const
{
    validate();
    poly::HRep h;
    h.dimension = index.size();
    h.labels = index.labels();
    for (const auto& f : equalities) h.equalities.push_back(f.row(index));
    for (const auto& f : inequalities) h.inequalities.push_back(f.row(index));
    return h;
}

std::vector<LinearForm> elemental_inequalities(VarSet ground)
{
    std::vector<LinearForm> out;
    auto vars = members(ground);
    if (vars.empty()) return out;
    if (vars.size() == 1) {
        out.push_back(LinearForm::entropy(ground));
        return out;
    }
    for (auto v : vars) out.push_back(LinearForm::conditional_entropy(singleton(v), ground & ~singleton(v)));
    for (std::size_t a = 0; a < vars.size(); ++a) {
        for (std::size_t b = a + 1; b < vars.size(); ++b) {
            const VarSet rest = ground & ~singleton(vars[a]) & ~singleton(vars[b]);
            std::vector<VarSet> subs;
            for (VarSet s = rest;; s = (s - 1) & rest) {
                subs.push_back(s);
                if (s == 0) break;
            }
            std::sort(subs.begin(), subs.end(), [](VarSet x, VarSet y) {
                if (x == 0 || y == 0) return x == 0 && y != 0;
                return canonical_less(x, y);
            });
            for (auto s : subs)
                out.push_back(LinearForm::mutual_information(singleton(vars[a]), singleton(vars[b]), s));
        }
    }
    return out;
}

std::size_t elemental_count(std::size_t n)
{
    if (n == 0) return 0;
    if (n == 1) return 1;
    // n + n(n-1) 2^(n-3), written to stay integral at n = 2.
    return n + (n * (n - 1) * (std::size_t{1} << (n - 2))) / 2;
}

ConstraintSystem elemental_shannon_system(const std::vector<std::string>& vars)
{
    if (vars.empty()) throw InvalidParameter("elemental_shannon_system: empty variable list");
    ConstraintSystem s{CoordinateIndex(vars), {}, {}};
    s.inequalities = elemental_inequalities(s.index.ground());
    return s;
}

std::vector<LinearForm> classical_ci_system(const causal::CausalStructure& g)
{
    std::vector<LinearForm> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        VarSet parents = g.parents(i);
        VarSet nondesc = g.all() & ~g.descendants(i) & ~parents & ~singleton(i);
        if (nondesc == 0) continue;
        out.push_back(LinearForm::mutual_information(singleton(i), nondesc, parents, Relation::equal));
    }
    return out;
}

bool is_contiguous(VarSet s)
{
    if (s == 0) return false;
    VarSet shifted = s >> std::countr_zero(s);
    return (shifted & (shifted + 1)) == 0;
}

std::vector<VarSet> runs(VarSet s)
{
    std::vector<VarSet> out;
    while (s) {
        VarSet low = s & (~s + 1);
        VarSet run = 0;
        VarSet bit = low;
        while (s & bit) {
            run |= bit;
            bit <<= 1;
        }
        out.push_back(run);
        s &= ~run;
    }
    return out;
}

std::vector<std::string> line_names(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
    return names;
}

ConstraintSystem reduced_line_system(std::size_t n)
{
    if (n == 0) throw InvalidParameter("reduced_line_system: n must be positive");
    ConstraintSystem s{CoordinateIndex(line_names(n)), {}, {}};
    const VarSet all = s.index.ground();
    if (n == 1) {
        s.inequalities.push_back(LinearForm::entropy(all));
        return s;
    }
    for (std::size_t i = 0; i < n; ++i)
        s.inequalities.push_back(LinearForm::conditional_entropy(singleton(i), all & ~singleton(i)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            VarSet between = 0;
            for (std::size_t k = i + 1; k < j; ++k) between |= singleton(k);
            s.inequalities.push_back(LinearForm::mutual_information(singleton(i), singleton(j), between));
        }
    }
    return s;
}

CoordinateIndex contiguous_index(const std::vector<std::string>& names)
{
    std::vector<VarSet> blocks;
    const std::size_t n = names.size();
    for (std::size_t i = 0; i < n; ++i) {
        VarSet b = 0;
        for (std::size_t j = i; j < n; ++j) {
            b |= singleton(j);
            blocks.push_back(b);
        }
    }
    return CoordinateIndex(names, blocks);
}

LinearForm substitute_runs(const LinearForm& f)
{
    LinearForm out(f.relation());
    for (const auto& [s, c] : f.terms())
        for (auto r : runs(s)) out.add(r, c);
    return out;
}

ConstraintSystem to_contiguous(const ConstraintSystem& s)
{
    ConstraintSystem out{contiguous_index(s.index.names()), {}, {}};
    for (const auto& f : s.equalities) {
        LinearForm g = substitute_runs(f);
        if (!g.empty()) out.equalities.push_back(std::move(g));
    }
    for (const auto& f : s.inequalities) {
        LinearForm g = substitute_runs(f);
        if (!g.empty()) out.inequalities.push_back(std::move(g));
    }
    return out;
}

IntVec expand_runs(const IntVec& y, const CoordinateIndex& contiguous, const CoordinateIndex& full)
{
    if (y.size() != contiguous.size()) throw InvalidParameter("expand_runs: length mismatch");
    IntVec x(full.size(), 0);
    for (std::size_t i = 0; i < full.size(); ++i)
        for (auto r : runs(full.subset(i))) x[i] += y[contiguous.at(r)];
    return x;
}

std::vector<LinearForm> run_equalities(const CoordinateIndex& full)
{
    std::vector<LinearForm> out;
    for (auto s : full.subsets()) {
        if (is_contiguous(s)) continue;
        LinearForm f(Relation::equal);
        f.add(s, 1);
        for (auto r : runs(s)) f.add(r, -1);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace entrocone::entropy
