#include "entrocone/exact.hpp"

#include <sstream>
#include <stdexcept>

namespace entrocone {

void make_primitive(IntVec& v)
{
    Integer g = 0;
    for (const auto& x : v) {
        if (x != 0) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            if (g == 1) return;
        }
    }
    if (g == 0 || g == 1) return;
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

void make_oriented(IntVec& v)
{
    make_primitive(v);
    for (auto& x : v) {
        if (x == 0) continue;
        if (x < 0) {
            for (auto& y : v) y = -y;
        }
        return;
    }
}

IntVec primitive_of(const RatVec& v)
{
    Integer den = 1;
    for (const auto& x : v) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i].get_num() * (den / v[i].get_den());
    }
    make_primitive(out);
    return out;
}

IntVec to_int(const std::vector<long>& v)
{
    IntVec out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

RatVec to_rational(const IntVec& v)
{
    RatVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

Integer dot(const IntVec& a, const IntVec& b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    }
    return s;
}

Rational dot(const IntVec& a, const RatVec& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    }
    return s;
}

bool is_zero(const IntVec& v)
{
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

int sign(const Integer& x) { return sgn(x); }

std::string to_string(const IntVec& v, const char* sep)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << sep;
        os << v[i].get_str();
    }
    return os.str();
}

namespace linalg {

Echelon rref(const std::vector<IntVec>& input, std::size_t cols, bool reverse)
{
    std::vector<RatVec> m;
    m.reserve(input.size());
    for (const auto& r : input) m.push_back(to_rational(r));

    Echelon e;
    std::size_t next = 0;
    for (std::size_t step = 0; step < cols && next < m.size(); ++step) {
        std::size_t c = reverse ? cols - 1 - step : step;
        std::size_t p = next;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[next]);
        Rational inv = 1 / m[next][c];
        for (auto& x : m[next])
            if (x != 0) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == next || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                if (m[next][j] != 0) m[i][j] -= f * m[next][j];
        }
        e.pivots.push_back(c);
        ++next;
    }
    m.resize(next);
    e.rows = std::move(m);
    return e;
}

std::size_t rank(const std::vector<IntVec>& rows, std::size_t cols)
{
    return rref(rows, cols).pivots.size();
}

Kernel kernel(const std::vector<IntVec>& rows, std::size_t cols, bool reverse)
{
    Echelon e = rref(rows, cols, reverse);
    Kernel k;
    std::vector<char> is_pivot(cols, 0);
    for (auto p : e.pivots) is_pivot[p] = 1;
    k.pivot_columns = e.pivots;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        k.free_columns.push_back(c);
        RatVec v(cols);
        v[c] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][c];
        k.basis.push_back(primitive_of(v));
    }
    return k;
}

std::vector<IntVec> row_basis(const std::vector<IntVec>& rows, std::size_t cols, bool reverse)
{
    Echelon e = rref(rows, cols, reverse);
    std::vector<IntVec> out;
    for (const auto& r : e.rows) {
        IntVec v = primitive_of(r);
        make_oriented(v);
        out.push_back(std::move(v));
    }
    return out;
}

IntVec reduce_modulo(const IntVec& v, const Echelon& e)
{
    RatVec x = to_rational(v);
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        Rational f = x[e.pivots[r]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (e.rows[r][j] != 0) x[j] -= f * e.rows[r][j];
    }
    return primitive_of(x);
}

RatVec solve(const std::vector<IntVec>& m, const RatVec& b)
{
    const std::size_t n = m.size();
    std::vector<RatVec> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = to_rational(m[i]);
        a[i].push_back(b[i]);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("linalg::solve: singular matrix");
        std::swap(a[p], a[c]);
        Rational inv = 1 / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
    return x;
}

}  // namespace linalg
}  // namespace entrocone
