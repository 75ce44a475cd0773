#include "polyhedra_detail.hpp"

#include <algorithm>

namespace entrocone::poly::detail {

// Tableau entries are integers; the true tableau is T / det, where det is the
// last pivot element. Every pivot divides exactly (Bareiss), so entries stay
// as small as the minors they represent.
std::optional<RatVec> feasible_point(const std::vector<IntVec>& columns, const IntVec& b)
{
    const std::size_t n = columns.size();

    // Rows where every column vanishes either contradict b or carry nothing.
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < b.size(); ++i) {
        bool any = false;
        for (const auto& c : columns)
            if (c[i] != 0) {
                any = true;
                break;
            }
        if (any)
            live.push_back(i);
        else if (b[i] != 0)
            return std::nullopt;
    }
    const std::size_t m = live.size();
    if (m == 0) return RatVec(n, 0);

    const std::size_t width = n + m + 1;
    const std::size_t rhs = n + m;
    std::vector<IntVec> t(m + 1, IntVec(width, 0));
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t i = live[r];
        const bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) t[r + 1][j] = flip ? Integer(-columns[j][i]) : columns[j][i];
        t[r + 1][n + r] = 1;
        t[r + 1][rhs] = flip ? Integer(-b[i]) : b[i];
    }
    for (std::size_t r = 1; r <= m; ++r) {
        for (std::size_t j = 0; j < n; ++j) t[0][j] -= t[r][j];
        t[0][rhs] -= t[r][rhs];
    }
    std::vector<std::size_t> basis(m + 1);
    for (std::size_t r = 1; r <= m; ++r) basis[r] = n + r - 1;
    Integer det = 1;

    Integer lhs, rhs_cmp;
    for (;;) {
        // Bland: first structural column with negative reduced cost.
        std::size_t enter = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (t[0][j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == n) break;

        std::size_t leave = 0;
        for (std::size_t r = 1; r <= m; ++r) {
            if (t[r][enter] <= 0) continue;
            if (leave == 0) {
                leave = r;
                continue;
            }
            // t[r][rhs]/t[r][enter] vs t[leave][rhs]/t[leave][enter]
            lhs = t[r][rhs] * t[leave][enter];
            rhs_cmp = t[leave][rhs] * t[r][enter];
            if (lhs < rhs_cmp || (lhs == rhs_cmp && basis[r] < basis[leave])) leave = r;
        }
        if (leave == 0) break;  // unbounded ray; cannot happen in phase one

        const Integer piv = t[leave][enter];
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == leave) continue;
            const Integer f = t[r][enter];
            for (std::size_t j = 0; j < width; ++j) {
                Integer& x = t[r][j];
                if (f == 0) {
                    if (x == 0) continue;
                    x *= piv;
                } else {
                    x = x * piv - f * t[leave][j];
                }
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), det.get_mpz_t());
            }
        }
        det = piv;
        basis[leave] = enter;
    }

    if (t[0][rhs] != 0) return std::nullopt;
    RatVec x(n, 0);
    for (std::size_t r = 1; r <= m; ++r) {
        if (basis[r] < n) x[basis[r]] = Rational(t[r][rhs], det);
    }
    for (auto& v : x) v.canonicalize();
    return x;
}

}  // namespace entrocone::poly::detail
