#include "polyhedra_detail.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace entrocone::poly {

unsigned worker_threads()
{
    if (const char* env = std::getenv("ENTROCONE_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace detail {

namespace {

struct Pending {
    IntVec ray;
    std::vector<std::uint64_t> zeros;
};

std::size_t support(const IntVec& v)
{
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; }));
}

bool lex_less(const IntVec& a, const IntVec& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Gauss-Jordan inverse of a square integer matrix; column i of the result,
// scaled to a primitive integer vector, is returned as ray i.
std::vector<IntVec> inverse_columns(const std::vector<IntVec>& b)
{
    const std::size_t k = b.size();
    std::vector<RatVec> a(k, RatVec(2 * k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = b[i][j];
        a[i][k + i] = 1;
    }
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && a[p][c] == 0) ++p;
        if (p == k) throw std::logic_error("dd: initial basis is singular");
        std::swap(a[p], a[c]);
        Rational inv = 1 / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = 0; j < 2 * k; ++j)
                if (a[c][j] != 0) a[i][j] -= f * a[c][j];
        }
    }
    std::vector<IntVec> cols(k);
    for (std::size_t j = 0; j < k; ++j) {
        RatVec col(k);
        for (std::size_t i = 0; i < k; ++i) col[i] = a[i][k + j];
        cols[j] = primitive_of(col);
    }
    return cols;
}

// Incremental rank check used to choose the initial basis.
class EchelonBuilder {
public:
    explicit EchelonBuilder(std::size_t cols) : cols_(cols) {}

    bool add_if_independent(const IntVec& row)
    {
        RatVec v = to_rational(row);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Rational& f = v[pivots_[r]];
            if (f == 0) continue;
            Rational ff = f;
            for (std::size_t j = 0; j < cols_; ++j)
                if (rows_[r][j] != 0) v[j] -= ff * rows_[r][j];
        }
        std::size_t p = 0;
        while (p < cols_ && v[p] == 0) ++p;
        if (p == cols_) return false;
        Rational inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Rational f = rows_[r][p];
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                if (v[j] != 0) rows_[r][j] -= f * v[j];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

private:
    std::size_t cols_;
    std::vector<RatVec> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace

std::vector<IntVec> double_description(std::vector<IntVec> rows, std::size_t k)
{
    if (k == 0) return {};

    for (auto& r : rows) make_primitive(r);
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const IntVec& r) { return is_zero(r); }),
               rows.end());
    std::sort(rows.begin(), rows.end(), [](const IntVec& a, const IntVec& b) {
        std::size_t sa = support(a), sb = support(b);
        if (sa != sb) return sa < sb;
        return lex_less(a, b);
    });
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    // Initial simplicial cone from the first k independent rows.
    std::vector<IntVec> order;
    std::vector<IntVec> basis;
    std::vector<IntVec> rest;
    EchelonBuilder eb(k);
    for (auto& r : rows) {
        if (basis.size() < k && eb.add_if_independent(r))
            basis.push_back(r);
        else
            rest.push_back(r);
    }
    if (basis.size() < k) throw std::logic_error("dd: cone is not pointed");
    order = basis;
    order.insert(order.end(), rest.begin(), rest.end());

    const std::size_t words = (order.size() + 63) / 64;
    std::vector<IntVec> rays = inverse_columns(basis);
    std::vector<std::uint64_t> zeros(rays.size() * words, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j) zeros[i * words + j / 64] |= std::uint64_t{1} << (j % 64);

    const unsigned threads = worker_threads();

    for (std::size_t t = k; t < order.size(); ++t) {
        const IntVec& a = order[t];
        const std::size_t n = rays.size();
        std::vector<Integer> val(n);
        std::vector<std::size_t> pos, neg, zer;
        for (std::size_t i = 0; i < n; ++i) {
            val[i] = dot(a, rays[i]);
            int s = sgn(val[i]);
            if (s > 0)
                pos.push_back(i);
            else if (s < 0)
                neg.push_back(i);
            else
                zer.push_back(i);
        }
        if (neg.empty()) {
            for (auto i : zer) zeros[i * words + t / 64] |= std::uint64_t{1} << (t % 64);
            continue;
        }

        // Candidate pairs (p, q) with p in pos, q in neg are adjacent when no
        // third ray is tight on every row both are tight on.
        auto work = [&](std::size_t lo, std::size_t hi, std::vector<Pending>& out) {
            std::vector<std::uint64_t> common(words);
            const std::size_t need = k >= 2 ? k - 2 : 0;
            for (std::size_t pi = lo; pi < hi; ++pi) {
                const std::size_t p = pos[pi];
                const std::uint64_t* zp = &zeros[p * words];
                for (std::size_t q : neg) {
                    const std::uint64_t* zq = &zeros[q * words];
                    std::size_t cnt = 0;
                    for (std::size_t w = 0; w < words; ++w) {
                        common[w] = zp[w] & zq[w];
                        cnt += static_cast<std::size_t>(std::popcount(common[w]));
                    }
                    if (cnt < need) continue;
                    bool adjacent = true;
                    for (std::size_t r = 0; r < n && adjacent; ++r) {
                        if (r == p || r == q) continue;
                        const std::uint64_t* zr = &zeros[r * words];
                        bool superset = true;
                        for (std::size_t w = 0; w < words; ++w) {
                            if ((zr[w] & common[w]) != common[w]) {
                                superset = false;
                                break;
                            }
                        }
                        if (superset) adjacent = false;
                    }
                    if (!adjacent) continue;
                    IntVec r(k);
                    Integer vp = val[p];
                    Integer vq = -val[q];
                    for (std::size_t j = 0; j < k; ++j) r[j] = vp * rays[q][j] + vq * rays[p][j];
                    make_primitive(r);
                    Pending pend{std::move(r), common};
                    pend.zeros[t / 64] |= std::uint64_t{1} << (t % 64);
                    out.push_back(std::move(pend));
                }
            }
        };

        std::vector<Pending> created;
        const std::size_t np = pos.size();
        if (threads <= 1 || np * neg.size() < 4096) {
            work(0, np, created);
        } else {
            const std::size_t nt = std::min<std::size_t>(threads, np);
            std::vector<std::vector<Pending>> parts(nt);
            std::vector<std::thread> pool;
            for (std::size_t ti = 0; ti < nt; ++ti) {
                std::size_t lo = np * ti / nt, hi = np * (ti + 1) / nt;
                pool.emplace_back(work, lo, hi, std::ref(parts[ti]));
            }
            for (auto& th : pool) th.join();
            for (auto& part : parts)
                for (auto& pe : part) created.push_back(std::move(pe));
        }

        std::vector<IntVec> next_rays;
        std::vector<std::uint64_t> next_zeros;
        next_rays.reserve(pos.size() + zer.size() + created.size());
        next_zeros.reserve((pos.size() + zer.size() + created.size()) * words);
        auto keep = [&](std::size_t i, bool tight) {
            next_rays.push_back(std::move(rays[i]));
            std::size_t base = next_zeros.size();
            next_zeros.insert(next_zeros.end(), zeros.begin() + static_cast<std::ptrdiff_t>(i * words),
                              zeros.begin() + static_cast<std::ptrdiff_t>((i + 1) * words));
            if (tight) next_zeros[base + t / 64] |= std::uint64_t{1} << (t % 64);
        };
        for (std::size_t i = 0; i < n; ++i) {
            int s = sgn(val[i]);
            if (s > 0) keep(i, false);
            if (s == 0) keep(i, true);
        }
        for (auto& pe : created) {
            next_rays.push_back(std::move(pe.ray));
            next_zeros.insert(next_zeros.end(), pe.zeros.begin(), pe.zeros.end());
        }
        rays = std::move(next_rays);
        zeros = std::move(next_zeros);
    }
    return rays;
}

}  // namespace detail
}  // namespace entrocone::poly
