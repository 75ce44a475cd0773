#include <algorithm>
#include <bit>
#include <map>
#include <thread>

#include "entrocone/errors.hpp"
#include "polyhedra_detail.hpp"

namespace entrocone::poly {

namespace {

struct Row {
    IntVec v;
    std::vector<std::uint64_t> history;   // original inequalities this row combines
};

bool subset_of(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b)
{
    for (std::size_t w = 0; w < a.size(); ++w)
        if (a[w] & ~b[w]) return false;
    return true;
}

// Drop a row when another row with the same direction has a history that is a
// subset of its own. Copies with incomparable histories are all kept, since
// either may be the one that passes the Chernikov test later.
void dedupe(std::vector<Row>& rows)
{
    std::map<IntVec, std::vector<std::size_t>> seen;
    std::vector<Row> out;
    std::vector<char> alive;
    out.reserve(rows.size());
    for (auto& r : rows) {
        auto& same = seen[r.v];
        bool dominated = false;
        for (auto k : same)
            if (alive[k] && subset_of(out[k].history, r.history)) dominated = true;
        if (dominated) continue;
        for (auto k : same)
            if (alive[k] && subset_of(r.history, out[k].history)) alive[k] = 0;
        same.push_back(out.size());
        out.push_back(std::move(r));
        alive.push_back(1);
    }
    rows.clear();
    for (std::size_t k = 0; k < out.size(); ++k)
        if (alive[k]) rows.push_back(std::move(out[k]));
}

// Drop rows implied by the others (sequentially, so a duplicate pair never
// loses both members).
void prune(std::vector<Row>& rows, const std::vector<IntVec>& eqs, std::size_t d)
{
    linalg::Kernel ker = linalg::kernel(eqs, d);
    std::vector<IntVec> q;
    q.reserve(rows.size());
    for (const auto& r : rows) q.push_back(detail::pull_back(r.v, ker.basis));
    std::vector<char> kept(rows.size(), 1);
    for (std::size_t i = rows.size(); i-- > 0;) {
        if (is_zero(q[i])) {
            kept[i] = 0;
            continue;
        }
        std::vector<IntVec> gens;
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (j != i && kept[j]) gens.push_back(q[j]);
        if (detail::feasible_point(gens, q[i])) kept[i] = 0;
    }
    std::vector<Row> out;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (kept[i]) out.push_back(std::move(rows[i]));
    rows = std::move(out);
}

}  // namespace

HRep fm_eliminate(const HRep& h, const std::vector<std::size_t>& coords, FmStats* stats)
{
    validate(h);
    const std::size_t d = h.dimension;
    std::vector<std::size_t> keep = complement(d, coords);
    if (keep.empty()) throw InvalidParameter("cannot eliminate every coordinate");

    std::vector<char> pending(d, 0);
    for (auto c : coords) pending[c] = 1;

    std::size_t words = (h.inequalities.size() + 63) / 64 + 1;
    std::vector<Row> rows;
    for (std::size_t i = 0; i < h.inequalities.size(); ++i) {
        Row r{h.inequalities[i], std::vector<std::uint64_t>(words, 0)};
        make_primitive(r.v);
        if (is_zero(r.v)) continue;
        r.history[i / 64] |= std::uint64_t{1} << (i % 64);
        rows.push_back(std::move(r));
    }
    std::vector<IntVec> eqs;
    for (auto e : h.equalities) {
        make_oriented(e);
        if (!is_zero(e)) eqs.push_back(std::move(e));
    }

    // Equalities first: each one that touches a pending coordinate removes it
    // by substitution.
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t ei = 0; ei < eqs.size(); ++ei) {
            std::size_t c = d;
            for (std::size_t j = d; j-- > 0;)
                if (pending[j] && eqs[ei][j] != 0) {
                    c = j;
                    break;
                }
            if (c == d) continue;
            IntVec e = eqs[ei];
            if (e[c] < 0)
                for (auto& x : e) x = -x;
            auto substitute = [&](IntVec& r) {
                if (r[c] == 0) return;
                Integer f = r[c];
                for (std::size_t j = 0; j < d; ++j) r[j] = e[c] * r[j] - f * e[j];
                make_primitive(r);
            };
            for (auto& r : rows) substitute(r.v);
            eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(ei));
            for (auto& other : eqs) {
                substitute(other);
                make_oriented(other);
            }
            eqs.erase(std::remove_if(eqs.begin(), eqs.end(), [](const IntVec& x) { return is_zero(x); }),
                      eqs.end());
            pending[c] = 0;
            progress = true;
            break;
        }
    }
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const Row& r) { return is_zero(r.v); }), rows.end());
    dedupe(rows);

    FmStats st;
    st.peak_rows = rows.size();
    std::size_t eliminated = 0;
    std::size_t last_pruned = rows.size();

    for (;;) {
        // Pick the pending coordinate with the smallest growth pos*neg - pos - neg.
        std::size_t best = d;
        long long best_cost = 0;
        for (std::size_t c = 0; c < d; ++c) {
            if (!pending[c]) continue;
            long long pos = 0, neg = 0;
            for (const auto& r : rows) {
                int s = sgn(r.v[c]);
                pos += s > 0;
                neg += s < 0;
            }
            long long cost = pos * neg - pos - neg;
            if (best == d || cost < best_cost) {
                best = c;
                best_cost = cost;
            }
        }
        if (best == d) break;
        const std::size_t c = best;
        pending[c] = 0;
        ++eliminated;

        std::vector<Row> pos, neg, next;
        for (auto& r : rows) {
            int s = sgn(r.v[c]);
            if (s > 0)
                pos.push_back(std::move(r));
            else if (s < 0)
                neg.push_back(std::move(r));
            else
                next.push_back(std::move(r));
        }
        // Chernikov: a combination of more than eliminated+1 original rows is
        // redundant.
        const std::size_t limit = eliminated + 1;
        for (const auto& p : pos) {
            for (const auto& n : neg) {
                Row r{IntVec(d), std::vector<std::uint64_t>(words)};
                std::size_t hw = 0;
                for (std::size_t w = 0; w < words; ++w) {
                    r.history[w] = p.history[w] | n.history[w];
                    hw += static_cast<std::size_t>(std::popcount(r.history[w]));
                }
                if (hw > limit) {
                    ++st.chernikov_dropped;
                    continue;
                }
                Integer fp = p.v[c];
                Integer fn = -n.v[c];
                for (std::size_t j = 0; j < d; ++j) r.v[j] = fp * n.v[j] + fn * p.v[j];
                make_primitive(r.v);
                if (!is_zero(r.v)) next.push_back(std::move(r));
            }
        }
        rows = std::move(next);
        dedupe(rows);
        st.peak_rows = std::max(st.peak_rows, rows.size());
        ++st.steps;

        if (rows.size() > 24 && rows.size() > last_pruned + last_pruned / 4) {
            prune(rows, eqs, d);
            last_pruned = rows.size();
            // The pruned system is equivalent to the current one, so the
            // Chernikov count restarts from it.
            words = (rows.size() + 63) / 64 + 1;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                rows[i].history.assign(words, 0);
                rows[i].history[i / 64] |= std::uint64_t{1} << (i % 64);
            }
            eliminated = 0;
        }
    }

    HRep out;
    out.dimension = keep.size();
    auto restrict = [&](const IntVec& v) {
        IntVec y(keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) y[i] = v[keep[i]];
        return y;
    };
    for (const auto& r : rows) out.inequalities.push_back(restrict(r.v));
    for (const auto& e : eqs) out.equalities.push_back(restrict(e));
    if (!h.labels.empty())
        for (auto i : keep) out.labels.push_back(h.labels[i]);
    if (stats) *stats = st;
    return remove_redundancies(out);
}

}  // namespace entrocone::poly
