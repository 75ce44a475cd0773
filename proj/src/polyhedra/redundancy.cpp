#include <algorithm>

#include "entrocone/errors.hpp"
#include "polyhedra_detail.hpp"

namespace entrocone::poly {

using detail::feasible_point;
using detail::pull_back;

HRep remove_redundancies(const HRep& h, RedundancyReport* report, bool with_certificates)
{
    validate(h);
    const std::size_t d = h.dimension;

    std::vector<IntVec> eqs = linalg::row_basis(h.equalities, d);
    std::vector<IntVec> rows;
    std::vector<IntVec> quotient;
    std::size_t promoted = 0;

    for (;;) {
        linalg::Echelon ech = linalg::rref(eqs, d, true);
        linalg::Kernel ker = linalg::kernel(eqs, d);
        rows.clear();
        for (const auto& r : h.inequalities) {
            IntVec g = linalg::reduce_modulo(r, ech);
            if (!is_zero(g)) rows.push_back(std::move(g));
        }
        detail::sort_desc(rows);
        quotient.clear();
        for (const auto& r : rows) quotient.push_back(pull_back(r, ker.basis));

        // A row is an implicit equality when its negation is implied too.
        std::vector<IntVec> implicit;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            IntVec neg = quotient[i];
            for (auto& x : neg) x = -x;
            if (feasible_point(quotient, neg)) implicit.push_back(rows[i]);
        }
        if (implicit.empty()) break;
        promoted += implicit.size();
        eqs.insert(eqs.end(), implicit.begin(), implicit.end());
        eqs = linalg::row_basis(eqs, d);
    }

    std::vector<char> kept(rows.size(), 1);
    for (std::size_t i = rows.size(); i-- > 0;) {
        std::vector<IntVec> gens;
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (j != i && kept[j]) gens.push_back(quotient[j]);
        if (feasible_point(gens, quotient[i])) kept[i] = 0;
    }

    HRep out;
    out.dimension = d;
    out.labels = h.labels;
    out.equalities = eqs;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (kept[i]) out.inequalities.push_back(rows[i]);

    if (report) {
        report->implicit_equalities = promoted;
        report->certificates.clear();
        if (with_certificates) {
            for (const auto& r : h.inequalities) {
                IntVec rp = r;
                make_primitive(rp);
                if (is_zero(rp) || std::find(out.inequalities.begin(), out.inequalities.end(), rp) !=
                                       out.inequalities.end())
                    continue;
                auto comb = conic_combination(out.inequalities, out.equalities, r);
                if (!comb) throw std::logic_error("remove_redundancies: missing certificate");
                Certificate c;
                c.dropped = r;
                for (std::size_t j = 0; j < comb->weights.size(); ++j)
                    if (comb->weights[j] != 0) c.weights.emplace_back(j, comb->weights[j]);
                c.equality_weights = comb->free_weights;
                report->certificates.push_back(std::move(c));
            }
        }
    }
    return out;
}

}  // namespace entrocone::poly
