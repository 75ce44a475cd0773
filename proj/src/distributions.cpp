#include "entrocone/distributions.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "entrocone/errors.hpp"

namespace entrocone::dist {

using entropy::members;
using entropy::singleton;
using entropy::VarSet;

namespace {

constexpr double kSumTolerance = 1e-12;

std::size_t product(const std::vector<std::size_t>& v)
{
    std::size_t p = 1;
    for (auto x : v) {
        if (x == 0) throw InvalidModel("alphabet size must be positive");
        if (p > (std::size_t{1} << 40) / x) throw InvalidModel("outcome space too large");
        p *= x;
    }
    return p;
}

// Odometer over a mixed-radix outcome, last digit fastest.
bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix)
{
    for (std::size_t k = digits.size(); k-- > 0;) {
        if (++digits[k] < radix[k]) return true;
        digits[k] = 0;
    }
    return false;
}

double xlog2x(double p) { return p > 0 ? p * std::log2(p) : 0.0; }

double entropy_of(const std::vector<double>& probs)
{
    double h = 0;
    for (double p : probs) h -= xlog2x(p);
    return h;
}

}  // namespace

JointDistribution::JointDistribution(std::vector<std::string> names, std::vector<std::size_t> alphabets,
                                     std::vector<double> probs)
    : names_(std::move(names)), alphabets_(std::move(alphabets)), probs_(std::move(probs))
{
    if (names_.size() != alphabets_.size()) throw InvalidModel("distribution: names and alphabets differ in length");
    if (names_.size() > 63) throw InvalidModel("distribution: too many variables");
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw InvalidModel("distribution: duplicate variable " + names_[i]);
    if (probs_.size() != product(alphabets_))
        throw InvalidModel("distribution: table has " + std::to_string(probs_.size()) + " entries, expected " +
                           std::to_string(product(alphabets_)));
    double sum = 0;
    for (double p : probs_) {
        if (!(p >= 0)) throw InvalidModel("distribution: negative or NaN probability");
        sum += p;
    }
    if (std::abs(sum - 1) > kSumTolerance) throw InvalidModel("distribution: probabilities sum to " + std::to_string(sum));
}

std::size_t JointDistribution::variable(const std::string& name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    throw InvalidParameter("distribution has no variable " + name);
}

std::vector<std::size_t> JointDistribution::outcome(std::size_t flat) const
{
    std::vector<std::size_t> out(alphabets_.size());
    for (std::size_t k = alphabets_.size(); k-- > 0;) {
        out[k] = flat % alphabets_[k];
        flat /= alphabets_[k];
    }
    return out;
}

std::size_t JointDistribution::flat_index(const std::vector<std::size_t>& outcome) const
{
    if (outcome.size() != alphabets_.size()) throw InvalidParameter("outcome has the wrong length");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < outcome.size(); ++k) {
        if (outcome[k] >= alphabets_[k]) throw InvalidParameter("outcome value out of range");
        flat = flat * alphabets_[k] + outcome[k];
    }
    return flat;
}

JointDistribution marginal(const JointDistribution& p, const std::vector<std::size_t>& vars)
{
    std::vector<std::string> names;
    std::vector<std::size_t> radix;
    for (auto v : vars) {
        if (v >= p.variable_count()) throw InvalidParameter("marginal: variable out of range");
        names.push_back(p.names()[v]);
        radix.push_back(p.alphabets()[v]);
    }
    std::vector<double> probs(product(radix), 0.0);
    std::vector<std::size_t> digits(p.variable_count(), 0);
    for (std::size_t flat = 0; flat < p.outcome_count(); ++flat) {
        std::size_t m = 0;
        for (std::size_t k = 0; k < vars.size(); ++k) m = m * radix[k] + digits[vars[k]];
        probs[m] += p.probabilities()[flat];
        advance(digits, p.alphabets());
    }
    // Renormalize away accumulated rounding so the result validates.
    double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (auto& x : probs) x /= sum;
    return JointDistribution(std::move(names), std::move(radix), std::move(probs));
}

JointDistribution marginal(const JointDistribution& p, const std::vector<std::string>& vars)
{
    std::vector<std::size_t> idx;
    for (const auto& v : vars) idx.push_back(p.variable(v));
    return marginal(p, idx);
}

JointDistribution conditional(const JointDistribution& p, const std::vector<std::string>& given,
                              const std::vector<std::size_t>& values)
{
    if (given.size() != values.size()) throw InvalidParameter("conditional: one value per conditioning variable");
    std::vector<char> fixed(p.variable_count(), 0);
    std::vector<std::size_t> value(p.variable_count(), 0);
    for (std::size_t k = 0; k < given.size(); ++k) {
        auto v = p.variable(given[k]);
        if (values[k] >= p.alphabets()[v]) throw InvalidParameter("conditional: value out of range for " + given[k]);
        fixed[v] = 1;
        value[v] = values[k];
    }
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < p.variable_count(); ++v)
        if (!fixed[v]) rest.push_back(v);
    std::vector<std::string> names;
    std::vector<std::size_t> radix;
    for (auto v : rest) {
        names.push_back(p.names()[v]);
        radix.push_back(p.alphabets()[v]);
    }
    std::vector<double> probs(product(radix), 0.0);
    std::vector<std::size_t> digits(p.variable_count(), 0);
    double total = 0;
    for (std::size_t flat = 0; flat < p.outcome_count(); ++flat) {
        bool match = true;
        for (std::size_t v = 0; v < p.variable_count() && match; ++v)
            if (fixed[v] && digits[v] != value[v]) match = false;
        if (match) {
            std::size_t m = 0;
            for (std::size_t k = 0; k < rest.size(); ++k) m = m * radix[k] + digits[rest[k]];
            probs[m] += p.probabilities()[flat];
            total += p.probabilities()[flat];
        }
        advance(digits, p.alphabets());
    }
    if (total <= 0) throw InvalidParameter("conditional: conditioning event has probability zero");
    for (auto& x : probs) x /= total;
    return JointDistribution(std::move(names), std::move(radix), std::move(probs));
}

double entropy(const JointDistribution& p, VarSet vars)
{
    auto idx = members(vars);
    if (idx.empty()) return 0.0;
    if (!idx.empty() && idx.back() >= p.variable_count()) throw InvalidParameter("entropy: variable out of range");
    std::vector<std::size_t> radix;
    for (auto v : idx) radix.push_back(p.alphabets()[v]);
    std::vector<double> probs(product(radix), 0.0);
    std::vector<std::size_t> digits(p.variable_count(), 0);
    for (std::size_t flat = 0; flat < p.outcome_count(); ++flat) {
        std::size_t m = 0;
        for (std::size_t k = 0; k < idx.size(); ++k) m = m * radix[k] + digits[idx[k]];
        probs[m] += p.probabilities()[flat];
        advance(digits, p.alphabets());
    }
    return entropy_of(probs);
}

std::vector<double> entropy_vector(const JointDistribution& p, const entropy::CoordinateIndex& index)
{
    if (index.names() != p.names()) throw InvalidParameter("entropy_vector: index variables differ from the distribution");
    std::vector<double> h;
    h.reserve(index.size());
    for (auto s : index.subsets()) h.push_back(entropy(p, s));
    return h;
}

std::vector<double> entropy_vector(const JointDistribution& p)
{
    return entropy_vector(p, entropy::CoordinateIndex(p.names()));
}

std::optional<IntVec> snap_to_integers(const std::vector<double>& h, double tol)
{
    IntVec out;
    out.reserve(h.size());
    for (double x : h) {
        double r = std::round(x);
        if (!(std::abs(x - r) <= tol)) return std::nullopt;
        out.emplace_back(static_cast<long>(r));
    }
    return out;
}

// CausalModel

std::size_t parent_outcomes(const std::vector<std::size_t>& parent_alphabets) { return product(parent_alphabets); }

CausalModel::CausalModel(causal::CausalStructure g, std::vector<Cpt> cpts) : g_(std::move(g)), cpts_(std::move(cpts))
{
    if (cpts_.size() != g_.size())
        throw InvalidModel("model has " + std::to_string(cpts_.size()) + " CPTs for " + std::to_string(g_.size()) +
                           " nodes");
    for (std::size_t i = 0; i < g_.size(); ++i) {
        const auto& id = g_.node(i).id;
        const auto& c = cpts_[i];
        if (c.alphabet == 0) throw InvalidModel("CPT of " + id + ": alphabet size must be positive");
        const std::size_t rows = parent_outcomes(parent_alphabets(i));
        if (c.rows.size() != rows)
            throw InvalidModel("CPT of " + id + " has " + std::to_string(c.rows.size()) + " rows, expected " +
                               std::to_string(rows));
        for (std::size_t r = 0; r < rows; ++r) {
            if (c.rows[r].size() != c.alphabet)
                throw InvalidModel("CPT of " + id + ", row " + std::to_string(r) + " has the wrong length");
            double sum = 0;
            for (double p : c.rows[r]) {
                if (!(p >= 0)) throw InvalidModel("CPT of " + id + ", row " + std::to_string(r) + " has a negative entry");
                sum += p;
            }
            if (std::abs(sum - 1) > kSumTolerance)
                throw InvalidModel("CPT of " + id + ", row " + std::to_string(r) + " sums to " + std::to_string(sum));
        }
    }
}

std::vector<std::size_t> CausalModel::parent_alphabets(std::size_t node) const
{
    std::vector<std::size_t> out;
    for (auto p : members(g_.parents(node))) out.push_back(cpts_.at(p).alphabet);
    return out;
}

Cpt deterministic_cpt(std::size_t alphabet, const std::vector<std::size_t>& parent_alphabets,
                      const std::function<std::size_t(const std::vector<std::size_t>&)>& f)
{
    Cpt c;
    c.alphabet = alphabet;
    std::vector<std::size_t> digits(parent_alphabets.size(), 0);
    const std::size_t rows = parent_outcomes(parent_alphabets);
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<double> row(alphabet, 0.0);
        std::size_t v = f(digits);
        if (v >= alphabet) throw InvalidModel("deterministic CPT value out of range");
        row[v] = 1.0;
        c.rows.push_back(std::move(row));
        advance(digits, parent_alphabets);
    }
    return c;
}

Cpt uniform_cpt(std::size_t alphabet, std::size_t rows)
{
    return Cpt{alphabet, std::vector<std::vector<double>>(rows, std::vector<double>(alphabet, 1.0 / alphabet))};
}

Cpt constant_cpt(std::size_t alphabet, std::size_t value, std::size_t rows)
{
    std::vector<double> row(alphabet, 0.0);
    row.at(value) = 1.0;
    return Cpt{alphabet, std::vector<std::vector<double>>(rows, row)};
}

JointDistribution compile(const CausalModel& m)
{
    const auto& g = m.structure();
    const std::size_t n = g.size();
    std::vector<std::string> names;
    std::vector<std::size_t> radix;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(g.node(i).id);
        radix.push_back(m.alphabet(i));
    }
    std::vector<std::vector<std::size_t>> parents(n);
    for (std::size_t i = 0; i < n; ++i) parents[i] = members(g.parents(i));

    std::vector<double> probs(product(radix), 0.0);
    std::vector<std::size_t> digits(n, 0);
    for (std::size_t flat = 0; flat < probs.size(); ++flat) {
        double p = 1.0;
        for (std::size_t i = 0; i < n && p > 0; ++i) {
            std::size_t row = 0;
            for (auto q : parents[i]) row = row * radix[q] + digits[q];
            p *= m.cpt(i).rows[row][digits[i]];
        }
        probs[flat] = p;
        advance(digits, radix);
    }
    double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (auto& x : probs) x /= sum;
    return JointDistribution(std::move(names), std::move(radix), std::move(probs));
}

JointDistribution observed_distribution(const CausalModel& m)
{
    return marginal(compile(m), members(m.structure().observed()));
}

CausalModel random_model(const causal::CausalStructure& g, const std::vector<std::size_t>& alphabets,
                         std::mt19937_64& rng)
{
    if (alphabets.size() != g.size()) throw InvalidParameter("random_model: one alphabet size per node");
    std::exponential_distribution<double> expo(1.0);
    std::vector<Cpt> cpts;
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::vector<std::size_t> pa;
        for (auto p : members(g.parents(i))) pa.push_back(alphabets[p]);
        Cpt c;
        c.alphabet = alphabets[i];
        const std::size_t rows = parent_outcomes(pa);
        for (std::size_t r = 0; r < rows; ++r) {
            // Normalized exponentials are uniform on the simplex.
            std::vector<double> row(c.alphabet);
            double sum = 0;
            for (auto& x : row) sum += (x = expo(rng));
            for (auto& x : row) x /= sum;
            double fix = 1.0;
            for (std::size_t k = 1; k < row.size(); ++k) fix -= row[k];
            row[0] = std::max(0.0, fix);
            c.rows.push_back(std::move(row));
        }
        cpts.push_back(std::move(c));
    }
    return CausalModel(g, std::move(cpts));
}

CausalModel witness_line(std::size_t i, std::size_t j, std::size_t n)
{
    if (n == 0 || i == 0 || i > j || j > n)
        throw InvalidParameter("witness_line needs 1 <= i <= j <= n, got (" + std::to_string(i) + ", " +
                               std::to_string(j) + ", " + std::to_string(n) + ")");
    auto g = causal::build_line_structure(n);
    std::vector<Cpt> cpts(g.size());
    // Hidden nodes C1..C(n-1) sit at positions n..2n-2.
    for (std::size_t c = n; c < g.size(); ++c) cpts[c] = uniform_cpt(2);

    // Observed Xk (1-based) has parents C(k-1) and Ck when they exist; the
    // parent digits arrive in node order, so C(k-1) comes first.
    for (std::size_t k = 1; k <= n; ++k) {
        const bool has_left = k > 1, has_right = k < n;
        std::vector<std::size_t> pa;
        if (has_left) pa.push_back(2);
        if (has_right) pa.push_back(2);
        auto left = [=](const std::vector<std::size_t>& d) { return d[0]; };
        auto right = [=](const std::vector<std::size_t>& d) { return d[has_left ? 1 : 0]; };
        std::function<std::size_t(const std::vector<std::size_t>&)> f;
        if (n == 1) {
            cpts[0] = uniform_cpt(2);
            continue;
        }
        if (k < i || k > j) {
            f = [](const std::vector<std::size_t>&) { return std::size_t{1}; };
        } else if (i == j) {
            if (k < n)
                f = right;   // X_i = C_i
            else
                f = left;    // X_n = C_(n-1)
        } else if (k == i) {
            f = right;
        } else if (k == j) {
            f = left;
        } else {
            f = [=](const std::vector<std::size_t>& d) { return left(d) ^ right(d); };
        }
        cpts[k - 1] = deterministic_cpt(2, pa, f);
    }
    return CausalModel(std::move(g), std::move(cpts));
}

JointDistribution post_select_joint(const CausalModel& model)
{
    const auto& g = model.structure();
    auto ref = causal::build_line_structure(5);
    if (g.size() != ref.size() || g.edges() != ref.edges())
        throw InvalidParameter("post_select_joint needs a model on the 5-node line structure");
    const std::size_t A = 0, X = 1, Y = 2, Z = 3, B = 4, C1 = 5, C2 = 6, C3 = 7, C4 = 8;
    if (model.alphabet(A) != 2 || model.alphabet(B) != 2)
        throw InvalidParameter("post_select_joint: outer nodes must be binary");
    const std::size_t nc1 = model.alphabet(C1), nc2 = model.alphabet(C2), nc3 = model.alphabet(C3),
                      nc4 = model.alphabet(C4);
    const std::size_t nx = model.alphabet(X), ny = model.alphabet(Y), nz = model.alphabet(Z);
    const auto& pc1 = model.cpt(C1).rows[0];
    const auto& pc2 = model.cpt(C2).rows[0];
    const auto& pc3 = model.cpt(C3).rows[0];
    const auto& pc4 = model.cpt(C4).rows[0];

    // px[a][c2][x] = sum_c1 P(c1 | A = a) P(x | c1, c2); likewise pz.
    std::vector<std::vector<std::vector<double>>> px(2, std::vector<std::vector<double>>(nc2, std::vector<double>(nx)));
    std::vector<std::vector<std::vector<double>>> pz(2, std::vector<std::vector<double>>(nc3, std::vector<double>(nz)));
    for (std::size_t a = 0; a < 2; ++a) {
        double norm = 0;
        for (std::size_t c1 = 0; c1 < nc1; ++c1) norm += pc1[c1] * model.cpt(A).rows[c1][a];
        if (norm <= 0) throw InvalidParameter("post_select_joint: setting A = " + std::to_string(a) + " never occurs");
        for (std::size_t c1 = 0; c1 < nc1; ++c1) {
            double w = pc1[c1] * model.cpt(A).rows[c1][a] / norm;
            if (w == 0) continue;
            for (std::size_t c2 = 0; c2 < nc2; ++c2)
                for (std::size_t x = 0; x < nx; ++x) px[a][c2][x] += w * model.cpt(X).rows[c1 * nc2 + c2][x];
        }
    }
    for (std::size_t b = 0; b < 2; ++b) {
        double norm = 0;
        for (std::size_t c4 = 0; c4 < nc4; ++c4) norm += pc4[c4] * model.cpt(B).rows[c4][b];
        if (norm <= 0) throw InvalidParameter("post_select_joint: setting B = " + std::to_string(b) + " never occurs");
        for (std::size_t c4 = 0; c4 < nc4; ++c4) {
            double w = pc4[c4] * model.cpt(B).rows[c4][b] / norm;
            if (w == 0) continue;
            for (std::size_t c3 = 0; c3 < nc3; ++c3)
                for (std::size_t z = 0; z < nz; ++z) pz[b][c3][z] += w * model.cpt(Z).rows[c3 * nc4 + c4][z];
        }
    }

    std::vector<std::size_t> radix = {nx, nx, ny, nz, nz};
    std::vector<double> probs(product(radix), 0.0);
    for (std::size_t c2 = 0; c2 < nc2; ++c2) {
        for (std::size_t c3 = 0; c3 < nc3; ++c3) {
            const double w = pc2[c2] * pc3[c3];
            if (w == 0) continue;
            const auto& py = model.cpt(Y).rows[c2 * nc3 + c3];
            std::size_t flat = 0;
            for (std::size_t x0 = 0; x0 < nx; ++x0)
                for (std::size_t x1 = 0; x1 < nx; ++x1)
                    for (std::size_t y = 0; y < ny; ++y)
                        for (std::size_t z0 = 0; z0 < nz; ++z0)
                            for (std::size_t z1 = 0; z1 < nz; ++z1, ++flat)
                                probs[flat] += w * px[0][c2][x0] * px[1][c2][x1] * py[y] * pz[0][c3][z0] * pz[1][c3][z1];
        }
    }
    double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (auto& x : probs) x /= sum;
    return JointDistribution({"X0", "X1", "Y", "Z0", "Z1"}, std::move(radix), std::move(probs));
}

SplitMode parse_split_mode(const std::string& s)
{
    if (s == "keep0") return SplitMode::keep0;
    if (s == "keep1") return SplitMode::keep1;
    if (s == "copy") return SplitMode::copy;
    throw InvalidParameter("split mode must be keep0, keep1 or copy, got " + s);
}

std::string to_string(SplitMode m)
{
    switch (m) {
    case SplitMode::keep0: return "keep0";
    case SplitMode::keep1: return "keep1";
    case SplitMode::copy: return "copy";
    }
    return "?";
}

JointDistribution split_p3_witness(const CausalModel& model, SplitMode x_mode, SplitMode z_mode)
{
    const auto& g = model.structure();
    auto ref = causal::build_line_structure(3);
    if (g.size() != ref.size() || g.edges() != ref.edges())
        throw InvalidParameter("split_p3_witness needs a model on the 3-node line structure");
    JointDistribution p = marginal(compile(model), std::vector<std::size_t>{0, 1, 2});
    const std::size_t nx = std::max<std::size_t>(p.alphabets()[0], 2);
    const std::size_t ny = p.alphabets()[1];
    const std::size_t nz = std::max<std::size_t>(p.alphabets()[2], 2);

    auto split = [](SplitMode m, std::size_t v) -> std::pair<std::size_t, std::size_t> {
        switch (m) {
        case SplitMode::keep0: return {v, 1};
        case SplitMode::keep1: return {1, v};
        case SplitMode::copy: return {v, v};
        }
        return {v, v};
    };
    std::vector<std::size_t> radix = {nx, nx, ny, nz, nz};
    std::vector<double> probs(product(radix), 0.0);
    for (std::size_t flat = 0; flat < p.outcome_count(); ++flat) {
        auto o = p.outcome(flat);
        auto [x0, x1] = split(x_mode, o[0]);
        auto [z0, z1] = split(z_mode, o[2]);
        probs[(((x0 * nx + x1) * ny + o[1]) * nz + z0) * nz + z1] += p.probabilities()[flat];
    }
    return JointDistribution({"X0", "X1", "Y", "Z0", "Z1"}, std::move(radix), std::move(probs));
}

// Bell functional

void ConditionalTables::validate() const
{
    if (x_size == 0 || y_size == 0) throw InvalidParameter("conditional tables: alphabet sizes must be positive");
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            const auto& t = table[a][b];
            const std::string where = "table " + std::to_string(a) + std::to_string(b);
            if (t.size() != x_size * y_size)
                throw InvalidParameter(where + " has " + std::to_string(t.size()) + " entries, expected " +
                                       std::to_string(x_size * y_size));
            double sum = 0;
            for (double p : t) {
                if (!(p >= 0)) throw InvalidParameter(where + " has a negative entry");
                sum += p;
            }
            if (std::abs(sum - 1) > 1e-9) throw InvalidParameter(where + " sums to " + std::to_string(sum));
        }
}

namespace {

// H(first | second) for a row-major table over (x, y); `x_given_y` selects
// which variable is conditioned on.
double cond_entropy(const std::vector<double>& t, std::size_t nx, std::size_t ny, bool x_given_y)
{
    std::vector<double> px(nx, 0.0), py(ny, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) {
            px[x] += t[x * ny + y];
            py[y] += t[x * ny + y];
        }
    return entropy_of(t) - (x_given_y ? entropy_of(py) : entropy_of(px));
}

}  // namespace

std::array<double, 8> bc_variants(const ConditionalTables& t)
{
    t.validate();
    // h[u][a][b]: u = 0 is H(X|Y) in setting (a, b), u = 1 is H(Y|X).
    double h[2][2][2];
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            h[0][a][b] = cond_entropy(t.table[a][b], t.x_size, t.y_size, true);
            h[1][a][b] = cond_entropy(t.table[a][b], t.x_size, t.y_size, false);
        }
    std::array<double, 8> out{};
    std::size_t k = 0;
    for (std::size_t u = 0; u < 2; ++u) {
        // For u = 1 the roles of the two parties swap, so the setting indices
        // swap with them.
        auto H = [&](std::size_t which, std::size_t s_u, std::size_t s_v) {
            return u == 0 ? h[which][s_u][s_v] : h[1 - which][s_v][s_u];
        };
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                const std::size_t na = 1 - a, nb = 1 - b;
                out[k++] = H(0, a, nb) + H(1, na, nb) + H(0, na, b) - H(0, a, b);
            }
    }
    return out;
}

double bc_functional(const ConditionalTables& t) { return bc_variants(t)[0]; }

ConditionalTables conditional_tables(const JointDistribution& p, const std::string& a, const std::string& x,
                                     const std::string& y, const std::string& b)
{
    const auto ia = p.variable(a), ib = p.variable(b);
    if (p.alphabets()[ia] != 2 || p.alphabets()[ib] != 2)
        throw InvalidParameter("conditional_tables: settings must be binary");
    JointDistribution m = marginal(p, std::vector<std::string>{a, b, x, y});
    ConditionalTables t;
    t.x_size = m.alphabets()[2];
    t.y_size = m.alphabets()[3];
    for (std::size_t va = 0; va < 2; ++va)
        for (std::size_t vb = 0; vb < 2; ++vb) {
            JointDistribution c = conditional(m, {a, b}, {va, vb});
            t.table[va][vb] = c.probabilities();
        }
    return t;
}

// JSON

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(what + " is not valid JSON: " + e.what());
    }
}

std::vector<double> number_array(const json& j, const std::string& where)
{
    if (!j.is_array()) throw FormatError(where + " must be an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw FormatError(where + "[" + std::to_string(i) + "] must be a number");
        out.push_back(j[i].get<double>());
    }
    return out;
}

}  // namespace

CausalModel model_from_json(const std::string& text)
{
    json j = parse_json(text, "model file");
    if (!j.is_object()) throw FormatError("model file: top level must be an object");
    if (!j.contains("structure")) throw FormatError("model file: missing \"structure\"");
    causal::CausalStructure g;
    if (j["structure"].is_string())
        g = causal::structure_from_selector(j["structure"].get<std::string>());
    else if (j["structure"].is_object())
        g = causal::structure_from_json(j["structure"].dump());
    else
        throw FormatError("model file: \"structure\" must be a selector string or a DAG object");
    if (!j.contains("cpts") || !j["cpts"].is_object()) throw FormatError("model file: \"cpts\" must be an object");
    const auto& cj = j["cpts"];
    for (auto it = cj.begin(); it != cj.end(); ++it) g.index_of(it.key());

    // Alphabets first, since row counts depend on the parents' alphabets.
    std::vector<Cpt> cpts(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& id = g.node(i).id;
        const std::string where = "model file: cpts." + id;
        if (!cj.contains(id)) throw FormatError(where + " is missing");
        const auto& e = cj[id];
        if (!e.is_object()) throw FormatError(where + " must be an object");
        if (!e.contains("alphabet") || !e["alphabet"].is_number_unsigned() || e["alphabet"].get<std::size_t>() == 0)
            throw FormatError(where + ".alphabet must be a positive integer");
        cpts[i].alphabet = e["alphabet"].get<std::size_t>();
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& id = g.node(i).id;
        const std::string where = "model file: cpts." + id;
        const auto& e = cj[id];
        if (!e.contains("rows") || !e["rows"].is_array()) throw FormatError(where + ".rows must be an array");
        for (std::size_t r = 0; r < e["rows"].size(); ++r)
            cpts[i].rows.push_back(number_array(e["rows"][r], where + ".rows[" + std::to_string(r) + "]"));
    }
    try {
        return CausalModel(std::move(g), std::move(cpts));
    } catch (const InvalidModel& err) {
        throw FormatError(std::string("model file: ") + err.what());
    }
}

ConditionalTables tables_from_json(const std::string& text)
{
    json j = parse_json(text, "tables file");
    if (!j.is_object()) throw FormatError("tables file: top level must be an object");
    ConditionalTables t;
    for (const char* key : {"x_size", "y_size"})
        if (!j.contains(key) || !j[key].is_number_unsigned() || j[key].get<std::size_t>() == 0)
            throw FormatError(std::string("tables file: \"") + key + "\" must be a positive integer");
    t.x_size = j["x_size"].get<std::size_t>();
    t.y_size = j["y_size"].get<std::size_t>();
    if (!j.contains("tables") || !j["tables"].is_object()) throw FormatError("tables file: \"tables\" must be an object");
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            const std::string key = std::to_string(a) + std::to_string(b);
            if (!j["tables"].contains(key)) throw FormatError("tables file: tables." + key + " is missing");
            t.table[a][b] = number_array(j["tables"][key], "tables file: tables." + key);
        }
    try {
        t.validate();
    } catch (const InvalidParameter& err) {
        throw FormatError(std::string("tables file: ") + err.what());
    }
    return t;
}

std::string tables_to_json(const ConditionalTables& t)
{
    json j;
    j["x_size"] = t.x_size;
    j["y_size"] = t.y_size;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) j["tables"][std::to_string(a) + std::to_string(b)] = t.table[a][b];
    return j.dump(2);
}

}  // namespace entrocone::dist
