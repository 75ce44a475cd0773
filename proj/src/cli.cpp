#include "entrocone/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "entrocone/analysis.hpp"
#include "entrocone/cone_io.hpp"
#include "entrocone/errors.hpp"

namespace entrocone::cli {

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string number(double x)
{
    if (x == 0) x = 0;   // no "-0"
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

std::size_t parse_size(const std::string& s, const std::string& what)
{
    if (s.empty() || s.size() > 4 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw InvalidParameter(what + " must be a small positive integer, got " + s);
    return static_cast<std::size_t>(std::stoul(s));
}

struct Settings {
    std::string format = "text";
    std::string engine = "fm";
    double tolerance = 1e-9;
    std::size_t max_nodes = 6;
    bool all_nodes = false;
};

std::string emit_report(const analysis::ConeReport& r, const Settings& s)
{
    return s.format == "json" ? analysis::report_to_json(r) + "\n" : analysis::report_to_text(r);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Entropy cones of causal structures"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Settings s;
    app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--engine", s.engine, "Projection engine")->check(CLI::IsMember({"fm", "dd"}));
    app.add_option("--tolerance", s.tolerance, "Tolerance for entropy comparisons")->check(CLI::PositiveNumber);
    app.add_option("--max-nodes", s.max_nodes, "Node limit for full marginalization");

    std::string target;
    auto* outer = app.add_subcommand("outer", "Observed-level outer cone of a structure");
    outer->add_option("structure", target, "pn:<n>, bell, ptilde:<k> or a DAG file")->required();
    auto* verify = app.add_subcommand("verify", "Tightness of the line-structure outer cone");
    verify->add_option("structure", target, "pn:<n>")->required();
    auto* marg = app.add_subcommand("marginalize", "Project out the unobserved nodes");
    marg->add_option("structure", target, "DAG file or built-in selector")->required();
    auto* bc = app.add_subcommand("bc-cone", "Marginal cone of the post-selected line");
    bc->add_option("k", target, "3 or 4")->required();
    auto* bce = app.add_subcommand("bc-eval", "Evaluate the Bell functional on conditional tables");
    bce->add_option("tables", target, "Tables file")->required();
    auto* ent = app.add_subcommand("entropy", "Entropy vector of a compiled model");
    ent->add_option("model", target, "Model file")->required();
    ent->add_flag("--all-nodes", s.all_nodes, "Include unobserved nodes");
    auto* rays = app.add_subcommand("rays", "Extremal rays of a cone file");
    rays->add_option("cone", target, "Cone file")->required();
    auto* facets = app.add_subcommand("facets", "Facets of a cone file");
    facets->add_option("cone", target, "Cone file")->required();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    analysis::Options opts;
    opts.tolerance = s.tolerance;
    opts.max_nodes = s.max_nodes;
    const bool json = s.format == "json";

    try {
        opts.engine = analysis::parse_engine(s.engine);
        if (outer->parsed()) {
            out << emit_report(analysis::observed_outer_cone(causal::structure_from_selector(target)), s);
        } else if (verify->parsed()) {
            if (target.rfind("pn:", 0) != 0) throw InvalidParameter("verify expects pn:<n>, got " + target);
            auto r = analysis::verify_line_tightness(parse_size(target.substr(3), "n"), opts);
            out << emit_report(r, s);
            return r.verdict == analysis::Verdict::tight ? 0 : 2;
        } else if (marg->parsed()) {
            out << emit_report(analysis::full_marginal_outer_cone(causal::structure_from_selector(target), opts), s);
        } else if (bc->parsed()) {
            out << emit_report(analysis::bc_marginal_cone(parse_size(target, "k"), opts), s);
        } else if (bce->parsed()) {
            auto t = dist::tables_from_json(read_file(target));
            auto v = dist::bc_variants(t);
            if (json) {
                nlohmann::json j;
                j["value"] = v[0] == 0 ? 0.0 : v[0];
                j["variants"] = nlohmann::json::array();
                for (double x : v) j["variants"].push_back(x == 0 ? 0.0 : x);
                out << j.dump(2) << "\n";
            } else {
                out << number(v[0]) << "\n";
            }
        } else if (ent->parsed()) {
            auto m = dist::model_from_json(read_file(target));
            auto p = s.all_nodes ? dist::compile(m) : dist::observed_distribution(m);
            entropy::CoordinateIndex index(p.names());
            auto h = dist::entropy_vector(p, index);
            if (json) {
                nlohmann::json j;
                j["coordinates"] = index.labels();
                j["entropies"] = nlohmann::json::array();
                for (double x : h) j["entropies"].push_back(x == 0 ? 0.0 : x);
                if (auto snapped = dist::snap_to_integers(h, opts.tolerance)) {
                    j["integral"] = nlohmann::json::array();
                    for (const auto& x : *snapped) j["integral"].push_back(x.get_si());
                }
                out << j.dump(2) << "\n";
            } else {
                for (std::size_t i = 0; i < h.size(); ++i) out << index.label(i) << " = " << number(h[i]) << "\n";
            }
        } else if (rays->parsed()) {
            auto c = poly::cone_from_json(read_file(target));
            poly::VRep v = std::holds_alternative<poly::HRep>(c) ? poly::enumerate_rays(std::get<poly::HRep>(c))
                                                                  : poly::extremal_subset(std::get<poly::VRep>(c));
            out << (json ? poly::to_json(v) + "\n" : poly::to_text(v));
        } else if (facets->parsed()) {
            auto c = poly::cone_from_json(read_file(target));
            poly::HRep h = std::holds_alternative<poly::VRep>(c) ? poly::facets_from_rays(std::get<poly::VRep>(c))
                                                                 : poly::remove_redundancies(std::get<poly::HRep>(c));
            out << (json ? poly::to_json(h) + "\n" : poly::to_text(h));
        }
    } catch (const GuardViolation& e) {
        err << "error: " << e.what() << " (override: " << e.flag() << ")\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace entrocone::cli
