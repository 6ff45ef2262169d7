// ghwsm: check weak sharp minima of interval-valued functions from a problem file.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ghwsm/ghwsm.hpp"

namespace {

using namespace ghwsm;

constexpr int exit_holds = 0;
constexpr int exit_fails = 1;
constexpr int exit_input = 2;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string join(const Vec& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + fmt(v[i]);
    return out;
}

std::string paren(const Vec& v) { return "(" + join(v, ", ") + ")"; }

std::string show(const ExtInterval& a) {
    if (a.is_plus_inf()) return "+inf";
    if (a.is_minus_inf()) return "-inf";
    return "[" + fmt(a.value().lo()) + ", " + fmt(a.value().hi()) + "]";
}

Vec parse_reals(const std::string& text, const char* what) {
    std::string s = text;
    for (char& c : s) {
        if (c == ',') c = ' ';
    }
    std::istringstream in(s);
    Vec out;
    std::string tok;
    while (in >> tok) {
        double v = 0.0;
        if (!detail::parse_scalar(tok, v)) throw ProblemFileError(std::string(what) + ": '" + tok + "' is not a number");
        out.push_back(v);
    }
    return out;
}

const char* aux_label(const std::string& checker) {
    if (checker == "definition") return "xbar";
    if (checker == "dual-f") return "p";
    if (checker == "dual-b") return "d|z";
    return "d";
}

void print_report(const WsmReport& r) {
    std::cout << "checker: " << r.checker << '\n'
              << "  verdict: " << (r.holds ? "holds" : "fails") << " on the sampled grid ("
              << r.grid_s << " per axis on S, " << r.grid_sbar << " on Sbar)\n"
              << "  worst margin: " << fmt(r.worst_margin) << '\n';
    if (!r.witness_point.empty()) {
        std::cout << "  witness: x=" << paren(r.witness_point) << ' ' << aux_label(r.checker) << '='
                  << paren(r.witness_aux) << '\n';
    }
    std::cout << "  samples: " << r.samples << '\n';
    Vec w = r.witness_point;
    w.insert(w.end(), r.witness_aux.begin(), r.witness_aux.end());
    std::cout << "#DATA checker=" << r.checker << " verdict=" << (r.holds ? "holds" : "fails")
              << " margin=" << fmt(r.worst_margin) << " witness=" << join(w) << " samples=" << r.samples << '\n';
}

struct Common {
    double tol = 1e-7;
    std::size_t dirs = 128;
    std::size_t grid = 0;
    long long seed = -1;
    bool strict = false;

    void apply(WsmProblem& p, WsmOptions& o) const {
        o.tol = tol;
        o.directions = dirs;
        o.require_convex = strict;
        if (grid) p.grid = grid;
        if (seed >= 0) p.seed = static_cast<std::uint64_t>(seed);
    }
};

// Convexity is a precondition of the primal and dual forms; in the default
// warning mode a failed check is reported and the checkers still run.
void report_convexity(const ConvexityResult& c) {
    if (c.pass) return;
    const auto& ce = *c.counterexample;
    std::cout << "WARNING: " << to_string(ce.endpoint) << " endpoint is not convex: Jensen gap " << fmt(ce.gap)
              << " at x1=" << paren(ce.x1) << " x2=" << paren(ce.x2) << " lambda=" << fmt(ce.lambda) << '\n'
              << "NOTE: the primal and dual characterizations assume a convex IVF; their verdicts are grid "
                 "evaluations only\n";
}

int cmd_check(const std::string& file, const std::string& mode, const Common& c) {
    const ProblemFile pf = load_problem(file);
    if (!pf.alpha) throw ProblemFileError(file + ": missing required key 'alpha'");
    WsmProblem p = pf.problem(*pf.alpha);
    WsmOptions o;
    c.apply(p, o);
    report_convexity(run_guards(p, o));

    const WsmSamples smp = make_samples(p, o);
    std::vector<std::string> names;
    if (mode == "all") names = checker_names();
    else names = {mode};

    std::cout << "problem: " << file << "  alpha=" << fmt(p.alpha) << "  seed=" << p.seed << '\n';
    std::vector<WsmReport> reports;
    for (const auto& n : names) {
        reports.push_back(run_checker(n, p, smp, o));
        print_report(reports.back());
    }

    const WsmReport def = names.front() == "definition" ? reports.front() : check_definition(p, smp, o);
    if (!def.holds && !check_definition(p.with_alpha(1e-6), smp, o).holds) {
        std::cout << "NOTE: the definition inequality already fails at alpha=1e-06, so Sbar is not a weak "
                     "sharp minimum set for any alpha on this grid; worst pair x="
                  << paren(def.witness_point) << " xbar=" << paren(def.witness_aux) << '\n';
    }
    if (mode == "all") std::cout << "CONCORDANCE " << (concordant(reports) ? "agree" : "disagree") << '\n';

    for (const auto& r : reports) {
        if (!r.holds) return exit_fails;
    }
    return exit_holds;
}

int cmd_modulus(const std::string& file, const Common& c) {
    const ProblemFile pf = load_problem(file);
    WsmProblem p = pf.problem(1.0);
    WsmOptions o;
    c.apply(p, o);
    report_convexity(run_guards(p, o));
    const ModulusResult m = estimate_modulus(p, o);
    std::cout << "problem: " << file << "  seed=" << p.seed << '\n' << "modulus: " << fmt(m.modulus) << '\n';
    if (m.failure_above) {
        const auto& r = *m.failure_above;
        std::cout << "  definition fails just above it: margin " << fmt(r.worst_margin) << " at x="
                  << paren(r.witness_point) << " xbar=" << paren(r.witness_aux) << '\n';
    }
    std::cout << "#DATA modulus=" << fmt(m.modulus) << '\n';
    return exit_holds;
}

int cmd_subdiff(const std::string& file, const std::string& at_text, const std::string& probe_text,
                const Common& c) {
    const ProblemFile pf = load_problem(file);
    const Ivf f = pf.ivf();
    const std::size_t n = f.dimension();
    const Vec at = parse_reals(at_text, "--at");
    if (at.size() != n) throw ProblemFileError("--at: expected " + std::to_string(n) + " coordinates");
    if (!f.domain().contains(at)) throw ProblemFileError("--at: point lies outside the domain");
    const std::uint64_t seed = c.seed >= 0 ? static_cast<std::uint64_t>(c.seed) : pf.seed.value_or(1);

    std::cout << "F(x) = " << f.eval(at) << " at x=" << paren(at) << '\n';
    if (n == 1) {
        const SubdiffRep rep = subdiff_1d(f, at[0]);
        if (rep.kind() == SubdiffRep::Kind::singleton) {
            std::cout << "subdifferential: {" << rep.element() << "}\n";
        } else {
            std::cout << "subdifferential: {G : " << rep.set().lower_corner()[0] << " <= G <= "
                      << rep.set().upper_corner()[0] << "}\n";
        }
    } else {
        try {
            std::cout << "gH-gradient: " << subdiff_singleton(f, at).element() << '\n';
        } catch (const IvfError&) {
            std::cout << "gH-gradient: none (not gH-differentiable here)\n";
        }
        const SubdiffRep rep = subdiff_support(f, at);
        for (const auto& d : sample_directions(n, 0, 0)) {
            std::cout << "support at d=" << paren(d) << ": " << show(rep.support(d)) << '\n';
        }
    }

    if (probe_text.empty()) return exit_holds;
    const Vec ends = parse_reals(probe_text, "--probe");
    if (ends.size() != 2 * n) throw ProblemFileError("--probe: expected " + std::to_string(2 * n) + " endpoints");
    std::vector<Interval> comps;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(ends[2 * i] <= ends[2 * i + 1])) throw ProblemFileError("--probe: component has lo > hi");
        comps.emplace_back(ends[2 * i], ends[2 * i + 1]);
    }
    const IVector g(std::move(comps));
    const std::size_t per_axis = c.grid ? c.grid : pf.grid.value_or(33);
    const auto def = is_subgradient(f, at, g, f.domain().grid(per_axis));
    const auto dir = is_subgradient_directional(f, at, g, sample_directions(n, c.dirs, seed));
    std::cout << "probe " << g << '\n'
              << "  definition: " << (def.member ? "member" : "violated at x=" + join(*def.violated_at)) << '\n'
              << "  directional: " << (dir.member ? "member" : "violated along d=" + join(*dir.violated_at)) << '\n'
              << "  criteria " << (def.member == dir.member ? "agree" : "disagree") << '\n';
    std::cout << "#DATA probe=" << (def.member ? "member" : "violated") << " directional="
              << (dir.member ? "member" : "violated") << '\n';
    return def.member && dir.member ? exit_holds : exit_fails;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weak sharp minima checks for interval-valued functions"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", common.tol, "verdict tolerance on the worst margin")->check(CLI::PositiveNumber);
        sub->add_option("--dirs", common.dirs, "number of random unit directions");
        sub->add_option("--grid", common.grid, "grid points per axis (overrides the file)");
        sub->add_option("--seed", common.seed, "random seed (overrides the file)")->check(CLI::NonNegativeNumber);
        sub->add_flag("--strict-convexity", common.strict, "treat a failed convexity check as an input error");
    };

    std::string file;
    std::string mode = "all";
    auto* check = app.add_subcommand("check", "run WSM checkers on a problem file");
    check->add_option("file", file, "problem file")->required();
    check->add_option("--mode", mode, "checker to run")
        ->check(CLI::IsMember({"definition", "primal", "dual-b", "dual-e", "dual-f", "all"}));
    add_common(check);

    auto* modulus = app.add_subcommand("modulus", "estimate the largest grid-feasible modulus");
    modulus->add_option("file", file, "problem file")->required();
    add_common(modulus);

    std::string at;
    std::string probe;
    auto* subdiff = app.add_subcommand("subdiff", "inspect the gH-subdifferential at a point");
    subdiff->add_option("file", file, "problem file")->required();
    subdiff->add_option("--at", at, "point, comma separated")->required();
    subdiff->add_option("--probe", probe, "interval vector lo1,hi1,lo2,hi2,... to test for membership");
    add_common(subdiff);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    try {
        if (*check) return cmd_check(file, mode, common);
        if (*modulus) return cmd_modulus(file, common);
        return cmd_subdiff(file, at, probe, common);
    } catch (const ProblemFileError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const WsmError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const IvfError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const expr::EvalError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return exit_input;
}
