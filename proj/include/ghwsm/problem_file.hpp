#ifndef GHWSM_PROBLEM_FILE_HPP
#define GHWSM_PROBLEM_FILE_HPP

// Text format for WSM problems:
//
//   # comment
//   dimension: 2
//   lower: abs(x1) + abs(x2)
//   upper: 2*abs(x1) + 2*abs(x2)
//   domain: -1 1 -1 1        # lo1 hi1 lo2 hi2 ...
//   S:      -1 1 -1 1
//   Sbar:    0 0  0 0
//   alpha: 0.5
//   grid: 33                 # optional
//   seed: 1                  # optional
//
// `domain` defaults to S when omitted.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

#include "expr.hpp"
#include "geometry.hpp"
#include "ivf.hpp"
#include "wsm.hpp"

namespace ghwsm {

class ProblemFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProblemFile {
    std::size_t dimension = 0;
    std::string lower;
    std::string upper;
    std::optional<BoxSet> domain;
    std::optional<BoxSet> s;
    std::optional<BoxSet> sbar;
    std::optional<double> alpha;
    std::optional<std::size_t> grid;
    std::optional<std::uint64_t> seed;

    Ivf ivf() const { return Ivf::from_expressions(lower, upper, domain.value_or(*s)); }

    WsmProblem problem(double a) const {
        WsmProblem p{ivf(), *s, *sbar, a};
        if (grid) p.grid = *grid;
        if (seed) p.seed = *seed;
        return p;
    }
};

namespace detail {

inline std::string trim(std::string_view v) {
    const auto b = v.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = v.find_last_not_of(" \t\r");
    return std::string(v.substr(b, e - b + 1));
}

template <class T>
bool parse_scalar(const std::string& s, T& out) {
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

} // namespace detail

inline ProblemFile parse_problem(std::istream& in, const std::string& name = "<input>") {
    ProblemFile pf;
    std::map<std::string, std::pair<std::string, std::size_t>> entries;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](std::size_t at, const std::string& msg) -> ProblemFileError {
        return ProblemFileError(name + ":" + std::to_string(at) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = detail::trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto colon = body.find(':');
        if (colon == std::string::npos) throw fail(lineno, "expected 'key: value'");
        const std::string key = detail::trim(body.substr(0, colon));
        const std::string value = detail::trim(body.substr(colon + 1));
        static const char* known[] = {"dimension", "lower", "upper", "domain", "S", "Sbar", "alpha", "grid", "seed"};
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            throw fail(lineno, "unknown key '" + key + "'");
        }
        if (entries.count(key)) throw fail(lineno, "duplicate key '" + key + "'");
        entries[key] = {value, lineno};
    }

    auto need = [&](const char* key) -> const std::pair<std::string, std::size_t>& {
        const auto it = entries.find(key);
        if (it == entries.end()) throw ProblemFileError(name + ": missing required key '" + key + "'");
        return it->second;
    };

    {
        const auto& [v, at] = need("dimension");
        if (!detail::parse_scalar(v, pf.dimension) || pf.dimension == 0) {
            throw fail(at, "dimension must be a positive integer");
        }
    }

    auto box = [&](const char* key) {
        const auto& [v, at] = need(key);
        std::istringstream ss(v);
        std::vector<double> nums;
        std::string tok;
        while (ss >> tok) {
            double d = 0.0;
            if (!detail::parse_scalar(tok, d)) throw fail(at, std::string(key) + ": '" + tok + "' is not a number");
            nums.push_back(d);
        }
        if (nums.size() != 2 * pf.dimension) {
            throw fail(at, std::string(key) + ": expected " + std::to_string(2 * pf.dimension) + " numbers, got " +
                               std::to_string(nums.size()));
        }
        Vec lo(pf.dimension), hi(pf.dimension);
        for (std::size_t i = 0; i < pf.dimension; ++i) {
            lo[i] = nums[2 * i];
            hi[i] = nums[2 * i + 1];
        }
        try {
            return BoxSet(std::move(lo), std::move(hi));
        } catch (const std::invalid_argument& e) {
            throw fail(at, std::string(key) + ": " + e.what());
        }
    };

    pf.s = box("S");
    pf.sbar = box("Sbar");
    if (entries.count("domain")) pf.domain = box("domain");

    for (const char* key : {"lower", "upper"}) {
        const auto& [v, at] = need(key);
        try {
            expr::parse(v, pf.dimension);
        } catch (const expr::ParseError& e) {
            throw fail(at, std::string(key) + ": " + e.what());
        }
        (std::string(key) == "lower" ? pf.lower : pf.upper) = v;
    }

    if (entries.count("alpha")) {
        const auto& [v, at] = entries["alpha"];
        double a = 0.0;
        if (!detail::parse_scalar(v, a) || !(a > 0.0)) throw fail(at, "alpha must be a positive number");
        pf.alpha = a;
    }
    if (entries.count("grid")) {
        const auto& [v, at] = entries["grid"];
        std::size_t g = 0;
        if (!detail::parse_scalar(v, g) || g < 2) throw fail(at, "grid must be an integer >= 2");
        pf.grid = g;
    }
    if (entries.count("seed")) {
        const auto& [v, at] = entries["seed"];
        std::uint64_t sd = 0;
        if (!detail::parse_scalar(v, sd)) throw fail(at, "seed must be a nonnegative integer");
        pf.seed = sd;
    }

    const BoxSet& dom = pf.domain.value_or(*pf.s);
    if (!dom.contains(*pf.s)) throw ProblemFileError(name + ": S is not contained in the domain");
    if (!pf.s->contains(*pf.sbar)) throw ProblemFileError(name + ": Sbar is not contained in S");
    return pf;
}

inline ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProblemFileError(path + ": cannot open file");
    return parse_problem(in, path);
}

} // namespace ghwsm

#endif // GHWSM_PROBLEM_FILE_HPP
