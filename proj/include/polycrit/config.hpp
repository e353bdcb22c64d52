#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polycrit/circle_measure.hpp"

namespace polycrit {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Comma split that ignores commas nested inside parentheses.
inline std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == sep && depth == 0) {
            parts.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    parts.push_back(trim(s.substr(start)));
    return parts;
}

inline double parse_double(std::string_view s, const std::string& context) {
    const std::string buf(trim(s));
    if (buf.empty()) throw ConfigError(context + ": expected a number");
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size())
        throw ConfigError(context + ": invalid number '" + buf + "'");
    return v;
}

inline long long parse_int(std::string_view s, const std::string& context) {
    const std::string buf(trim(s));
    if (buf.empty()) throw ConfigError(context + ": expected an integer");
    char* end = nullptr;
    const long long v = std::strtoll(buf.c_str(), &end, 10);
    if (end != buf.c_str() + buf.size())
        throw ConfigError(context + ": invalid integer '" + buf + "'");
    return v;
}

inline std::uint64_t parse_u64(std::string_view s, const std::string& context) {
    const std::string buf(trim(s));
    if (buf.empty()) throw ConfigError(context + ": expected an integer");
    char* end = nullptr;
    const unsigned long long v = std::strtoull(buf.c_str(), &end, 10);
    if (end != buf.c_str() + buf.size() || buf.front() == '-')
        throw ConfigError(context + ": invalid seed '" + buf + "'");
    return v;
}

inline CircleMeasure parse_measure_expr_impl(std::string_view text, const std::string& context,
                                             bool allow_mixture) {
    const std::string_view s = trim(text);
    if (s == "uniform") return CircleMeasure::uniform();

    const auto call = [&](std::string_view head) -> std::string_view {
        if (s.size() < head.size() + 2 || s.substr(0, head.size()) != head) return {};
        std::string_view rest = trim(s.substr(head.size()));
        if (rest.empty() || rest.front() != '(' || rest.back() != ')') return {};
        return trim(rest.substr(1, rest.size() - 2));
    };

    if (std::string_view inner = call("atomic"); !inner.empty()) {
        std::vector<double> angles, weights;
        for (std::string_view item : split_top_level(inner, ',')) {
            const auto pair = split_top_level(item, ':');
            if (pair.size() != 2)
                throw ConfigError(context + ": atomic entries must be angle:weight");
            angles.push_back(parse_double(pair[0], context));
            weights.push_back(parse_double(pair[1], context));
        }
        return CircleMeasure::atomic(std::move(angles), std::move(weights));
    }
    if (std::string_view inner = call("arc"); !inner.empty()) {
        const auto pair = split_top_level(inner, ',');
        if (pair.size() != 2) throw ConfigError(context + ": arc takes (lo, hi)");
        return CircleMeasure::arc(parse_double(pair[0], context),
                                  parse_double(pair[1], context));
    }
    if (std::string_view inner = call("mixture"); !inner.empty()) {
        if (!allow_mixture)
            throw ConfigError(context + ": mixtures may not nest");
        std::vector<CircleMeasure> parts;
        std::vector<double> weights;
        for (std::string_view item : split_top_level(inner, ',')) {
            const std::size_t star = item.find('*');
            if (star == std::string_view::npos)
                throw ConfigError(context + ": mixture entries must be weight*measure");
            weights.push_back(parse_double(item.substr(0, star), context));
            parts.push_back(
                parse_measure_expr_impl(item.substr(star + 1), context, false));
        }
        return CircleMeasure::mixture(std::move(parts), std::move(weights));
    }
    throw ConfigError(context + ": unrecognized measure '" + std::string(s) + "'");
}

}  // namespace detail

// One-line measure syntax, the inverse of describe():
//   uniform | atomic(a:w,...) | arc(lo,hi) | mixture(w*expr,...)
inline CircleMeasure parse_measure_expr(std::string_view text) {
    CircleMeasure m = detail::parse_measure_expr_impl(text, "measure", true);
    validate(m);
    return m;
}

enum class SolveRoute { iterative, dense, both };

struct ExperimentConfig {
    CircleMeasure measure;
    std::vector<int> n_values;
    int trials = 1;
    int k_max = 1;
    std::vector<double> radii;
    std::uint64_t seed = 0;
    SolveRoute method = SolveRoute::iterative;
    std::string output_dir = "polycrit-report";
};

namespace detail {

struct MeasureSection {
    std::string kind;
    std::string atoms;
    std::string lo, hi;
    std::string components;
    int line = 0;
    bool present = false;
};

}  // namespace detail

// Line-oriented config: `key = value` at top level plus one optional
// `measure { ... }` section. Unknown keys are rejected when strict.
//
//   measure {
//     kind = atomic
//     atoms = 0:0.5, 0.5:0.5
//   }
//   n_values = 100, 1000
//   trials = 20
//   k_max = 4
//   radii = 0.5, 0.9
//   seed = 42
//   method = iterative
//   output_dir = out
inline ExperimentConfig parse_config(std::string_view text, bool strict = true) {
    ExperimentConfig cfg;
    detail::MeasureSection ms;
    std::set<std::string> seen;
    bool in_measure = false;
    bool have_measure_inline = false;
    std::string measure_inline;
    int measure_line = 0;

    const auto line_tag = [](int n) { return "line " + std::to_string(n); };

    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(
            pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        const std::string_view line = detail::trim(raw);
        if (line.empty()) continue;

        if (line == "}") {
            if (!in_measure) throw ConfigError(line_tag(lineno) + ": unmatched '}'");
            in_measure = false;
            continue;
        }
        if (line.back() == '{') {
            const std::string_view name = detail::trim(line.substr(0, line.size() - 1));
            if (name != "measure")
                throw ConfigError(line_tag(lineno) + ": unknown section '" +
                                  std::string(name) + "'");
            if (in_measure || ms.present || have_measure_inline)
                throw ConfigError(line_tag(lineno) + ": duplicate measure");
            in_measure = true;
            ms.present = true;
            ms.line = lineno;
            measure_line = lineno;
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(line_tag(lineno) + ": expected 'key = value'");
        const std::string key{detail::trim(line.substr(0, eq))};
        const std::string_view value = detail::trim(line.substr(eq + 1));
        const std::string ctx = line_tag(lineno);

        if (in_measure) {
            if (key == "kind") ms.kind = value;
            else if (key == "atoms") ms.atoms = value;
            else if (key == "lo") ms.lo = value;
            else if (key == "hi") ms.hi = value;
            else if (key == "components") ms.components = value;
            else if (strict)
                throw ConfigError(ctx + ": unknown key '" + key + "' in measure");
            continue;
        }

        static constexpr std::string_view known[] = {
            "measure", "n_values", "trials", "k_max", "radii", "seed", "method",
            "output_dir"};
        const bool is_known =
            std::find(std::begin(known), std::end(known), key) != std::end(known);
        if (is_known && !seen.insert(key).second)
            throw ConfigError(ctx + ": duplicate key '" + key + "'");

        if (key == "measure") {
            if (ms.present) throw ConfigError(ctx + ": duplicate measure");
            have_measure_inline = true;
            measure_inline = value;
            measure_line = lineno;
        } else if (key == "n_values") {
            for (std::string_view item : detail::split_top_level(value, ','))
                cfg.n_values.push_back(static_cast<int>(detail::parse_int(item, ctx)));
        } else if (key == "trials") {
            cfg.trials = static_cast<int>(detail::parse_int(value, ctx));
        } else if (key == "k_max") {
            cfg.k_max = static_cast<int>(detail::parse_int(value, ctx));
        } else if (key == "radii") {
            for (std::string_view item : detail::split_top_level(value, ','))
                cfg.radii.push_back(detail::parse_double(item, ctx));
        } else if (key == "seed") {
            cfg.seed = detail::parse_u64(value, ctx);
        } else if (key == "method") {
            if (value == "iterative") cfg.method = SolveRoute::iterative;
            else if (value == "dense") cfg.method = SolveRoute::dense;
            else if (value == "both") cfg.method = SolveRoute::both;
            else
                throw ConfigError(ctx + ": method must be iterative, dense, or both");
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else if (strict) {
            throw ConfigError(ctx + ": unknown key '" + key + "'");
        }
    }
    if (in_measure) throw ConfigError("unterminated measure section");

    const std::string mctx = "line " + std::to_string(measure_line) + " (measure)";
    try {
        if (have_measure_inline) {
            cfg.measure = parse_measure_expr(measure_inline);
        } else if (ms.present) {
            if (ms.kind == "uniform") cfg.measure = CircleMeasure::uniform();
            else if (ms.kind == "atomic")
                cfg.measure = detail::parse_measure_expr_impl("atomic(" + ms.atoms + ")",
                                                              mctx, false);
            else if (ms.kind == "arc")
                cfg.measure = CircleMeasure::arc(detail::parse_double(ms.lo, mctx),
                                                 detail::parse_double(ms.hi, mctx));
            else if (ms.kind == "mixture")
                cfg.measure = detail::parse_measure_expr_impl(
                    "mixture(" + ms.components + ")", mctx, true);
            else
                throw ConfigError(mctx + ": kind must be uniform, atomic, arc, or mixture");
            validate(cfg.measure);
        } else {
            throw ConfigError("missing measure");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(mctx + ": " + e.what());
    }

    if (cfg.n_values.empty()) throw ConfigError("missing n_values");
    for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
        if (cfg.n_values[i] < 2) throw ConfigError("n_values entries must be >= 2");
        if (i > 0 && cfg.n_values[i] <= cfg.n_values[i - 1])
            throw ConfigError("n_values must be strictly increasing");
    }
    if (!seen.count("seed")) throw ConfigError("missing seed");
    if (!seen.count("radii") || cfg.radii.empty()) throw ConfigError("missing radii");
    if (!seen.count("trials")) throw ConfigError("missing trials");
    if (!seen.count("k_max")) throw ConfigError("missing k_max");
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    if (cfg.k_max < 1) throw ConfigError("k_max must be >= 1");
    for (double r : cfg.radii)
        if (!(r > 0.0) || r >= 1.0) throw ConfigError("radii must lie in (0,1)");
    if (cfg.method != SolveRoute::iterative && cfg.n_values.back() > 512)
        throw ConfigError("dense oracle capped at 512");
    return cfg;
}

}  // namespace polycrit
