#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polycrit/config.hpp"
#include "polycrit/experiment.hpp"
#include "polycrit/version.hpp"

namespace polycrit {

namespace detail {

inline void csv_number(std::ostringstream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

}  // namespace detail

// Frozen schema: 8 fixed columns, 3 per moment order, 1 per radius.
inline std::string rows_csv_header(int k_max, int radii_count) {
    std::ostringstream os;
    os << "n,trial,seed,iterations,converged,residual,w1,ks";
    for (int k = 1; k <= k_max; ++k)
        os << ",momdiff_" << k << ",radial_" << k << ",weylerr_" << k;
    for (int j = 1; j <= radii_count; ++j) os << ",interior_" << j;
    return os.str();
}

inline std::string rows_csv(const ExperimentReport& rep) {
    std::ostringstream os;
    os << rows_csv_header(rep.config.k_max, static_cast<int>(rep.config.radii.size()))
       << "\n";
    for (const TrialRow& r : rep.rows) {
        os << r.n << "," << r.trial << "," << r.seed << "," << r.iterations << ","
           << (r.converged ? 1 : 0) << ",";
        detail::csv_number(os, r.residual);
        os << ",";
        detail::csv_number(os, r.w1);
        os << ",";
        detail::csv_number(os, r.ks);
        for (int k = 1; k <= rep.config.k_max; ++k) {
            const std::size_t i = static_cast<std::size_t>(k) - 1;
            os << ",";
            detail::csv_number(os, std::abs(r.crit_moments[i] - r.root_moments[i]));
            os << ",";
            detail::csv_number(os, r.radial[i]);
            os << ",";
            detail::csv_number(os, std::abs(r.weyl[i] - rep.measure_moments[i]));
        }
        for (int v : r.interior) os << "," << v;
        os << "\n";
    }
    return os.str();
}

inline std::string aggregate_csv(const ExperimentReport& rep) {
    std::ostringstream os;
    os << "n,trials,median_w1,iqr_w1,median_ks,iqr_ks\n";
    if (rep.rows.empty()) return os.str();
    for (const AggregateRow& a : aggregate_rows(rep)) {
        os << a.n << "," << a.trials << ",";
        detail::csv_number(os, a.median_w1);
        os << ",";
        detail::csv_number(os, a.iqr_w1);
        os << ",";
        detail::csv_number(os, a.median_ks);
        os << ",";
        detail::csv_number(os, a.iqr_ks);
        os << "\n";
    }
    return os.str();
}

inline std::string points_csv(const ExperimentReport& rep) {
    std::ostringstream os;
    os << "kind,re,im\n";
    for (const Complex& z : rep.rep_roots) {
        os << "root,";
        detail::csv_number(os, z.real());
        os << ",";
        detail::csv_number(os, z.imag());
        os << "\n";
    }
    for (const Complex& z : rep.rep_criticals) {
        os << "critical,";
        detail::csv_number(os, z.real());
        os << ",";
        detail::csv_number(os, z.imag());
        os << "\n";
    }
    return os.str();
}

// Wall times live here and only here, so every other artifact is
// byte-reproducible for a fixed config.
inline std::string timing_csv(const ExperimentReport& rep) {
    std::ostringstream os;
    os << "n,trial,wall_ms\n";
    for (const TrialRow& r : rep.rows) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
        os << r.n << "," << r.trial << "," << buf << "\n";
    }
    return os.str();
}

inline std::string manifest_text(const ExperimentReport& rep) {
    std::ostringstream os;
    os << "polycrit " << version << "\n";
    os << "measure = " << rep.measure_text << "\n";
    os << "n_values =";
    for (std::size_t i = 0; i < rep.config.n_values.size(); ++i)
        os << (i ? "," : " ") << rep.config.n_values[i];
    os << "\n";
    os << "trials = " << rep.config.trials << "\n";
    os << "k_max = " << rep.config.k_max << "\n";
    os << "radii =";
    for (std::size_t i = 0; i < rep.config.radii.size(); ++i) {
        os << (i ? "," : " ");
        detail::csv_number(os, rep.config.radii[i]);
    }
    os << "\n";
    os << "seed = " << rep.config.seed << "\n";
    os << "method = "
       << (rep.config.method == SolveRoute::iterative
               ? "iterative"
               : rep.config.method == SolveRoute::dense ? "dense" : "both")
       << "\n";
    os << "nonconverged = " << rep.nonconverged_count() << "\n";
    if (rep.config.method == SolveRoute::both) {
        os << "cross_check_max = ";
        detail::csv_number(os, rep.cross_check_max);
        os << "\n";
    }
    os << "representative = n " << rep.rep_n << " trial 0 seed " << rep.rep_seed << "\n";
    os << "seeds:\n";
    for (const TrialRow& r : rep.rows)
        os << "  n=" << r.n << " trial=" << r.trial << " seed=" << r.seed << "\n";
    return os.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

inline void emit_report(const ExperimentReport& rep, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec && !std::filesystem::is_directory(dir))
        throw std::runtime_error("cannot create directory " + dir.string());
    write_file(dir / "rows.csv", rows_csv(rep));
    write_file(dir / "aggregate.csv", aggregate_csv(rep));
    write_file(dir / "manifest.txt", manifest_text(rep));
    write_file(dir / "points.csv", points_csv(rep));
    write_file(dir / "timing.csv", timing_csv(rep));
}

// What the plot generators need; reloadable from an emitted report directory.
struct PlotInput {
    CircleMeasure measure;
    std::string measure_text;
    std::vector<Complex> roots;
    std::vector<Complex> criticals;
    std::vector<std::pair<int, double>> w1_curve;  // (n, median_w1)
};

inline PlotInput plot_input(const ExperimentReport& rep) {
    PlotInput in;
    in.measure = rep.config.measure;
    in.measure_text = rep.measure_text;
    in.roots = rep.rep_roots;
    in.criticals = rep.rep_criticals;
    for (const AggregateRow& a : aggregate_rows(rep))
        in.w1_curve.emplace_back(a.n, a.median_w1);
    return in;
}

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline std::vector<std::string> file_lines(const std::string& content) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t nl = content.find('\n', pos);
        if (nl == std::string::npos) nl = content.size();
        lines.push_back(content.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

}  // namespace detail

inline PlotInput load_plot_input(const std::filesystem::path& dir) {
    PlotInput in;
    bool have_measure = false;
    for (const std::string& line : detail::file_lines(detail::read_file(dir / "manifest.txt"))) {
        constexpr std::string_view prefix = "measure = ";
        if (line.rfind(prefix, 0) == 0) {
            in.measure_text = line.substr(prefix.size());
            in.measure = parse_measure_expr(in.measure_text);
            have_measure = true;
            break;
        }
    }
    if (!have_measure)
        throw std::runtime_error("no measure line in " + (dir / "manifest.txt").string());

    const auto agg = detail::file_lines(detail::read_file(dir / "aggregate.csv"));
    for (std::size_t i = 1; i < agg.size(); ++i) {
        const auto cells = detail::split_csv_line(agg[i]);
        if (cells.size() < 3) continue;
        in.w1_curve.emplace_back(std::stoi(cells[0]), std::stod(cells[2]));
    }

    const auto pts = detail::file_lines(detail::read_file(dir / "points.csv"));
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const auto cells = detail::split_csv_line(pts[i]);
        if (cells.size() != 3) continue;
        const Complex z{std::stod(cells[1]), std::stod(cells[2])};
        if (cells[0] == "root") in.roots.push_back(z);
        else if (cells[0] == "critical") in.criticals.push_back(z);
    }
    return in;
}

}  // namespace polycrit
