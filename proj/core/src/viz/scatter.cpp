#include "neurocap/viz/scatter.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

#include "neurocap/data/atomic_file.hpp"
#include "neurocap/error.hpp"

namespace neurocap::viz {

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view s, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DataError("scatter line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
    }
    return v;
}

std::vector<double> parse_list(std::string_view s, std::size_t line) {
    std::vector<double> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        out.push_back(parse_double(s.substr(0, comma), line));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

void check_exportable(const ProjectionResult& r) {
    if (r.points.rows() == 0) throw ArgumentError("scatter: no points to export");
    if (r.points.cols() < 2) throw ArgumentError("scatter: need at least two coordinates per point");
    if (r.labels.size() != static_cast<std::size_t>(r.points.rows())) {
        throw DimensionError("scatter: label count differs from point count");
    }
    for (const auto& l : r.labels) {
        if (l.find_first_of("\t\r\n") != std::string::npos) throw ArgumentError("scatter: label contains tab or newline");
    }
    require_finite(as_span(r.points), "scatter coordinates");
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string format_scatter_tsv(const ProjectionResult& r) {
    check_exportable(r);
    std::string out;
    out += "# method=" + std::string(to_string(r.method)) + "\n";
    out += "# n=" + std::to_string(r.points.rows()) + "\n";
    out += "# seed=" + std::to_string(r.seed) + "\n";
    if (r.method == Method::pca) {
        out += "# explained_variance_ratio=";
        for (std::size_t k = 0; k < r.explained_variance_ratio.size(); ++k) {
            out += (k ? "," : "") + g17(r.explained_variance_ratio[k]);
        }
        out += "\n";
    } else {
        out += "# initial_kl=" + g17(r.initial_kl) + "\n";
        out += "# final_kl=" + g17(r.final_kl) + "\n";
    }
    out += "x\ty\tlabel\n";
    for (Eigen::Index i = 0; i < r.points.rows(); ++i) {
        out += g17(r.points(i, 0)) + "\t" + g17(r.points(i, 1)) + "\t" + r.labels[static_cast<std::size_t>(i)] + "\n";
    }
    return out;
}

ProjectionResult parse_scatter_tsv(const std::string& text) {
    ProjectionResult r;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<std::pair<double, double>> xy;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (!header && line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string_view value = std::string_view(line).substr(eq + 1);
            if (key == "method") r.method = method_from_string(value);
            else if (key == "seed") r.seed = static_cast<std::uint64_t>(std::stoull(std::string(value)));
            else if (key == "explained_variance_ratio") r.explained_variance_ratio = parse_list(value, lineno);
            else if (key == "initial_kl") r.initial_kl = parse_double(value, lineno);
            else if (key == "final_kl") r.final_kl = parse_double(value, lineno);
            continue;
        }
        if (!header) {
            if (line != "x\ty\tlabel") throw DataError("scatter: missing 'x<TAB>y<TAB>label' header");
            header = true;
            continue;
        }
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) throw DataError("scatter line " + std::to_string(lineno) + ": expected 3 fields");
        const std::string_view view(line);
        xy.emplace_back(parse_double(view.substr(0, t1), lineno), parse_double(view.substr(t1 + 1, t2 - t1 - 1), lineno));
        r.labels.push_back(line.substr(t2 + 1));
    }
    if (!header) throw DataError("scatter: missing header");
    r.points.resize(static_cast<Eigen::Index>(xy.size()), 2);
    for (std::size_t i = 0; i < xy.size(); ++i) {
        r.points(static_cast<Eigen::Index>(i), 0) = xy[i].first;
        r.points(static_cast<Eigen::Index>(i), 1) = xy[i].second;
    }
    return r;
}

void export_scatter(const ProjectionResult& result, const std::filesystem::path& path) {
    data::write_text_atomic(path, format_scatter_tsv(result));
}

ProjectionResult import_scatter(const std::filesystem::path& path) {
    const auto bytes = data::read_bytes(path);
    return parse_scatter_tsv(std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string render_scatter_svg(const ProjectionResult& r) {
    check_exportable(r);
    static constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                               "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    constexpr double width = 640, height = 480, margin = 40, legend = 140;

    std::map<std::string, std::size_t> colors;
    for (const auto& l : r.labels) colors.emplace(l, 0);
    std::size_t next = 0;
    for (auto& [label, c] : colors) c = next++;

    const auto x = r.points.col(0);
    const auto y = r.points.col(1);
    const double x0 = x.minCoeff(), x1 = x.maxCoeff(), y0 = y.minCoeff(), y1 = y.maxCoeff();
    const double sx = (width - legend - 2 * margin) / std::max(x1 - x0, 1e-12);
    const double sy = (height - 2 * margin) / std::max(y1 - y0, 1e-12);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << margin << "\" y=\"24\" font-size=\"14\">" << to_string(r.method) << " projection</text>\n";
    for (Eigen::Index i = 0; i < r.points.rows(); ++i) {
        const auto& label = r.labels[static_cast<std::size_t>(i)];
        const double px = margin + (x(i) - x0) * sx;
        const double py = height - margin - (y(i) - y0) * sy;
        svg << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"3\" fill=\""
            << kPalette[colors[label] % std::size(kPalette)] << "\"><title>" << xml_escape(label)
            << "</title></circle>\n";
    }
    double ly = margin;
    for (const auto& [label, c] : colors) {
        const double lx = width - legend + 10;
        svg << "<rect x=\"" << lx << "\" y=\"" << ly - 8 << "\" width=\"10\" height=\"10\" fill=\""
            << kPalette[c % std::size(kPalette)] << "\"/>\n";
        svg << "<text x=\"" << lx + 16 << "\" y=\"" << ly + 1 << "\" font-size=\"11\">"
            << xml_escape(label.empty() ? "(unlabeled)" : label) << "</text>\n";
        ly += 16;
    }
    svg << "</svg>\n";
    return svg.str();
}

void export_scatter_svg(const ProjectionResult& result, const std::filesystem::path& path) {
    data::write_text_atomic(path, render_scatter_svg(result));
}

}  // namespace neurocap::viz
