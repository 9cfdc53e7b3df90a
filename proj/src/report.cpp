#include "l1cft/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;

namespace l1cft {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write " + tmp);
        out << content;
        if (!out) throw IoError("short write to " + tmp);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp + " -> " + path);
}

// Mean curve per config, plus the per-config score used in the legend.
struct ConfigCurve {
    std::string config;
    std::vector<double> curve;
    double score = 0.0;
};

std::vector<ConfigCurve> mean_curves(const std::vector<EvalSummary>& summaries, bool precision) {
    std::map<std::string, std::pair<std::vector<double>, size_t>> acc;
    for (const auto& s : summaries) {
        const auto& c = precision ? s.precision_curve : s.success_curve;
        auto& slot = acc[s.config];
        if (slot.first.empty()) slot.first.assign(c.size(), 0.0);
        for (size_t i = 0; i < c.size(); ++i) slot.first[i] += c[i];
        slot.second += 1;
    }
    std::vector<ConfigCurve> out;
    for (auto& [config, slot] : acc) {
        ConfigCurve cc;
        cc.config = config;
        cc.curve = slot.first;
        for (double& v : cc.curve) v /= static_cast<double>(slot.second);
        if (precision) {
            cc.score = cc.curve.size() > 20 ? cc.curve[20] : 0.0;  // DP@20
        } else {
            double m = 0.0;
            for (double v : cc.curve) m += v;
            cc.score = cc.curve.empty() ? 0.0 : m / static_cast<double>(cc.curve.size());
        }
        out.push_back(std::move(cc));
    }
    std::sort(out.begin(), out.end(),
              [](const ConfigCurve& a, const ConfigCurve& b) { return a.score > b.score; });
    return out;
}

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string render_svg(const std::vector<ConfigCurve>& curves, const std::string& title,
                       const std::string& x_label, double x_max) {
    const int W = 640, H = 480;
    const double ml = 60, mr = 20, mt = 40, mb = 50;
    const double pw = W - ml - mr, ph = H - mt - mb;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
           "font-family=\"sans-serif\">" << title << "</text>\n";
    // axes and grid
    for (int i = 0; i <= 5; ++i) {
        const double fy = mt + ph * (1.0 - i / 5.0);
        const double fx = ml + pw * (i / 5.0);
        svg << "<line x1=\"" << ml << "\" y1=\"" << fy << "\" x2=\"" << ml + pw << "\" y2=\"" << fy
            << "\" stroke=\"#dddddd\"/>\n";
        char lab[32];
        std::snprintf(lab, sizeof(lab), "%.1f", i / 5.0);
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << fy + 4
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << lab
            << "</text>\n";
        std::snprintf(lab, sizeof(lab), "%g", x_max * i / 5.0);
        svg << "<text x=\"" << fx << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << lab
            << "</text>\n";
    }
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label
        << "</text>\n";

    size_t ci = 0;
    for (const auto& c : curves) {
        const char* color = kPalette[ci % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (size_t i = 0; i < c.curve.size(); ++i) {
            const double x = ml + pw * (static_cast<double>(i) / (c.curve.size() - 1));
            const double y = mt + ph * (1.0 - std::clamp(c.curve[i], 0.0, 1.0));
            svg << x << "," << y << " ";
        }
        svg << "\"/>\n";
        char score[64];
        std::snprintf(score, sizeof(score), "%s [%.3f]", c.config.c_str(), c.score);
        const double ly = mt + 16 + 16 * static_cast<double>(ci);
        svg << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly - 4 << "\" x2=\""
            << ml + pw - 126 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << ml + pw - 120 << "\" y=\"" << ly
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << score << "</text>\n";
        ++ci;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

void emit_report(const std::vector<EvalSummary>& summaries, const std::string& out_dir) {
    if (summaries.empty()) throw EmptySeries("emit_report: no summaries");
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    std::ostringstream results;
    results << "sequence,config,frames,dp20,op50,auc,fps\n";
    for (const auto& s : summaries) {
        results << s.sequence << ',' << s.config << ',' << s.frames << ',' << fmt_double(s.dp_at_20)
                << ',' << fmt_double(s.op_at_50) << ',' << fmt_double(s.auc) << ','
                << fmt_double(s.fps) << '\n';
    }
    atomic_write((fs::path(out_dir) / "results.csv").string(), results.str());

    std::ostringstream curves;
    curves << "config,kind,threshold,value\n";
    for (const auto& cc : mean_curves(summaries, true))
        for (size_t i = 0; i < cc.curve.size(); ++i)
            curves << cc.config << ",precision," << i << ',' << fmt_double(cc.curve[i]) << '\n';
    for (const auto& cc : mean_curves(summaries, false))
        for (size_t i = 0; i < cc.curve.size(); ++i)
            curves << cc.config << ",success," << fmt_double(i / 20.0) << ','
                   << fmt_double(cc.curve[i]) << '\n';
    atomic_write((fs::path(out_dir) / "curves.csv").string(), curves.str());

    atomic_write((fs::path(out_dir) / "precision.svg").string(),
                 render_svg(mean_curves(summaries, true), "Precision plot of OPE",
                            "Location error threshold (px)", 50.0));
    atomic_write((fs::path(out_dir) / "success.svg").string(),
                 render_svg(mean_curves(summaries, false), "Success plot of OPE",
                            "Overlap threshold", 1.0));
}

std::vector<ResultRow> parse_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<ResultRow> rows;
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty results csv: " + path);
    if (line != "sequence,config,frames,dp20,op50,auc,fps")
        throw IoError("unexpected results header: " + line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        ResultRow r;
        std::string field;
        std::getline(ss, r.sequence, ',');
        std::getline(ss, r.config, ',');
        std::getline(ss, field, ',');
        r.frames = static_cast<size_t>(std::stoull(field));
        std::getline(ss, field, ',');
        r.dp20 = std::stod(field);
        std::getline(ss, field, ',');
        r.op50 = std::stod(field);
        std::getline(ss, field, ',');
        r.auc = std::stod(field);
        std::getline(ss, field, ',');
        r.fps = std::stod(field);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace l1cft
