#include "cedec/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace cedec {

namespace {

/// Splits one CSV record, honoring double-quoted fields.
std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    if (quoted) throw DataError("unterminated quote in CSV line");
    return out;
}

std::string xml_escape(const std::string& s) {
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

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::vector<CurveRow> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw DataError("empty CSV file");
    if (line != kCsvHeader) throw DataError("unexpected CSV header: " + line);
    std::vector<CurveRow> rows;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_record(line);
        if (f.size() != 17) throw DataError("CSV line " + std::to_string(lineno) + " has " + std::to_string(f.size()) + " fields");
        try {
            CurveRow r;
            r.code = f[0];
            r.decoder = f[1];
            r.matrix = f[2];
            r.t = std::stoi(f[3]);
            r.boosts = std::stoi(f[4]);
            r.ell = std::stoul(f[5]);
            r.snr_db = std::stod(f[6]);
            r.samples = std::stoul(f[7]);
            r.bit_errors = std::stoull(f[8]);
            r.frame_errors = std::stoull(f[9]);
            r.ber = std::stod(f[10]);
            r.fer = std::stod(f[11]);
            rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw DataError("CSV line " + std::to_string(lineno) + " is malformed");
        }
    }
    return rows;
}

void write_svg(std::ostream& os, std::span<const CurveRow> rows, CurveMetric metric, const std::string& title) {
    constexpr double W = 640, H = 480, left = 70, right = 190, top = 40, bottom = 50;
    const double pw = W - left - right, ph = H - top - bottom;

    auto value = [&](const CurveRow& r) { return metric == CurveMetric::ber ? r.ber : r.fer; };

    // Series keyed by everything but the SNR.
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    double xmin = 0, xmax = 1, ymin_exp = -6, ymax_exp = 0;
    bool have = false;
    for (const auto& r : rows) {
        const std::string key = r.code + " " + r.decoder + "/" + r.matrix + " B=" + std::to_string(r.boosts) +
                                (r.ell > 1 ? " l=" + std::to_string(r.ell) : "");
        series[key];
        const double v = value(r);
        if (!(v > 0)) continue;
        series[key].emplace_back(r.snr_db, v);
        if (!have) {
            xmin = xmax = r.snr_db;
            ymin_exp = ymax_exp = std::log10(v);
            have = true;
        }
        xmin = std::min(xmin, r.snr_db);
        xmax = std::max(xmax, r.snr_db);
        ymin_exp = std::min(ymin_exp, std::log10(v));
        ymax_exp = std::max(ymax_exp, std::log10(v));
    }
    ymin_exp = std::floor(ymin_exp);
    ymax_exp = std::ceil(ymax_exp);
    if (ymax_exp <= ymin_exp) ymax_exp = ymin_exp + 1;
    if (xmax <= xmin) xmax = xmin + 1;

    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax_exp - std::log10(y)) / (ymax_exp - ymin_exp) * ph; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        os << "<text x=\"" << num(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
           << xml_escape(title) << "</text>\n";

    for (int e = static_cast<int>(ymin_exp); e <= static_cast<int>(ymax_exp); ++e) {
        const double y = py(std::pow(10.0, e));
        os << "<line x1=\"" << num(left) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left + pw) << "\" y2=\"" << num(y)
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    const int xticks = 5;
    for (int i = 0; i <= xticks; ++i) {
        const double xv = xmin + (xmax - xmin) * i / xticks;
        const double x = px(xv);
        os << "<line x1=\"" << num(x) << "\" y1=\"" << num(top) << "\" x2=\"" << num(x) << "\" y2=\"" << num(top + ph)
           << "\" stroke=\"#eee\"/>\n";
        os << "<text x=\"" << num(x) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">" << num(xv)
           << "</text>\n";
    }
    os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(H - 10) << "\" text-anchor=\"middle\">SNR (dB)</text>\n";
    os << "<text x=\"16\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << num(top + ph / 2) << ")\">" << (metric == CurveMetric::ber ? "BER" : "FER") << "</text>\n";

    std::size_t idx = 0;
    for (auto& [key, pts] : series) {
        const char* color = kPalette[idx % std::size(kPalette)];
        std::sort(pts.begin(), pts.end());
        if (!pts.empty()) {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : pts) os << num(px(x)) << ',' << num(py(y)) << ' ';
            os << "\"/>\n";
            for (const auto& [x, y] : pts)
                os << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        const double ly = top + 10 + 18.0 * static_cast<double>(idx);
        os << "<line x1=\"" << num(left + pw + 10) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(left + pw + 30)
           << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << num(left + pw + 34) << "\" y=\"" << num(ly + 4) << "\" font-size=\"10\">" << xml_escape(key)
           << "</text>\n";
        ++idx;
    }
    os << "</svg>\n";
}

void emit_curve(std::span<const ExperimentResult> results, const std::filesystem::path& csv_path,
                const std::optional<std::filesystem::path>& svg_path, CurveMetric metric) {
    {
        std::ofstream os(csv_path);
        if (!os) throw DataError("cannot write " + csv_path.string());
        write_csv(os, results);
    }
    if (!svg_path) return;
    std::ifstream is(csv_path);
    const auto rows = read_csv(is);
    std::ofstream os(*svg_path);
    if (!os) throw DataError("cannot write " + svg_path->string());
    write_svg(os, rows, metric);
}

}  // namespace cedec
