#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace orbit_integra::tools {

namespace {

constexpr double kSize = 480;
constexpr double kMargin = 48;

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

std::string header(const std::string& title)
{
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kSize) + "\" height=\"" + num(kSize) +
           "\" viewBox=\"0 0 " + num(kSize) + " " + num(kSize) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
           "<text x=\"" + num(kSize / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           title + "</text>\n";
}

const char* palette(std::size_t k)
{
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    return colors[k % 8];
}

}  // namespace

std::string scatter_svg(const std::vector<std::pair<double, double>>& points, const std::vector<std::size_t>& classes,
                        const std::string& title)
{
    double radius = 1;
    for (const auto& [x, y] : points) radius = std::max({radius, std::abs(x), std::abs(y)});
    radius *= 1.1;
    const double scale = (kSize - 2 * kMargin) / (2 * radius);
    const double cx = kSize / 2, cy = kSize / 2;
    std::string out = header(title);
    out += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(cy) + "\" x2=\"" + num(kSize - kMargin) + "\" y2=\"" + num(cy) +
           "\" stroke=\"#bbb\"/>\n";
    out += "<line x1=\"" + num(cx) + "\" y1=\"" + num(kMargin) + "\" x2=\"" + num(cx) + "\" y2=\"" + num(kSize - kMargin) +
           "\" stroke=\"#bbb\"/>\n";
    out += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(scale) +
           "\" fill=\"none\" stroke=\"#444\" stroke-dasharray=\"4 3\"/>\n";
    const double dot = points.size() > 512 ? 1.2 : 2.5;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::size_t k = i < classes.size() ? classes[i] : 0;
        out += "<circle cx=\"" + num(cx + points[i].first * scale) + "\" cy=\"" + num(cy - points[i].second * scale) +
               "\" r=\"" + num(dot) + "\" fill=\"" + palette(k) + "\"/>\n";
    }
    return out + "</svg>\n";
}

std::string line_svg(const std::vector<std::pair<double, double>>& samples, const std::string& title,
                     const std::string& x_label, const std::string& y_label)
{
    std::string out = header(title);
    if (samples.empty()) return out + "</svg>\n";
    double x0 = samples.front().first, x1 = x0, y0 = 0, y1 = samples.front().second;
    for (const auto& [x, y] : samples) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    const double w = kSize - 2 * kMargin;
    auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * w; };
    auto py = [&](double y) { return kSize - kMargin - (y - y0) / (y1 - y0) * w; };
    out += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kSize - kMargin) + "\" x2=\"" + num(kSize - kMargin) +
           "\" y2=\"" + num(kSize - kMargin) + "\" stroke=\"#444\"/>\n";
    out += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kMargin) + "\" x2=\"" + num(kMargin) + "\" y2=\"" +
           num(kSize - kMargin) + "\" stroke=\"#444\"/>\n";
    out += "<text x=\"" + num(kSize / 2) + "\" y=\"" + num(kSize - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + x_label + "</text>\n";
    out += "<text x=\"14\" y=\"" + num(kSize / 2) + "\" transform=\"rotate(-90 14 " + num(kSize / 2) +
           ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + y_label + "</text>\n";
    out += "<text x=\"" + num(kMargin - 4) + "\" y=\"" + num(kMargin + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + num(y1) + "</text>\n";
    out += "<text x=\"" + num(kMargin - 4) + "\" y=\"" + num(kSize - kMargin) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + num(y0) + "</text>\n";
    std::string path;
    for (const auto& [x, y] : samples) path += num(px(x)) + "," + num(py(y)) + " ";
    out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"" + path + "\"/>\n";
    for (const auto& [x, y] : samples)
        out += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    return out + "</svg>\n";
}

}  // namespace orbit_integra::tools
