#ifndef ORBIT_INTEGRA_TOOLS_SVG_HPP
#define ORBIT_INTEGRA_TOOLS_SVG_HPP

#include <string>
#include <utility>
#include <vector>

namespace orbit_integra::tools {

/// Level points against the unit circle, complex plane view.
std::string scatter_svg(const std::vector<std::pair<double, double>>& points, const std::vector<std::size_t>& classes,
                        const std::string& title);

/// Polyline of (x, y) samples with labelled axes.
std::string line_svg(const std::vector<std::pair<double, double>>& samples, const std::string& title,
                     const std::string& x_label, const std::string& y_label);

}  // namespace orbit_integra::tools

#endif
