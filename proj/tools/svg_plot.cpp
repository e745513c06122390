#include "svg_plot.hpp"

#include <algorithm>
#include <cstdio>

namespace posesync::plot {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double span_of(std::size_t n) { return static_cast<double>(std::max<std::size_t>(n, 2) - 1); }

}  // namespace

double PlotGeometry::x(double ref) const { return kMargin + ref * kPlotSize / span_of(n_ref); }
double PlotGeometry::y(double test) const {
  return kMargin + kPlotSize - test * kPlotSize / span_of(n_test);
}
double PlotGeometry::ref_at(double px) const { return (px - kMargin) * span_of(n_ref) / kPlotSize; }
double PlotGeometry::test_at(double py) const {
  return (kMargin + kPlotSize - py) * span_of(n_test) / kPlotSize;
}

PlotGeometry geometry_for(const WarpingPath& path) {
  if (path.empty()) return {};
  return {path.back().ref + 1, path.back().test + 1};
}

std::string render_path_svg(const AlignmentResult& result) {
  const PlotGeometry g = geometry_for(result.path);
  const double size = kPlotSize + 2.0 * kMargin;
  const std::string s = fixed6(size);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + s + "\" height=\"" + s +
         "\" viewBox=\"0 0 " + s + " " + s + "\">\n";
  out += "  <title>DTW warping path (" + std::to_string(g.n_ref) + " x " +
         std::to_string(g.n_test) + " frames, total cost " + fixed6(result.total_cost) +
         ")</title>\n";
  out += "  <rect x=\"" + fixed6(kMargin) + "\" y=\"" + fixed6(kMargin) + "\" width=\"" +
         fixed6(kPlotSize) + "\" height=\"" + fixed6(kPlotSize) +
         "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // Up to ten grid lines per axis.
  auto ticks = [](std::size_t n) {
    const std::size_t step = std::max<std::size_t>(1, (n + 9) / 10);
    std::vector<std::size_t> t;
    for (std::size_t k = 0; k < n; k += step) t.push_back(k);
    return t;
  };
  out += "  <g stroke=\"#dddddd\" stroke-width=\"0.5\">\n";
  for (std::size_t i : ticks(g.n_ref)) {
    out += "    <line x1=\"" + fixed6(g.x(i)) + "\" y1=\"" + fixed6(kMargin) + "\" x2=\"" +
           fixed6(g.x(i)) + "\" y2=\"" + fixed6(kMargin + kPlotSize) + "\"/>\n";
  }
  for (std::size_t j : ticks(g.n_test)) {
    out += "    <line x1=\"" + fixed6(kMargin) + "\" y1=\"" + fixed6(g.y(j)) + "\" x2=\"" +
           fixed6(kMargin + kPlotSize) + "\" y2=\"" + fixed6(g.y(j)) + "\"/>\n";
  }
  out += "  </g>\n";
  out += "  <g font-family=\"sans-serif\" font-size=\"10\" fill=\"black\">\n";
  for (std::size_t i : ticks(g.n_ref)) {
    out += "    <text x=\"" + fixed6(g.x(i)) + "\" y=\"" + fixed6(kMargin + kPlotSize + 14.0) +
           "\" text-anchor=\"middle\">" + std::to_string(i) + "</text>\n";
  }
  for (std::size_t j : ticks(g.n_test)) {
    out += "    <text x=\"" + fixed6(kMargin - 6.0) + "\" y=\"" + fixed6(g.y(j) + 3.0) +
           "\" text-anchor=\"end\">" + std::to_string(j) + "</text>\n";
  }
  out += "    <text x=\"" + fixed6(kMargin + kPlotSize / 2.0) + "\" y=\"" +
         fixed6(size - 12.0) + "\" text-anchor=\"middle\">reference frame</text>\n";
  out += "    <text x=\"14.000000\" y=\"" + fixed6(kMargin + kPlotSize / 2.0) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 14.000000 " +
         fixed6(kMargin + kPlotSize / 2.0) + ")\">test frame</text>\n";
  out += "  </g>\n";

  out += "  <polyline id=\"warping-path\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < result.path.size(); ++k) {
    if (k > 0) out += ' ';
    out += fixed6(g.x(static_cast<double>(result.path[k].ref))) + "," +
           fixed6(g.y(static_cast<double>(result.path[k].test)));
  }
  out += "\"/>\n";
  out += "</svg>\n";
  return out;
}

std::string cost_profile_csv(const AlignmentResult& result) {
  const bool with_costs = result.step_costs.size() == result.path.size();
  std::string out = with_costs ? "step,ref,test,cost,cumulative\n" : "step,ref,test\n";
  double cumulative = 0.0;
  for (std::size_t k = 0; k < result.path.size(); ++k) {
    out += std::to_string(k) + "," + std::to_string(result.path[k].ref) + "," +
           std::to_string(result.path[k].test);
    if (with_costs) {
      cumulative += result.step_costs[k];
      out += "," + fixed6(result.step_costs[k]) + "," + fixed6(cumulative);
    }
    out += "\n";
  }
  return out;
}

}  // namespace posesync::plot
