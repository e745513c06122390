#pragma once

#include <string>

#include "posesync/dtw.hpp"

namespace posesync::plot {

inline constexpr double kPlotSize = 480.0;
inline constexpr double kMargin = 56.0;

/// Maps path indices to SVG user units: reference index along x, test index
/// along y (growing upward).
struct PlotGeometry {
  std::size_t n_ref = 1;
  std::size_t n_test = 1;

  double x(double ref) const;
  double y(double test) const;
  double ref_at(double x) const;
  double test_at(double y) const;
};

PlotGeometry geometry_for(const WarpingPath& path);

/// Self-contained SVG of the warping path over the (ref, test) grid. All
/// coordinates are written with six decimals.
std::string render_path_svg(const AlignmentResult& result);

/// "step,ref,test,cost,cumulative" rows; the cost columns are omitted when
/// the alignment carries no step costs.
std::string cost_profile_csv(const AlignmentResult& result);

}  // namespace posesync::plot
