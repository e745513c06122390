#include "posesync/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "posesync/error.hpp"

namespace posesync {

CostMatrix::CostMatrix(std::size_t n_ref, std::size_t n_test, std::vector<double> cells)
    : n_ref_(n_ref), n_test_(n_test), cells_(std::move(cells)) {
  if (n_ref_ == 0 || n_test_ == 0) {
    throw Error(ErrorKind::invalid_argument, "cost matrix dimensions must be positive");
  }
  if (cells_.size() != n_ref_ * n_test_) {
    throw Error(ErrorKind::invalid_argument, "cost matrix cell count does not match dimensions");
  }
  for (double c : cells_) {
    if (!std::isfinite(c) || c < 0.0) {
      throw Error(ErrorKind::invalid_argument, "cost matrix cells must be finite and >= 0");
    }
  }
}

CostMatrix CostMatrix::transposed() const {
  std::vector<double> out(cells_.size());
  for (std::size_t i = 0; i < n_ref_; ++i) {
    for (std::size_t j = 0; j < n_test_; ++j) out[j * n_ref_ + i] = (*this)(i, j);
  }
  return CostMatrix(n_test_, n_ref_, std::move(out));
}

CostMatrix CostMatrix::absolute_difference(const std::vector<double>& ref,
                                           const std::vector<double>& test) {
  std::vector<double> cells;
  cells.reserve(ref.size() * test.size());
  for (double r : ref) {
    for (double t : test) cells.push_back(std::abs(r - t));
  }
  return CostMatrix(ref.size(), test.size(), std::move(cells));
}

CostMatrix build_cost_matrix(const PoseSequence& ref, const PoseSequence& test,
                             const MetricConfig& config, const BuildOptions& options) {
  if (ref.frames.empty() || test.frames.empty()) {
    throw Error(ErrorKind::invalid_argument, "cannot align an empty sequence");
  }
  config.validate();
  const std::size_t n = ref.size();
  const std::size_t m = test.size();

  // Angle vectors depend on one frame only, so evaluate them once per frame.
  std::vector<JointAngleVector> ref_angles, test_angles;
  if (config.kind == MetricKind::angle_mae) {
    for (const auto& f : ref.frames) {
      ref_angles.push_back(frame_angles(f, config.joint_set, config.confidence_threshold));
    }
    for (const auto& f : test.frames) {
      test_angles.push_back(frame_angles(f, config.joint_set, config.confidence_threshold));
    }
  }

  constexpr double kUnset = -1.0;
  std::vector<double> cells(n * m, kUnset);
  auto fill_rows = [&](std::size_t row_begin, std::size_t row_end) {
    for (std::size_t i = row_begin; i < row_end; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        try {
          cells[i * m + j] =
              config.kind == MetricKind::angle_mae
                  ? angle_mae(ref_angles[i], test_angles[j], config.joint_set.weights())
                  : keypoint_mae(ref.frames[i], test.frames[j], config);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::incomparable) throw;
        }
      }
    }
  };

  const unsigned workers = std::clamp<unsigned>(options.threads, 1, static_cast<unsigned>(n));
  if (workers == 1) {
    fill_rows(0, n);
  } else {
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          fill_rows(n * w / workers, n * (w + 1) / workers);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  double max_comparable = kUnset;
  for (double c : cells) max_comparable = std::max(max_comparable, c);
  if (max_comparable == kUnset) {
    throw Error(ErrorKind::incomparable, "no reference/test frame pair is comparable");
  }
  const double fill = max_comparable + metric_range_unit(config);
  std::replace(cells.begin(), cells.end(), kUnset, fill);
  return CostMatrix(n, m, std::move(cells));
}

AlignmentResult dtw_align(const CostMatrix& cost, const DtwOptions& options) {
  const std::size_t n = cost.n_ref();
  const std::size_t m = cost.n_test();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::size_t window = std::numeric_limits<std::size_t>::max();
  if (options.band) window = std::max(*options.band, n > m ? n - m : m - n);
  auto inside = [&](std::size_t i, std::size_t j) {
    return (i > j ? i - j : j - i) <= window;
  };

  // Accumulated cost D(i, j) = cost(i, j) + min(D(i-1, j), D(i, j-1), D(i-1, j-1)).
  std::vector<double> acc(n * m, kInf);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return acc[i * m + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!inside(i, j)) continue;
      if (i == 0 && j == 0) {
        at(0, 0) = cost(0, 0);
        continue;
      }
      double best = kInf;
      if (i > 0 && j > 0) best = at(i - 1, j - 1);
      if (i > 0) best = std::min(best, at(i - 1, j));
      if (j > 0) best = std::min(best, at(i, j - 1));
      at(i, j) = cost(i, j) + best;
    }
  }

  WarpingPath path;
  path.reserve(n + m - 1);
  std::size_t i = n - 1;
  std::size_t j = m - 1;
  path.push_back({i, j});
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = at(i - 1, j - 1);
      const double vert = at(i - 1, j);
      const double horiz = at(i, j - 1);
      if (diag <= vert && diag <= horiz) {
        --i;
        --j;
      } else if (vert <= horiz) {
        --i;
      } else {
        --j;
      }
    }
    path.push_back({i, j});
  }
  std::reverse(path.begin(), path.end());

  AlignmentResult result;
  result.total_cost = at(n - 1, m - 1);
  result.step_costs.reserve(path.size());
  for (const auto& step : path) result.step_costs.push_back(cost(step.ref, step.test));
  result.normalized_cost = result.total_cost / static_cast<double>(path.size());
  result.ref_to_test = extract_mapping(path);
  result.path = std::move(path);
  return result;
}

std::vector<RefMatch> extract_mapping(const WarpingPath& path) {
  std::vector<RefMatch> out;
  for (const auto& step : path) {
    if (out.empty() || out.back().ref != step.ref) out.push_back({step.ref, {}, 0});
    out.back().test.push_back(step.test);
  }
  for (auto& match : out) match.representative = match.test[(match.test.size() - 1) / 2];
  return out;
}

std::vector<std::string> path_violations(const WarpingPath& path, std::size_t n_ref,
                                         std::size_t n_test) {
  std::vector<std::string> out;
  if (path.empty()) {
    out.emplace_back("path is empty");
    return out;
  }
  if (path.front() != PathStep{0, 0}) out.emplace_back("path does not start at (0, 0)");
  if (path.back() != PathStep{n_ref - 1, n_test - 1}) {
    out.emplace_back("path does not end at (n_ref - 1, n_test - 1)");
  }
  std::vector<bool> ref_seen(n_ref, false), test_seen(n_test, false);
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto& s = path[k];
    if (s.ref >= n_ref || s.test >= n_test) {
      out.push_back("step " + std::to_string(k) + " is outside the cost matrix");
      continue;
    }
    ref_seen[s.ref] = true;
    test_seen[s.test] = true;
    if (k == 0) continue;
    const auto& prev = path[k - 1];
    if (s.ref < prev.ref || s.test < prev.test) {
      out.push_back("step " + std::to_string(k) + " is not monotone");
    } else if (s.ref - prev.ref > 1 || s.test - prev.test > 1) {
      out.push_back("step " + std::to_string(k) + " skips an index");
    } else if (s == prev) {
      out.push_back("step " + std::to_string(k) + " repeats a pair");
    }
  }
  if (std::find(ref_seen.begin(), ref_seen.end(), false) != ref_seen.end()) {
    out.emplace_back("some reference index is never matched");
  }
  if (std::find(test_seen.begin(), test_seen.end(), false) != test_seen.end()) {
    out.emplace_back("some test index is never matched");
  }
  return out;
}

double path_cost(const CostMatrix& cost, const WarpingPath& path) {
  double total = 0.0;
  for (const auto& step : path) total += cost(step.ref, step.test);
  return total;
}

}  // namespace posesync
