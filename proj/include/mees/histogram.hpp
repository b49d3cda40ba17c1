#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mees {

/// Count grid over normalized coordinates. Cells are half-open [lo, hi) with
/// the top edge folded into the last cell; x_norm / y_norm record the constants
/// the raw quantities were divided by.
class Histogram2D {
 public:
  Histogram2D() = default;
  Histogram2D(int bins_x, int bins_y, double x_norm, double y_norm, double x_lo = 0.0, double x_hi = 1.0,
              double y_lo = 0.0, double y_hi = 1.0);

  int bins_x() const { return bins_x_; }
  int bins_y() const { return bins_y_; }
  double x_norm() const { return x_norm_; }
  double y_norm() const { return y_norm_; }
  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }
  double y_lo() const { return y_lo_; }
  double y_hi() const { return y_hi_; }

  double center_x(int ix) const { return x_lo_ + (ix + 0.5) * (x_hi_ - x_lo_) / bins_x_; }
  double center_y(int iy) const { return y_lo_ + (iy + 0.5) * (y_hi_ - y_lo_) / bins_y_; }

  void add(int ix, int iy, std::uint64_t n = 1) { counts_[cell(ix, iy)] += n; }
  std::uint64_t count(int ix, int iy) const { return counts_[cell(ix, iy)]; }
  /// Row-major over x: counts()[ix * bins_y + iy].
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::uint64_t total() const;

  bool same_geometry(const Histogram2D& other) const;
  /// Elementwise addition; DimensionMismatch unless the geometry agrees.
  void merge(const Histogram2D& other);

  bool operator==(const Histogram2D& other) const = default;

 private:
  int bins_x_ = 0;
  int bins_y_ = 0;
  double x_norm_ = 1.0;
  double y_norm_ = 1.0;
  double x_lo_ = 0.0;
  double x_hi_ = 1.0;
  double y_lo_ = 0.0;
  double y_hi_ = 1.0;
  std::vector<std::uint64_t> counts_;

  std::size_t cell(int ix, int iy) const {
    return static_cast<std::size_t>(ix) * static_cast<std::size_t>(bins_y_) + static_cast<std::size_t>(iy);
  }
};

}  // namespace mees
