#include "mees/histogram.hpp"

#include "mees/error.hpp"

#include <numeric>

namespace mees {

Histogram2D::Histogram2D(int bins_x, int bins_y, double x_norm, double y_norm, double x_lo, double x_hi, double y_lo,
                         double y_hi)
    : bins_x_(bins_x), bins_y_(bins_y), x_norm_(x_norm), y_norm_(y_norm), x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo),
      y_hi_(y_hi) {
  if (bins_x < 1 || bins_y < 1) throw Error(ErrorCode::InvalidConfig, "histogram needs at least one bin per axis");
  if (!(x_hi > x_lo && y_hi > y_lo)) throw Error(ErrorCode::InvalidConfig, "empty histogram range");
  counts_.assign(static_cast<std::size_t>(bins_x) * static_cast<std::size_t>(bins_y), 0);
}

std::uint64_t Histogram2D::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

bool Histogram2D::same_geometry(const Histogram2D& o) const {
  return bins_x_ == o.bins_x_ && bins_y_ == o.bins_y_ && x_norm_ == o.x_norm_ && y_norm_ == o.y_norm_ &&
         x_lo_ == o.x_lo_ && x_hi_ == o.x_hi_ && y_lo_ == o.y_lo_ && y_hi_ == o.y_hi_;
}

void Histogram2D::merge(const Histogram2D& other) {
  if (!same_geometry(other)) throw Error(ErrorCode::DimensionMismatch, "histogram geometry differs");
  for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
}

}  // namespace mees
