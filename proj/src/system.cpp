#include "mees/system.hpp"

#include "mees/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace mees {

Spectrum::Spectrum(std::vector<double> levels) : levels_(std::move(levels)) {
  if (levels_.size() < 2) {
    throw Error(ErrorCode::EmptySpectrum, "a spectrum needs at least two levels, got " + std::to_string(levels_.size()));
  }
  for (double x : levels_) {
    if (!std::isfinite(x)) throw Error(ErrorCode::UnsortedSpectrum, "spectrum contains a non-finite level");
  }
  if (!std::is_sorted(levels_.begin(), levels_.end())) {
    throw Error(ErrorCode::UnsortedSpectrum, "levels must be nondecreasing");
  }
}

BipartiteSystem::BipartiteSystem(Spectrum first, Spectrum second)
    : a_(std::move(first)), b_(std::move(second)) {
  if (a_.size() > b_.size()) {
    std::swap(a_, b_);
    swapped_ = true;
  }
  if (!(a_[1] > a_[0])) throw Error(ErrorCode::DegenerateGround, "A_1 must exceed A_0");
  if (!(b_[1] > b_[0])) throw Error(ErrorCode::DegenerateGround, "B_1 must exceed B_0");
  derive();
}

void BipartiteSystem::derive() {
  diag_.resize(na());
  for (std::size_t i = 0; i < na(); ++i) diag_[i] = a_[i] + b_[i];
  product_.resize(ns());
  for (std::size_t i = 0; i < na(); ++i)
    for (std::size_t j = 0; j < nb(); ++j) product_[index(i, j)] = a_[i] + b_[j];
}

double BipartiteSystem::min_local_gap() const { return std::min(a_[1] - a_[0], b_[1] - b_[0]); }

ComplexMatrix BipartiteSystem::h0() const {
  ComplexMatrix h = ComplexMatrix::Zero(ns(), ns());
  for (std::size_t k = 0; k < ns(); ++k) h(k, k) = product_[k];
  return h;
}

BipartiteSystem BipartiteSystem::shifted() const {
  std::vector<double> la(a_.levels().begin(), a_.levels().end());
  std::vector<double> lb(b_.levels().begin(), b_.levels().end());
  const double da = la.front();
  const double db = lb.front();
  for (double& x : la) x -= da;
  for (double& x : lb) x -= db;
  BipartiteSystem out(Spectrum(std::move(la)), Spectrum(std::move(lb)));
  // Equal lengths never reorder, so the roles are unchanged.
  out.swapped_ = swapped_;
  out.offset_a_ = offset_a_ + da;
  out.offset_b_ = offset_b_ + db;
  return out;
}

BipartiteSystem build_system(Spectrum first, Spectrum second) {
  return BipartiteSystem(std::move(first), std::move(second));
}

}  // namespace mees
