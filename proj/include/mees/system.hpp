#pragma once

#include "mees/linalg.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mees {

/// Sorted (nondecreasing) local energy levels, at least two of them.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> levels);

  std::span<const double> levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  double operator[](std::size_t k) const { return levels_[k]; }
  double ground() const { return levels_.front(); }
  double top() const { return levels_.back(); }

 private:
  std::vector<double> levels_;
};

/// Two noninteracting subsystems A and B with N_A <= N_B. Product-basis ket
/// |A_i B_j> lives at index i * N_B + j.
class BipartiteSystem {
 public:
  /// Orders the pair so that the shorter spectrum becomes A; `swapped()`
  /// records whether that happened.
  BipartiteSystem(Spectrum first, Spectrum second);

  const Spectrum& a() const { return a_; }
  const Spectrum& b() const { return b_; }
  std::size_t na() const { return a_.size(); }
  std::size_t nb() const { return b_.size(); }
  std::size_t ns() const { return a_.size() * b_.size(); }
  bool swapped() const { return swapped_; }

  std::size_t index(std::size_t i, std::size_t j) const { return i * nb() + j; }
  /// Index of the diagonal ket |E_i> = |A_i B_i>.
  std::size_t diagonal_index(std::size_t i) const { return i * nb() + i; }

  /// E_i = A_i + B_i for i < N_A.
  std::span<const double> diagonal_energies() const { return diag_; }
  /// A_i + B_j for every product ket, in product-basis order.
  std::span<const double> product_energies() const { return product_; }

  double ground_energy() const { return diag_.front(); }
  double max_energy() const { return a_.top() + b_.top(); }
  /// min(A_1 - A_0, B_1 - B_0)
  double min_local_gap() const;

  ComplexMatrix h0() const;

  /// Copy with A_0 = B_0 = 0. Offsets accumulate so the original frame can be
  /// recovered: original A_i = shifted A_i + offset_a().
  BipartiteSystem shifted() const;
  double offset_a() const { return offset_a_; }
  double offset_b() const { return offset_b_; }

 private:
  Spectrum a_;
  Spectrum b_;
  bool swapped_ = false;
  double offset_a_ = 0.0;
  double offset_b_ = 0.0;
  std::vector<double> diag_;
  std::vector<double> product_;

  void derive();
};

BipartiteSystem build_system(Spectrum first, Spectrum second);

}  // namespace mees
