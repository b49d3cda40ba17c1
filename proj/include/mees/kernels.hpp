#pragma once

// Flat arithmetic kernels behind the hot loops (state energies, batched
// closed-form expenses, histogram binning). Every kernel has a scalar
// reference implementation; an AVX2/FMA variant is compiled in separately and
// picked at runtime when the CPU supports it. Setting MEES_KERNELS=scalar in
// the environment forces the reference path.

#include <complex>
#include <cstddef>
#include <cstdint>

namespace mees::kernels {

using cplx = std::complex<double>;

/// Structure-of-arrays block of Schmidt-form samples.
struct SchmidtBlock {
  const double* lambda = nullptr;  // lambda[k * stride + s], k < levels, s < count
  std::size_t stride = 0;
  std::size_t count = 0;
  std::size_t levels = 0;          // N_A
  const double* e = nullptr;       // diagonal energies E_k (length levels)
  const double* a = nullptr;       // A_k, k < levels
  const double* b = nullptr;       // B_k, k < levels
};

/// Per-sample closed-form outputs. Any pointer may be null to skip that output.
/// Samples with lambda_0 == 0 produce NaN in the three unitary expenses.
struct SchmidtExpense {
  double* stored = nullptr;     // <H_0> - E_0
  double* lambda0 = nullptr;
  double* global = nullptr;     // E_exp through U_S
  double* mssg_a = nullptr;     // E_exp through U~_A
  double* mssg_b = nullptr;     // E_exp through U~_B
};

struct Table {
  const char* name;

  /// sum_k w_k |c_k|^2
  double (*weighted_abs2)(const cplx* c, const double* w, std::size_t n);
  /// sum_k |c_k|^2
  double (*norm_sq)(const cplx* c, std::size_t n);
  /// out_k = |c_k|^2
  void (*abs2)(const cplx* c, double* out, std::size_t n);
  void (*schmidt_expense)(const SchmidtBlock& in, const SchmidtExpense& out);
  /// out_k = bin of v_k on [lo, hi] split into `bins` half-open cells, the top
  /// edge belonging to the last cell. Values outside are clamped into the edge
  /// cells; the number of such values is returned.
  std::size_t (*bin_indices)(const double* v, std::size_t n, double lo, double hi, std::int32_t bins,
                             std::int32_t* out);
};

const Table& scalar();

/// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const Table* avx2();

/// The table used by the library: AVX2 if available, unless overridden.
const Table& active();

}  // namespace mees::kernels
