// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be reached through kernels::avx2(), which checks the CPU first.

#include "mees/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>
#include <vector>

namespace mees::kernels {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double weighted_abs2(const cplx* c, const double* w, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d z = _mm256_loadu_pd(p + 2 * k);  // re0 im0 re1 im1
    const __m128d w2 = _mm_loadu_pd(w + k);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0x50);  // w0 w0 w1 w1
    acc = _mm256_fmadd_pd(_mm256_mul_pd(z, z), ww, acc);
  }
  double total = hsum(acc);
  for (; k < n; ++k) {
    const double re = c[k].real();
    const double im = c[k].imag();
    total += w[k] * (re * re + im * im);
  }
  return total;
}

double norm_sq(const cplx* c, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d z = _mm256_loadu_pd(p + 2 * k);
    acc = _mm256_fmadd_pd(z, z, acc);
  }
  double total = hsum(acc);
  for (; k < n; ++k) {
    const double re = c[k].real();
    const double im = c[k].imag();
    total += re * re + im * im;
  }
  return total;
}

void abs2(const cplx* c, double* out, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(c);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d z0 = _mm256_loadu_pd(p + 2 * k);
    const __m256d z1 = _mm256_loadu_pd(p + 2 * k + 4);
    // hadd gives [a01 b01 a23 b23]; reorder to [a01 a23 b01 b23].
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(z0, z0), _mm256_mul_pd(z1, z1));
    _mm256_storeu_pd(out + k, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; k < n; ++k) {
    const double re = c[k].real();
    const double im = c[k].imag();
    out[k] = re * re + im * im;
  }
}

struct Lane {
  __m256d v;
};

void schmidt_expense_lanes(const SchmidtBlock& in, const SchmidtExpense& out, std::size_t s,
                           std::vector<Lane>& gamma) {
  const std::size_t m = in.levels;
  const double* lam = in.lambda + s;
  const __m256d l0 = _mm256_loadu_pd(lam);
  __m256d tail = _mm256_setzero_pd();
  for (std::size_t k = m; k-- > 1;) {
    gamma[k].v = _mm256_add_pd(l0, tail);
    tail = _mm256_add_pd(tail, _mm256_loadu_pd(lam + k * in.stride));
  }
  gamma[0].v = _mm256_add_pd(l0, tail);

  __m256d se = _mm256_setzero_pd(), ge = se, ga = se, gb = se;
  for (std::size_t k = 1; k < m; ++k) {
    const __m256d lk = _mm256_loadu_pd(lam + k * in.stride);
    const __m256d t = _mm256_div_pd(_mm256_mul_pd(lk, l0), _mm256_mul_pd(gamma[k].v, gamma[k - 1].v));
    se = _mm256_fmadd_pd(lk, _mm256_set1_pd(in.e[k]), se);
    ge = _mm256_fmadd_pd(t, _mm256_set1_pd(in.e[k]), ge);
    ga = _mm256_fmadd_pd(t, _mm256_set1_pd(in.a[k]), ga);
    gb = _mm256_fmadd_pd(t, _mm256_set1_pd(in.b[k]), gb);
  }
  const __m256d rest = _mm256_sub_pd(_mm256_set1_pd(1.0), l0);
  const __m256d e0 = _mm256_set1_pd(in.e[0]);
  const __m256d ok = _mm256_cmp_pd(l0, _mm256_setzero_pd(), _CMP_GT_OQ);
  const __m256d nan = _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());

  if (out.stored) _mm256_storeu_pd(out.stored + s, _mm256_fnmadd_pd(e0, rest, se));
  if (out.lambda0) _mm256_storeu_pd(out.lambda0 + s, l0);
  if (out.global) {
    const __m256d v = _mm256_fnmadd_pd(_mm256_add_pd(e0, e0), rest, _mm256_add_pd(se, ge));
    _mm256_storeu_pd(out.global + s, _mm256_blendv_pd(nan, v, ok));
  }
  if (out.mssg_a) {
    const __m256d off = _mm256_add_pd(_mm256_set1_pd(in.a[0]), e0);
    const __m256d v = _mm256_fnmadd_pd(off, rest, _mm256_add_pd(se, ga));
    _mm256_storeu_pd(out.mssg_a + s, _mm256_blendv_pd(nan, v, ok));
  }
  if (out.mssg_b) {
    const __m256d off = _mm256_add_pd(_mm256_set1_pd(in.b[0]), e0);
    const __m256d v = _mm256_fnmadd_pd(off, rest, _mm256_add_pd(se, gb));
    _mm256_storeu_pd(out.mssg_b + s, _mm256_blendv_pd(nan, v, ok));
  }
}

void schmidt_expense(const SchmidtBlock& in, const SchmidtExpense& out) {
  std::vector<Lane> gamma(in.levels);
  std::size_t s = 0;
  for (; s + 4 <= in.count; s += 4) schmidt_expense_lanes(in, out, s, gamma);
  if (s < in.count) {
    // Remainder through the reference path on an offset view.
    SchmidtBlock rest = in;
    rest.lambda = in.lambda + s;
    rest.count = in.count - s;
    auto shift = [s](double* p) { return p ? p + s : nullptr; };
    scalar().schmidt_expense(rest, SchmidtExpense{shift(out.stored), shift(out.lambda0), shift(out.global),
                                                  shift(out.mssg_a), shift(out.mssg_b)});
  }
}

std::size_t bin_indices(const double* v, std::size_t n, double lo, double hi, std::int32_t bins,
                        std::int32_t* out) {
  const double scale = static_cast<double>(bins) / (hi - lo);
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  const __m256d vscale = _mm256_set1_pd(scale);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d top = _mm256_set1_pd(static_cast<double>(bins - 1));
  std::size_t clamped = 0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x = _mm256_loadu_pd(v + k);
    const __m256d outside = _mm256_or_pd(_mm256_cmp_pd(x, vlo, _CMP_LT_OQ), _mm256_cmp_pd(x, vhi, _CMP_GT_OQ));
    clamped += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(outside))));
    __m256d t = _mm256_floor_pd(_mm256_mul_pd(_mm256_sub_pd(x, vlo), vscale));
    t = _mm256_min_pd(_mm256_max_pd(t, zero), top);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out + k), _mm256_cvttpd_epi32(t));
  }
  if (k < n) clamped += scalar().bin_indices(v + k, n - k, lo, hi, bins, out + k);
  return clamped;
}

}  // namespace

const Table& avx2_table() {
  static const Table table{"avx2", weighted_abs2, norm_sq, abs2, schmidt_expense, bin_indices};
  return table;
}

}  // namespace mees::kernels
