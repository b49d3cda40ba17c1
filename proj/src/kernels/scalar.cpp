#include "mees/kernels.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace mees::kernels {

namespace {

double weighted_abs2(const cplx* c, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double re = c[k].real();
    const double im = c[k].imag();
    acc += w[k] * (re * re + im * im);
  }
  return acc;
}

double norm_sq(const cplx* c, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double re = c[k].real();
    const double im = c[k].imag();
    acc += re * re + im * im;
  }
  return acc;
}

void abs2(const cplx* c, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double re = c[k].real();
    const double im = c[k].imag();
    out[k] = re * re + im * im;
  }
}

void schmidt_expense(const SchmidtBlock& in, const SchmidtExpense& out) {
  const std::size_t m = in.levels;
  std::vector<double> gamma(m);
  for (std::size_t s = 0; s < in.count; ++s) {
    const double* lam = in.lambda + s;
    const double l0 = lam[0];
    // gamma_k = lambda_0 + sum_{i>k} lambda_i
    double tail = 0.0;
    for (std::size_t k = m; k-- > 1;) {
      gamma[k] = l0 + tail;
      tail += lam[k * in.stride];
    }
    gamma[0] = l0 + tail;

    double se = 0.0, ge = 0.0, ga = 0.0, gb = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
      const double lk = lam[k * in.stride];
      const double t = lk * l0 / (gamma[k] * gamma[k - 1]);
      se += lk * in.e[k];
      ge += t * in.e[k];
      ga += t * in.a[k];
      gb += t * in.b[k];
    }
    const double rest = 1.0 - l0;
    const double e0 = in.e[0];
    if (out.stored) out.stored[s] = se - e0 * rest;
    if (out.lambda0) out.lambda0[s] = l0;
    const bool ok = l0 > 0.0;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (out.global) out.global[s] = ok ? se + ge - 2.0 * e0 * rest : nan;
    if (out.mssg_a) out.mssg_a[s] = ok ? se + ga - (in.a[0] + e0) * rest : nan;
    if (out.mssg_b) out.mssg_b[s] = ok ? se + gb - (in.b[0] + e0) * rest : nan;
  }
}

std::size_t bin_indices(const double* v, std::size_t n, double lo, double hi, std::int32_t bins,
                        std::int32_t* out) {
  const double scale = static_cast<double>(bins) / (hi - lo);
  std::size_t clamped = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = v[k];
    if (x < lo || x > hi) ++clamped;
    double t = std::floor((x - lo) * scale);
    if (t < 0.0) t = 0.0;
    if (t > bins - 1) t = bins - 1;
    out[k] = static_cast<std::int32_t>(t);
  }
  return clamped;
}

}  // namespace

const Table& scalar() {
  static const Table table{"scalar", weighted_abs2, norm_sq, abs2, schmidt_expense, bin_indices};
  return table;
}

}  // namespace mees::kernels
