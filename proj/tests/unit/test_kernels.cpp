#include "mees/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace mees::kernels;

namespace {

bool near(double a, double b, double tol = 1e-12) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& z : v) {
    const double re = g(rng);
    z = cplx(re, g(rng));
  }
  return v;
}

// Lengths chosen to hit the 4-wide body, the remainder and the empty case.
const std::size_t kLengths[] = {0, 1, 3, 4, 5, 12, 17, 64, 1001};

}  // namespace

TEST_CASE("active table is one of the compiled variants") {
  const Table& t = active();
  CHECK((&t == &scalar() || &t == avx2()));
}

TEST_CASE("scalar reference values") {
  const std::vector<cplx> c{{1, 2}, {0, -1}, {3, 0}};
  const std::vector<double> w{1, 10, 100};
  CHECK(scalar().norm_sq(c.data(), 3) == 15.0);
  CHECK(scalar().weighted_abs2(c.data(), w.data(), 3) == 5.0 + 10.0 + 900.0);
  std::vector<double> out(3);
  scalar().abs2(c.data(), out.data(), 3);
  CHECK(out == std::vector<double>{5, 1, 9});

  const std::vector<double> v{-0.1, 0.0, 0.25, 0.5, 0.999, 1.0, 1.5};
  std::vector<std::int32_t> idx(v.size());
  CHECK(scalar().bin_indices(v.data(), v.size(), 0.0, 1.0, 4, idx.data()) == 2);
  CHECK(idx == std::vector<std::int32_t>{0, 0, 1, 2, 3, 3, 3});
}

TEST_CASE("scalar Schmidt expense on a two-level block") {
  // lambda = (0.6, 0.4): gamma_1 = 0.6, t_1 = 0.4 * 0.6 / 0.6 = 0.4.
  const double lambda[] = {0.6, 0.4};
  const double e[] = {0.0, 3.0}, a[] = {0.0, 2.0}, b[] = {0.0, 1.0};
  SchmidtBlock in{lambda, 1, 1, 2, e, a, b};
  double stored, l0, g, ma, mb;
  scalar().schmidt_expense(in, {&stored, &l0, &g, &ma, &mb});
  CHECK(stored == doctest::Approx(1.2));
  CHECK(l0 == 0.6);
  CHECK(g == doctest::Approx(1.2 + 0.4 * 3.0));
  CHECK(ma == doctest::Approx(1.2 + 0.4 * 2.0));
  CHECK(mb == doctest::Approx(1.2 + 0.4 * 1.0));
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const Table* v = avx2();
  if (!v) {
    MESSAGE("AVX2 variant unavailable; nothing to compare");
    return;
  }
  const Table& s = scalar();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-2.0, 12.0);
  for (std::size_t n : kLengths) {
    CAPTURE(n);
    const auto c = random_complex(n, rng);
    std::vector<double> w(n);
    for (double& x : w) x = u(rng);
    CHECK(near(v->norm_sq(c.data(), n), s.norm_sq(c.data(), n)));
    CHECK(near(v->weighted_abs2(c.data(), w.data(), n), s.weighted_abs2(c.data(), w.data(), n), 1e-11));
    std::vector<double> o1(n), o2(n);
    v->abs2(c.data(), o1.data(), n);
    s.abs2(c.data(), o2.data(), n);
    for (std::size_t k = 0; k < n; ++k) CHECK(near(o1[k], o2[k]));

    std::uniform_real_distribution<double> x(-0.2, 1.2);
    std::vector<double> vals(n);
    for (double& t : vals) t = x(rng);
    if (n > 2) {
      vals[0] = 1.0;
      vals[1] = 0.0;
    }
    std::vector<std::int32_t> i1(n), i2(n);
    const std::size_t c1 = v->bin_indices(vals.data(), n, 0.0, 1.0, 200, i1.data());
    const std::size_t c2 = s.bin_indices(vals.data(), n, 0.0, 1.0, 200, i2.data());
    CHECK(c1 == c2);
    CHECK(i1 == i2);
  }
}

TEST_CASE("AVX2 Schmidt expense agrees with the scalar reference") {
  const Table* v = avx2();
  if (!v) return;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t levels : {2u, 3u, 5u}) {
    for (std::size_t count : {1u, 4u, 7u, 130u}) {
      CAPTURE(levels);
      CAPTURE(count);
      std::vector<double> lam(levels * count);
      for (std::size_t s = 0; s < count; ++s) {
        double sum = 0.0;
        for (std::size_t k = 0; k < levels; ++k) sum += lam[k * count + s] = u(rng);
        for (std::size_t k = 0; k < levels; ++k) lam[k * count + s] /= sum;
      }
      lam[0] = 0.0;  // one sample with lambda_0 = 0 exercises the NaN path
      std::vector<double> e(levels), a(levels), b(levels);
      for (std::size_t k = 0; k < levels; ++k) {
        a[k] = 0.3 + 2.0 * k;
        b[k] = -0.1 + 1.5 * k * k;
        e[k] = a[k] + b[k];
      }
      SchmidtBlock in{lam.data(), count, count, levels, e.data(), a.data(), b.data()};
      std::vector<double> r1(5 * count), r2(5 * count);
      auto outs = [count](std::vector<double>& r) {
        return SchmidtExpense{r.data(), r.data() + count, r.data() + 2 * count, r.data() + 3 * count,
                              r.data() + 4 * count};
      };
      v->schmidt_expense(in, outs(r1));
      scalar().schmidt_expense(in, outs(r2));
      for (std::size_t k = 0; k < r1.size(); ++k) CHECK(near(r1[k], r2[k], 1e-11));
      CHECK(std::isnan(r1[2 * count]));
    }
  }
}
