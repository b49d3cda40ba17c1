#pragma once

#include <Eigen/Dense>

#include <complex>

namespace mees {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major so that rows can be handed to the
/// flat kernels as contiguous spans.
using ComplexMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct UnitarityReport {
  double left_deviation = 0.0;   // max |(U^dagger U - I)_ij|
  double right_deviation = 0.0;  // max |(U U^dagger - I)_ij|

  double max_deviation() const { return left_deviation > right_deviation ? left_deviation : right_deviation; }
};

UnitarityReport verify_unitary(const ComplexMatrix& u);

/// max |(H - H^dagger)_ij|
double hermiticity_deviation(const ComplexMatrix& h);

/// max_ij |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// |<a|b>|^2, insensitive to global phase.
double fidelity(const ComplexVector& a, const ComplexVector& b);

}  // namespace mees
