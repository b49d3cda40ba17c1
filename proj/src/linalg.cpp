#include "mees/linalg.hpp"

#include "mees/error.hpp"

namespace mees {

UnitarityReport verify_unitary(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "verify_unitary needs a square matrix");
  }
  const auto n = u.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  UnitarityReport report;
  report.left_deviation = (u.adjoint() * u - id).cwiseAbs().maxCoeff();
  report.right_deviation = (u * u.adjoint() - id).cwiseAbs().maxCoeff();
  return report;
}

double hermiticity_deviation(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "hermiticity check needs a square matrix");
  }
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double fidelity(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "state dimensions differ");
  }
  return std::norm(a.dot(b));
}

}  // namespace mees
