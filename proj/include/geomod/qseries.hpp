#pragma once

#include <vector>

#include "geomod/common.hpp"

namespace geomod {

/// Coefficient growth model used to certify truncation tails:
/// |a_n| <= c * (n+1)^p * exp(rho * sqrt(n)).
struct TailModel {
  double c = 0.0;
  double p = 2.0;
  double rho = 0.0;
};

/// Truncated expansion sum a_n q^n with q = exp(2*pi*i*step*z).
struct QSeries {
  double step = 1.0;
  std::vector<Complex> coeffs;
  TailModel tail;

  /// Fit the model constant c from the stored coefficients for given (p, rho).
  void fit_tail(double p, double rho);
};

/// Upper bound on sum_{n >= from_n} |a_n| |q|^n under the tail model.
/// Returns +inf when the model cannot certify (|q| too close to 1).
double qseries_tail_bound(const QSeries& s, double abs_q, std::size_t from_n);

/// Evaluate the truncated sum, certifying that the dropped tail is < tol.
/// Throws InsufficientPrecisionError otherwise (carrying an N that would do).
Complex evaluate_qseries(const QSeries& s, Complex q, double tol);

}  // namespace geomod
