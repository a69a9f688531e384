#include "geomod/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace geomod {

void QSeries::fit_tail(double p, double rho) {
  tail.p = p;
  tail.rho = rho;
  double c = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    double env = std::pow(n + 1.0, p) * std::exp(rho * std::sqrt(static_cast<double>(n)));
    c = std::max(c, std::abs(coeffs[n]) / env);
  }
  tail.c = c;
}

double qseries_tail_bound(const QSeries& s, double abs_q, std::size_t from_n) {
  if (abs_q >= 1.0) return std::numeric_limits<double>::infinity();
  const TailModel& m = s.tail;
  auto term = [&](double n) {
    return m.c * std::pow(n + 1.0, m.p) * std::exp(m.rho * std::sqrt(n) + n * std::log(abs_q));
  };
  // walk terms until the one-step ratio falls below 1, then close with a
  // geometric tail
  double total = 0.0;
  double n = static_cast<double>(from_n);
  for (int it = 0; it < 200000; ++it) {
    double t = term(n);
    double ratio = term(n + 1.0) / (t > 0 ? t : 1.0);
    if (ratio < 0.999) {
      total += t / (1.0 - ratio);
      return total;
    }
    total += t;
    n += 1.0;
    if (total > 1e300) return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

Complex evaluate_qseries(const QSeries& s, Complex q, double tol) {
  double aq = std::abs(q);
  double bound = qseries_tail_bound(s, aq, s.coeffs.size());
  if (!(bound < tol)) {
    // estimate the truncation length that would certify tol
    std::size_t n = s.coeffs.size();
    while (n < (1u << 24) && !(qseries_tail_bound(s, aq, n) < tol)) n *= 2;
    throw InsufficientPrecisionError(
        "q-expansion too short for requested tolerance (tail bound " + std::to_string(bound) + ")",
        n);
  }
  Complex acc = 0.0;
  for (auto it = s.coeffs.rbegin(); it != s.coeffs.rend(); ++it) acc = acc * q + *it;
  return acc;
}

}  // namespace geomod
