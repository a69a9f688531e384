#pragma once

#include <map>
#include <string>
#include <vector>

#include "geomod/modgroup.hpp"
#include "geomod/qseries.hpp"

namespace geomod {

enum class FormKind { HolomorphicCusp, Eisenstein, AntiholomorphicCusp };

std::string form_kind_name(FormKind k);
FormKind form_kind_from_name(const std::string& name);

/// A weight-2 form packaged as a 1-form letter: truncated q-expansion plus
/// the filtration bidegree its kind dictates.  Antiholomorphic letters store
/// the conjugated coefficients and sum their series in conj(q).
struct FormLetter {
  std::string label;
  FormKind kind = FormKind::Eisenstein;
  std::string group;
  QSeries series;
  int hodge_p = 1;
  int log_weight_l = 0;

  bool extends_to_compactification() const { return log_weight_l == 0; }
};

Complex evaluate_form(const FormLetter& w, Complex z, double tol);

/// Pullback of the letter's 1-form along t -> z(t): the normalization is
/// 2*pi*i f(z) dz, so holomorphic letters give 2*pi*i f(z(t)) z'(t) and
/// antiholomorphic letters the conjugate-linear analogue.
Complex pullback_integrand(const FormLetter& w, Complex z, Complex zdot, double tol);

FormLetter conjugate_letter(const FormLetter& w, const std::string& label);

class FormBank {
 public:
  static const FormBank& builtin(const GroupPreset& preset);

  const FormLetter& letter(const std::string& label) const;
  bool has(const std::string& label) const;
  void add(FormLetter w);
  std::vector<FormLetter> alphabet(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels() const;

 private:
  std::map<std::string, FormLetter> letters_;
};

// --- exact expansion generators ---

/// Coefficients of eta(z)^2 eta(11z)^2 up to q^{n-1} (a_0 = 0, a_1 = 1, ...).
std::vector<long long> eta_product_11_coeffs(std::size_t n);

/// -(E_2(z) - 11 E_2(11z)) / 10, normalized to constant term 1.
QSeries eisenstein_weight2_11(std::size_t n);

struct Gamma2Series {
  QSeries lambda;    // modular lambda in powers of exp(pi i z)
  QSeries omega0;    // (lambda'/lambda) / (2 pi i)
  QSeries omega1;    // (lambda'/(lambda-1)) / (2 pi i)
  QSeries dlambda;   // lambda' / (2 pi i)
};
const Gamma2Series& gamma2_series();

/// theta_4(q)^4 / 2; equals omega0's expansion by the classical identity,
/// kept as an independent route for cross-checks.
QSeries theta4_fourth_over_2(std::size_t n);

/// The exact letter dlambda = lambda * omega0, with potential lambda.
FormLetter dlambda_letter();

Complex lambda_value(Complex z, double tol);

/// Truncated infinite-product evaluation of eta(z)^2 eta(11z)^2, independent
/// of the q-expansion route.
Complex eta_product_11_direct(Complex z, int nfactors = 64);

}  // namespace geomod
