#include "geomod/formbank.hpp"

#include <algorithm>
#include <cmath>

namespace geomod {

namespace {

constexpr std::size_t kTrunc11 = 2048;
constexpr std::size_t kTrunc2 = 1024;

using BigVec = std::vector<BigInt>;

BigVec big_mul(const BigVec& a, const BigVec& b, std::size_t n) {
  BigVec out(n);
  for (std::size_t i = 0; i < std::min(a.size(), n); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < std::min(b.size(), n - i); ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

// exact series division; den[0] must divide at every step
BigVec big_div(const BigVec& num, const BigVec& den, std::size_t n) {
  if (den.empty() || den[0] == 0) throw std::logic_error("series division by non-unit");
  BigVec b(n);
  for (std::size_t k = 0; k < n; ++k) {
    BigInt acc = k < num.size() ? num[k] : BigInt(0);
    for (std::size_t j = 1; j <= k && j < den.size(); ++j) acc -= den[j] * b[k - j];
    if (acc % den[0] != 0) throw std::logic_error("series division not exact");
    b[k] = acc / den[0];
  }
  return b;
}

std::vector<Complex> to_complex(const BigVec& v, double scale = 1.0) {
  std::vector<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = Complex(v[i].convert_to<double>() * scale, 0.0);
  return out;
}

BigVec theta3_series(std::size_t n) {
  BigVec t(n, 0);
  t[0] = 1;
  for (std::size_t k = 1; k * k < n; ++k) t[k * k] = 2;
  return t;
}

BigVec theta4_series(std::size_t n) {
  BigVec t(n, 0);
  t[0] = 1;
  for (std::size_t k = 1; k * k < n; ++k) t[k * k] = (k % 2 == 0) ? 2 : -2;
  return t;
}

// sum q^{k(k+1)}; theta_2^4 = 16 q (this series)^4
BigVec theta2_core_series(std::size_t n) {
  BigVec t(n, 0);
  for (std::size_t k = 0; k * (k + 1) < n; ++k) t[k * (k + 1)] = 1;
  return t;
}

BigVec pow4(const BigVec& a, std::size_t n) {
  BigVec sq = big_mul(a, a, n);
  return big_mul(sq, sq, n);
}

std::vector<long long> sigma1_table(std::size_t n) {
  std::vector<long long> s(n, 0);
  for (std::size_t d = 1; d < n; ++d)
    for (std::size_t m = d; m < n; m += d) s[m] += static_cast<long long>(d);
  return s;
}

}  // namespace

std::string form_kind_name(FormKind k) {
  switch (k) {
    case FormKind::HolomorphicCusp: return "holomorphic-cusp";
    case FormKind::Eisenstein: return "eisenstein";
    case FormKind::AntiholomorphicCusp: return "antiholomorphic-cusp";
  }
  throw std::logic_error("bad form kind");
}

FormKind form_kind_from_name(const std::string& name) {
  if (name == "holomorphic-cusp") return FormKind::HolomorphicCusp;
  if (name == "eisenstein") return FormKind::Eisenstein;
  if (name == "antiholomorphic-cusp") return FormKind::AntiholomorphicCusp;
  throw std::invalid_argument("unknown form kind '" + name + "'");
}

Complex evaluate_form(const FormLetter& w, Complex z, double tol) {
  if (z.imag() < kDefaultYMin)
    throw std::invalid_argument("evaluate_form: Im z below the y_min floor");
  Complex q = std::exp(kTwoPiI * w.series.step * z);
  if (w.kind == FormKind::AntiholomorphicCusp) q = std::conj(q);
  return evaluate_qseries(w.series, q, tol);
}

Complex pullback_integrand(const FormLetter& w, Complex z, Complex zdot, double tol) {
  Complex v = evaluate_form(w, z, tol);
  if (w.kind == FormKind::AntiholomorphicCusp) return -kTwoPiI * v * std::conj(zdot);
  return kTwoPiI * v * zdot;
}

FormLetter conjugate_letter(const FormLetter& w, const std::string& label) {
  FormLetter out = w;
  out.label = label;
  out.kind = FormKind::AntiholomorphicCusp;
  out.hodge_p = 0;
  for (auto& c : out.series.coeffs) c = std::conj(c);
  return out;
}

std::vector<long long> eta_product_11_coeffs(std::size_t n) {
  // (q-shifted) product of (1-q^m)^2 (1-q^{11m})^2
  std::vector<long long> a(n, 0);
  if (n == 0) return a;
  std::vector<long long> p(n, 0);
  p[0] = 1;
  auto mul_1mqm = [&](std::size_t m) {
    for (std::size_t i = n; i-- > m;) p[i] -= p[i - m];
  };
  for (std::size_t m = 1; m < n; ++m) {
    mul_1mqm(m);
    mul_1mqm(m);
    if (11 * m < n) {
      mul_1mqm(11 * m);
      mul_1mqm(11 * m);
    }
  }
  for (std::size_t i = 1; i < n; ++i) a[i] = p[i - 1];
  return a;
}

QSeries eisenstein_weight2_11(std::size_t n) {
  auto s1 = sigma1_table(n);
  QSeries s;
  s.step = 1.0;
  s.coeffs.resize(n);
  s.coeffs[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    double v = static_cast<double>(s1[k]);
    if (k % 11 == 0) v -= 11.0 * static_cast<double>(s1[k / 11]);
    s.coeffs[k] = Complex(2.4 * v, 0.0);
  }
  s.fit_tail(2.0, 0.0);
  return s;
}

const Gamma2Series& gamma2_series() {
  static const Gamma2Series gs = [] {
    const std::size_t n = kTrunc2;
    BigVec th3 = pow4(theta3_series(n), n);
    BigVec core = pow4(theta2_core_series(n), n);
    BigVec num(n, 0);  // 16 q * core
    for (std::size_t i = 0; i + 1 < n; ++i) num[i + 1] = 16 * core[i];
    BigVec lam = big_div(num, th3, n);  // integer coefficients

    // (q dlam/dq) / lam: shift both down one power, unit 16
    BigVec dnum(n - 1), dden(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      dnum[k] = BigInt(k + 1) * lam[k + 1];
      dden[k] = lam[k + 1];
    }
    BigVec f0 = big_div(dnum, dden, n - 1);

    // (q dlam/dq) / (lam - 1)
    BigVec qdl(n);
    for (std::size_t k = 0; k < n; ++k) qdl[k] = BigInt(k) * lam[k];
    BigVec lam1 = lam;
    lam1[0] -= 1;
    BigVec f1 = big_div(qdl, lam1, n);

    Gamma2Series out;
    out.lambda.step = 0.5;
    out.lambda.coeffs = to_complex(lam);
    out.lambda.fit_tail(1.0, 4.9);

    out.omega0.step = 0.5;
    out.omega0.coeffs = to_complex(f0, 0.5);
    out.omega0.fit_tail(2.0, 0.0);

    out.omega1.step = 0.5;
    out.omega1.coeffs = to_complex(f1, 0.5);
    out.omega1.fit_tail(2.0, 0.0);

    out.dlambda.step = 0.5;
    out.dlambda.coeffs.resize(n);
    for (std::size_t k = 0; k < n; ++k)
      out.dlambda.coeffs[k] = Complex(0.5 * static_cast<double>(k) * lam[k].convert_to<double>(), 0.0);
    out.dlambda.fit_tail(1.0, 4.9);
    return out;
  }();
  return gs;
}

QSeries theta4_fourth_over_2(std::size_t n) {
  QSeries s;
  s.step = 0.5;
  s.coeffs = to_complex(pow4(theta4_series(n), n), 0.5);
  s.fit_tail(2.0, 0.0);
  return s;
}

FormLetter dlambda_letter() {
  FormLetter w;
  w.label = "dlambda";
  w.kind = FormKind::Eisenstein;
  w.group = "gamma2";
  w.series = gamma2_series().dlambda;
  w.hodge_p = 1;
  w.log_weight_l = 1;
  return w;
}

Complex lambda_value(Complex z, double tol) {
  Complex q = std::exp(kTwoPiI * 0.5 * z);
  return evaluate_qseries(gamma2_series().lambda, q, tol);
}

Complex eta_product_11_direct(Complex z, int nfactors) {
  auto eta = [&](Complex w) {
    Complex q = std::exp(kTwoPiI * w);
    Complex prod = std::exp(kTwoPiI * w / 24.0);
    Complex qk = 1.0;
    for (int k = 1; k <= nfactors; ++k) {
      qk *= q;
      prod *= (1.0 - qk);
    }
    return prod;
  };
  Complex e1 = eta(z), e11 = eta(11.0 * z);
  return e1 * e1 * e11 * e11;
}

const FormBank& FormBank::builtin(const GroupPreset& preset) {
  static std::map<std::string, FormBank> banks = [] {
    std::map<std::string, FormBank> m;
    {
      FormBank b;
      FormLetter f;
      f.label = "omega_f";
      f.kind = FormKind::HolomorphicCusp;
      f.group = "gamma0_11";
      f.series.step = 1.0;
      auto coeffs = eta_product_11_coeffs(kTrunc11);
      f.series.coeffs.resize(coeffs.size());
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        f.series.coeffs[i] = Complex(static_cast<double>(coeffs[i]), 0.0);
      f.series.fit_tail(2.0, 0.0);
      f.hodge_p = 1;
      f.log_weight_l = 0;
      b.add(f);
      b.add(conjugate_letter(f, "omega_f_bar"));

      FormLetter e;
      e.label = "omega_E";
      e.kind = FormKind::Eisenstein;
      e.group = "gamma0_11";
      e.series = eisenstein_weight2_11(kTrunc11);
      e.hodge_p = 1;
      e.log_weight_l = 1;
      b.add(e);
      m.emplace("gamma0_11", std::move(b));
    }
    {
      FormBank b;
      const Gamma2Series& gs = gamma2_series();
      FormLetter w0;
      w0.label = "omega0";
      w0.kind = FormKind::Eisenstein;
      w0.group = "gamma2";
      w0.series = gs.omega0;
      w0.hodge_p = 1;
      w0.log_weight_l = 1;
      b.add(w0);
      FormLetter w1 = w0;
      w1.label = "omega1";
      w1.series = gs.omega1;
      b.add(w1);
      m.emplace("gamma2", std::move(b));
    }
    return m;
  }();
  auto it = banks.find(preset.name);
  if (it == banks.end()) throw std::invalid_argument("no builtin letters for " + preset.name);
  return it->second;
}

const FormLetter& FormBank::letter(const std::string& label) const {
  auto it = letters_.find(label);
  if (it == letters_.end()) throw std::invalid_argument("unknown form letter '" + label + "'");
  return it->second;
}

bool FormBank::has(const std::string& label) const { return letters_.count(label) > 0; }

void FormBank::add(FormLetter w) {
  letters_[w.label] = std::move(w);
}

std::vector<FormLetter> FormBank::alphabet(const std::vector<std::string>& labels) const {
  std::vector<FormLetter> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(letter(l));
  return out;
}

std::vector<std::string> FormBank::labels() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : letters_) out.push_back(k);
  return out;
}

}  // namespace geomod
