#include "geomod/hoforms.hpp"

#include <algorithm>
#include <cmath>

namespace geomod {

HigherOrderForm HigherOrderForm::make(const GroupPreset& preset, const FormBank& bank,
                                      Functional f, std::optional<Complex> basepoint) {
  HigherOrderForm form;
  form.preset_name = preset.name;
  form.basepoint = basepoint.value_or(preset.basepoint);
  form.claimed_order = f.max_word_length() + 1;
  auto letters = bank.alphabet(f.alphabet);
  bool cuspidal = true;
  for (const auto& [w, c] : f.coeffs)
    for (int x : w)
      if (!letters.at(x).extends_to_compactification()) cuspidal = false;
  form.cuspidal_flag = cuspidal;
  if (f.status == HomotopyStatus::Unchecked && f.is_pure_type(letters))
    f.status = HomotopyStatus::GuaranteedPureType;
  form.functional = std::move(f);
  return form;
}

Complex evaluate(const HigherOrderForm& form, const FormBank& bank, Complex z, double tol,
                 const QuadratureOptions& opt) {
  if (z == form.basepoint) return form.functional.constant_term();
  auto letters = bank.alphabet(form.functional.alphabet);
  Signature s = path_signature(letters, Path::line(form.basepoint, z),
                               form.functional.max_word_length(), tol, opt);
  return form.functional.contract(s);
}

Complex evaluate_slashed(const HigherOrderForm& form, LoopCache& cache,
                         const GroupRingElement& xi, Complex z, double tol,
                         const QuadratureOptions& opt) {
  int order = form.functional.max_word_length();
  Signature eta(form.functional.alphabet, order);
  if (z != cache.basepoint())
    eta = path_signature(cache.alphabet(), Path::line(cache.basepoint(), z), order, tol, opt);
  Complex acc = 0.0;
  for (const auto& [g, c] : xi.terms())
    acc += c * form.functional.contract(compose_signatures(cache.loop(g), eta));
  return acc;
}

OrderReport verify_order(const HigherOrderForm& form, LoopCache& cache,
                         const std::vector<std::vector<GroupElement>>& tuples,
                         const std::vector<Complex>& sample_points, double tol) {
  OrderReport report;
  const int s = form.functional.max_word_length();
  for (const auto& tuple : tuples) {
    OrderCheckRow row;
    row.tuple_len = static_cast<int>(tuple.size());
    for (const auto& g : tuple)
      row.tuple.push_back(word_str(word_decompose(cache.preset(), g, 1 << 20)));
    GroupRingElement xi = j_power_element(tuple);
    for (Complex z : sample_points)
      row.values.push_back(evaluate_slashed(form, cache, xi, z, cache.tol()));
    double lo_re = 1e308, hi_re = -1e308, lo_im = 1e308, hi_im = -1e308;
    double scale = 0.0;
    for (Complex v : row.values) {
      lo_re = std::min(lo_re, v.real());
      hi_re = std::max(hi_re, v.real());
      lo_im = std::min(lo_im, v.imag());
      hi_im = std::max(hi_im, v.imag());
      scale = std::max(scale, std::abs(v));
      row.max_abs = std::max(row.max_abs, std::abs(v));
    }
    row.spread = std::hypot(hi_re - lo_re, hi_im - lo_im);
    if (row.tuple_len == s) {
      Complex predicted = 0.0;
      for (const auto& [w, c] : form.functional.coeffs) {
        if (static_cast<int>(w.size()) != s) continue;
        Complex prod = c;
        for (int i = 0; i < s; ++i) prod *= cache.period(tuple[i], w[i]);
        predicted += prod;
      }
      row.predicted = predicted;
      Complex mean = 0.0;
      for (Complex v : row.values) mean += v;
      mean /= static_cast<double>(row.values.size());
      row.mismatch = std::abs(mean - predicted);
      row.pass = row.spread < tol && row.mismatch < tol * (1.0 + std::abs(predicted));
    } else if (row.tuple_len > s) {
      row.pass = row.max_abs < tol;
    } else {
      row.pass = true;  // short tuples carry no claim
    }
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  return report;
}

CuspidalReport verify_cuspidal(const HigherOrderForm& form, const GroupPreset& preset,
                               const FormBank& bank, const std::vector<Complex>& sample_points,
                               double tol) {
  CuspidalReport report;
  report.flag_was_set = form.cuspidal_flag;
  for (const auto& cusp : preset.cusps) {
    GroupElement sigma = cusp_stabilizer_generator(cusp);
    for (Complex z : sample_points) {
      CuspidalRow row;
      row.cusp = cusp.name;
      row.z = z;
      Complex lhs = evaluate(form, bank, apply_moebius(sigma, z), tol * 1e-2);
      Complex rhs = evaluate(form, bank, z, tol * 1e-2);
      row.residual = std::abs(lhs - rhs);
      row.pass = row.residual < tol;
      report.all_pass = report.all_pass && row.pass;
      report.rows.push_back(row);
    }
  }
  return report;
}

HigherOrderForm product(const GroupPreset& preset, const FormBank& bank,
                        const HigherOrderForm& a, const HigherOrderForm& b) {
  if (a.preset_name != b.preset_name || a.basepoint != b.basepoint)
    throw std::invalid_argument("product: mismatched preset or basepoint");
  Functional f = shuffle_product(a.functional, b.functional);
  auto letters = bank.alphabet(f.alphabet);
  if (f.is_pure_type(letters) && a.functional.status != HomotopyStatus::Unchecked &&
      b.functional.status != HomotopyStatus::Unchecked)
    f.status = HomotopyStatus::GuaranteedPureType;
  HigherOrderForm out = HigherOrderForm::make(preset, bank, std::move(f), a.basepoint);
  // (s1+1) + (s2+1) - 1
  out.claimed_order = a.claimed_order + b.claimed_order - 1;
  return out;
}

bool verify_injectivity_probe(const HigherOrderForm& form, LoopCache& cache, double tol,
                              int max_word_len) {
  const GroupPreset& preset = cache.preset();
  int ngen = static_cast<int>(preset.generators.size());
  std::vector<Word> frontier{{}};
  for (int len = 0; len <= max_word_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      GroupElement g = word_to_element(preset, w);
      Complex v = form.functional.contract(cache.loop(g));
      if (std::abs(v) > tol) return true;
      if (len == max_word_len) continue;
      for (int x = -ngen; x <= ngen; ++x) {
        if (x == 0) continue;
        if (!w.empty() && w.back() == -x) continue;
        Word nw = w;
        nw.push_back(x);
        next.push_back(std::move(nw));
      }
    }
    frontier = std::move(next);
  }
  return false;
}

}  // namespace geomod
