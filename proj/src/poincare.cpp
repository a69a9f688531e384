#include "geomod/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace geomod {

std::string series_kind_name(SeriesKind k) {
  switch (k) {
    case SeriesKind::Classical: return "classical";
    case SeriesKind::Eisenstein: return "eisenstein";
    case SeriesKind::P1: return "P1";
    case SeriesKind::P2: return "P2";
    case SeriesKind::P3: return "P3";
  }
  throw std::logic_error("bad series kind");
}

SeriesKind series_kind_from_name(const std::string& name) {
  if (name == "classical") return SeriesKind::Classical;
  if (name == "eisenstein") return SeriesKind::Eisenstein;
  if (name == "P1" || name == "p1") return SeriesKind::P1;
  if (name == "P2" || name == "p2") return SeriesKind::P2;
  if (name == "P3" || name == "p3") return SeriesKind::P3;
  throw std::invalid_argument("unknown series kind '" + name + "'");
}

namespace {

bool is_twisted(SeriesKind k) {
  return k == SeriesKind::P1 || k == SeriesKind::P2 || k == SeriesKind::P3;
}

void validate_spec(const GroupPreset& preset, const FormBank& bank, const PoincareSpec& spec) {
  if (spec.weight < 4)
    throw std::invalid_argument("poincare: weight-2 series do not converge; need weight >= 4");
  if (spec.weight % 2 != 0) throw std::invalid_argument("poincare: weight must be even");
  if (spec.index_m < 0) throw std::invalid_argument("poincare: index m must be >= 0");
  if (spec.c_bound < 0) throw std::invalid_argument("poincare: c_bound must be >= 0");
  preset.cusp(spec.cusp);  // throws on unknown cusp
  if (is_twisted(spec.kind)) {
    if (!spec.twist) throw std::invalid_argument("poincare: twisted kind needs a twist");
    auto letters = bank.alphabet(spec.twist->alphabet);
    for (const auto& [w, c] : spec.twist->coeffs)
      for (int x : w)
        if (!letters.at(x).extends_to_compactification())
          throw std::invalid_argument(
              "poincare: twist must use letters that extend to the compactification");
  }
  if (spec.kind == SeriesKind::Eisenstein && spec.index_m != 0)
    throw std::invalid_argument("poincare: eisenstein kind forces m = 0");
}

Complex classical_term(const GroupElement& m, long index_m, int weight, Complex z) {
  Complex e = (index_m == 0)
                  ? Complex(1.0)
                  : std::exp(kTwoPiI * static_cast<double>(index_m) * apply_moebius(m, z));
  return e / std::pow(automorphy(m, z), weight);
}

// fixed-chunk deterministic parallel sum
Complex chunked_sum(std::size_t n, int jobs, const std::function<Complex(std::size_t)>& f) {
  if (jobs <= 1 || n < 64) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += f(i);
    return acc;
  }
  std::size_t chunk = (n + jobs - 1) / jobs;
  std::vector<std::future<Complex>> futs;
  for (int j = 0; j < jobs; ++j) {
    std::size_t lo = j * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    futs.push_back(std::async(std::launch::async, [lo, hi, &f] {
      Complex acc = 0.0;
      for (std::size_t i = lo; i < hi; ++i) acc += f(i);
      return acc;
    }));
  }
  Complex acc = 0.0;
  for (auto& fu : futs) acc += fu.get();
  return acc;
}

struct SeriesTerms {
  std::vector<GroupElement> gammas;  // coset representatives
  std::vector<GroupElement> ms;      // sigma^{-1} gamma
};

SeriesTerms series_terms(const GroupPreset& preset, const Cusp& cusp, long c_bound) {
  SeriesTerms t;
  GroupElement sigma_inv = cusp.scaling.inverse();
  t.gammas = coset_reps(preset, cusp, c_bound);
  t.ms.reserve(t.gammas.size());
  for (const auto& g : t.gammas) t.ms.push_back(sigma_inv * g);
  return t;
}

std::vector<Complex> twist_factors(const PoincareSpec& spec, LoopCache& cache,
                                   const SeriesTerms& terms, Complex z, double tol) {
  const Functional& twist = *spec.twist;
  std::vector<Complex> f(terms.gammas.size(), Complex(1.0));
  if (spec.kind == SeriesKind::P2) {
    for (std::size_t i = 0; i < terms.gammas.size(); ++i)
      f[i] = twist.contract(cache.loop(terms.gammas[i]));
  } else if (spec.kind == SeriesKind::P3) {
    int order = twist.max_word_length();
    Signature eta(twist.alphabet, order);
    if (z != cache.basepoint())
      eta = path_signature(cache.alphabet(), Path::line(cache.basepoint(), z), order, tol);
    Signature eta_inv = antipode(eta);
    for (std::size_t i = 0; i < terms.gammas.size(); ++i) {
      Signature s = compose_signatures(compose_signatures(eta_inv, cache.loop(terms.gammas[i])), eta);
      f[i] = twist.contract(s);
    }
  }
  return f;
}

}  // namespace

PoincareValue evaluate_series(const GroupPreset& preset, const FormBank& bank, LoopCache* cache,
                              const PoincareSpec& spec, Complex z, double tol, int jobs) {
  validate_spec(preset, bank, spec);
  if (is_twisted(spec.kind) && cache == nullptr)
    throw std::invalid_argument("poincare: twisted kind needs a loop cache");
  const Cusp& cusp = preset.cusp(spec.cusp);
  SeriesTerms terms = series_terms(preset, cusp, spec.c_bound);

  PoincareValue out;
  out.c_bound = spec.c_bound;
  out.terms = terms.gammas.size();

  if (spec.kind == SeriesKind::Classical || spec.kind == SeriesKind::Eisenstein) {
    long m = (spec.kind == SeriesKind::Eisenstein) ? 0 : spec.index_m;
    out.value = chunked_sum(terms.ms.size(), jobs, [&](std::size_t i) {
      return classical_term(terms.ms[i], m, spec.weight, z);
    });
    return out;
  }
  if (spec.kind == SeriesKind::P1) {
    Complex classical = chunked_sum(terms.ms.size(), jobs, [&](std::size_t i) {
      return classical_term(terms.ms[i], spec.index_m, spec.weight, z);
    });
    const Functional& twist = *spec.twist;
    Complex f = twist.constant_term();
    if (twist.max_word_length() > 0) {
      Signature eta(twist.alphabet, twist.max_word_length());
      if (z != cache->basepoint())
        eta = path_signature(cache->alphabet(), Path::line(cache->basepoint(), z),
                             twist.max_word_length(), tol);
      f = twist.contract(eta);
    }
    out.value = f * classical;
    return out;
  }
  std::vector<Complex> tw = twist_factors(spec, *cache, terms, z, tol);
  out.value = chunked_sum(terms.ms.size(), jobs, [&](std::size_t i) {
    return tw[i] * classical_term(terms.ms[i], spec.index_m, spec.weight, z);
  });
  return out;
}

TransformationResidual transformation_residual(const GroupPreset& preset, const FormBank& bank,
                                               LoopCache& cache, const PoincareSpec& spec,
                                               const GroupElement& beta, Complex z, double tol) {
  validate_spec(preset, bank, spec);
  if (spec.kind != SeriesKind::P2)
    throw std::invalid_argument("transformation_residual: spec must have kind P2");
  if (!preset.contains(beta))
    throw std::invalid_argument("transformation_residual: beta not in the preset group");
  const Cusp& cusp = preset.cusp(spec.cusp);
  SeriesTerms terms = series_terms(preset, cusp, spec.c_bound);

  Complex bz = apply_moebius(beta, z);
  Complex jb = std::pow(automorphy(beta, z), spec.weight);
  const Functional& twist = *spec.twist;

  std::vector<const Signature*> loops(terms.gammas.size());
  for (std::size_t i = 0; i < terms.gammas.size(); ++i) loops[i] = &cache.loop(terms.gammas[i]);

  Complex lhs = 0.0;
  std::vector<Complex> term_z(terms.ms.size());
  for (std::size_t i = 0; i < terms.ms.size(); ++i) {
    Complex f = twist.contract(*loops[i]);
    term_z[i] = classical_term(terms.ms[i], spec.index_m, spec.weight, z);
    lhs += f * (classical_term(terms.ms[i], spec.index_m, spec.weight, bz) / jb - term_z[i]);
  }

  const Signature& beta_loop = cache.loop(beta.inverse());
  Complex rhs = 0.0;
  for (const auto& [prefix, suffix] : deconcatenate(twist)) {
    const LetterWord& u = suffix.coeffs.begin()->first;
    if (u.empty()) continue;
    Complex factor = beta_loop.value(u);
    Complex series = 0.0;
    for (std::size_t i = 0; i < terms.ms.size(); ++i)
      series += prefix.contract(*loops[i]) * term_z[i];
    rhs += factor * series;
  }

  TransformationResidual out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.residual = std::abs(lhs - rhs);
  out.c_bound = spec.c_bound;
  (void)tol;
  return out;
}

HigherOrderCheckReport higher_order_check(const GroupPreset& preset, const FormBank& bank,
                                          LoopCache* cache, const PoincareSpec& spec,
                                          const std::vector<std::vector<GroupElement>>& tuples,
                                          Complex z, double tol) {
  validate_spec(preset, bank, spec);
  HigherOrderCheckReport report;

  double max_twist = 0.0;
  if (is_twisted(spec.kind) && spec.kind != SeriesKind::P1) {
    const Cusp& cusp = preset.cusp(spec.cusp);
    SeriesTerms terms = series_terms(preset, cusp, spec.c_bound);
    for (const auto& g : terms.gammas)
      max_twist = std::max(max_twist, std::abs(spec.twist->contract(cache->loop(g))));
  } else if (spec.kind == SeriesKind::P1) {
    max_twist = 1.0;  // folded into the shell estimate via the half-bound run
  }

  PoincareSpec classical = spec;
  classical.kind = SeriesKind::Classical;
  classical.twist.reset();
  PoincareSpec classical_half = classical;
  classical_half.c_bound = std::max(0L, spec.c_bound / 2);

  auto shell_estimate = [&](Complex w) {
    Complex full = evaluate_series(preset, bank, nullptr, classical, w, tol).value;
    Complex half = evaluate_series(preset, bank, nullptr, classical_half, w, tol).value;
    return std::abs(full - half) * (1.0 + max_twist);
  };

  for (const auto& tuple : tuples) {
    HigherOrderCheckRow row;
    for (const auto& g : tuple) row.tuple.push_back(g.str());
    GroupRingElement xi = j_power_element(tuple);
    Complex acc = 0.0;
    double budget = 100.0 * tol;
    for (const auto& [g, c] : xi.terms()) {
      Complex gz = apply_moebius(g, z);
      Complex jg = std::pow(automorphy(g, z), spec.weight);
      acc += c * evaluate_series(preset, bank, cache, spec, gz, tol).value / jg;
      budget += 10.0 * std::abs(c) * shell_estimate(gz) / std::abs(jg);
    }
    row.residual = std::abs(acc);
    row.budget = budget;
    row.pass = row.residual < row.budget;
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(std::move(row));
  }

  if (spec.kind == SeriesKind::P3) {
    // cross-check the direct sum against the P1/P2 expression obtained by
    // splitting each loop integral around the basepoint
    const Functional& twist = *spec.twist;
    Complex direct = evaluate_series(preset, bank, cache, spec, z, tol).value;
    int order = twist.max_word_length();
    Signature eta(twist.alphabet, order);
    if (z != cache->basepoint())
      eta = path_signature(cache->alphabet(), Path::line(cache->basepoint(), z), order, tol);
    Signature eta_inv = antipode(eta);
    Complex combo = 0.0;
    for (const auto& [a_u, mono_u] : deconcatenate(twist)) {
      const LetterWord& u = mono_u.coeffs.begin()->first;
      for (const auto& [b_uv, mono_v] : deconcatenate(a_u)) {
        const LetterWord& v = mono_v.coeffs.begin()->first;
        PoincareSpec p2 = spec;
        p2.kind = SeriesKind::P2;
        p2.twist = Functional::single_word(twist.alphabet, v);
        Complex series = evaluate_series(preset, bank, cache, p2, z, tol).value;
        combo += b_uv.contract(eta_inv) * eta.value(u) * series;
      }
    }
    report.p3_identity_residual = std::abs(direct - combo);
    report.all_pass = report.all_pass && report.p3_identity_residual < 1e-8 * (1.0 + std::abs(direct));
  }
  return report;
}

ConvergenceProfile convergence_profile(const GroupPreset& preset, const FormBank& bank,
                                       LoopCache* cache, const PoincareSpec& spec, Complex z,
                                       const std::vector<long>& c_bounds, double tol) {
  ConvergenceProfile profile;
  Complex prev = 0.0;
  bool have_prev = false;
  for (long cb : c_bounds) {
    PoincareSpec s = spec;
    s.c_bound = cb;
    PoincareValue v = evaluate_series(preset, bank, cache, s, z, tol);
    ConvergenceRow row;
    row.c_bound = cb;
    row.value = v.value;
    row.terms = v.terms;
    if (have_prev) row.diff_abs = std::abs(v.value - prev);
    if (is_twisted(spec.kind) && spec.kind != SeriesKind::P1 && cache != nullptr) {
      SeriesTerms terms = series_terms(preset, preset.cusp(spec.cusp), cb);
      for (const auto& g : terms.gammas)
        row.max_twist = std::max(row.max_twist, std::abs(spec.twist->contract(cache->loop(g))));
    }
    prev = v.value;
    have_prev = true;
    profile.rows.push_back(row);
  }
  for (std::size_t i = 2; i + 1 < profile.rows.size() + 1; ++i)
    if (!(profile.rows[i].diff_abs < profile.rows[i - 1].diff_abs))
      profile.diffs_monotone = false;
  return profile;
}

}  // namespace geomod
