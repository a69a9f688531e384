#include "geomod/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "geomod/hodge.hpp"
#include "geomod/oracles.hpp"

namespace geomod {

RunConfig RunConfig::from_json(const Json& j) {
  RunConfig c;
  c.group = j.value("group", c.group);
  if (j.contains("basepoint"))
    c.basepoint = Complex(j["basepoint"].at(0).get<double>(), j["basepoint"].at(1).get<double>());
  c.tol = j.value("tol", c.tol);
  c.c_bound = j.value("c_bound", c.c_bound);
  c.format = j.value("format", c.format);
  c.cache_dir = j.value("cache_dir", c.cache_dir);
  c.seed = j.value("seed", c.seed);
  c.jobs = j.value("jobs", c.jobs);
  return c;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  Json j;
  in >> j;
  return from_json(j);
}

Json RunConfig::to_json() const {
  Json j;
  j["group"] = group;
  if (basepoint) j["basepoint"] = {basepoint->real(), basepoint->imag()};
  j["tol"] = tol;
  j["c_bound"] = c_bound;
  j["format"] = format;
  j["cache_dir"] = cache_dir;
  j["seed"] = seed;
  j["jobs"] = jobs;
  return j;
}

std::string RunConfig::resolved_cache_dir() const {
  if (!cache_dir.empty()) return cache_dir;
  if (const char* env = std::getenv("GEOMOD_CACHE")) return env;
  return ".geomod-cache";
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point t0 = Clock::now();
  double seconds() const { return std::chrono::duration<double>(Clock::now() - t0).count(); }
};

Complex rand_box(std::mt19937_64& rng, double re_lo, double re_hi, double im_lo, double im_hi) {
  std::uniform_real_distribution<double> ur(re_lo, re_hi), ui(im_lo, im_hi);
  return Complex(ur(rng), ui(rng));
}

Path random_path(std::mt19937_64& rng, int min_pts, int max_pts) {
  std::uniform_int_distribution<int> np(min_pts, max_pts);
  int n = np(rng);
  std::vector<Complex> pts;
  for (int i = 0; i < n; ++i) pts.push_back(rand_box(rng, -0.8, 0.8, 0.3, 1.4));
  return Path(std::move(pts));
}

GroupElement random_element(const GroupPreset& preset, std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len_d(1, max_len);
  int len = len_d(rng);
  int ngen = static_cast<int>(preset.generators.size());
  std::uniform_int_distribution<int> gen_d(0, 2 * ngen - 1);
  Word w;
  for (int i = 0; i < len; ++i) {
    int pick;
    do {
      int r = gen_d(rng);
      pick = (r < ngen) ? r + 1 : -(r - ngen + 1);
    } while (!w.empty() && w.back() == -pick);
    w.push_back(pick);
  }
  return word_to_element(preset, w);
}

// --- criterion 1: shuffle identity on random-path signatures ---

CriterionResult c1_shuffle(const RunConfig& config) {
  CriterionResult res{1, "shuffle identity (50 random paths, order 3)", false, 0.0, 1e-7, 0, ""};
  Timer timer;
  const GroupPreset& preset = gamma0_11();
  const FormBank& bank = FormBank::builtin(preset);
  auto alphabet = bank.alphabet({"omega_f", "omega_f_bar"});
  std::mt19937_64 rng(config.seed + 1);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    Path p = random_path(rng, 2, 4);
    Signature s = path_signature(alphabet, p, 3, 1e-10);
    for (const auto& u : s.words(1))
      for (const auto& v : s.words(1)) {
        if (u.size() + v.size() > 3) continue;
        Functional fu = Functional::single_word(s.alphabet(), u);
        Functional fv = Functional::single_word(s.alphabet(), v);
        Complex direct = s.value(u) * s.value(v);
        Complex shuffled = shuffle_product(fu, fv).contract(s);
        worst = std::max(worst, std::abs(direct - shuffled));
      }
  }
  res.metric = worst;
  res.pass = worst < res.threshold;
  res.seconds = timer.seconds();
  return res;
}

// --- criterion 2: Chen composition vs independent whole-path quadrature ---

CriterionResult c2_composition(const RunConfig& config) {
  CriterionResult res{2, "Chen composition vs per-word quadrature (20 paths)", false, 0.0, 1e-8,
                      0, ""};
  Timer timer;
  const GroupPreset& preset = gamma0_11();
  const FormBank& bank = FormBank::builtin(preset);
  auto alphabet = bank.alphabet({"omega_f", "omega_f_bar"});
  std::mt19937_64 rng(config.seed + 2);
  std::vector<std::string> labels{"omega_f", "omega_f_bar"};
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(rand_box(rng, -0.8, 0.8, 0.3, 1.4));
    Path p(pts);
    Signature folded(labels, 3);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      folded = compose_signatures(folded,
                                  segment_signature(alphabet, pts[i], pts[i + 1], 3, 2.5e-11));
    Signature oracle = simpson_path_signature(alphabet, p, 3, 512);
    worst = std::max(worst, folded.max_abs_diff(oracle));
  }
  res.metric = worst;
  res.pass = worst < res.threshold;
  res.seconds = timer.seconds();
  return res;
}

// --- criterion 3: homotopy functionals and the failure of mixed words ---

CriterionResult c3_homotopy(const RunConfig& config) {
  CriterionResult res{3, "homotopy invariance (pure words) + mixed-word defect", false, 0.0, 1e-6,
                      0, ""};
  Timer timer;
  const GroupPreset& preset = gamma0_11();
  const FormBank& bank = FormBank::builtin(preset);
  auto holo = bank.alphabet({"omega_f"});
  auto mixed = bank.alphabet({"omega_f", "omega_f_bar"});
  std::mt19937_64 rng(config.seed + 3);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Complex z0 = rand_box(rng, -0.7, 0.0, 0.3, 0.9);
    Complex z1 = rand_box(rng, 0.1, 0.8, 0.3, 0.9);
    Path direct = Path::line(z0, z1);
    Path detour({z0, rand_box(rng, -0.5, 0.5, 1.0, 1.8), z1});
    Signature s1 = path_signature(holo, direct, 3, 1e-9);
    Signature s2 = path_signature(holo, detour, 3, 1e-9);
    worst = std::max(worst, s1.max_abs_diff(s2));
  }
  res.metric = worst;
  res.pass = worst < res.threshold;

  // one mixed word must disagree visibly between two homotopic paths
  Complex z0(-0.4, 0.35), z1(0.45, 0.4);
  Signature m1 = path_signature(mixed, Path::line(z0, z1), 2, 1e-10);
  Signature m2 = path_signature(mixed, Path({z0, Complex(0.0, 1.8), z1}), 2, 1e-10);
  double defect = std::abs(m1.value({0, 1}) - m2.value({0, 1}));
  res.detail = "mixed-word defect " + std::to_string(defect) + " (needs > 1e-3)";
  res.pass = res.pass && defect > 1e-3;
  res.seconds = timer.seconds();
  return res;
}

// --- criterion 4: period pairing against products of loop integrals ---

CriterionResult c4_pairing(const RunConfig& config) {
  CriterionResult res{4, "period pairing: r<s vanishing, r=s product", false, 0.0, 1e-7, 0, ""};
  Timer timer;
  const GroupPreset& preset = gamma0_11();
  const FormBank& bank = FormBank::builtin(preset);
  std::vector<std::string> labels{"omega_f", "omega_f_bar"};
  LoopCache cache(preset, bank, labels, 3, 1e-10);
  std::mt19937_64 rng(config.seed + 4);
  std::uniform_int_distribution<int> letter_d(0, 1);

  double worst_vanish = 0.0, worst_rel = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    int s = 2 + (trial % 2);  // 2 or 3
    int r = 1 + (trial % (s - 1 > 0 ? s - 1 : 1));
    if (r >= s) r = s - 1;
    LetterWord w;
    for (int i = 0; i < r; ++i) w.push_back(letter_d(rng));
    Functional f = Functional::single_word(labels, w);
    std::vector<GroupElement> tuple;
    for (int i = 0; i < s; ++i) tuple.push_back(random_element(preset, rng, 2));
    Complex v = pair_functional(f, j_power_element(tuple), cache);
    worst_vanish = std::max(worst_vanish, std::abs(v));
  }
  for (int trial = 0; trial < 30; ++trial) {
    int s = 1 + (trial % 3);
    LetterWord w;
    for (int i = 0; i < s; ++i) w.push_back(letter_d(rng));
    Functional f = Functional::single_word(labels, w);
    std::vector<GroupElement> tuple;
    for (int i = 0; i < s; ++i) tuple.push_back(random_element(preset, rng, 2));
    Complex v = pair_functional(f, j_power_element(tuple), cache);
    Complex expected = 1.0;
    for (int i = 0; i < s; ++i) expected *= cache.period(tuple[i], w[i]);
    if (std::abs(expected) > 1e-12)
      worst_rel = std::max(worst_rel, std::abs(v - expected) / std::abs(expected));
    else
      worst_vanish = std::max(worst_vanish, std::abs(v - expected));
  }
  res.metric = worst_vanish;
  res.detail = "r<s max |pair| " + std::to_string(worst_vanish) + ", r=s max rel err " +
               std::to_string(worst_rel);
  res.pass = worst_vanish < 1e-7 && worst_rel < 1e-6;
  res.seconds = timer.seconds();
  return res;
}

// --- criterion 5: order s+1 behaviour of antiderivative forms ---

struct OrderScenario {
  const GroupPreset* preset;
  std::vector<std::string> labels;
  Functional functional;
};

double run_order_scenario(const OrderScenario& sc, const RunConfig& config, double tol,
                          bool* ok) {
  const FormBank& bank = FormBank::builtin(*sc.preset);
  int s = sc.functional.max_word_length();
  LoopCache cache(*sc.preset, bank, sc.labels, s, 1e-10);
  HigherOrderForm form = HigherOrderForm::make(*sc.preset, bank, sc.functional);
  std::mt19937_64 rng(config.seed + 5 + s);
  std::vector<std::vector<GroupElement>> tuples;
  for (int t = 0; t < 3; ++t) {
    std::vector<GroupElement> tup;
    for (int i = 0; i < s; ++i) tup.push_back(random_element(*sc.preset, rng, 2));
    tuples.push_back(tup);
  }
  for (int t = 0; t < 2; ++t) {
    std::vector<GroupElement> tup;
    for (int i = 0; i < s + 1; ++i) tup.push_back(random_element(*sc.preset, rng, 2));
    tuples.push_back(tup);
  }
  std::vector<Complex> samples{{0.05, 0.55}, {-0.2, 0.8}, {0.3, 1.1}, {0.12, 0.42}, {-0.05, 1.3}};
  OrderReport report = verify_order(form, cache, tuples, samples, tol);
  double worst = 0.0;
  for (const auto& row : report.rows) {
    if (row.tuple_len == s)
      worst = std::max({worst, row.spread, row.mismatch / (1.0 + std::abs(row.predicted))});
    else
      worst = std::max(worst, row.max_abs);
  }
  *ok = *ok && report.all_pass;
  return worst;
}

CriterionResult c5_order(const RunConfig& config) {
  CriterionResult res{5, "order s+1: constancy, period products, J^{s+1} kill (s=1,2,3)", false,
                      0.0, 1e-6, 0, ""};
  Timer timer;
  bool ok = true;
  double worst = 0.0;
  for (int s = 1; s <= 3; ++s) {
    {
      OrderScenario sc;
      sc.preset = &gamma2();
      sc.labels = {"omega0", "omega1"};
      LetterWord w;
      for (int i = 0; i < s; ++i) w.push_back(i % 2);
      sc.functional = Functional::single_word(sc.labels, w);
      if (s >= 2) sc.functional.add(LetterWord(static_cast<std::size_t>(s), 0), Complex(0.5, 0.25));
      worst = std::max(worst, run_order_scenario(sc, config, 1e-6, &ok));
    }
    {
      OrderScenario sc;
      sc.preset = &gamma0_11();
      sc.labels = {"omega_f", "omega_E"};
      LetterWord w;
      for (int i = 0; i < s; ++i) w.push_back(i % 2);
      sc.functional = Functional::single_word(sc.labels, w);
      worst = std::max(worst, run_order_scenario(sc, config, 1e-6, &ok));
    }
  }
  res.metric = worst;
  res.pass = ok && worst < res.threshold;
  res.seconds = timer.seconds();
  return res;
}

// --- criterion 6: cuspidality of compactification-letter functionals ---

CriterionResult c6_cuspidal(const RunConfig& config) {
  (void)config;
  CriterionResult res{6, "cuspidality at both cusp stabilizers (10 points)", false, 0.0, 1e-7, 0,
                      ""};
  Timer timer;
  const GroupPreset& preset = gamma0_11();
  const FormBank& bank = FormBank::builtin(preset);
  std::vector<std::string> labels{"omega_f", "omega_f_bar"};

  std::vector<Functional> functionals;
  functionals.push_back(Functional::single_word(labels, {0}));
  functionals.push_back(Functional::single_word(labels, {1}));
  functionals.push_back(Functional::single_word(labels, {0, 0}));
  functionals.push_back(shuffle_product(Functional::single_word(labels, {0}),
                                        Functional::single_word(labels, {1})));

  std::vector<Complex> samples{{0.10, 0.80}, {-0.20, 0.60}, {0.05, 1.10}, {0.30, 0.90},
                               {-0.10, 0.75}, {0.22, 0.66}, {-0.28, 1.05}, {0.02, 0.58},
                               {0.15, 1.30}, {-0.07, 0.95}};
  double worst = 0.0;
  bool ok = true;
  for (const auto& f : functionals) {
    HigherOrderForm form = HigherOrderForm::make(preset, bank, f);
    CuspidalReport rep = verify_cuspidal(form, preset, bank, samples, 1e-7);
    for (const auto& row : rep.rows) worst = std::max(worst, row.residual);
    ok = ok && rep.all_pass;
  }
  res.metric = worst;
  res.pass = ok && worst < res.threshold;
  res.seconds = timer.seconds();
  return res;
}

// --- criterion 7: exact-letter reductions with the lambda potential ---

CriterionResult c7_exact_letter(const RunConfig& config) {
  (void)config;
  CriterionResult res{7, "exact-letter identities (first/middle/last)", false, 0.0, 1e-8, 0, ""};
  Timer timer;
  const GroupPreset& preset = gamma2();
  const FormBank& bank = FormBank::builtin(preset);
  std::vector<FormLetter> alphabet = bank.alphabet({"omega0", "omega1"});
  alphabet.push_back(dlambda_letter());

  auto potential = [](Complex z) { return lambda_value(z, 1e-13); };
  std::map<int, std::vector<std::pair<int, Complex>>> rule;
  rule[0] = {{2, Complex(1.0)}};                    // lambda * omega0 = dlambda
  rule[1] = {{2, Complex(1.0)}, {1, Complex(1.0)}};  // lambda * omega1 = dlambda + omega1
  Path path({Complex(0.0, 1.0), Complex(0.3, 1.2), Complex(1.1, 0.8)});

  double worst = 0.0;
  worst = std::max(worst,
                   reduce_exact_letter(alphabet, {2, 0}, 0, potential, rule, path, 1e-10).residual);
  worst = std::max(
      worst, reduce_exact_letter(alphabet, {0, 2, 1}, 1, potential, rule, path, 1e-10).residual);
  worst = std::max(worst,
                   reduce_exact_letter(alphabet, {0, 2}, 1, potential, rule, path, 1e-10).residual);
  res.metric = worst;
  res.pass = worst < res.threshold;
  res.seconds = timer.seconds();
  return res;
}

// --- criterion 8: twisted transformation law at matched truncation ---

CriterionResult c8_transformation(const RunConfig& config) {
  CriterionResult res{8, "P2 transformation law: residual(32) < 1e-3, shrinks 8->32 by >= 4",
                      false, 0.0, 1e-3, 0, ""};
  Timer timer;
  const GroupPreset& preset = gamma0_11();
  const FormBank& bank = FormBank::builtin(preset);
  std::vector<std::string> labels{"omega_f"};
  LoopCache cache(preset, bank, labels, 1, 1e-10);
  std::string cdir = config.resolved_cache_dir();
  cache.load(cdir);

  PoincareSpec spec;
  spec.kind = SeriesKind::P2;
  spec.weight = 6;
  spec.cusp = "inf";
  spec.index_m = 1;
  spec.twist = Functional::single_word(labels, {0});

  GroupElement beta;
  for (const auto& g : preset.generators)
    if (g.c() != 0) {
      beta = g;
      break;
    }
  Complex z(0.1, 0.8);

  spec.c_bound = 8;
  double res8 = transformation_residual(preset, bank, cache, spec, beta, z, 1e-9).residual;
  spec.c_bound = 32;
  double res32 = transformation_residual(preset, bank, cache, spec, beta, z, 1e-9).residual;
  cache.save(cdir);

  res.metric = res32;
  res.detail = "residual(8) " + std::to_string(res8) + ", residual(32) " + std::to_string(res32);
  res.pass = res32 < 1e-3 && res8 >= 4.0 * res32;
  res.seconds = timer.seconds();
  return res;
}

// --- criterion 9: convergence profiles decrease monotonically ---

CriterionResult c9_convergence(const RunConfig& config) {
  CriterionResult res{9, "poincare convergence: successive diffs decrease (k=6,8)", false, 0.0,
                      1.0, 0, ""};
  Timer timer;
  std::vector<long> bounds{4, 8, 16, 32};
  bool ok = true;
  std::string detail;

  for (int k : {6, 8}) {
    {
      PoincareSpec spec;
      spec.kind = SeriesKind::Classical;
      spec.weight = k;
      spec.cusp = "inf";
      spec.index_m = 1;
      ConvergenceProfile p = convergence_profile(gamma2(), FormBank::builtin(gamma2()), nullptr,
                                                 spec, Complex(0.13, 0.82), bounds, 1e-9);
      ok = ok && p.diffs_monotone;
      detail += "classical-gamma2-k" + std::to_string(k) + (p.diffs_monotone ? " ok;" : " FAIL;");
    }
    {
      PoincareSpec spec;
      spec.kind = SeriesKind::Classical;
      spec.weight = k;
      spec.cusp = "0";
      spec.index_m = 1;
      ConvergenceProfile p = convergence_profile(gamma0_11(), FormBank::builtin(gamma0_11()),
                                                 nullptr, spec, Complex(0.13, 0.82), bounds, 1e-9);
      ok = ok && p.diffs_monotone;
      detail += "classical-g011-k" + std::to_string(k) + (p.diffs_monotone ? " ok;" : " FAIL;");
    }
    {
      const GroupPreset& preset = gamma0_11();
      const FormBank& bank = FormBank::builtin(preset);
      std::vector<std::string> labels{"omega_f"};
      LoopCache cache(preset, bank, labels, 1, 1e-10);
      cache.load(config.resolved_cache_dir());
      PoincareSpec spec;
      spec.kind = SeriesKind::P2;
      spec.weight = k;
      spec.cusp = "0";
      spec.index_m = 1;
      spec.twist = Functional::single_word(labels, {0});
      ConvergenceProfile p = convergence_profile(preset, bank, &cache, spec, Complex(0.13, 0.82),
                                                 bounds, 1e-9);
      cache.save(config.resolved_cache_dir());
      ok = ok && p.diffs_monotone;
      detail += "P2-g011-k" + std::to_string(k) + (p.diffs_monotone ? " ok;" : " FAIL;");
    }
  }
  res.metric = ok ? 0.0 : 1.0;
  res.detail = detail;
  res.pass = ok;
  res.seconds = timer.seconds();
  return res;
}

// --- criterion 10: filtration golden table and bookkeeping laws ---

CriterionResult c10_hodge(const RunConfig& config) {
  (void)config;
  CriterionResult res{10, "filtration golden table (k=4, s=2) + nesting + coincidence", false,
                      0.0, 1.0, 0, ""};
  Timer timer;
  const GroupPreset& preset = gamma0_11();
  const FormBank& bank = FormBank::builtin(preset);
  PrimitiveTable table = primitive_space_table(4, 2, preset);

  auto labels_for = [&](const std::string& series, bool with_m, const std::string& bucket) {
    std::vector<std::string> out;
    for (const auto& c : preset.cusps)
      out.push_back(series + "(" + (with_m ? std::string("m,") : std::string()) + c.name + "|" +
                    bucket + ")");
    return out;
  };
  auto expect = [&](std::initializer_list<std::pair<const char*, const char*>> items) {
    std::vector<std::string> out;
    for (auto [series, bucket] : items) {
      auto v = labels_for(series, std::string(series) != "E", bucket);
      out.insert(out.end(), v.begin(), v.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  bool ok = true;
  auto check_w = [&](int l, const std::vector<std::string>& want) {
    ok = ok && table.w_strata.at(l).second == want;
  };
  check_w(0, {});
  check_w(1, {});
  check_w(2, {});
  check_w(3, expect({{"P", "B0"}, {"Pbar", "B0"}}));
  check_w(4, expect({{"P", "B0"}, {"P", "B1"}, {"Pbar", "B0"}, {"Pbar", "B1"}, {"E", "B0"}}));
  check_w(5, expect({{"P", "B0"}, {"P", "B1"}, {"P", "B2"}, {"Pbar", "B0"}, {"Pbar", "B1"},
                     {"Pbar", "B2"}, {"E", "B0"}, {"E", "B1"}}));
  check_w(6, expect({{"P", "B0"}, {"P", "B1"}, {"P", "B2"}, {"Pbar", "B0"}, {"Pbar", "B1"},
                     {"Pbar", "B2"}, {"E", "B0"}, {"E", "B1"}, {"E", "B2"}}));

  auto check_f = [&](int p, const std::vector<std::string>& want) {
    ok = ok && table.f_strata.at(p).second == want;
  };
  std::initializer_list<std::pair<const char*, const char*>> full_p = {
      {"P", "B2"}, {"P", "F1B2"}, {"P", "F2B2"}};
  check_f(0, expect({{"P", "B2"}, {"P", "F1B2"}, {"P", "F2B2"}, {"Pbar", "B2"}, {"Pbar", "F1B2"},
                     {"Pbar", "F2B2"}, {"E", "B2"}, {"E", "F1B2"}, {"E", "F2B2"}}));
  check_f(1, expect({{"P", "B2"}, {"P", "F1B2"}, {"P", "F2B2"}, {"Pbar", "F1B2"},
                     {"Pbar", "F2B2"}, {"E", "B2"}, {"E", "F1B2"}, {"E", "F2B2"}}));
  check_f(2, expect({{"P", "B2"}, {"P", "F1B2"}, {"P", "F2B2"}, {"Pbar", "F2B2"}, {"E", "B2"},
                     {"E", "F1B2"}, {"E", "F2B2"}}));
  check_f(3, expect({{"P", "B2"}, {"P", "F1B2"}, {"P", "F2B2"}, {"E", "F1B2"}, {"E", "F2B2"}}));
  check_f(4, expect({{"P", "F1B2"}, {"P", "F2B2"}, {"E", "F2B2"}}));
  check_f(5, expect({{"P", "F2B2"}}));
  check_f(6, {});
  (void)full_p;

  // nesting as label-set inclusion
  auto subset = [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (std::size_t i = 0; i + 1 < table.w_strata.size(); ++i)
    ok = ok && subset(table.w_strata[i].second, table.w_strata[i + 1].second);
  for (std::size_t i = 0; i + 1 < table.f_strata.size(); ++i)
    ok = ok && subset(table.f_strata[i + 1].second, table.f_strata[i].second);

  // weight = length on compactification letters, words up to length 4
  std::vector<std::string> labels{"omega_f", "omega_f_bar"};
  std::vector<LetterWord> stack{{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<LetterWord> next;
    for (const auto& w : stack)
      for (int l = 0; l < 2; ++l) {
        LetterWord nw = w;
        nw.push_back(l);
        next.push_back(nw);
      }
    for (const auto& w : next) {
      Functional f = Functional::single_word(labels, w);
      FiltrationDegree d = functional_degree(f, bank);
      ok = ok && d.weight_l == d.length_r && d.length_r == len;
    }
    stack = std::move(next);
  }

  res.metric = ok ? 0.0 : 1.0;
  res.pass = ok;
  res.seconds = timer.seconds();
  return res;
}

// --- criterion 11: products multiply orders with the -1 shift ---

CriterionResult c11_product(const RunConfig& config) {
  CriterionResult res{11, "product of order-2 forms verifies as order 3", false, 0.0, 1e-6, 0,
                      ""};
  Timer timer;
  const GroupPreset& preset = gamma0_11();
  const FormBank& bank = FormBank::builtin(preset);
  std::vector<std::string> labels{"omega_f", "omega_f_bar"};

  HigherOrderForm f1 =
      HigherOrderForm::make(preset, bank, Functional::single_word(labels, {0}));
  HigherOrderForm f2 =
      HigherOrderForm::make(preset, bank, Functional::single_word(labels, {1}));
  HigherOrderForm prod = product(preset, bank, f1, f2);
  bool ok = prod.claimed_order == 3;

  // pointwise product of values
  double worst_ptwise = 0.0;
  std::mt19937_64 rng(config.seed + 11);
  for (int i = 0; i < 5; ++i) {
    Complex z = rand_box(rng, -0.5, 0.5, 0.4, 1.2);
    Complex lhs = evaluate(prod, bank, z, 1e-10);
    Complex rhs = evaluate(f1, bank, z, 1e-10) * evaluate(f2, bank, z, 1e-10);
    worst_ptwise = std::max(worst_ptwise, std::abs(lhs - rhs));
  }
  ok = ok && worst_ptwise < 1e-8;

  LoopCache cache(preset, bank, labels, 2, 1e-10);
  std::vector<std::vector<GroupElement>> tuples;
  for (int t = 0; t < 3; ++t) {
    std::vector<GroupElement> tup;
    for (int i = 0; i < 2; ++i) tup.push_back(random_element(preset, rng, 2));
    tuples.push_back(tup);
  }
  for (int t = 0; t < 2; ++t) {
    std::vector<GroupElement> tup;
    for (int i = 0; i < 3; ++i) tup.push_back(random_element(preset, rng, 2));
    tuples.push_back(tup);
  }
  std::vector<Complex> samples{{0.05, 0.55}, {-0.2, 0.8}, {0.3, 1.1}, {0.12, 0.42}, {-0.05, 1.3}};
  OrderReport report = verify_order(prod, cache, tuples, samples, 1e-6);
  double worst = worst_ptwise;
  for (const auto& row : report.rows)
    worst = std::max({worst, row.tuple_len == 2 ? row.spread : row.max_abs,
                      row.mismatch / (1.0 + std::abs(row.predicted))});
  ok = ok && report.all_pass;

  res.metric = worst;
  res.pass = ok && worst < res.threshold;
  res.seconds = timer.seconds();
  return res;
}

}  // namespace

std::vector<int> suite_criteria(const std::string& suite_name) {
  if (suite_name == "chen") return {1, 2, 3, 7};
  if (suite_name == "order") return {4, 5, 11};
  if (suite_name == "cuspidal") return {6};
  if (suite_name == "poincare") return {8, 9};
  if (suite_name == "filtration") return {10};
  if (suite_name == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  throw std::invalid_argument("unknown suite '" + suite_name + "'");
}

CriterionResult run_criterion(int id, const RunConfig& config) {
  switch (id) {
    case 1: return c1_shuffle(config);
    case 2: return c2_composition(config);
    case 3: return c3_homotopy(config);
    case 4: return c4_pairing(config);
    case 5: return c5_order(config);
    case 6: return c6_cuspidal(config);
    case 7: return c7_exact_letter(config);
    case 8: return c8_transformation(config);
    case 9: return c9_convergence(config);
    case 10: return c10_hodge(config);
    case 11: return c11_product(config);
  }
  throw std::invalid_argument("unknown criterion id " + std::to_string(id));
}

std::vector<CriterionResult> run_criteria(const std::string& suite_name,
                                          const RunConfig& config) {
  std::vector<CriterionResult> out;
  for (int id : suite_criteria(suite_name)) out.push_back(run_criterion(id, config));
  return out;
}

Json criteria_report_json(const std::string& suite_name, const RunConfig& config,
                          const std::vector<CriterionResult>& results) {
  Json rows = Json::array();
  for (const auto& r : results)
    rows.push_back({{"id", r.id},
                    {"name", r.name},
                    {"pass", r.pass},
                    {"metric", r.metric},
                    {"threshold", r.threshold},
                    {"detail", r.detail}});
  return Json{{"suite", suite_name}, {"config", config.to_json()}, {"criteria", rows}};
}

int run_suite(const std::string& suite_name, const RunConfig& config,
              const std::string& report_dir) {
  std::vector<CriterionResult> results = run_criteria(suite_name, config);
  namespace fs = std::filesystem;
  fs::create_directories(report_dir);
  {
    std::ofstream out(fs::path(report_dir) / ("report_" + suite_name + ".json"));
    out << criteria_report_json(suite_name, config, results).dump(2) << "\n";
  }
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name
              << "  (metric " << r.metric << ", threshold " << r.threshold << ", " << r.seconds
              << "s)";
    if (!r.detail.empty()) std::cout << "  -- " << r.detail;
    std::cout << "\n";
    all = all && r.pass;
  }
  return all ? 0 : 1;
}

}  // namespace geomod
