#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "geomod/hodge.hpp"
#include "geomod/suites.hpp"

using namespace geomod;

namespace {

Functional load_functional(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open functional file " + path);
  Json j;
  in >> j;
  return functional_from_json(j);
}

Functional default_order_functional(const GroupPreset& preset, int claimed_order) {
  const FormBank& bank = FormBank::builtin(preset);
  std::vector<std::string> labels;
  for (const auto& l : bank.labels())
    if (bank.letter(l).hodge_p == 1) labels.push_back(l);
  if (labels.empty()) throw std::invalid_argument("no holomorphic letters for " + preset.name);
  LetterWord w;
  for (int i = 0; i + 1 < claimed_order; ++i) w.push_back(i % static_cast<int>(labels.size()));
  return Functional::single_word(labels, w);
}

std::vector<std::vector<GroupElement>> sample_tuples(const GroupPreset& preset, int len,
                                                     int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len_d(1, 2);
  int ngen = static_cast<int>(preset.generators.size());
  std::uniform_int_distribution<int> gen_d(0, 2 * ngen - 1);
  std::vector<std::vector<GroupElement>> tuples;
  for (int t = 0; t < count; ++t) {
    std::vector<GroupElement> tup;
    for (int i = 0; i < len; ++i) {
      Word w;
      int wl = len_d(rng);
      for (int j = 0; j < wl; ++j) {
        int pick;
        do {
          int r = gen_d(rng);
          pick = (r < ngen) ? r + 1 : -(r - ngen + 1);
        } while (!w.empty() && w.back() == -pick);
        w.push_back(pick);
      }
      tup.push_back(word_to_element(preset, w));
    }
    tuples.push_back(tup);
  }
  return tuples;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geomod: iterated integrals of modular 1-forms and higher-order forms"};
  app.require_subcommand(1);

  std::string group = "gamma0_11", config_file, cache_dir;
  double tol = 1e-9;
  std::uint64_t seed = 20240601;
  int jobs = 1;
  app.add_option("--group", group, "group preset: gamma2 | gamma0_11");
  app.add_option("--config", config_file, "JSON run configuration file");
  app.add_option("--cache-dir", cache_dir, "loop-signature cache directory");
  app.add_option("--tol", tol, "quadrature tolerance");
  app.add_option("--seed", seed, "seed for sample tuples");
  app.add_option("--jobs", jobs, "worker threads for coset sums");

  auto* cmd_pair = app.add_subcommand("pair", "pair a functional with a group ring element");
  std::string pair_functional_file, pair_xi;
  cmd_pair->add_option("--functional", pair_functional_file, "functional JSON file")->required();
  cmd_pair->add_option("--xi", pair_xi, "group ring expression, e.g. \"(g1-1)(g2-1)\"")
      ->required();

  auto* cmd_order = app.add_subcommand("verify-order", "order verification report");
  int order_claimed = 2, order_samples = 3;
  std::string order_functional_file, order_format = "text";
  cmd_order->add_option("--order", order_claimed, "claimed order s+1 (functional length + 1)");
  cmd_order->add_option("--samples", order_samples, "number of sample tuples per length");
  cmd_order->add_option("--functional", order_functional_file, "functional JSON file");
  cmd_order->add_option("--format", order_format, "text | json");

  auto* cmd_cusp = app.add_subcommand("verify-cuspidal", "cusp-stabilizer invariance report");
  std::string cusp_functional_file, cusp_format = "text";
  int cusp_samples = 5;
  cmd_cusp->add_option("--functional", cusp_functional_file, "functional JSON file");
  cmd_cusp->add_option("--samples", cusp_samples, "sample points per cusp");
  cmd_cusp->add_option("--format", cusp_format, "text | json");

  auto* cmd_poincare = app.add_subcommand("poincare", "evaluate (twisted) Poincare series");
  std::string p_kind = "classical", p_cusp = "inf", p_twist_file, p_z = "0.1+0.8i";
  int p_weight = 6;
  long p_m = 1;
  std::vector<long> p_cbounds;
  cmd_poincare->add_option("--kind", p_kind, "classical | eisenstein | P1 | P2 | P3");
  cmd_poincare->add_option("--k", p_weight, "weight (even, >= 4)");
  cmd_poincare->add_option("--m", p_m, "index m (0 gives the Eisenstein series)");
  cmd_poincare->add_option("--cusp", p_cusp, "cusp name");
  cmd_poincare->add_option("--twist", p_twist_file, "twist functional JSON file");
  cmd_poincare->add_option("--cbound", p_cbounds, "coset truncation bound(s)");
  cmd_poincare->add_option("--z", p_z, "evaluation point, e.g. 0.1+0.8i");

  auto* cmd_filtration = app.add_subcommand("filtration", "primitive-space strata table");
  int f_k = 4, f_s = 2;
  std::string f_format = "text";
  cmd_filtration->add_option("--k", f_k, "weight");
  cmd_filtration->add_option("--s", f_s, "twist length bound");
  cmd_filtration->add_option("--format", f_format, "text | json");

  auto* cmd_suite = app.add_subcommand("suite", "run a verification suite");
  std::string suite_name = "all", suite_out = "reports";
  cmd_suite->add_option("--name", suite_name, "chen | order | cuspidal | poincare | filtration | all");
  cmd_suite->add_option("--out", suite_out, "report output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig config;
    if (!config_file.empty()) config = RunConfig::from_json_file(config_file);
    if (app.count("--group")) config.group = group;
    if (app.count("--tol")) config.tol = tol;
    if (app.count("--seed")) config.seed = seed;
    if (app.count("--cache-dir")) config.cache_dir = cache_dir;
    if (app.count("--jobs")) config.jobs = jobs;
    const GroupPreset& preset = preset_by_name(config.group);
    const FormBank& bank = FormBank::builtin(preset);

    if (*cmd_pair) {
      Functional f = load_functional(pair_functional_file);
      GroupRingElement xi = parse_group_ring_expr(preset, pair_xi);
      LoopCache cache(preset, bank, f.alphabet, f.max_word_length(), config.tol);
      cache.load(config.resolved_cache_dir());
      Complex v = pair_functional(f, xi, cache);
      cache.save(config.resolved_cache_dir());
      std::cout << "pair = " << complex_str(v) << "  (quadrature tol " << config.tol << ")\n";
      return 0;
    }

    if (*cmd_order) {
      Functional f = order_functional_file.empty()
                         ? default_order_functional(preset, order_claimed)
                         : load_functional(order_functional_file);
      int s = f.max_word_length();
      LoopCache cache(preset, bank, f.alphabet, s, config.tol);
      HigherOrderForm form = HigherOrderForm::make(preset, bank, f);
      auto tuples = sample_tuples(preset, s, order_samples, config.seed);
      auto more = sample_tuples(preset, s + 1, order_samples, config.seed + 1);
      tuples.insert(tuples.end(), more.begin(), more.end());
      std::vector<Complex> samples{{0.05, 0.55}, {-0.2, 0.8}, {0.3, 1.1}, {0.12, 0.42},
                                   {-0.05, 1.3}};
      OrderReport rep = verify_order(form, cache, tuples, samples, 10 * config.tol > 1e-6
                                                                       ? 10 * config.tol
                                                                       : 1e-6);
      if (order_format == "json") {
        std::cout << order_report_to_json(rep).dump(2) << "\n";
      } else {
        for (const auto& row : rep.rows)
          std::cout << (row.pass ? "ok   " : "FAIL ") << "len " << row.tuple_len << "  spread "
                    << row.spread << "  mismatch " << row.mismatch << "  max|.| " << row.max_abs
                    << "\n";
        std::cout << (rep.all_pass ? "all rows pass\n" : "FAILURES present\n");
      }
      return rep.all_pass ? 0 : 1;
    }

    if (*cmd_cusp) {
      Functional f;
      if (cusp_functional_file.empty()) {
        if (!bank.has("omega_f"))
          throw std::invalid_argument("preset has no default cusp letter; pass --functional");
        f = Functional::single_word({"omega_f", "omega_f_bar"}, {0});
      } else {
        f = load_functional(cusp_functional_file);
      }
      HigherOrderForm form = HigherOrderForm::make(preset, bank, f);
      std::vector<Complex> samples;
      std::mt19937_64 rng(config.seed);
      std::uniform_real_distribution<double> ur(-0.3, 0.3), ui(0.55, 1.25);
      for (int i = 0; i < cusp_samples; ++i) samples.emplace_back(ur(rng), ui(rng));
      CuspidalReport rep = verify_cuspidal(form, preset, bank, samples, 1e-7);
      if (cusp_format == "json") {
        std::cout << cuspidal_report_to_json(rep).dump(2) << "\n";
      } else {
        for (const auto& row : rep.rows)
          std::cout << (row.pass ? "ok   " : "FAIL ") << "cusp " << row.cusp << "  z "
                    << complex_str(row.z) << "  residual " << row.residual << "\n";
        std::cout << (rep.all_pass ? "all rows pass\n" : "FAILURES present\n");
      }
      return rep.all_pass ? 0 : 1;
    }

    if (*cmd_poincare) {
      PoincareSpec spec;
      spec.kind = series_kind_from_name(p_kind);
      spec.weight = p_weight;
      spec.cusp = p_cusp;
      spec.index_m = p_m;
      if (!p_twist_file.empty()) spec.twist = load_functional(p_twist_file);
      if (p_cbounds.empty()) p_cbounds.push_back(config.c_bound);
      Complex z = parse_complex(p_z);
      std::optional<LoopCache> cache;
      if (spec.twist) {
        cache.emplace(preset, bank, spec.twist->alphabet, spec.twist->max_word_length(),
                      config.tol);
        cache->load(config.resolved_cache_dir());
      }
      ConvergenceProfile prof = convergence_profile(
          preset, bank, cache ? &*cache : nullptr, spec, z, p_cbounds, config.tol);
      if (cache) cache->save(config.resolved_cache_dir());
      std::cout << "c_bound,value_re,value_im,diff_abs\n";
      std::cout.precision(17);
      for (const auto& row : prof.rows)
        std::cout << row.c_bound << "," << row.value.real() << "," << row.value.imag() << ","
                  << row.diff_abs << "\n";
      return 0;
    }

    if (*cmd_filtration) {
      PrimitiveTable table = primitive_space_table(f_k, f_s, preset);
      if (f_format == "json") {
        Json j;
        j["weight"] = table.weight;
        j["twist_length"] = table.twist_length;
        j["preset"] = table.preset;
        Json w = Json::array(), f = Json::array();
        for (const auto& [l, labels] : table.w_strata) w.push_back({{"l", l}, {"labels", labels}});
        for (const auto& [p, labels] : table.f_strata) f.push_back({{"p", p}, {"labels", labels}});
        j["w_strata"] = w;
        j["f_strata"] = f;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << format_primitive_table(table);
      }
      return 0;
    }

    if (*cmd_suite) return run_suite(suite_name, config, suite_out);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
