#pragma once

#include "geomod/chen.hpp"

namespace geomod {

/// Weight-0 form F(z) = constant + contraction of the path signature from the
/// basepoint against the functional's coefficients.
struct HigherOrderForm {
  std::string preset_name;
  Functional functional;
  Complex basepoint;
  int claimed_order = 1;  // functional length + 1
  bool cuspidal_flag = false;

  static HigherOrderForm make(const GroupPreset& preset, const FormBank& bank,
                              Functional f, std::optional<Complex> basepoint = {});
};

Complex evaluate(const HigherOrderForm& form, const FormBank& bank, Complex z, double tol,
                 const QuadratureOptions& opt = {});

/// (F |_0 xi)(z) through the loop cache: each translate F(g z) is the
/// contraction of loop(g) composed with the signature of basepoint -> z.
Complex evaluate_slashed(const HigherOrderForm& form, LoopCache& cache,
                         const GroupRingElement& xi, Complex z, double tol,
                         const QuadratureOptions& opt = {});

struct OrderCheckRow {
  std::vector<std::string> tuple;  // generator words of the slash factors
  int tuple_len = 0;
  std::vector<Complex> values;     // one per sample point
  double spread = 0.0;
  Complex predicted = 0.0;         // sum over top words of period products
  double mismatch = 0.0;           // |mean - predicted| (length-s tuples)
  double max_abs = 0.0;            // annihilation metric (length-(s+1) tuples)
  bool pass = false;
};

struct OrderReport {
  std::vector<OrderCheckRow> rows;
  bool all_pass = true;
};

/// For length-s tuples: F | prod (g_i - 1) must be constant in z with value
/// sum over length-s words of prod_i period(g_i, w_i); length-(s+1) tuples
/// must annihilate.
OrderReport verify_order(const HigherOrderForm& form, LoopCache& cache,
                         const std::vector<std::vector<GroupElement>>& tuples,
                         const std::vector<Complex>& sample_points, double tol);

struct CuspidalRow {
  std::string cusp;
  Complex z;
  double residual = 0.0;
  bool pass = false;
};

struct CuspidalReport {
  std::vector<CuspidalRow> rows;
  bool all_pass = true;
  bool flag_was_set = true;
};

/// |F(sigma z) - F(z)| for each cusp stabilizer generator, by direct
/// two-point evaluation.  Runs regardless of the cuspidal flag so expected
/// failures show up as report rows.
CuspidalReport verify_cuspidal(const HigherOrderForm& form, const GroupPreset& preset,
                               const FormBank& bank, const std::vector<Complex>& sample_points,
                               double tol);

/// Pointwise product: shuffle of functionals, order s1 + s2 - 1.
HigherOrderForm product(const GroupPreset& preset, const FormBank& bank,
                        const HigherOrderForm& a, const HigherOrderForm& b);

/// True when some word of length <= max_word_len over the generators detects
/// the functional: |F(g z0)| > tol.  False is inconclusive, not a disproof.
bool verify_injectivity_probe(const HigherOrderForm& form, LoopCache& cache, double tol,
                              int max_word_len = 4);

}  // namespace geomod
