#pragma once

#include "geomod/chen.hpp"

namespace geomod {

enum class SeriesKind { Classical, Eisenstein, P1, P2, P3 };

std::string series_kind_name(SeriesKind k);
SeriesKind series_kind_from_name(const std::string& name);

struct PoincareSpec {
  SeriesKind kind = SeriesKind::Classical;
  int weight = 6;             // even, >= 4
  std::string cusp = "inf";
  long index_m = 0;           // m = 0 gives the Eisenstein series
  std::optional<Functional> twist;
  long c_bound = 16;
};

struct PoincareValue {
  Complex value = 0.0;
  long c_bound = 0;
  std::size_t terms = 0;
};

/// Finite coset-truncated sum.  The twisted kinds take their loop integrals
/// from the cache; P1 multiplies the classical sum by the basepoint-to-z
/// integral, P3 conjugates cached loops by the basepoint-to-z signature.
PoincareValue evaluate_series(const GroupPreset& preset, const FormBank& bank, LoopCache* cache,
                              const PoincareSpec& spec, Complex z, double tol, int jobs = 1);

struct TransformationResidual {
  Complex lhs = 0.0;
  Complex rhs = 0.0;
  double residual = 0.0;
  long c_bound = 0;
};

/// Matched-truncation residual of the slash transformation law for a P2
/// series: both sides run over the same representative set, so what remains
/// is the coset-reindexing tail.
TransformationResidual transformation_residual(const GroupPreset& preset, const FormBank& bank,
                                               LoopCache& cache, const PoincareSpec& spec,
                                               const GroupElement& beta, Complex z, double tol);

struct HigherOrderCheckRow {
  std::vector<std::string> tuple;
  double residual = 0.0;
  double budget = 0.0;
  bool pass = false;
};

struct HigherOrderCheckReport {
  std::vector<HigherOrderCheckRow> rows;
  double p3_identity_residual = 0.0;  // only for P3 specs
  bool all_pass = true;
};

/// Slashes the series with prod (g_i - 1) built from each tuple and compares
/// the residual against a truncation-plus-quadrature budget estimated from
/// the same data.  P3 is additionally checked against its expression through
/// P1/P2 via deconcatenation.
HigherOrderCheckReport higher_order_check(const GroupPreset& preset, const FormBank& bank,
                                          LoopCache* cache, const PoincareSpec& spec,
                                          const std::vector<std::vector<GroupElement>>& tuples,
                                          Complex z, double tol);

struct ConvergenceRow {
  long c_bound = 0;
  Complex value = 0.0;
  double diff_abs = 0.0;   // 0 for the first row
  double max_twist = 0.0;  // largest |loop integral| among the terms
  std::size_t terms = 0;
};

struct ConvergenceProfile {
  std::vector<ConvergenceRow> rows;
  bool diffs_monotone = true;  // strict decrease of successive |diff|s
};

ConvergenceProfile convergence_profile(const GroupPreset& preset, const FormBank& bank,
                                       LoopCache* cache, const PoincareSpec& spec, Complex z,
                                       const std::vector<long>& c_bounds, double tol);

}  // namespace geomod
