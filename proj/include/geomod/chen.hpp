#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geomod/formbank.hpp"
#include "geomod/groupring.hpp"

namespace geomod {

/// Piecewise-straight path in the upper half-plane.
struct Path {
  std::vector<Complex> waypoints;

  Path() = default;
  explicit Path(std::vector<Complex> pts);
  static Path line(Complex z0, Complex z1);

  Path reversed() const;
  Path concat(const Path& other) const;  // endpoints must match exactly
  std::size_t nsegments() const { return waypoints.empty() ? 0 : waypoints.size() - 1; }
  Complex start() const { return waypoints.front(); }
  Complex end() const { return waypoints.back(); }
};

using LetterWord = std::vector<int>;  // 0-based indices into an alphabet

/// Truncated signature: values of every iterated line integral of length
/// <= order over the alphabet, with the empty word fixed at 1.
class Signature {
 public:
  Signature(std::vector<std::string> alphabet, int order);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  int order() const { return order_; }
  std::size_t nletters() const { return alphabet_.size(); }

  const std::vector<std::vector<Complex>>& levels() const { return levels_; }
  std::vector<std::vector<Complex>>& levels() { return levels_; }

  Complex value(const LetterWord& w) const;
  void set(const LetterWord& w, Complex v);
  double max_abs_diff(const Signature& o) const;
  std::vector<LetterWord> words(int min_len = 0) const;

  static std::size_t word_index(const LetterWord& w, std::size_t nletters);

 private:
  std::vector<std::string> alphabet_;
  int order_;
  std::vector<std::vector<Complex>> levels_;  // levels_[r] has nletters^r entries
};

struct QuadratureOptions {
  int cheb_nodes = 24;     // polynomial degree per panel
  int max_depth = 11;      // halving depth for the adaptive refinement
  long node_budget = 16384;  // per-segment evaluation budget
};

/// Chen composition: S(w) = sum_i S1(w_1..w_i) S2(w_{i+1}..w_r).
Signature compose_signatures(const Signature& s1, const Signature& s2);

/// Signature of the reversed path: (-1)^{|w|} times the reversed-word value.
Signature antipode(const Signature& s);

Signature segment_signature(const std::vector<FormLetter>& alphabet, Complex z0, Complex z1,
                            int order, double tol, const QuadratureOptions& opt = {});
Signature path_signature(const std::vector<FormLetter>& alphabet, const Path& path, int order,
                         double tol, const QuadratureOptions& opt = {});

/// Signature along the straight segment z0 -> g z0.
Signature loop_signature(const std::vector<FormLetter>& alphabet, Complex z0,
                         const GroupElement& g, int order, double tol,
                         const QuadratureOptions& opt = {});

enum class HomotopyStatus { GuaranteedPureType, NumericallyChecked, Unchecked };

/// Complex combination of words plus constant term (the empty-word entry).
struct Functional {
  std::vector<std::string> alphabet;
  std::map<LetterWord, Complex> coeffs;
  int declared_length = 0;
  HomotopyStatus status = HomotopyStatus::Unchecked;

  static Functional constant(std::vector<std::string> alphabet, Complex c);
  static Functional single_word(std::vector<std::string> alphabet, LetterWord w,
                                Complex c = 1.0);

  Functional& add(const LetterWord& w, Complex c);
  Complex constant_term() const;
  Complex contract(const Signature& s) const;
  int max_word_length() const;
  /// True when every letter used across nonempty words has one chirality.
  bool is_pure_type(const std::vector<FormLetter>& letters) const;
};

Functional shuffle_product(const Functional& a, const Functional& b);

/// Splits every word at every position and groups by the suffix word u:
/// returns pairs (prefix functional A_u, monomial u) with
///   eval(f, concat(P1, P2)) = sum_u eval(A_u, P1) * eval(u, P2).
/// The u = empty pair is (f, 1); full-word suffixes pair with constants.
std::vector<std::pair<Functional, Functional>> deconcatenate(const Functional& f);

/// Write-once store of loop signatures over a fixed alphabet and order.
/// Generator loops are straight segments from the basepoint; the loop of a
/// general element composes the cached generator loops along its word.
class LoopCache {
 public:
  LoopCache(const GroupPreset& preset, const FormBank& bank,
            std::vector<std::string> alphabet_labels, int order, double tol,
            std::optional<Complex> basepoint = {});

  const GroupPreset& preset() const { return *preset_; }
  Complex basepoint() const { return z0_; }
  int order() const { return order_; }
  double tol() const { return tol_; }
  const std::vector<std::string>& alphabet_labels() const { return labels_; }
  const std::vector<FormLetter>& alphabet() const { return letters_; }

  const Signature& loop(const GroupElement& g);
  Signature direct_loop(const GroupElement& g) const;
  Complex period(const GroupElement& g, int letter);

  std::string cache_key() const;
  void save(const std::string& dir) const;
  bool load(const std::string& dir);

 private:
  void ensure_generators();
  const GroupPreset* preset_;
  const FormBank* bank_;
  std::vector<std::string> labels_;
  std::vector<FormLetter> letters_;
  int order_;
  double tol_;
  Complex z0_;
  std::map<int, Signature> gen_loops_;  // signed generator index -> loop
  std::map<GroupElement, Signature> cache_;
  bool gens_ready_ = false;
};

/// <f, xi>: linear extension of loop evaluation over the group ring.
Complex pair_functional(const Functional& f, const GroupRingElement& xi, LoopCache& cache);

struct ExactLetterReport {
  Complex lhs = 0.0;
  Complex rhs = 0.0;
  double residual = 0.0;
  bool rewrite_available = false;
  Functional rewritten;  // path-start-relative catalog expression of the word
};

/// Verifies the exact-letter identity for the word with the letter at df_pos
/// understood as the differential of the supplied potential.  product_rule
/// maps a letter index to the catalog expansion of (potential * letter).
ExactLetterReport reduce_exact_letter(
    const std::vector<FormLetter>& alphabet, const LetterWord& word, std::size_t df_pos,
    const std::function<Complex(Complex)>& potential,
    const std::map<int, std::vector<std::pair<int, Complex>>>& product_rule, const Path& path,
    double tol, const QuadratureOptions& opt = {});

}  // namespace geomod
