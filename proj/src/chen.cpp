#include "geomod/chen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace geomod {

Path::Path(std::vector<Complex> pts) : waypoints(std::move(pts)) {
  if (waypoints.empty()) throw std::invalid_argument("Path: needs at least one waypoint");
  for (Complex z : waypoints)
    if (!(z.imag() >= kDefaultYMin))
      throw std::invalid_argument("Path: waypoint below the y_min floor");
}

Path Path::line(Complex z0, Complex z1) { return Path({z0, z1}); }

Path Path::reversed() const {
  Path p = *this;
  std::reverse(p.waypoints.begin(), p.waypoints.end());
  return p;
}

Path Path::concat(const Path& other) const {
  if (waypoints.back() != other.waypoints.front())
    throw std::invalid_argument("Path::concat: endpoints do not match");
  Path p = *this;
  p.waypoints.insert(p.waypoints.end(), other.waypoints.begin() + 1, other.waypoints.end());
  return p;
}

// ---------------------------------------------------------------------------

Signature::Signature(std::vector<std::string> alphabet, int order)
    : alphabet_(std::move(alphabet)), order_(order) {
  if (order_ < 0) throw std::invalid_argument("Signature: negative order");
  std::size_t L = alphabet_.size();
  levels_.resize(order_ + 1);
  std::size_t sz = 1;
  for (int r = 0; r <= order_; ++r) {
    levels_[r].assign(sz, Complex(0.0, 0.0));
    sz *= L;
  }
  levels_[0][0] = 1.0;
}

std::size_t Signature::word_index(const LetterWord& w, std::size_t nletters) {
  std::size_t idx = 0;
  for (int x : w) idx = idx * nletters + static_cast<std::size_t>(x);
  return idx;
}

Complex Signature::value(const LetterWord& w) const {
  if (static_cast<int>(w.size()) > order_)
    throw std::invalid_argument("Signature::value: word longer than order");
  return levels_[w.size()][word_index(w, alphabet_.size())];
}

void Signature::set(const LetterWord& w, Complex v) {
  levels_[w.size()][word_index(w, alphabet_.size())] = v;
}

double Signature::max_abs_diff(const Signature& o) const {
  double m = 0.0;
  for (int r = 0; r <= order_ && r <= o.order_; ++r)
    for (std::size_t i = 0; i < levels_[r].size(); ++i)
      m = std::max(m, std::abs(levels_[r][i] - o.levels_[r][i]));
  return m;
}

std::vector<LetterWord> Signature::words(int min_len) const {
  std::vector<LetterWord> out;
  std::size_t L = alphabet_.size();
  for (int r = min_len; r <= order_; ++r) {
    LetterWord w(r, 0);
    std::size_t count = 1;
    for (int i = 0; i < r; ++i) count *= L;
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rem = idx;
      for (int i = r - 1; i >= 0; --i) {
        w[i] = static_cast<int>(rem % L);
        rem /= L;
      }
      out.push_back(w);
    }
  }
  return out;
}

Signature compose_signatures(const Signature& s1, const Signature& s2) {
  if (s1.alphabet() != s2.alphabet() || s1.order() != s2.order())
    throw std::invalid_argument("compose_signatures: alphabet/order mismatch");
  std::size_t L = s1.nletters();
  Signature out(s1.alphabet(), s1.order());
  std::vector<std::size_t> pw(s1.order() + 1, 1);
  for (int r = 1; r <= s1.order(); ++r) pw[r] = pw[r - 1] * L;
  for (int r = 0; r <= s1.order(); ++r) {
    auto& lvl = out.levels()[r];
    for (std::size_t idx = 0; idx < lvl.size(); ++idx) {
      Complex acc = 0.0;
      for (int i = 0; i <= r; ++i)
        acc += s1.levels()[i][idx / pw[r - i]] * s2.levels()[r - i][idx % pw[r - i]];
      lvl[idx] = acc;
    }
  }
  return out;
}

Signature antipode(const Signature& s) {
  std::size_t L = s.nletters();
  Signature out(s.alphabet(), s.order());
  for (int r = 0; r <= s.order(); ++r) {
    for (std::size_t idx = 0; idx < out.levels()[r].size(); ++idx) {
      // reverse the base-L digits of idx
      std::size_t rev = 0, rem = idx;
      for (int i = 0; i < r; ++i) {
        rev = rev * L + rem % L;
        rem /= L;
      }
      double sign = (r % 2 == 0) ? 1.0 : -1.0;
      out.levels()[r][idx] = sign * s.levels()[r][rev];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature: Chebyshev collocation per panel.  Iterated integrals satisfy
// I_{w.l}(t) = int_a^t I_w f_l, so each level is a pointwise product followed
// by a spectral antiderivative; panels combine through Chen composition.

namespace {

struct ChebWorkspace {
  int n;
  std::vector<double> cosjk;  // cos(j * k * pi / n), j in [0, n], k in [0, n+1]

  explicit ChebWorkspace(int n_) : n(n_), cosjk((n_ + 1) * (n_ + 2)) {
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k <= n + 1; ++k)
        cosjk[j * (n + 2) + k] = std::cos(kPi * j * k / n);
  }
  double c(int j, int k) const { return cosjk[j * (n + 2) + k]; }
};

const ChebWorkspace& cheb_workspace(int n) {
  static std::map<int, ChebWorkspace> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, ChebWorkspace(n)).first;
  return it->second;
}

// values g(x_j) at x_j = cos(j pi / n)  ->  values of int_{-1}^x g at x_j
std::vector<Complex> cheb_antiderivative(const ChebWorkspace& ws, const std::vector<Complex>& g) {
  int n = ws.n;
  // plain Chebyshev coefficients: g = sum_k gamma_k T_k
  std::vector<Complex> gamma(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    Complex acc = 0.5 * (g[0] * ws.c(0, k) + g[n] * ws.c(n, k));
    for (int j = 1; j < n; ++j) acc += g[j] * ws.c(j, k);
    gamma[k] = acc * (2.0 / n);
  }
  gamma[0] *= 0.5;
  gamma[n] *= 0.5;
  auto gm = [&](int k) { return k <= n ? gamma[k] : Complex(0.0); };
  // antiderivative G = sum_m b_m T_m with G(-1) = 0
  std::vector<Complex> b(n + 2, 0.0);
  b[1] = gamma[0] - 0.5 * gm(2);
  for (int m = 2; m <= n + 1; ++m) b[m] = (gm(m - 1) - gm(m + 1)) / (2.0 * m);
  Complex b0 = 0.0;
  for (int m = 1; m <= n + 1; ++m) b0 -= ((m % 2) ? -1.0 : 1.0) * b[m];
  b[0] = b0;
  std::vector<Complex> out(n + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    Complex acc = 0.0;
    for (int k = 0; k <= n + 1; ++k) acc += b[k] * ws.c(j, k);
    out[j] = acc;
  }
  return out;
}

struct PanelContext {
  const std::vector<FormLetter>* alphabet;
  int order;
  double tol;
  QuadratureOptions opt;
  long nodes_used = 0;
};

Signature panel_signature(PanelContext& ctx, Complex za, Complex zb) {
  const auto& alphabet = *ctx.alphabet;
  std::size_t L = alphabet.size();
  int n = ctx.opt.cheb_nodes;
  const ChebWorkspace& ws = cheb_workspace(n);
  ctx.nodes_used += n + 1;
  if (ctx.nodes_used > ctx.opt.node_budget)
    throw QuadratureError("segment quadrature exceeded its node budget");

  Complex mid = 0.5 * (za + zb), half = 0.5 * (zb - za);
  std::vector<std::vector<Complex>> letter_vals(L, std::vector<Complex>(n + 1));
  constexpr double kFormEvalTol = 1e-13;
  for (std::size_t l = 0; l < L; ++l)
    for (int j = 0; j <= n; ++j) {
      Complex z = mid + half * ws.c(j, 1);
      letter_vals[l][j] = pullback_integrand(alphabet[l], z, half, kFormEvalTol);
    }

  std::vector<std::string> labels;
  labels.reserve(L);
  for (const auto& w : alphabet) labels.push_back(w.label);
  Signature sig(labels, ctx.order);

  // level r values at all nodes, built from level r-1
  std::vector<std::vector<Complex>> prev(1, std::vector<Complex>(n + 1, Complex(1.0)));
  std::vector<Complex> g(n + 1);
  for (int r = 1; r <= ctx.order; ++r) {
    std::vector<std::vector<Complex>> curr(prev.size() * L);
    for (std::size_t p = 0; p < prev.size(); ++p) {
      for (std::size_t l = 0; l < L; ++l) {
        for (int j = 0; j <= n; ++j) g[j] = prev[p][j] * letter_vals[l][j];
        curr[p * L + l] = cheb_antiderivative(ws, g);
      }
    }
    auto& lvl = sig.levels()[r];
    for (std::size_t i = 0; i < curr.size(); ++i) lvl[i] = curr[i][0];  // x = +1 end
    prev = std::move(curr);
  }
  return sig;
}

Signature adaptive_signature(PanelContext& ctx, Complex za, Complex zb, double tol, int depth) {
  Signature whole = panel_signature(ctx, za, zb);
  Complex mid = 0.5 * (za + zb);
  Signature split =
      compose_signatures(panel_signature(ctx, za, mid), panel_signature(ctx, mid, zb));
  if (whole.max_abs_diff(split) < tol || depth >= ctx.opt.max_depth) return split;
  Signature left = adaptive_signature(ctx, za, mid, 0.5 * tol, depth + 1);
  Signature right = adaptive_signature(ctx, mid, zb, 0.5 * tol, depth + 1);
  return compose_signatures(left, right);
}

std::vector<std::string> alphabet_labels(const std::vector<FormLetter>& alphabet) {
  std::vector<std::string> labels;
  labels.reserve(alphabet.size());
  for (const auto& w : alphabet) labels.push_back(w.label);
  return labels;
}

}  // namespace

Signature segment_signature(const std::vector<FormLetter>& alphabet, Complex z0, Complex z1,
                            int order, double tol, const QuadratureOptions& opt) {
  if (tol <= 0.0) throw std::invalid_argument("segment_signature: tol must be positive");
  if (z0 == z1) return Signature(alphabet_labels(alphabet), order);
  if (std::min(z0.imag(), z1.imag()) < kDefaultYMin)
    throw std::invalid_argument("segment_signature: endpoint below the y_min floor");
  PanelContext ctx{&alphabet, order, tol, opt, 0};
  return adaptive_signature(ctx, z0, z1, tol, 0);
}

Signature path_signature(const std::vector<FormLetter>& alphabet, const Path& path, int order,
                         double tol, const QuadratureOptions& opt) {
  Signature acc(alphabet_labels(alphabet), order);
  std::size_t nseg = path.nsegments();
  if (nseg == 0) return acc;
  double seg_tol = tol / static_cast<double>(nseg);
  for (std::size_t i = 0; i < nseg; ++i) {
    Signature s =
        segment_signature(alphabet, path.waypoints[i], path.waypoints[i + 1], order, seg_tol, opt);
    acc = compose_signatures(acc, s);
  }
  return acc;
}

Signature loop_signature(const std::vector<FormLetter>& alphabet, Complex z0,
                         const GroupElement& g, int order, double tol,
                         const QuadratureOptions& opt) {
  if (g.is_identity()) return Signature(alphabet_labels(alphabet), order);
  return segment_signature(alphabet, z0, apply_moebius(g, z0), order, tol, opt);
}

// ---------------------------------------------------------------------------

Functional Functional::constant(std::vector<std::string> alphabet, Complex c) {
  Functional f;
  f.alphabet = std::move(alphabet);
  if (c != Complex(0.0)) f.coeffs[{}] = c;
  f.declared_length = 0;
  f.status = HomotopyStatus::GuaranteedPureType;
  return f;
}

Functional Functional::single_word(std::vector<std::string> alphabet, LetterWord w, Complex c) {
  Functional f;
  f.alphabet = std::move(alphabet);
  f.add(w, c);
  f.declared_length = static_cast<int>(w.size());
  return f;
}

Functional& Functional::add(const LetterWord& w, Complex c) {
  for (int x : w)
    if (x < 0 || x >= static_cast<int>(alphabet.size()))
      throw std::invalid_argument("Functional: letter index out of range");
  auto [it, inserted] = coeffs.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) coeffs.erase(it);
  }
  declared_length = std::max(declared_length, static_cast<int>(w.size()));
  return *this;
}

Complex Functional::constant_term() const {
  auto it = coeffs.find({});
  return it == coeffs.end() ? Complex(0.0) : it->second;
}

Complex Functional::contract(const Signature& s) const {
  if (s.alphabet() != alphabet)
    throw std::invalid_argument("Functional::contract: alphabet mismatch");
  Complex acc = 0.0;
  for (const auto& [w, c] : coeffs) acc += c * s.value(w);
  return acc;
}

int Functional::max_word_length() const {
  int m = 0;
  for (const auto& [w, c] : coeffs) m = std::max(m, static_cast<int>(w.size()));
  return m;
}

bool Functional::is_pure_type(const std::vector<FormLetter>& letters) const {
  int seen = -1;
  for (const auto& [w, c] : coeffs)
    for (int x : w) {
      int p = letters.at(x).hodge_p;
      if (seen < 0)
        seen = p;
      else if (seen != p)
        return false;
    }
  return true;
}

namespace {

void shuffle_words_rec(const LetterWord& u, std::size_t iu, const LetterWord& v, std::size_t iv,
                       LetterWord& prefix, std::map<LetterWord, double>& out) {
  if (iu == u.size() && iv == v.size()) {
    out[prefix] += 1.0;
    return;
  }
  if (iu < u.size()) {
    prefix.push_back(u[iu]);
    shuffle_words_rec(u, iu + 1, v, iv, prefix, out);
    prefix.pop_back();
  }
  if (iv < v.size()) {
    prefix.push_back(v[iv]);
    shuffle_words_rec(u, iu, v, iv + 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Functional shuffle_product(const Functional& a, const Functional& b) {
  if (a.alphabet != b.alphabet)
    throw std::invalid_argument("shuffle_product: alphabet mismatch");
  Functional out;
  out.alphabet = a.alphabet;
  for (const auto& [u, cu] : a.coeffs)
    for (const auto& [v, cv] : b.coeffs) {
      std::map<LetterWord, double> sh;
      LetterWord prefix;
      shuffle_words_rec(u, 0, v, 0, prefix, sh);
      for (const auto& [w, mult] : sh) out.add(w, cu * cv * mult);
    }
  out.declared_length = a.declared_length + b.declared_length;
  if (a.status == HomotopyStatus::Unchecked || b.status == HomotopyStatus::Unchecked)
    out.status = HomotopyStatus::Unchecked;
  else
    out.status = HomotopyStatus::NumericallyChecked;
  return out;
}

std::vector<std::pair<Functional, Functional>> deconcatenate(const Functional& f) {
  std::map<LetterWord, Functional> by_suffix;
  for (const auto& [w, c] : f.coeffs) {
    for (std::size_t i = 0; i <= w.size(); ++i) {
      LetterWord prefix(w.begin(), w.begin() + i);
      LetterWord suffix(w.begin() + i, w.end());
      auto it = by_suffix.find(suffix);
      if (it == by_suffix.end()) {
        Functional a;
        a.alphabet = f.alphabet;
        it = by_suffix.emplace(suffix, std::move(a)).first;
      }
      it->second.add(prefix, c);
    }
  }
  std::vector<std::pair<Functional, Functional>> out;
  std::vector<const LetterWord*> keys;
  for (const auto& [u, a] : by_suffix) keys.push_back(&u);
  std::sort(keys.begin(), keys.end(), [](const LetterWord* x, const LetterWord* y) {
    if (x->size() != y->size()) return x->size() < y->size();
    return *x < *y;
  });
  for (const LetterWord* u : keys)
    out.emplace_back(by_suffix.at(*u), Functional::single_word(f.alphabet, *u));
  return out;
}

// ---------------------------------------------------------------------------

LoopCache::LoopCache(const GroupPreset& preset, const FormBank& bank,
                     std::vector<std::string> alphabet_labels, int order, double tol,
                     std::optional<Complex> basepoint)
    : preset_(&preset),
      bank_(&bank),
      labels_(std::move(alphabet_labels)),
      letters_(bank.alphabet(labels_)),
      order_(order),
      tol_(tol),
      z0_(basepoint.value_or(preset.basepoint)) {}

void LoopCache::ensure_generators() {
  if (gens_ready_) return;
  for (std::size_t i = 0; i < preset_->generators.size(); ++i) {
    const GroupElement& g = preset_->generators[i];
    gen_loops_.emplace(static_cast<int>(i) + 1, direct_loop(g));
    gen_loops_.emplace(-(static_cast<int>(i) + 1), direct_loop(g.inverse()));
  }
  gens_ready_ = true;
}

Signature LoopCache::direct_loop(const GroupElement& g) const {
  return loop_signature(letters_, z0_, g, order_, tol_);
}

const Signature& LoopCache::loop(const GroupElement& g) {
  auto it = cache_.find(g);
  if (it != cache_.end()) return it->second;
  ensure_generators();
  Word w = g.word ? *g.word : word_decompose(*preset_, g, 1 << 20);
  Signature sig(labels_, order_);
  for (int x : w) sig = compose_signatures(sig, gen_loops_.at(x));
  GroupElement key = g;
  key.word.reset();
  return cache_.emplace(key, std::move(sig)).first->second;
}

Complex LoopCache::period(const GroupElement& g, int letter) {
  return loop(g).value({letter});
}

std::string LoopCache::cache_key() const {
  std::ostringstream os;
  os << preset_->name << "_o" << order_ << "_t" << tol_ << "_z" << z0_.real() << "_"
     << z0_.imag();
  for (const auto& l : labels_) os << "_" << l;
  return os.str();
}

void LoopCache::save(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json j;
  j["key"] = cache_key();
  auto dump_sig = [](const Signature& s) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& lvl : s.levels()) {
      nlohmann::json l = nlohmann::json::array();
      for (Complex v : lvl) l.push_back({v.real(), v.imag()});
      out.push_back(l);
    }
    return out;
  };
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& [idx, sig] : gen_loops_) gens.push_back({{"index", idx}, {"sig", dump_sig(sig)}});
  j["generator_loops"] = gens;
  nlohmann::json elems = nlohmann::json::array();
  for (const auto& [g, sig] : cache_)
    elems.push_back({{"matrix", g.str()}, {"sig", dump_sig(sig)}});
  j["elements"] = elems;
  std::ofstream out(fs::path(dir) / (cache_key() + ".json"));
  out << j.dump();
}

bool LoopCache::load(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::path file = fs::path(dir) / (cache_key() + ".json");
  std::ifstream in(file);
  if (!in) return false;
  nlohmann::json j;
  try {
    in >> j;
  } catch (...) {
    return false;
  }
  if (j.value("key", "") != cache_key()) return false;
  auto read_sig = [&](const nlohmann::json& js) {
    Signature s(labels_, order_);
    for (std::size_t r = 0; r < js.size() && r < s.levels().size(); ++r)
      for (std::size_t i = 0; i < js[r].size(); ++i)
        s.levels()[r][i] = Complex(js[r][i][0].get<double>(), js[r][i][1].get<double>());
    return s;
  };
  gen_loops_.clear();
  for (const auto& e : j["generator_loops"])
    gen_loops_.emplace(e["index"].get<int>(), read_sig(e["sig"]));
  gens_ready_ = !gen_loops_.empty();
  return gens_ready_;
}

Complex pair_functional(const Functional& f, const GroupRingElement& xi, LoopCache& cache) {
  Complex acc = 0.0;
  for (const auto& [g, c] : xi.terms()) acc += c * f.contract(cache.loop(g));
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

Complex merged_word_value(const Signature& sig, const LetterWord& word, std::size_t pos,
                          const std::vector<std::pair<int, Complex>>& rule) {
  Complex acc = 0.0;
  LetterWord w = word;
  for (const auto& [letter, coeff] : rule) {
    w[pos] = letter;
    acc += coeff * sig.value(w);
  }
  return acc;
}

const std::vector<std::pair<int, Complex>>& rule_for(
    const std::map<int, std::vector<std::pair<int, Complex>>>& product_rule, int letter) {
  auto it = product_rule.find(letter);
  if (it == product_rule.end())
    throw std::invalid_argument("reduce_exact_letter: product rule missing for a letter");
  return it->second;
}

}  // namespace

ExactLetterReport reduce_exact_letter(
    const std::vector<FormLetter>& alphabet, const LetterWord& word, std::size_t df_pos,
    const std::function<Complex(Complex)>& potential,
    const std::map<int, std::vector<std::pair<int, Complex>>>& product_rule, const Path& path,
    double tol, const QuadratureOptions& opt) {
  if (df_pos >= word.size()) throw std::invalid_argument("reduce_exact_letter: bad position");
  const std::size_t n = word.size();
  Signature sig = path_signature(alphabet, path, static_cast<int>(n), tol, opt);

  ExactLetterReport rep;
  rep.lhs = sig.value(word);
  Complex f_start = potential(path.start());
  Complex f_end = potential(path.end());

  auto drop = [&](std::size_t pos) {
    LetterWord w;
    for (std::size_t i = 0; i < word.size(); ++i)
      if (i != pos) w.push_back(word[i]);
    return w;
  };

  if (n == 1) {
    rep.rhs = f_end - f_start;
  } else if (df_pos == 0) {
    LetterWord tail = drop(0);
    rep.rhs = merged_word_value(sig, tail, 0, rule_for(product_rule, tail[0])) -
              f_start * sig.value(tail);
    // catalog form of the word, relative to the path start
    Functional fn;
    std::vector<std::string> labels;
    for (const auto& w : alphabet) labels.push_back(w.label);
    fn.alphabet = labels;
    for (const auto& [letter, coeff] : rule_for(product_rule, tail[0])) {
      LetterWord w = tail;
      w[0] = letter;
      fn.add(w, coeff);
    }
    fn.add(tail, -f_start);
    rep.rewritten = fn;
    rep.rewrite_available = true;
  } else if (df_pos == n - 1) {
    LetterWord head = drop(n - 1);
    rep.rhs = f_end * sig.value(head) -
              merged_word_value(sig, head, head.size() - 1,
                                rule_for(product_rule, head.back()));
  } else {
    LetterWord right = drop(df_pos);  // df merged into the letter after it
    rep.rhs = merged_word_value(sig, right, df_pos, rule_for(product_rule, right[df_pos])) -
              merged_word_value(sig, right, df_pos - 1, rule_for(product_rule, right[df_pos - 1]));
  }
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

}  // namespace geomod
