#include "geomod/modgroup.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace geomod {

namespace {

BigInt div_nearest(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  BigInt r = num - q * den;
  if (r == 0) return q;
  if (2 * abs(r) > abs(den)) q += ((r < 0) != (den < 0)) ? -1 : 1;
  return q;  // exact half rounds toward zero
}

BigInt mod_pos(const BigInt& x, long m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

GroupElement::GroupElement(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ * d_ - b_ * c_ != 1)
    throw std::invalid_argument("GroupElement: determinant must be 1, got matrix " + str());
  normalize();
}

GroupElement GroupElement::from_ints(long long a, long long b, long long c, long long d) {
  return GroupElement(BigInt(a), BigInt(b), BigInt(c), BigInt(d));
}

void GroupElement::normalize() {
  bool flip = (c_ != 0) ? (c_ < 0) : (d_ < 0);
  if (flip) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  return GroupElement(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                      c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

GroupElement GroupElement::inverse() const {
  return GroupElement(d_, -b_, -c_, a_);
}

bool GroupElement::operator==(const GroupElement& o) const {
  return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

bool GroupElement::operator<(const GroupElement& o) const {
  if (a_ != o.a_) return a_ < o.a_;
  if (b_ != o.b_) return b_ < o.b_;
  if (c_ != o.c_) return c_ < o.c_;
  return d_ < o.d_;
}

bool GroupElement::is_identity() const {
  return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1;
}

bool GroupElement::is_parabolic() const {
  return !is_identity() && abs(trace()) == 2;
}

std::string GroupElement::str() const {
  std::ostringstream os;
  os << "[[" << a_ << "," << b_ << "],[" << c_ << "," << d_ << "]]";
  return os.str();
}

Complex apply_moebius(const GroupElement& g, Complex z) {
  if (z.imag() <= 0.0)
    throw std::invalid_argument("apply_moebius: point must have positive imaginary part");
  Complex a(g.a().convert_to<double>(), 0), b(g.b().convert_to<double>(), 0);
  Complex c(g.c().convert_to<double>(), 0), d(g.d().convert_to<double>(), 0);
  return (a * z + b) / (c * z + d);
}

Complex automorphy(const GroupElement& g, Complex z) {
  if (z.imag() <= 0.0)
    throw std::invalid_argument("automorphy: point must have positive imaginary part");
  return Complex(g.c().convert_to<double>(), 0) * z + Complex(g.d().convert_to<double>(), 0);
}

Word free_reduce(Word w) {
  Word out;
  for (int x : w) {
    if (x == 0) continue;
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word invert_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

std::string word_str(const Word& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ".";
    os << "g" << std::abs(w[i]);
    if (w[i] < 0) os << "^-1";
  }
  return os.str();
}

bool GroupPreset::contains(const GroupElement& g) const {
  if (name == "gamma2") {
    return mod_pos(g.a(), 2) == 1 && mod_pos(g.d(), 2) == 1 &&
           mod_pos(g.b(), 2) == 0 && mod_pos(g.c(), 2) == 0;
  }
  if (name == "gamma0_11") return mod_pos(g.c(), 11) == 0;
  throw std::logic_error("contains: unknown preset " + name);
}

const Cusp& GroupPreset::cusp(const std::string& cusp_name) const {
  for (const auto& c : cusps)
    if (c.name == cusp_name) return c;
  throw std::invalid_argument("unknown cusp '" + cusp_name + "' for preset " + name);
}

GroupElement cusp_stabilizer_generator(const Cusp& cusp) {
  GroupElement t(1, cusp.width, 0, 1);
  return cusp.scaling * t * cusp.scaling.inverse();
}

bool in_cusp_stabilizer(const Cusp& cusp, const GroupElement& g) {
  GroupElement x = cusp.scaling.inverse() * g * cusp.scaling;
  if (x.c() != 0) return false;
  return x.b() % cusp.width == 0;
}

GroupElement word_to_element(const GroupPreset& preset, const Word& w) {
  GroupElement g;
  for (int x : w) {
    if (x == 0 || std::abs(x) > static_cast<int>(preset.generators.size()))
      throw std::invalid_argument("word_to_element: generator index out of range");
    const GroupElement& gen = preset.generators[std::abs(x) - 1];
    g = g * (x > 0 ? gen : gen.inverse());
  }
  g.word = free_reduce(w);
  return g;
}

// ---------------------------------------------------------------------------
// Gamma(2): free on T^2 and L^2; decomposition is a parity-protected Euclid
// on the left column (a odd, c even, so |a| != |c| whenever both nonzero).

namespace {

Word decompose_gamma2(const GroupPreset& preset, const GroupElement& g, int max_len) {
  const GroupElement A = preset.generators[0];  // [[1,2],[0,1]]
  const GroupElement B = preset.generators[1];  // [[1,0],[2,1]]
  Word w;
  GroupElement cur = g;
  auto emit = [&](int idx, const BigInt& power) {
    long long p = power.convert_to<long long>();
    for (long long i = 0; i < std::llabs(p); ++i) w.push_back(p > 0 ? idx : -idx);
    if (static_cast<int>(w.size()) > max_len)
      throw std::length_error("word_decompose: word length cap exceeded");
  };
  while (true) {
    if (cur.c() == 0) {
      // normalized upper triangular: [[1, b],[0, 1]] with b even
      if (cur.b() % 2 != 0) throw std::invalid_argument("word_decompose: element not in gamma2");
      emit(1, cur.b() / 2);
      break;
    }
    if (abs(cur.a()) > abs(cur.c())) {
      BigInt m = div_nearest(cur.a(), 2 * cur.c());
      emit(1, m);
      GroupElement step(1, -2 * m, 0, 1);  // A^{-m}
      cur = step * cur;
    } else {
      BigInt n = div_nearest(cur.c(), 2 * cur.a());
      emit(2, n);
      GroupElement step(1, 0, -2 * n, 1);  // B^{-n}
      cur = step * cur;
    }
  }
  return free_reduce(w);
}

// ---------------------------------------------------------------------------
// Gamma0(11): Reidemeister-Schreier over PSL2(Z) = <s | s^2> * <u | u^3>
// acting on P^1(F_11).  The Schreier transversal walks u-triangles, so every
// u-edge carries a trivial generator and the three non-tree s-edges carry the
// free generators.

struct G11Tables {
  std::array<int, 12> act_s{};
  std::array<int, 12> act_u{};
  std::array<GroupElement, 12> transversal;
  std::array<int, 12> s_edge_out{};  // signed generator index, 0 on tree edges
  std::vector<GroupElement> gens;
  int identity_coset = 0;
};

int p1_index(long c, long d) {
  c = ((c % 11) + 11) % 11;
  d = ((d % 11) + 11) % 11;
  if (c == 0) return 11;
  // scale row so that c = 1
  long cinv = 1;
  for (long k = 1; k < 11; ++k)
    if ((c * k) % 11 == 1) {
      cinv = k;
      break;
    }
  return static_cast<int>((d * cinv) % 11);
}

std::pair<long, long> p1_point(int idx) {
  if (idx == 11) return {0, 1};
  return {1, idx};
}

int p1_act(int idx, const GroupElement& m) {
  auto [c, d] = p1_point(idx);
  long a = m.a().convert_to<long>(), b = m.b().convert_to<long>();
  long mc = m.c().convert_to<long>(), md = m.d().convert_to<long>();
  return p1_index(c * a + d * mc, c * b + d * md);
}

G11Tables build_g11_tables() {
  G11Tables t;
  const GroupElement S = GroupElement::from_ints(0, -1, 1, 0);
  const GroupElement U = S * GroupElement::from_ints(1, 1, 0, 1);  // order 3
  for (int p = 0; p < 12; ++p) {
    t.act_s[p] = p1_act(p, S);
    t.act_u[p] = p1_act(p, U);
    if (t.act_s[p] == p) throw std::logic_error("g11: unexpected s-fixed coset");
  }
  t.identity_coset = p1_index(0, 1);

  std::array<int, 12> triangle_of;
  triangle_of.fill(-1);
  int ntriangles = 0;
  for (int p = 0; p < 12; ++p) {
    if (triangle_of[p] >= 0) continue;
    int id = ntriangles++;
    int q = p;
    do {
      triangle_of[q] = id;
      q = t.act_u[q];
    } while (q != p);
  }
  if (ntriangles != 4) throw std::logic_error("g11: expected 4 u-orbits");

  std::array<bool, 4> seen{};
  std::array<bool, 12> assigned{};
  auto fill_triangle = [&](int p, const GroupElement& tp) {
    t.transversal[p] = tp;
    assigned[p] = true;
    int q = t.act_u[p];
    t.transversal[q] = tp * U;
    assigned[q] = true;
    int r = t.act_u[q];
    t.transversal[r] = tp * U * U;
    assigned[r] = true;
    seen[triangle_of[p]] = true;
  };
  fill_triangle(t.identity_coset, GroupElement());
  // connect remaining triangles through s-edges, scanning cosets in order
  bool progress = true;
  while (progress) {
    progress = false;
    for (int p = 0; p < 12; ++p) {
      if (!assigned[p]) continue;
      int q = t.act_s[p];
      if (seen[triangle_of[q]]) continue;
      fill_triangle(q, t.transversal[p] * S);
      progress = true;
    }
  }
  for (bool v : seen)
    if (!v) throw std::logic_error("g11: coset graph not connected");

  // u-edges must all carry trivial Schreier generators
  for (int p = 0; p < 12; ++p) {
    GroupElement gu = t.transversal[p] * U * t.transversal[t.act_u[p]].inverse();
    if (!gu.is_identity()) throw std::logic_error("g11: nontrivial u-edge");
  }
  for (int p = 0; p < 12; ++p) {
    int q = t.act_s[p];
    if (q < p) continue;
    GroupElement gs = t.transversal[p] * S * t.transversal[q].inverse();
    if (gs.is_identity()) {
      t.s_edge_out[p] = 0;
      t.s_edge_out[q] = 0;
      continue;
    }
    t.gens.push_back(gs);
    int idx = static_cast<int>(t.gens.size());
    t.s_edge_out[p] = idx;
    t.s_edge_out[q] = -idx;
  }
  if (t.gens.size() != 3) throw std::logic_error("g11: expected 3 free generators");
  for (const auto& g : t.gens)
    if (mod_pos(g.c(), 11) != 0) throw std::logic_error("g11: generator outside Gamma0(11)");
  return t;
}

const G11Tables& g11_tables() {
  static const G11Tables t = build_g11_tables();
  return t;
}

// word over the letters {s, u} in normal form (s^2 and u^3 cancelled)
std::vector<char> su_word(const GroupElement& g) {
  std::vector<char> out;
  auto push = [&](char ch) {
    out.push_back(ch);
    while (true) {
      size_t n = out.size();
      if (n >= 2 && out[n - 1] == 's' && out[n - 2] == 's') {
        out.resize(n - 2);
        continue;
      }
      if (n >= 3 && out[n - 1] == 'u' && out[n - 2] == 'u' && out[n - 3] == 'u') {
        out.resize(n - 3);
        continue;
      }
      break;
    }
  };
  auto push_t_power = [&](const BigInt& m) {
    long long p = m.convert_to<long long>();
    for (long long i = 0; i < std::llabs(p); ++i) {
      if (p > 0) {
        push('s');
        push('u');
      } else {
        push('u');
        push('u');
        push('s');
      }
    }
  };
  const GroupElement Sinv = GroupElement::from_ints(0, 1, -1, 0);
  GroupElement cur = g;
  while (cur.c() != 0) {
    BigInt m = div_nearest(cur.a(), cur.c());
    push_t_power(m);
    push('s');
    GroupElement tinv(1, -m, 0, 1);
    cur = Sinv * (tinv * cur);
  }
  push_t_power(cur.b());  // cur = [[1, b],[0, 1]] after normalization
  return out;
}

Word decompose_gamma0_11(const GroupElement& g, int max_len) {
  const G11Tables& t = g11_tables();
  Word out;
  int p = t.identity_coset;
  for (char ch : su_word(g)) {
    if (ch == 's') {
      if (t.s_edge_out[p] != 0) {
        out.push_back(t.s_edge_out[p]);
        if (static_cast<int>(out.size()) > max_len + 8)
          throw std::length_error("word_decompose: word length cap exceeded");
      }
      p = t.act_s[p];
    } else {
      p = t.act_u[p];
    }
  }
  if (p != t.identity_coset)
    throw std::invalid_argument("word_decompose: element not in gamma0_11");
  out = free_reduce(out);
  if (static_cast<int>(out.size()) > max_len)
    throw std::length_error("word_decompose: word length cap exceeded");
  return out;
}

}  // namespace

Word word_decompose(const GroupPreset& preset, const GroupElement& g, int max_len) {
  if (!preset.contains(g))
    throw std::invalid_argument("word_decompose: element not in " + preset.name);
  Word w;
  if (preset.name == "gamma2")
    w = decompose_gamma2(preset, g, max_len);
  else if (preset.name == "gamma0_11")
    w = decompose_gamma0_11(g, max_len);
  else
    throw std::logic_error("word_decompose: unknown preset");
  if (word_to_element(preset, w) != g)
    throw std::logic_error("word_decompose: round trip failed for " + g.str());
  return w;
}

std::vector<GroupElement> derive_gamma0_11_generators() {
  return g11_tables().gens;
}

// ---------------------------------------------------------------------------

const GroupPreset& gamma2() {
  static const GroupPreset p = [] {
    GroupPreset g;
    g.name = "gamma2";
    g.level = 2;
    g.genus = 0;
    g.generators = {GroupElement::from_ints(1, 2, 0, 1),
                    GroupElement::from_ints(1, 0, 2, 1)};
    g.cusps = {
        {"inf", GroupElement(), 2},
        {"0", GroupElement::from_ints(0, -1, 1, 0), 2},
        {"1", GroupElement::from_ints(1, -1, 1, 0), 2},
    };
    g.basepoint = Complex(0.0, 1.0);
    return g;
  }();
  return p;
}

const GroupPreset& gamma0_11() {
  static const GroupPreset p = [] {
    GroupPreset g;
    g.name = "gamma0_11";
    g.level = 11;
    g.genus = 1;
    // frozen output of derive_gamma0_11_generators()
    g.generators = derive_gamma0_11_generators();
    g.cusps = {
        {"inf", GroupElement(), 1},
        {"0", GroupElement::from_ints(0, -1, 1, 0), 11},
    };
    g.basepoint = Complex(0.0, 0.30151134457776363);  // i / sqrt(11)
    return g;
  }();
  return p;
}

const GroupPreset& preset_by_name(const std::string& name) {
  if (name == "gamma2") return gamma2();
  if (name == "gamma0_11") return gamma0_11();
  throw std::invalid_argument("unknown group preset '" + name + "'");
}

std::vector<GroupElement> coset_reps(const GroupPreset& preset, const Cusp& cusp, long c_bound) {
  if (c_bound < 0) throw std::invalid_argument("coset_reps: c_bound must be >= 0");
  long d_bound = std::max(c_bound, 1L);
  const GroupElement sigma = cusp.scaling;
  std::vector<GroupElement> reps;
  for (long c = 0; c <= c_bound; ++c) {
    long dlo = (c == 0) ? 1 : -d_bound;
    long dhi = (c == 0) ? 1 : d_bound;
    for (long d = dlo; d <= dhi; ++d) {
      if (std::gcd(c, d) != 1) continue;
      // complete (c, d) to [[x, y],[c, d]] with xd - yc = 1
      long long x = 0, y = 0;
      {
        long long r0 = d, r1 = c, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
          long long q = r0 / r1;
          std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
          std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
          std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
        }
        // r0 = s0*d + t0*c = +-1
        x = s0 * r0;
        y = -t0 * r0;
      }
      GroupElement m0{BigInt(x), BigInt(y), BigInt(c), BigInt(d)};
      for (long tshift = 0; tshift < cusp.width; ++tshift) {
        GroupElement mt = GroupElement(1, tshift, 0, 1) * m0;
        GroupElement gamma = sigma * mt;
        if (preset.contains(gamma)) {
          reps.push_back(gamma);
          break;
        }
      }
    }
  }
  return reps;
}

}  // namespace geomod
