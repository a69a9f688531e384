#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "geomod/modgroup.hpp"

namespace geomod {

/// Finite complex combination of group elements.  Terms with coefficient
/// exactly zero are never stored; keys compare by sign-normalized matrix, so
/// distinct words for the same element merge.
class GroupRingElement {
 public:
  GroupRingElement() = default;

  static GroupRingElement unit() { return of(GroupElement(), 1.0); }
  static GroupRingElement of(const GroupElement& g, Complex coeff = 1.0);

  const std::map<GroupElement, Complex>& terms() const { return terms_; }
  GroupRingElement& add_term(const GroupElement& g, Complex coeff);

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement operator*(Complex scalar) const;
  GroupRingElement operator-() const { return *this * Complex(-1.0, 0.0); }

  /// Coefficient sum; multiplicative for the convolution product.
  Complex deg() const;

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::string str() const;

 private:
  std::map<GroupElement, Complex> terms_;
};

/// prod_i (g_i - 1), an element of J^s for s factors.
GroupRingElement j_power_element(const std::vector<GroupElement>& factors);

/// Weight-k slash action of a group ring element on a function on the upper
/// half-plane: (f |_k xi)(z) = sum a_i j(g_i, z)^{-k} f(g_i z).  k must be
/// even so the PSL2 sign ambiguity drops out.
std::function<Complex(Complex)> slash(std::function<Complex(Complex)> f, int k,
                                      const GroupRingElement& xi);

/// Parse expressions like "(g1-1)(g2-1)", "(g1*g2^-1-1)" or "g1" over the
/// preset generators.
GroupRingElement parse_group_ring_expr(const GroupPreset& preset, const std::string& text);

}  // namespace geomod
