#include "geomod/groupring.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace geomod {

GroupRingElement GroupRingElement::of(const GroupElement& g, Complex coeff) {
  GroupRingElement e;
  e.add_term(g, coeff);
  return e;
}

GroupRingElement& GroupRingElement::add_term(const GroupElement& g, Complex coeff) {
  if (coeff == Complex(0.0, 0.0)) return *this;
  GroupElement key = g;
  key.word.reset();
  auto [it, inserted] = terms_.emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
  }
  return *this;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  GroupRingElement out = *this;
  for (const auto& [g, c] : o.terms_) out.add_term(g, c);
  return out;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  GroupRingElement out = *this;
  for (const auto& [g, c] : o.terms_) out.add_term(g, -c);
  return out;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  GroupRingElement out;
  for (const auto& [g1, c1] : terms_)
    for (const auto& [g2, c2] : o.terms_) out.add_term(g1 * g2, c1 * c2);
  return out;
}

GroupRingElement GroupRingElement::operator*(Complex scalar) const {
  GroupRingElement out;
  if (scalar == Complex(0.0, 0.0)) return out;
  for (const auto& [g, c] : terms_) out.add_term(g, c * scalar);
  return out;
}

Complex GroupRingElement::deg() const {
  Complex s = 0.0;
  for (const auto& [g, c] : terms_) s += c;
  return s;
}

std::string GroupRingElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
    os << ")*" << g.str();
  }
  return os.str();
}

GroupRingElement j_power_element(const std::vector<GroupElement>& factors) {
  if (factors.empty()) throw std::invalid_argument("j_power_element: empty factor list");
  GroupRingElement out = GroupRingElement::unit();
  for (const auto& g : factors) {
    GroupRingElement f = GroupRingElement::of(g) - GroupRingElement::unit();
    out = out * f;
  }
  return out;
}

std::function<Complex(Complex)> slash(std::function<Complex(Complex)> f, int k,
                                      const GroupRingElement& xi) {
  if (k % 2 != 0) throw std::invalid_argument("slash: weight must be even");
  auto terms = xi.terms();
  return [f = std::move(f), k, terms](Complex z) {
    Complex out = 0.0;
    for (const auto& [g, c] : terms) {
      Complex j = automorphy(g, z);
      out += c * f(apply_moebius(g, z)) * std::pow(j, -k);
    }
    return out;
  };
}

namespace {

struct Parser {
  const GroupPreset& preset;
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char ch) {
    skip_ws();
    if (pos < s.size() && s[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  long parse_int() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos || (pos - start == 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      throw std::invalid_argument("group ring expression: expected integer at position " +
                                  std::to_string(start));
    return std::stol(s.substr(start, pos - start));
  }

  // word := gN[^e] (('*'|'.') gN[^e])*
  GroupElement parse_element() {
    GroupElement g;
    while (true) {
      skip_ws();
      if (peek() != 'g') throw std::invalid_argument("group ring expression: expected generator");
      ++pos;
      long idx = parse_int();
      if (idx < 1 || idx > static_cast<long>(preset.generators.size()))
        throw std::invalid_argument("group ring expression: generator index out of range");
      long e = 1;
      if (eat('^')) e = parse_int();
      GroupElement gen = preset.generators[idx - 1];
      if (e < 0) {
        gen = gen.inverse();
        e = -e;
      }
      for (long i = 0; i < e; ++i) g = g * gen;
      size_t save = pos;
      if (!eat('*') && !eat('.')) {
        pos = save;
        break;
      }
      if (peek() != 'g') {
        pos = save;
        break;
      }
    }
    return g;
  }

  // term := integer | word
  GroupRingElement parse_term() {
    skip_ws();
    if (peek() == 'g') return GroupRingElement::of(parse_element());
    long n = parse_int();
    return GroupRingElement::unit() * Complex(static_cast<double>(n), 0.0);
  }

  // factor := '(' term (('+'|'-') term)* ')' | term
  GroupRingElement parse_factor() {
    if (eat('(')) {
      GroupRingElement acc = parse_term();
      while (true) {
        if (eat('+'))
          acc = acc + parse_term();
        else if (eat('-'))
          acc = acc - parse_term();
        else
          break;
      }
      if (!eat(')')) throw std::invalid_argument("group ring expression: expected ')'");
      return acc;
    }
    return parse_term();
  }

  GroupRingElement parse() {
    GroupRingElement acc = parse_factor();
    while (true) {
      skip_ws();
      if (pos >= s.size()) break;
      acc = acc * parse_factor();
    }
    return acc;
  }
};

}  // namespace

GroupRingElement parse_group_ring_expr(const GroupPreset& preset, const std::string& text) {
  Parser p{preset, text};
  GroupRingElement out = p.parse();
  return out;
}

}  // namespace geomod
