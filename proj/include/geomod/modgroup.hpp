#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

#include "geomod/common.hpp"

namespace geomod {

using BigInt = boost::multiprecision::cpp_int;

// A word over the free generators of a preset group: entry +k stands for
// generators[k-1], entry -k for its inverse.
using Word = std::vector<int>;

Word free_reduce(Word w);
Word invert_word(const Word& w);
std::string word_str(const Word& w);

/// Element of PSL2(Z): integer matrix of determinant 1, stored with the sign
/// fixed so that the first nonzero entry of (c, d) is positive.
class GroupElement {
 public:
  GroupElement() : a_(1), b_(0), c_(0), d_(1) {}
  GroupElement(BigInt a, BigInt b, BigInt c, BigInt d);
  static GroupElement from_ints(long long a, long long b, long long c, long long d);

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& d() const { return d_; }

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;

  bool operator==(const GroupElement& o) const;
  bool operator!=(const GroupElement& o) const { return !(*this == o); }
  bool operator<(const GroupElement& o) const;

  bool is_identity() const;
  BigInt trace() const { return a_ + d_; }
  bool is_parabolic() const;

  std::string str() const;

  // Optional decomposition over preset generators, carried as metadata and
  // ignored by comparisons.
  std::optional<Word> word;

 private:
  BigInt a_, b_, c_, d_;
  void normalize();
};

/// Moebius action (az+b)/(cz+d) on the upper half-plane.
Complex apply_moebius(const GroupElement& g, Complex z);

/// Automorphy factor cz+d of the sign-normalized representative.
Complex automorphy(const GroupElement& g, Complex z);

struct Cusp {
  std::string name;       // "inf", "0", "1"
  GroupElement scaling;   // sigma with sigma(inf) = cusp
  long width = 1;
};

struct GroupPreset {
  std::string name;
  long level = 1;
  int genus = 0;
  std::vector<GroupElement> generators;
  std::vector<Cusp> cusps;
  Complex basepoint;   // default lift of the marked point to the half-plane

  bool contains(const GroupElement& g) const;
  const Cusp& cusp(const std::string& cusp_name) const;
};

const GroupPreset& gamma2();
const GroupPreset& gamma0_11();
const GroupPreset& preset_by_name(const std::string& name);

/// Generator of the stabilizer of the cusp: scaling * T^width * scaling^-1.
GroupElement cusp_stabilizer_generator(const Cusp& cusp);

/// True when g lies in the stabilizer of the cusp (conjugate of <T^width>).
bool in_cusp_stabilizer(const Cusp& cusp, const GroupElement& g);

GroupElement word_to_element(const GroupPreset& preset, const Word& w);

/// Freely reduced word with product(w) = +-g.  Throws std::invalid_argument
/// when g is not in the preset group, std::length_error past max_len.
Word word_decompose(const GroupPreset& preset, const GroupElement& g, int max_len = 64);

/// One representative per coset of (cusp stabilizer)\Gamma whose bottom row
/// (c, d) of scaling^-1 * gamma satisfies |c| <= c_bound and
/// |d| <= max(c_bound, 1), rows taken up to overall sign.
std::vector<GroupElement> coset_reps(const GroupPreset& preset, const Cusp& cusp, long c_bound);

/// Free generators of Gamma0(11) computed by a Reidemeister-Schreier pass
/// over the coset action on P^1(F_11).  The preset freezes this output.
std::vector<GroupElement> derive_gamma0_11_generators();

}  // namespace geomod
