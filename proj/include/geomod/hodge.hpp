#pragma once

#include "geomod/chen.hpp"

namespace geomod {

struct FiltrationDegree {
  int hodge_p = 0;   // number of dz-letters (summed over a word)
  int weight_l = 0;  // length plus number of log-pole letters
  int length_r = 0;
  bool operator==(const FiltrationDegree&) const = default;
};

FiltrationDegree word_degree(const std::vector<FormLetter>& word);

/// Componentwise over the terms: hodge_p is the min word degree (membership
/// in F^p needs every word at >= p), weight_l and length are maxima.
FiltrationDegree functional_degree(const Functional& f, const FormBank& bank);

/// Symbolic strata of the primitive spaces of weight k built from twists of
/// length <= s.  Labels name series kind x cusp x twist bucket; strata are
/// cumulative label sets so nesting is plain set inclusion.
struct PrimitiveTable {
  int weight = 4;
  int twist_length = 2;
  std::string preset;
  std::vector<std::pair<int, std::vector<std::string>>> w_strata;
  std::vector<std::pair<int, std::vector<std::string>>> f_strata;
};

PrimitiveTable primitive_space_table(int k, int s, const GroupPreset& preset);

std::string format_primitive_table(const PrimitiveTable& t);

}  // namespace geomod
