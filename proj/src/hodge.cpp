#include "geomod/hodge.hpp"

#include <algorithm>
#include <sstream>

namespace geomod {

FiltrationDegree word_degree(const std::vector<FormLetter>& word) {
  FiltrationDegree d;
  d.length_r = static_cast<int>(word.size());
  d.weight_l = d.length_r;
  for (const auto& w : word) {
    d.hodge_p += w.hodge_p;
    d.weight_l += w.log_weight_l;
  }
  return d;
}

FiltrationDegree functional_degree(const Functional& f, const FormBank& bank) {
  FiltrationDegree out;
  if (f.coeffs.empty()) return out;
  auto letters = bank.alphabet(f.alphabet);
  bool first = true;
  for (const auto& [w, c] : f.coeffs) {
    std::vector<FormLetter> word;
    word.reserve(w.size());
    for (int x : w) word.push_back(letters.at(x));
    FiltrationDegree d = word_degree(word);
    if (first) {
      out = d;
      first = false;
    } else {
      out.hodge_p = std::min(out.hodge_p, d.hodge_p);
      out.weight_l = std::max(out.weight_l, d.weight_l);
      out.length_r = std::max(out.length_r, d.length_r);
    }
  }
  return out;
}

namespace {

// twist buckets live on the compactified curve; only letters without log
// poles survive there
struct TwistSpace {
  int max_length = 0;   // 0 when the preset has no cusp letters
  int max_hodge = 0;    // largest per-letter dz-count among cusp letters
};

TwistSpace twist_space(const GroupPreset& preset, int s) {
  TwistSpace t;
  const FormBank& bank = FormBank::builtin(preset);
  bool any = false;
  for (const auto& label : bank.labels()) {
    const FormLetter& w = bank.letter(label);
    if (!w.extends_to_compactification()) continue;
    any = true;
    t.max_hodge = std::max(t.max_hodge, w.hodge_p);
  }
  t.max_length = any ? s : 0;
  return t;
}

std::string bucket_b(int r) { return "B" + std::to_string(r); }
std::string bucket_f(int j, int r) {
  return j <= 0 ? bucket_b(r) : "F" + std::to_string(j) + bucket_b(r);
}

}  // namespace

PrimitiveTable primitive_space_table(int k, int s, const GroupPreset& preset) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("primitive_space_table: need even k >= 4");
  if (s < 0) throw std::invalid_argument("primitive_space_table: need s >= 0");
  TwistSpace ts = twist_space(preset, s);
  PrimitiveTable table;
  table.weight = k;
  table.twist_length = s;
  table.preset = preset.name;

  auto cusp_labels = [&](const std::string& series, bool with_m, const std::string& bucket) {
    std::vector<std::string> out;
    for (const auto& c : preset.cusps)
      out.push_back(series + "(" + (with_m ? "m," : "") + c.name + "|" + bucket + ")");
    return out;
  };

  for (int l = 0; l <= k + s; ++l) {
    std::vector<std::string> labels;
    int r_p = std::min(l - (k - 1), ts.max_length);
    for (int r = 0; r <= r_p; ++r) {
      auto p = cusp_labels("P", true, bucket_b(r));
      labels.insert(labels.end(), p.begin(), p.end());
      auto pb = cusp_labels("Pbar", true, bucket_b(r));
      labels.insert(labels.end(), pb.begin(), pb.end());
    }
    int r_e = std::min(l - k, ts.max_length);
    for (int r = 0; r <= r_e; ++r) {
      auto e = cusp_labels("E", false, bucket_b(r));
      labels.insert(labels.end(), e.begin(), e.end());
    }
    std::sort(labels.begin(), labels.end());
    table.w_strata.emplace_back(l, std::move(labels));
  }

  int jmax = ts.max_length * std::max(ts.max_hodge, 1);
  for (int p = 0; p <= k + s; ++p) {
    std::vector<std::string> labels;
    auto add_series = [&](const std::string& series, bool with_m, int jmin) {
      if (jmin > jmax) return;
      for (int j = std::max(jmin, 0); j <= jmax; ++j) {
        auto lab = cusp_labels(series, with_m, bucket_f(j, ts.max_length));
        labels.insert(labels.end(), lab.begin(), lab.end());
      }
    };
    add_series("P", true, p - (k - 1));
    add_series("Pbar", true, p);
    add_series("E", false, p - k / 2);
    std::sort(labels.begin(), labels.end());
    table.f_strata.emplace_back(p, std::move(labels));
  }
  return table;
}

std::string format_primitive_table(const PrimitiveTable& t) {
  std::ostringstream os;
  os << "primitive spaces: weight " << t.weight << ", twist length <= " << t.twist_length
     << ", preset " << t.preset << "\n";
  auto join = [](const std::vector<std::string>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s << ", ";
      s << v[i];
    }
    return v.empty() ? std::string("0") : s.str();
  };
  for (const auto& [l, labels] : t.w_strata) os << "W" << l << ": " << join(labels) << "\n";
  for (const auto& [p, labels] : t.f_strata) os << "F" << p << ": " << join(labels) << "\n";
  return os.str();
}

}  // namespace geomod
