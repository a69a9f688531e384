#include "geomod/jsonio.hpp"

#include <cmath>
#include <sstream>

namespace geomod {

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("parse_complex: empty string");
  if (s.back() != 'i' && s.back() != 'I') return Complex(std::stod(s), 0.0);
  s.pop_back();  // strip the i
  // split real part from imaginary coefficient at the last top-level +/-
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    char ch = s[k];
    if ((ch == '+' || ch == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (s.empty() || s == "+") return Complex(0.0, 1.0);
    if (s == "-") return Complex(0.0, -1.0);
    return Complex(0.0, std::stod(s));
  }
  double re = std::stod(s.substr(0, split));
  std::string im = s.substr(split);
  if (im == "+") return Complex(re, 1.0);
  if (im == "-") return Complex(re, -1.0);
  return Complex(re, std::stod(im));
}

std::string complex_str(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

Json letter_to_json(const FormLetter& w) {
  Json j;
  j["label"] = w.label;
  j["kind"] = form_kind_name(w.kind);
  j["group"] = w.group;
  j["step"] = w.series.step;
  Json coeffs = Json::array();
  for (Complex c : w.series.coeffs) coeffs.push_back({c.real(), c.imag()});
  j["coefficients"] = coeffs;
  return j;
}

FormLetter letter_from_json(const Json& j) {
  FormLetter w;
  w.label = j.at("label").get<std::string>();
  w.kind = form_kind_from_name(j.at("kind").get<std::string>());
  w.group = j.value("group", "");
  w.series.step = j.at("step").get<double>();
  for (const auto& c : j.at("coefficients"))
    w.series.coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  w.series.fit_tail(2.0, 0.0);
  switch (w.kind) {
    case FormKind::HolomorphicCusp:
      w.hodge_p = 1;
      w.log_weight_l = 0;
      break;
    case FormKind::Eisenstein:
      w.hodge_p = 1;
      w.log_weight_l = 1;
      break;
    case FormKind::AntiholomorphicCusp:
      w.hodge_p = 0;
      w.log_weight_l = 0;
      break;
  }
  return w;
}

Json functional_to_json(const Functional& f) {
  Json j;
  j["alphabet"] = f.alphabet;
  j["length"] = f.declared_length;
  switch (f.status) {
    case HomotopyStatus::GuaranteedPureType: j["status"] = "guaranteed-pure-type"; break;
    case HomotopyStatus::NumericallyChecked: j["status"] = "numerically-checked"; break;
    case HomotopyStatus::Unchecked: j["status"] = "unchecked"; break;
  }
  Json terms = Json::array();
  for (const auto& [w, c] : f.coeffs) {
    Json word = Json::array();
    for (int x : w) word.push_back(f.alphabet.at(x));
    terms.push_back({{"word", word}, {"coeff", {c.real(), c.imag()}}});
  }
  j["terms"] = terms;
  return j;
}

Functional functional_from_json(const Json& j) {
  Functional f;
  f.alphabet = j.at("alphabet").get<std::vector<std::string>>();
  std::string status = j.value("status", "unchecked");
  if (status == "guaranteed-pure-type")
    f.status = HomotopyStatus::GuaranteedPureType;
  else if (status == "numerically-checked")
    f.status = HomotopyStatus::NumericallyChecked;
  else
    f.status = HomotopyStatus::Unchecked;
  for (const auto& t : j.at("terms")) {
    LetterWord w;
    for (const auto& lab : t.at("word")) {
      auto it = std::find(f.alphabet.begin(), f.alphabet.end(), lab.get<std::string>());
      if (it == f.alphabet.end())
        throw std::invalid_argument("functional_from_json: word letter not in alphabet");
      w.push_back(static_cast<int>(it - f.alphabet.begin()));
    }
    const auto& c = t.at("coeff");
    f.add(w, Complex(c.at(0).get<double>(), c.at(1).get<double>()));
  }
  f.declared_length = std::max(f.declared_length, j.value("length", 0));
  return f;
}

Json path_to_json(const Path& p) {
  Json pts = Json::array();
  for (Complex z : p.waypoints) pts.push_back({z.real(), z.imag()});
  return Json{{"waypoints", pts}};
}

Path path_from_json(const Json& j) {
  std::vector<Complex> pts;
  for (const auto& z : j.at("waypoints"))
    pts.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  return Path(std::move(pts));
}

Json order_report_to_json(const OrderReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json values = Json::array();
    for (Complex v : row.values) values.push_back({v.real(), v.imag()});
    rows.push_back({{"tuple", row.tuple},
                    {"tuple_len", row.tuple_len},
                    {"values", values},
                    {"spread", row.spread},
                    {"predicted", {row.predicted.real(), row.predicted.imag()}},
                    {"mismatch", row.mismatch},
                    {"max_abs", row.max_abs},
                    {"pass", row.pass}});
  }
  return Json{{"rows", rows}, {"all_pass", r.all_pass}};
}

Json cuspidal_report_to_json(const CuspidalReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"cusp", row.cusp},
                    {"z", {row.z.real(), row.z.imag()}},
                    {"residual", row.residual},
                    {"pass", row.pass}});
  return Json{{"rows", rows}, {"all_pass", r.all_pass}, {"flag_was_set", r.flag_was_set}};
}

Json convergence_profile_to_json(const ConvergenceProfile& p) {
  Json rows = Json::array();
  for (const auto& row : p.rows)
    rows.push_back({{"c_bound", row.c_bound},
                    {"value", {row.value.real(), row.value.imag()}},
                    {"diff_abs", row.diff_abs},
                    {"max_twist", row.max_twist},
                    {"terms", row.terms}});
  return Json{{"rows", rows}, {"diffs_monotone", p.diffs_monotone}};
}

}  // namespace geomod
