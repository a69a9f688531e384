#pragma once

#include <json.hpp>

#include "geomod/chen.hpp"
#include "geomod/hoforms.hpp"
#include "geomod/poincare.hpp"

namespace geomod {

using Json = nlohmann::ordered_json;

Complex parse_complex(const std::string& text);  // "0.1+0.8i"
std::string complex_str(Complex z);

Json letter_to_json(const FormLetter& w);
FormLetter letter_from_json(const Json& j);

Json functional_to_json(const Functional& f);
Functional functional_from_json(const Json& j);

Json path_to_json(const Path& p);
Path path_from_json(const Json& j);

Json order_report_to_json(const OrderReport& r);
Json cuspidal_report_to_json(const CuspidalReport& r);
Json convergence_profile_to_json(const ConvergenceProfile& p);

}  // namespace geomod
