#pragma once

#include <string>

#include <json.hpp>

#include "tsl/families.hpp"
#include "tsl/gauge.hpp"
#include "tsl/treespace.hpp"

namespace tsl::io {

using nlohmann::json;

// Every parser takes the JSON path of its argument and throws InputError
// with that location on malformed input.

json to_json(const Rational& r);
Rational rational_from_json(const json& j, const std::string& path = "$");

json to_json(const RationalVector& v);
RationalVector vector_from_json(const json& j, const std::string& path = "$");

json to_json(const SuccessiveFamily& f);
SuccessiveFamily family_from_json(const json& j, const std::string& path = "$");

json mask_to_json(Mask m);
json restriction_to_json(const std::vector<Mask>& family);

json to_json(const PeriodicSequence& s);
PeriodicSequence periodic_from_json(const json& j, const std::string& path = "$");
json to_json(const TreeSpec& t);
TreeSpec tree_from_json(const json& j, const std::string& path = "$");

json to_json(const Tree2Spec& t);
Tree2Spec tree2_from_json(const json& j, const std::string& path = "$");

json to_json(const AdmissibilitySystem& s);
/// Accepts the JSON object forms, plus the bare string "classic".
AdmissibilitySystem system_from_json(const json& j, const std::string& path = "$");

json to_json(const BinaryString& s);
BinaryString binary_from_json(const json& j, const std::string& path = "$");

json to_json(const TreeVector& v);
TreeVector tree_vector_from_json(const json& j, const std::string& path = "$");

json to_json(const TsCertificate& c);
TsCertificate ts_certificate_from_json(const json& j, const std::string& path = "$");

json to_json(const GeneratorRecord& r, int id);
json to_json(const GaugeCertificate& c);
GaugeCertificate gauge_certificate_from_json(const json& j, const std::string& path = "$");

/// Parses text as JSON, reporting the byte offset of syntax errors.
json parse_text(const std::string& text, const std::string& what);

}  // namespace tsl::io
