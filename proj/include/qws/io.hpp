// JSON and CSV formats for states, walks, synthesis results and plate
// sequences. Doubles are written with round-trip precision.
#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qws/optics.hpp"

namespace qws {

using json = nlohmann::json;

// Malformed documents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const CoinState& c);
json to_json(const CompositeState& u);
json to_json(const QuantumStep& t);
json to_json(const Walk& w);
json to_json(const SynthesisResult& r);
json to_json(const PlateSequence& seq);
json to_json(const ClassifierReport& rep);

CoinState coin_from_json(const json& j);
// Accepts {"components": [...]} or the raw spinor form {"raw": [...]}, which
// is canonicalized.
CompositeState state_from_json(const json& j);
QuantumStep step_from_json(const json& j);
Walk walk_from_json(const json& j);
SynthesisResult synthesis_from_json(const json& j);
PlateSequence plates_from_json(const json& j);

std::string profile_csv(const AzimuthalProfile& profile);
AzimuthalProfile profile_from_csv(const std::string& text);

// File helpers; throw std::runtime_error on I/O failure and FormatError on
// bad content. Writes go through a temporary file and a rename.
std::string read_text_file(const std::filesystem::path& path);
json read_json_file(const std::filesystem::path& path);
void write_text_atomic(const std::filesystem::path& path, const std::string& text);
CompositeState read_state_file(const std::filesystem::path& path);

}  // namespace qws
