#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "leggett/certify.hpp"
#include "leggett/model.hpp"

namespace leggett {

/// Malformed input file or document.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"atoms": [{"u": [x,y,z], "v": [x,y,z], "w": r}, ...], "coupling": "..."}
nlohmann::json model_to_json(const LeggettModel& m);

/// Weights are renormalized when their sum is within 1e-9 of one and
/// rejected otherwise. Throws LoadError.
LeggettModel model_from_json(const nlohmann::json& doc);
LeggettModel load_model(const std::filesystem::path& path);

nlohmann::json problem_to_json(const CertificationProblem& p);
/// Rebuilds the problem through build_problem. Throws LoadError.
CertificationProblem problem_from_json(const nlohmann::json& doc);

nlohmann::json certificate_to_json(const FeasibilityCertificate& c);
FeasibilityCertificate certificate_from_json(const nlohmann::json& doc);

nlohmann::json vector_to_json(const UnitVector3& v);
/// Accepts a 3-element array; normalizes it. Throws LoadError.
UnitVector3 vector_from_json(const nlohmann::json& doc);

/// Reads and parses a JSON file. Throws LoadError.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace leggett
