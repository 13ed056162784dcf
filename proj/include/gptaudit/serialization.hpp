#pragma once

#include <string>
#include <vector>

#include "gptaudit/audit.hpp"
#include "gptaudit/types.hpp"

namespace gptaudit {

// "%.12g" rendering used for all CSV output.
std::string format_sig(double x, int digits = 12);

std::string model_to_json(const ModelSpec& model, int indent = 2);
// Parses and validates the model JSON schema; throws std::invalid_argument
// with a description on malformed or inconsistent input.
ModelSpec model_from_json_text(const std::string& text);
ModelSpec load_model_file(const std::string& path);

std::string result_to_json(const DiscriminationResult& r, int indent = 2);
std::string is_report_to_json(const ISReport& rep, int indent = 2);
std::string gis_report_to_json(const GISReport& rep, int indent = 2);

std::string sweep_odd_csv(const std::vector<SweepRow>& rows);
std::string sweep_even1_csv(const std::vector<EvenSweepRow>& rows);
std::string sweep_even2_csv(const std::vector<Case2SweepRow>& rows);

}  // namespace gptaudit
