#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mmspace/concentration.hpp"
#include "mmspace/function.hpp"
#include "mmspace/report.hpp"
#include "mmspace/space.hpp"

namespace mmspace {

/// Space document: {"distances": [[...]], "weights": [...], "labels": [...]}.
/// "weights" defaults to uniform and "labels" is optional. Throws Parse on
/// malformed JSON and the validation kinds on invalid content.
Space parse_space(const std::string& text);
Space load_space(const std::filesystem::path& path);
std::string space_to_json(const Space& space);

/// {"f": [...], "lip": ...}
std::string function_to_json(std::span<const double> f, double lip);

/// Header "r,alpha,witness_mask_hex", numbers at 17 significant digits.
std::string profile_to_csv(const ConcentrationProfile& profile);
/// Inverse of profile_to_csv. Witness masks are read back only when the
/// point count `n` is given.
ConcentrationProfile profile_from_csv(const std::string& text, double epsilon, std::size_t n = 0);

std::string reports_to_json(const std::vector<BoundReport>& reports);
std::string reports_to_csv(const std::vector<BoundReport>& reports);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace mmspace
