#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ergo::app::detail {

/// Two-column aligned text.
std::string render_pairs(const std::vector<std::pair<std::string, std::string>>& rows);

std::string csv_field(const std::string& s);

/// Non-finite values become null so the document stays valid JSON.
nlohmann::json number_or_null(double x);

/// Throws InvalidParams when the key is missing or not a number.
double number_field(const nlohmann::json& doc, const char* key);

}  // namespace ergo::app::detail
