#pragma once

// Reading integer matrices from text or JSON and writing exact JSON values.

#include "dioph/matrix.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace dioph {

/// "m n" on the first line, then m rows of n integers.
Matrix<Integer> parse_text_matrix(std::string_view text);

/// {"matrix": [[...], ...]} with integers or decimal strings as entries.
Matrix<Integer> parse_json_matrix(const nlohmann::json& doc);

/// Picks the format from the first non-blank character.
Matrix<Integer> parse_matrix(std::string_view contents);

Matrix<Integer> read_matrix_file(const std::string& path);

Integer parse_integer(std::string_view token);

/// A number when it fits in 64 bits, a decimal string otherwise.
nlohmann::json to_json(const Integer& a);
Integer integer_from_json(const nlohmann::json& value);

/// Row-major list of rows.
nlohmann::json matrix_to_json(const Matrix<Integer>& a);

/// List of columns, each a list of entries.
nlohmann::json columns_to_json(const Matrix<Integer>& a);
Matrix<Integer> columns_from_json(const nlohmann::json& value, Index rows);

} // namespace dioph
