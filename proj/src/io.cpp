#include "dioph/io.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace dioph {
namespace {

bool is_integer_token(std::string_view t) {
  std::size_t i = 0;
  if (i < t.size() && (t[i] == '+' || t[i] == '-'))
    ++i;
  if (i == t.size())
    return false;
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i])))
      return false;
  return true;
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> words;
  for (std::string w; is >> w;)
    words.push_back(w);
  return words;
}

Index parse_dimension(const std::string& token, const char* what) {
  if (!is_integer_token(token))
    throw ParseError(std::string("expected a ") + what + ", got '" + token + "'");
  const Integer v(token);
  if (v < 0 || v > 100000)
    throw ParseError(std::string(what) + " out of range: " + token);
  return static_cast<Index>(v);
}

} // namespace

Integer parse_integer(std::string_view token) {
  if (!is_integer_token(token))
    throw ParseError("not an integer: '" + std::string(token) + "'");
  std::string digits(token);
  if (digits.front() == '+')
    digits.erase(0, 1);
  return Integer(digits);
}

Matrix<Integer> parse_text_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<std::string>> lines;
  std::vector<int> numbers;
  for (int no = 1; std::getline(in, line); ++no) {
    auto words = split_words(line);
    if (words.empty())
      continue;
    lines.push_back(std::move(words));
    numbers.push_back(no);
  }
  if (lines.empty())
    throw ParseError("empty input");
  if (lines[0].size() != 2)
    throw ParseError("line " + std::to_string(numbers[0]) + ": expected 'm n'");
  const Index m = parse_dimension(lines[0][0], "row count");
  const Index n = parse_dimension(lines[0][1], "column count");
  if (static_cast<Index>(lines.size()) - 1 != m)
    throw ParseError("expected " + std::to_string(m) + " rows, found " +
                     std::to_string(lines.size() - 1));
  Matrix<Integer> a(m, n);
  for (Index i = 0; i < m; ++i) {
    const auto& row = lines[i + 1];
    if (static_cast<Index>(row.size()) != n)
      throw ParseError("line " + std::to_string(numbers[i + 1]) + ": expected " +
                       std::to_string(n) + " entries, found " + std::to_string(row.size()));
    for (Index j = 0; j < n; ++j)
      a(i, j) = parse_integer(row[j]);
  }
  return a;
}

Integer integer_from_json(const nlohmann::json& value) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned())
      return Integer(value.get<std::uint64_t>());
    return Integer(value.get<std::int64_t>());
  }
  if (value.is_string())
    return parse_integer(value.get<std::string>());
  throw ParseError("matrix entries must be integers or decimal strings, got " + value.dump());
}

Matrix<Integer> parse_json_matrix(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("matrix"))
    throw ParseError("JSON input must be an object with a \"matrix\" field");
  const auto& rows = doc.at("matrix");
  if (!rows.is_array() || rows.empty())
    throw ParseError("\"matrix\" must be a non-empty array of rows");
  const Index m = static_cast<Index>(rows.size());
  if (!rows[0].is_array())
    throw ParseError("row 1 is not an array");
  const Index n = static_cast<Index>(rows[0].size());
  Matrix<Integer> a(m, n);
  for (Index i = 0; i < m; ++i) {
    const auto& row = rows[i];
    if (!row.is_array())
      throw ParseError("row " + std::to_string(i + 1) + " is not an array");
    if (static_cast<Index>(row.size()) != n)
      throw ParseError("row " + std::to_string(i + 1) + ": expected " + std::to_string(n) +
                       " entries, found " + std::to_string(row.size()));
    for (Index j = 0; j < n; ++j)
      a(i, j) = integer_from_json(row[j]);
  }
  return a;
}

Matrix<Integer> parse_matrix(std::string_view contents) {
  const auto first = contents.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && contents[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(contents);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_json_matrix(doc);
  }
  return parse_text_matrix(contents);
}

Matrix<Integer> read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

nlohmann::json to_json(const Integer& a) {
  if (a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(a);
  return a.str();
}

nlohmann::json matrix_to_json(const Matrix<Integer>& a) {
  auto rows = nlohmann::json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Index j = 0; j < a.cols(); ++j)
      row.push_back(to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json columns_to_json(const Matrix<Integer>& a) {
  return matrix_to_json(a.transpose());
}

Matrix<Integer> columns_from_json(const nlohmann::json& value, Index rows) {
  if (!value.is_array())
    throw ParseError("basis must be an array of columns");
  Matrix<Integer> b(rows, static_cast<Index>(value.size()));
  for (Index j = 0; j < b.cols(); ++j) {
    const auto& col = value[j];
    if (!col.is_array() || static_cast<Index>(col.size()) != rows)
      throw ParseError("basis column " + std::to_string(j + 1) + " has the wrong length");
    for (Index i = 0; i < rows; ++i)
      b(i, j) = integer_from_json(col[i]);
  }
  return b;
}

} // namespace dioph
