#include "qdet/qmat_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace qdet {
namespace {

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t p = 0;
  while (p < line.size()) {
    while (p < line.size() && (line[p] == ' ' || line[p] == '\t' || line[p] == '\r')) ++p;
    const std::size_t start = p;
    while (p < line.size() && line[p] != ' ' && line[p] != '\t' && line[p] != '\r') ++p;
    if (p > start) out.push_back({line.substr(start, p - start), start + 1});
  }
  return out;
}

std::size_t parse_dimension(const Token& t, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size() || value == 0)
    throw ParseError("header dimension '" + std::string(t.text) + "' is not a positive integer", line, t.column);
  return value;
}

}  // namespace

QmatFile parse_qmat(std::string_view text) {
  std::size_t rows = 0, cols = 0;
  bool have_header = false;
  std::vector<ParsedLiteral> literals;
  std::size_t data_rows = 0;
  std::size_t line_no = 0;
  std::size_t first_decimal_line = 0, first_fraction_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::vector<Token> tokens = split(line);
    if (tokens.empty() || tokens.front().text.front() == '%') continue;

    if (!have_header) {
      if (tokens.size() != 2)
        throw ParseError("header must be two integers 'm n'", line_no, tokens.size() > 2 ? tokens[2].column : 0);
      rows = parse_dimension(tokens[0], line_no);
      cols = parse_dimension(tokens[1], line_no);
      have_header = true;
      continue;
    }
    ++data_rows;
    if (data_rows > rows)
      throw ParseError("more data rows than the " + std::to_string(rows) + " declared", line_no, 0);
    if (tokens.size() != cols)
      throw ParseError("row " + std::to_string(data_rows) + " has " + std::to_string(tokens.size()) +
                           (tokens.size() == 1 ? " entry" : " entries") + ", expected " + std::to_string(cols),
                       line_no, 0);
    for (const Token& t : tokens) {
      try {
        literals.push_back(parse_literal(t.text));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no, t.column + (e.column() == 0 ? 0 : e.column() - 1));
      }
      if (literals.back().has_decimal && first_decimal_line == 0) first_decimal_line = line_no;
      if (literals.back().has_fraction && first_fraction_line == 0) first_fraction_line = line_no;
    }
  }
  if (!have_header) throw ParseError("missing 'm n' header", 0, 0);
  if (data_rows != rows)
    throw ParseError("expected " + std::to_string(rows) + " data rows, found " + std::to_string(data_rows), line_no, 0);
  if (first_decimal_line != 0 && first_fraction_line != 0)
    throw ParseError("mixed-mode file: decimal literal (line " + std::to_string(first_decimal_line) +
                         ") alongside fraction literal (line " + std::to_string(first_fraction_line) + ")",
                     std::max(first_decimal_line, first_fraction_line), 0);

  QmatFile f;
  f.mode = first_decimal_line != 0 ? Mode::floating : Mode::exact;
  std::vector<QuaternionD> approx;
  std::vector<QuaternionQ> exact;
  for (const auto& lit : literals) {
    approx.emplace_back(lit.approx[0], lit.approx[1], lit.approx[2], lit.approx[3]);
    if (f.mode == Mode::exact) exact.emplace_back(lit.exact[0], lit.exact[1], lit.exact[2], lit.exact[3]);
  }
  f.approx = QMatrixD(rows, cols, std::move(approx));
  if (f.mode == Mode::exact) f.exact = QMatrixQ(rows, cols, std::move(exact));
  return f;
}

QmatFile read_qmat_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_qmat(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0, 0);
  }
}

template <Scalar T>
std::string format_qmat(const QMatrix<T>& a) {
  std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) out += ' ';
      out += to_literal(a(i, j));
    }
    out += '\n';
  }
  return out;
}

template std::string format_qmat(const QMatrixQ&);
template std::string format_qmat(const QMatrixD&);

}  // namespace qdet
