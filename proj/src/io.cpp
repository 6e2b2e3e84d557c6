#include "lufact/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

namespace lufact::io {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool is_ignorable(std::string_view line) {
  auto t = trim(line);
  return t.empty() || t.front() == '#';
}

std::vector<Line> split_lines(std::string_view text, std::size_t first_number = 1) {
  std::vector<Line> lines;
  std::size_t number = first_number;
  while (!text.empty()) {
    auto nl = text.find('\n');
    lines.push_back({number++, text.substr(0, nl)});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::size_t parse_dimension(const Token& tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  bool ok = !tok.text.empty() && tok.text.size() < 10;
  for (char c : tok.text) {
    if (c < '0' || c > '9') ok = false;
    else value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  if (!ok || value == 0) {
    throw ParseError(std::string("bad ") + what + " '" + std::string(tok.text) + "'", line, tok.column);
  }
  return value;
}

Matrix parse_matrix_lines(const std::vector<Line>& lines) {
  auto it = lines.begin();
  auto skip = [&] {
    while (it != lines.end() && is_ignorable(it->text)) ++it;
  };
  skip();
  if (it == lines.end()) throw ParseError("missing header line '<rows> <cols> <field>'");

  const auto header = tokenize(it->text);
  if (header.size() != 3) {
    throw ParseError("header must be '<rows> <cols> <field>'", it->number,
                     header.empty() ? 1 : header.front().column);
  }
  const std::size_t rows = parse_dimension(header[0], it->number, "row count");
  const std::size_t cols = parse_dimension(header[1], it->number, "column count");
  FieldSpec field = FieldSpec::rationals();
  try {
    field = FieldSpec::parse(header[2].text);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), it->number, header[2].column);
  }
  const std::size_t header_line = it->number;
  ++it;

  Matrix m(field, rows, cols);
  for (std::size_t i = 1; i <= rows; ++i) {
    skip();
    if (it == lines.end()) {
      throw ParseError("expected " + std::to_string(rows) + " rows, found " + std::to_string(i - 1),
                       lines.empty() ? header_line : lines.back().number + 1, 1);
    }
    const auto tokens = tokenize(it->text);
    if (tokens.size() != cols) {
      const std::size_t column = tokens.size() > cols ? tokens[cols].column : it->text.size() + 1;
      throw ParseError("row " + std::to_string(i) + " has " + std::to_string(tokens.size()) +
                           " entries, expected " + std::to_string(cols),
                       it->number, column);
    }
    for (std::size_t j = 1; j <= cols; ++j) {
      try {
        m.set(i, j, parse_scalar(tokens[j - 1].text, field));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), it->number, tokens[j - 1].column);
      }
    }
    ++it;
  }
  skip();
  if (it != lines.end()) {
    throw ParseError("unexpected content after " + std::to_string(rows) + " rows", it->number,
                     tokenize(it->text).front().column);
  }
  return m;
}

}  // namespace

Matrix parse_matrix(std::string_view text) { return parse_matrix_lines(split_lines(text)); }

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << ' ' << m.field().token() << '\n';
  for (std::size_t i = 1; i <= m.rows(); ++i) {
    for (std::size_t j = 1; j <= m.cols(); ++j) {
      if (j > 1) out << ' ';
      out << format_scalar(m.at(i, j));
    }
    out << '\n';
  }
  return out.str();
}

std::string format_factor_blocks(const std::vector<NamedFactor>& factors) {
  std::ostringstream out;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (f > 0) out << "---\n";
    out << "# " << factors[f].name << '\n';
    if (const auto* p = std::get_if<Permutation>(&factors[f].factor)) {
      out << p->to_string() << '\n';
    } else {
      out << format_matrix(std::get<Matrix>(factors[f].factor));
    }
  }
  return out.str();
}

std::vector<Factor> parse_factor_blocks(std::string_view text, std::optional<FieldSpec> field) {
  std::vector<std::vector<Line>> blocks(1);
  for (const Line& line : split_lines(text)) {
    const auto t = trim(line.text);
    if (t == "---") {
      blocks.emplace_back();
    } else if (t.starts_with("k=")) {
      continue;
    } else {
      blocks.back().push_back(line);
    }
  }

  // Matrices first, so permutations can borrow their field.
  std::vector<std::optional<Factor>> parsed(blocks.size());
  std::vector<std::size_t> permutation_blocks;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Line* first = nullptr;
    for (const Line& line : blocks[b]) {
      if (!is_ignorable(line.text)) {
        first = &line;
        break;
      }
    }
    if (first == nullptr) {
      throw ParseError("factor block " + std::to_string(b + 1) + " is empty",
                       blocks[b].empty() ? 0 : blocks[b].front().number, 1);
    }
    if (trim(first->text).starts_with("[")) {
      permutation_blocks.push_back(b);
      continue;
    }
    Matrix m = parse_matrix_lines(blocks[b]);
    if (!field) field = m.field();
    if (!(m.field() == *field)) {
      throw ParseError("factor block " + std::to_string(b + 1) + " is over " + m.field().token() +
                           ", expected " + field->token(),
                       first->number, 1);
    }
    parsed[b] = std::move(m);
  }
  for (std::size_t b : permutation_blocks) {
    std::vector<const Line*> content;
    for (const Line& line : blocks[b]) {
      if (!is_ignorable(line.text)) content.push_back(&line);
    }
    if (content.size() != 1) {
      throw ParseError("permutation block must be a single line", content[1]->number, 1);
    }
    try {
      parsed[b] = Permutation::parse(std::string(content[0]->text));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), content[0]->number, 1);
    }
  }

  std::vector<Factor> out;
  out.reserve(parsed.size());
  for (auto& f : parsed) out.push_back(std::move(*f));
  return out;
}

std::string format_report_table(const ConditionReport& report) {
  const std::string h_k = "k";
  const std::string h_lead = "rank A[{1..k}]";
  const std::string h_row = "rank A[{1..k},{1..n}]";
  const std::string h_col = "rank A[{1..n},{1..k}]";
  const std::string h_def = "deficiency";
  const int wk = std::max<int>(1, static_cast<int>(std::to_string(report.n).size()));

  std::ostringstream out;
  out << std::left << std::setw(wk) << h_k << "  " << std::setw(h_lead.size()) << h_lead << "  "
      << std::setw(h_row.size()) << h_row << "  " << std::setw(h_col.size()) << h_col << "  "
      << h_def << '\n';
  for (const RankRecord& r : report.per_k) {
    out << std::right << std::setw(wk) << r.k << "  " << std::setw(h_lead.size()) << r.rank_leading
        << "  " << std::setw(h_row.size()) << r.rank_row_block << "  " << std::setw(h_col.size())
        << r.rank_col_block << "  " << std::setw(h_def.size()) << r.deficiency << '\n';
  }
  out << "n: " << report.n << '\n';
  out << "verdict: " << (report.satisfies ? "LU factorization exists" : "no LU factorization") << '\n';
  out << "failure degree: " << report.failure_degree << '\n';
  return out.str();
}

std::string format_trace_line(const PivotStep& step) {
  std::ostringstream out;
  out << "k=" << step.step << " pivot=";
  if (step.pivot) {
    out << '(' << step.pivot->row << ',' << step.pivot->col << ") priority=" << step.priority;
  } else {
    out << "none";
  }
  return out.str();
}

nlohmann::json per_k_json(const ConditionReport& report) {
  nlohmann::json per_k = nlohmann::json::array();
  for (const RankRecord& r : report.per_k) {
    per_k.push_back({{"k", r.k},
                     {"rank_leading", r.rank_leading},
                     {"rank_row_block", r.rank_row_block},
                     {"rank_col_block", r.rank_col_block},
                     {"deficiency", r.deficiency}});
  }
  return per_k;
}

nlohmann::json to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 1; i <= m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 1; j <= m.cols(); ++j) row.push_back(format_scalar(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const PivotStep& step) {
  nlohmann::json j = {{"k", step.step}};
  if (step.pivot) {
    j["pivot"] = {step.pivot->row, step.pivot->col};
    j["priority"] = step.priority;
  } else {
    j["pivot"] = nullptr;
  }
  return j;
}

}  // namespace lufact::io
