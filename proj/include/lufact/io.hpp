#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lufact/conditions.hpp"
#include "lufact/decompositions.hpp"
#include "lufact/factor.hpp"
#include "lufact/matrix.hpp"

// Text formats shared by the CLI:
//
//   matrix file      <rows> <cols> <Q|F<p>>, then `rows` lines of `cols` scalars.
//                    Blank lines and lines starting with '#' are ignored.
//   factor blocks    matrices (or one-line permutations `[p1 ... pn]`) separated
//                    by lines holding only `---`, in multiplication order.

namespace lufact::io {

/// Throws ParseError carrying the 1-based line/column of the offending token.
Matrix parse_matrix(std::string_view text);
/// Reads `path` ("-" for stdin) and parses it; errors are prefixed with the path.
std::string read_text(const std::string& path);

std::string format_matrix(const Matrix& m);

struct NamedFactor {
  std::string name;
  Factor factor;
};

std::string format_factor_blocks(const std::vector<NamedFactor>& factors);
/// Parses blocks written by format_factor_blocks. Permutation blocks take their
/// field from `field`, or from the matrix blocks when unset. Lines of the
/// `--trace` form (`k=...`) are skipped.
std::vector<Factor> parse_factor_blocks(std::string_view text, std::optional<FieldSpec> field);

std::string format_report_table(const ConditionReport& report);
std::string format_trace_line(const PivotStep& step);

/// The per_k array: one object per k with the four ranks and the deficiency.
nlohmann::json per_k_json(const ConditionReport& report);
nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const PivotStep& step);

}  // namespace lufact::io
