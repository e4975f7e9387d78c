#pragma once

#include "qpalg/series.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace qpalg {

/// Syntax tree of a series/polynomial expression.
struct Expr {
  enum class Kind { Number, Symbol, Sum, Product, Negate, Power };
  Kind kind = Kind::Number;
  Rational number;           // Number
  std::string symbol;        // Symbol
  int exponent = 0;          // Power
  std::vector<Expr> args;    // Sum/Product operands, Negate/Power operand
  int line = 1;
  int column = 1;
};

/// Parses `-?[0-9]+(/[0-9]+)?` literals, symbols, `+ - * ^ ( )`.
/// Throws InputError carrying line:column on malformed input.
Expr parse_expression(std::string_view text, int firstLine = 1, int firstColumn = 1);

/// `vertices <id>(,<id>)*;` then `arrows <label>:<id>-><id>(,...)`.
Quiver parse_quiver(std::string_view text);

/// Evaluates an expression in the truncated path algebra. `e_<vertex>` names
/// an idempotent; `1` means the unit. Unknown symbols are errors.
NCSeries evaluate_series(const Expr& e, const QuiverPtr& q, int truncation);
NCSeries parse_series(std::string_view text, const QuiverPtr& q, int truncation);

/// Contents of a .qp file.
struct QPFile {
  QuiverPtr quiver;
  std::string potential;  ///< raw expression text ("0" when absent)
  int potentialLine = 0;
  /// `differential <label>: <expr>` lines (override a generator's differential).
  std::vector<std::pair<std::string, std::string>> differentials;
};

QPFile parse_qp(std::string_view text);
QPFile load_qp(const std::string& path);

std::string read_file(const std::string& path);

} // namespace qpalg
