#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "koenigs/expr.hpp"

namespace koenigs {

struct Diagnostic {
  std::size_t offset = 0;  // byte offset into the source
  std::string message;
};

struct ParseResult {
  MapExpr expr;
  std::optional<Diagnostic> error;
  bool ok() const { return !error.has_value(); }
};

/// Parse a map definition.  Grammar: `z`, decimal and imaginary literals
/// (`1`, `0.5`, `2i`), operators `+ - * /`, integer powers `^k`,
/// `sqrt(e)`, `neg(e)`, `compose(f, g)`, `cayley(tau=<const>, to=H|RH)`,
/// `icayley(...)`.  Precedence: power > unary minus > mul/div > add/sub.
/// Total on arbitrary byte strings: never throws, reports a Diagnostic
/// with a byte offset instead.
ParseResult parse_map(std::string_view src);

/// Canonical text form.  parse_map(format_map(m)) evaluates identically
/// to m everywhere.
std::string format_map(const MapExpr& map);

/// %.17g complex formatting used across reports ("1", "2i", "(1+2i)").
std::string format_complex_literal(Complex c);

}  // namespace koenigs
