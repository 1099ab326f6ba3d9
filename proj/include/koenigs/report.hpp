#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "koenigs/expr.hpp"

namespace koenigs {

/// Insertion-ordered JSON value with %.17g float formatting: identical
/// configs serialize to byte-identical documents.
class Json {
 public:
  static Json object();
  static Json array();
  static Json str(std::string s);
  static Json num(double v);
  static Json integer(std::int64_t v);
  static Json boolean(bool v);
  static Json null();
  static Json cplx(Complex c);  // [re, im]

  Json& set(const std::string& key, Json v);  // object only
  Json& push(Json v);                         // array only

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Object, Array, String, Number, Integer, Boolean, Null };
  Kind kind_ = Kind::Null;
  std::vector<std::pair<std::string, Json>> members_;
  std::vector<Json> items_;
  std::string str_;
  double num_ = 0;
  std::int64_t int_ = 0;
  bool bool_ = false;

  void dump_to(std::string& out, int indent, int depth) const;
};

std::string format_float17(double v);

/// One CSV row; the writer quotes nothing and never emits locale-dependent
/// text, so identical inputs give identical bytes.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void row(const std::vector<std::string>& cells);
  const std::string& text() const { return text_; }

 private:
  std::size_t width_;
  std::string text_;
};

}  // namespace koenigs
