#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace triup {

/// Formats a finite double with 17 significant digits, enough to
/// round-trip the exact bit pattern through text.
std::string format_double(double value);

/// Minimal JSON emitter for reports. Keys keep insertion order and
/// numbers go through format_double, so identical inputs always
/// produce byte-identical documents.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();

  JsonWriter& key(std::string_view name);

  JsonWriter& value(double v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();

  template <typename T>
  JsonWriter& field(std::string_view name, const T& v) {
    key(name);
    return value(v);
  }

  template <typename Range>
  JsonWriter& number_array_field(std::string_view name, const Range& values) {
    key(name);
    begin_array();
    for (double v : values) value(v);
    return end_array();
  }

  /// The finished document. Call once, after the outermost scope closed.
  const std::string& str() const { return out_; }

 private:
  void before_value();

  std::string out_;
  // true = a value has already been written in the enclosing scope
  std::vector<bool> scope_has_item_;
  bool pending_key_ = false;
};

}  // namespace triup
