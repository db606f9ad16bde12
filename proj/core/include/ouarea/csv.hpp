#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>

namespace ouarea::csv {

/// Shortest decimal text that parses back to exactly x.
inline std::string format_number(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

/// Comma-joined row writer. Values are written with full round-trip precision.
class RowWriter {
 public:
  explicit RowWriter(std::ostream& os) : os_(os) {}

  template <class T>
  RowWriter& operator<<(const T& value) {
    if (!first_) os_ << ',';
    first_ = false;
    if constexpr (std::is_floating_point_v<T>) {
      os_ << format_number(static_cast<double>(value));
    } else {
      os_ << value;
    }
    return *this;
  }

  void end() {
    os_ << '\n';
    first_ = true;
  }

 private:
  std::ostream& os_;
  bool first_ = true;
};

}  // namespace ouarea::csv
