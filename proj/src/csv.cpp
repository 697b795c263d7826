#include "graphtrack/csv.hpp"

#include <charconv>

namespace graphtrack {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;  // 64 bytes always suffice for shortest form
  return std::string(buf, ptr);
}

}  // namespace graphtrack
