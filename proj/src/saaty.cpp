#include "anp/saaty.hpp"

#include <cmath>
#include <limits>

#include "anp/error.hpp"

namespace anp {

std::optional<SaatyValue> SaatyValue::parse(std::string_view text) {
  auto digit = [](std::string_view s) -> int {
    if (s.size() != 1 || s[0] < '1' || s[0] > '9') return 0;
    return s[0] - '0';
  };
  if (text.size() == 1) {
    if (int m = digit(text)) return SaatyValue(m, false);
    return std::nullopt;
  }
  if (text.size() == 3 && text.substr(0, 2) == "1/") {
    // "1/1" is not an admissible spelling.
    if (int m = digit(text.substr(2)); m >= 2) return SaatyValue(m, true);
  }
  return std::nullopt;
}

SaatyValue SaatyValue::from_string(std::string_view text) {
  if (auto v = parse(text)) return *v;
  throw Error(Errc::value_not_on_scale, "'" + std::string(text) + "' is not on the 1/9..9 scale");
}

SaatyValue SaatyValue::from_integer(int magnitude, bool inverse) {
  if (magnitude < 1 || magnitude > 9) {
    throw Error(Errc::value_not_on_scale, std::to_string(magnitude) + " is not on the 1..9 scale");
  }
  return SaatyValue(magnitude, inverse && magnitude > 1);
}

SaatyValue SaatyValue::nearest(double ratio) {
  const double target = std::log(ratio);
  SaatyValue best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const auto& v : all()) {
    const double gap = std::abs(std::log(v.value()) - target);
    if (gap < best_gap) {
      best_gap = gap;
      best = v;
    }
  }
  return best;
}

const std::array<SaatyValue, 17>& SaatyValue::all() {
  static const std::array<SaatyValue, 17> values = {
      SaatyValue(9, true), SaatyValue(8, true), SaatyValue(7, true), SaatyValue(6, true),
      SaatyValue(5, true), SaatyValue(4, true), SaatyValue(3, true), SaatyValue(2, true),
      SaatyValue(1, false), SaatyValue(2, false), SaatyValue(3, false), SaatyValue(4, false),
      SaatyValue(5, false), SaatyValue(6, false), SaatyValue(7, false), SaatyValue(8, false),
      SaatyValue(9, false)};
  return values;
}

SaatyValue SaatyValue::reciprocal() const noexcept {
  if (magnitude_ == 1) return *this;
  return SaatyValue(magnitude_, !inverse_);
}

std::string SaatyValue::str() const {
  return inverse() ? "1/" + std::to_string(magnitude_) : std::to_string(magnitude_);
}

}  // namespace anp
