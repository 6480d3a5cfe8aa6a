#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace anp {

/// One of the 17 admissible 9-point scale values: 1/9, 1/8, ..., 1/2, 1, 2, ..., 9.
class SaatyValue {
 public:
  // Equal importance.
  constexpr SaatyValue() = default;

  // Accepts "1".."9" and "1/2".."1/9" exactly; anything else is empty.
  static std::optional<SaatyValue> parse(std::string_view text);
  // Throws Error(value_not_on_scale).
  static SaatyValue from_string(std::string_view text);
  static SaatyValue from_integer(int magnitude, bool inverse = false);
  // Scale value closest to `ratio` on a log scale; ratios beyond 9 or 1/9 clamp.
  static SaatyValue nearest(double ratio);

  static const std::array<SaatyValue, 17>& all();

  double value() const noexcept {
    return inverse_ ? 1.0 / magnitude_ : static_cast<double>(magnitude_);
  }
  int magnitude() const noexcept { return magnitude_; }
  bool inverse() const noexcept { return inverse_ && magnitude_ > 1; }
  SaatyValue reciprocal() const noexcept;
  std::string str() const;

  friend bool operator==(const SaatyValue& a, const SaatyValue& b) noexcept {
    return a.magnitude_ == b.magnitude_ && a.inverse() == b.inverse();
  }

 private:
  constexpr SaatyValue(int magnitude, bool inverse) : magnitude_(magnitude), inverse_(inverse) {}

  int magnitude_ = 1;
  bool inverse_ = false;
};

}  // namespace anp
