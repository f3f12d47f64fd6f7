#pragma once

#include <optional>
#include <string>

namespace snlab {

// The five s-number scales computed by this library.
enum class SNumberKind { approximation, kolmogorov, gelfand, weyl, chang };

inline const char* to_string(SNumberKind kind) {
  switch (kind) {
    case SNumberKind::approximation: return "approximation";
    case SNumberKind::kolmogorov: return "kolmogorov";
    case SNumberKind::gelfand: return "gelfand";
    case SNumberKind::weyl: return "weyl";
    case SNumberKind::chang: return "chang";
  }
  return "?";
}

inline std::optional<SNumberKind> kind_from_string(const std::string& s) {
  if (s == "approximation") return SNumberKind::approximation;
  if (s == "kolmogorov") return SNumberKind::kolmogorov;
  if (s == "gelfand") return SNumberKind::gelfand;
  if (s == "weyl") return SNumberKind::weyl;
  if (s == "chang") return SNumberKind::chang;
  return std::nullopt;
}

inline constexpr SNumberKind kAllKinds[] = {
    SNumberKind::approximation, SNumberKind::kolmogorov, SNumberKind::gelfand,
    SNumberKind::weyl, SNumberKind::chang};

}  // namespace snlab
