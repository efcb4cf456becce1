#include "diffrep/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "diffrep/error.hpp"

namespace diffrep {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::vacuous: return "vacuous";
    case Verdict::borderline: return "borderline";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "unknown";
}

Verdict verdict_from_string(std::string_view text) {
  for (Verdict v : {Verdict::holds, Verdict::violated, Verdict::vacuous, Verdict::borderline, Verdict::not_applicable})
    if (to_string(v) == text) return v;
  throw Error(ErrorKind::InvalidInput, "unknown verdict '" + std::string(text) + "'");
}

std::string Quantity::str() const {
  if (is_exact) return to_string(exact);
  std::ostringstream os;
  os.precision(17);
  os << approx;
  return os.str();
}

std::string CheckReport::detail(std::string_view key) const {
  for (const auto& [k, v] : details)
    if (k == key) return v;
  return {};
}

Verdict compare_guarded(double lhs, double rhs) {
  const double band = kGuardBand * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  const double diff = lhs - rhs;
  if (diff > band) return Verdict::holds;
  if (diff < -band) return Verdict::violated;
  return Verdict::borderline;
}

}  // namespace diffrep
