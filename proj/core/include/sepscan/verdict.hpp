#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace sepscan {

enum class Outcome { Entangled, SeparableAssured, Unknown };

std::string_view to_string(Outcome o);
Outcome outcome_from_string(std::string_view s);

/// Result of a separability test.
///
/// Entangled only comes from a violated necessary condition (or a certified
/// witness); SeparableAssured only from a satisfied sufficient condition,
/// an exact PPT answer, or an approximate-membership assertion (exact=false).
struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::string reason;
  bool exact = false;
  std::optional<double> detail;

  static Verdict entangled(std::string reason, bool exact, std::optional<double> detail = {}) {
    return {Outcome::Entangled, std::move(reason), exact, detail};
  }
  static Verdict separable(std::string reason, bool exact, std::optional<double> detail = {}) {
    return {Outcome::SeparableAssured, std::move(reason), exact, detail};
  }
  static Verdict unknown(std::string reason, std::optional<double> detail = {}) {
    return {Outcome::Unknown, std::move(reason), false, detail};
  }

  [[nodiscard]] bool decisive() const { return outcome != Outcome::Unknown; }
};

}  // namespace sepscan
