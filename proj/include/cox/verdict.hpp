#pragma once

#include <string>
#include <utility>

#include "json.hpp"

namespace cox {

using Json = nlohmann::ordered_json;

enum class Outcome { Verified, Refuted, Inconclusive };

std::string outcome_name(Outcome o);

/// Three-valued result of a theorem check. Refuted always carries a
/// replayable witness; Verified records the domain that was covered;
/// Inconclusive describes the exhausted budget.
struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  Json evidence;  // Verified: summary of the covered domain
  Json witness;   // Refuted: full input/output trace
  Json budget;    // Inconclusive: budget descriptor

  static Verdict verified(Json evidence) {
    return {Outcome::Verified, std::move(evidence), {}, {}};
  }
  static Verdict refuted(Json witness) {
    return {Outcome::Refuted, {}, std::move(witness), {}};
  }
  static Verdict inconclusive(Json budget) {
    return {Outcome::Inconclusive, {}, {}, std::move(budget)};
  }

  bool ok() const { return outcome == Outcome::Verified; }
  Json to_json() const;
};

/// An empirically located value for one of the paper-style non-effective
/// constants (C, K, N, L), per system, in the units of the search.
struct ConstantEstimate {
  std::string name;
  std::string system;
  long value = 0;
  long ceiling = 0;
  std::string units;

  Json to_json() const;
};

}  // namespace cox
