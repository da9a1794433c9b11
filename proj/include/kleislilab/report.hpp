#pragma once

#include <string>
#include <utility>

#include <json.hpp>

namespace klab {

using json = nlohmann::ordered_json;

enum class Verdict { Pass, Fail, CapExceeded, HypothesisUnmet };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::CapExceeded: return "cap-exceeded";
    case Verdict::HypothesisUnmet: return "hypothesis-unmet";
  }
  return "?";
}

/** Outcome of a law or property check. Failures always carry a witness
 *  (the offending elements, serialized); stats hold sizes and the mode the
 *  check ran in. No timing data lives here, reports are byte-stable. */
struct CheckReport {
  Verdict verdict = Verdict::Pass;
  json witness;
  json stats = json::object();

  bool passed() const { return verdict == Verdict::Pass; }

  static CheckReport pass() { return {}; }
  static CheckReport fail(json w) {
    CheckReport r;
    r.verdict = Verdict::Fail;
    r.witness = std::move(w);
    return r;
  }
  static CheckReport capped(json w) {
    CheckReport r;
    r.verdict = Verdict::CapExceeded;
    r.witness = std::move(w);
    return r;
  }
  static CheckReport unmet(json w) {
    CheckReport r;
    r.verdict = Verdict::HypothesisUnmet;
    r.witness = std::move(w);
    return r;
  }

  // Fold a sub-check into a suite report; the first non-pass outcome sticks.
  void absorb(const std::string& name, const CheckReport& sub) {
    stats[name] = sub.stats.is_null() ? json::object() : sub.stats;
    if (passed() && !sub.passed()) {
      verdict = sub.verdict;
      witness = json::object();
      witness["check"] = name;
      witness["detail"] = sub.witness;
    }
  }

  json to_json() const {
    json j;
    j["verdict"] = verdict_name(verdict);
    j["witness"] = witness;
    j["stats"] = stats;
    return j;
  }
};

}  // namespace klab
