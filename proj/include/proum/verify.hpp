#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "proum/matcher.hpp"
#include "proum/miner.hpp"
#include "proum/oracle.hpp"

namespace proum {

struct MisvaluedPattern {
  Pattern pattern;
  Utility reported = 0;
  Utility actual = 0;
};

struct VerifyReport {
  std::vector<PatternUtility> missing;  // true HUSPs absent from the result
  std::vector<PatternUtility> extra;    // reported patterns that are not HUSPs, or duplicates
  std::vector<MisvaluedPattern> misvalued;

  bool ok() const noexcept { return missing.empty() && extra.empty() && misvalued.empty(); }

  std::string describe() const {
    std::ostringstream os;
    for (const auto& m : missing) os << "missing\t" << to_string(m.pattern) << '\t' << m.utility << '\n';
    for (const auto& x : extra) os << "extra\t" << to_string(x.pattern) << '\t' << x.utility << '\n';
    for (const auto& v : misvalued)
      os << "misvalued\t" << to_string(v.pattern) << "\treported=" << v.reported
         << "\tactual=" << v.actual << '\n';
    return os.str();
  }
};

/// Recomputes every reported utility with the reference matcher. When
/// `oracle` limits are given, also diffs the result against oracle_mine().
inline VerifyReport verify(const MiningResult& result, const QSequenceDatabase& db,
                           const Threshold& threshold,
                           std::optional<OracleLimits> oracle = std::nullopt) {
  VerifyReport report;
  const auto total = database_utility(db);
  std::map<Pattern, Utility> reported;
  for (const auto& pu : result.husps) {
    if (!reported.emplace(pu.pattern, pu.utility).second) {
      report.extra.push_back(pu);
      continue;
    }
    const auto actual = pattern_utility(pu.pattern, db);
    if (actual != pu.utility) report.misvalued.push_back({pu.pattern, pu.utility, actual});
    if (!threshold.admits(actual, total)) report.extra.push_back({pu.pattern, actual});
  }
  if (oracle) {
    const auto truth = oracle_mine(db, threshold, *oracle);
    std::map<Pattern, Utility> expected;
    for (const auto& pu : truth) {
      expected.emplace(pu.pattern, pu.utility);
      if (!reported.count(pu.pattern)) report.missing.push_back(pu);
    }
    for (const auto& [p, u] : reported)
      if (!expected.count(p) && threshold.admits(pattern_utility(p, db), total))
        report.extra.push_back({p, u});
  }
  return report;
}

}  // namespace proum
