#pragma once

// Brute-force ground truth: enumerate every pattern contained in the
// database and keep those whose exact utility reaches the threshold. No
// upper bounds are involved.

#include <set>
#include <vector>

#include "proum/matcher.hpp"
#include "proum/miner.hpp"
#include "proum/model.hpp"

namespace proum {

struct OracleLimits {
  std::size_t max_pattern_length = 32;
  std::size_t max_patterns = 200'000;
};

namespace detail {

inline std::vector<ItemId> distinct_items(const QSequenceDatabase& db) {
  std::set<ItemId> items;
  for (const auto& s : db.sequences)
    for (const auto& e : s.elements)
      for (const auto& qi : e.items) items.insert(qi.item);
  return {items.begin(), items.end()};
}

inline bool contained_anywhere(const QSequenceDatabase& db, const Pattern& t) {
  return std::any_of(db.sequences.begin(), db.sequences.end(),
                     [&](const QSequence& s) { return contains(s, t); });
}

template <class Visitor>
void grow(const QSequenceDatabase& db, const std::vector<ItemId>& items, const Pattern& t,
          const OracleLimits& limits, std::size_t& count, Visitor& visit) {
  auto try_child = [&](Pattern child) {
    if (!contained_anywhere(db, child)) return;
    if (child.length() > limits.max_pattern_length)
      throw ResourceError("oracle pattern length cap of " +
                          std::to_string(limits.max_pattern_length) + " exceeded");
    if (++count > limits.max_patterns)
      throw ResourceError("oracle pattern count cap of " + std::to_string(limits.max_patterns) +
                          " exceeded");
    visit(static_cast<const Pattern&>(child));
    grow(db, items, child, limits, count, visit);
  };
  if (!t.empty())
    for (ItemId i : items)
      if (i > t.last_item()) try_child(i_concatenate(t, i));
  for (ItemId i : items) try_child(s_concatenate(t, i));
}

inline void subsequences_from(const QSequence& s, std::size_t first_element,
                              std::vector<Itemset>& current, const OracleLimits& limits,
                              std::set<Pattern>& out) {
  for (std::size_t e = first_element; e < s.elements.size(); ++e) {
    const auto& items = s.elements[e].items;
    if (items.size() >= 32) throw ResourceError("element too large for subset enumeration");
    for (std::uint32_t mask = 1; mask < (1u << items.size()); ++mask) {
      Itemset set;
      for (std::size_t k = 0; k < items.size(); ++k)
        if (mask & (1u << k)) set.push_back(items[k].item);
      current.push_back(std::move(set));
      Pattern p(current);
      if (p.length() > limits.max_pattern_length)
        throw ResourceError("oracle pattern length cap of " +
                            std::to_string(limits.max_pattern_length) + " exceeded");
      out.insert(std::move(p));
      if (out.size() > limits.max_patterns)
        throw ResourceError("oracle pattern count cap of " +
                            std::to_string(limits.max_patterns) + " exceeded");
      subsequences_from(s, e + 1, current, limits, out);
      current.pop_back();
    }
  }
}

}  // namespace detail

/// Calls `visit(const Pattern&)` once for every distinct pattern contained in
/// at least one sequence, generated by unpruned I-/S-concatenation growth.
template <class Visitor>
void for_each_contained_pattern(const QSequenceDatabase& db, const OracleLimits& limits,
                                Visitor&& visit) {
  const auto items = detail::distinct_items(db);
  std::size_t count = 0;
  detail::grow(db, items, Pattern{}, limits, count, visit);
}

inline std::vector<Pattern> enumerate_all_patterns(const QSequenceDatabase& db,
                                                   const OracleLimits& limits = {}) {
  std::vector<Pattern> out;
  for_each_contained_pattern(db, limits, [&](const Pattern& p) { out.push_back(p); });
  return out;
}

/// Second, independent enumeration: every subsequence of every sequence,
/// deduplicated globally.
inline std::set<Pattern> enumerate_subsequences(const QSequenceDatabase& db,
                                                const OracleLimits& limits = {}) {
  std::set<Pattern> out;
  std::vector<Itemset> current;
  for (const auto& s : db.sequences) detail::subsequences_from(s, 0, current, limits, out);
  return out;
}

/// All (pattern, utility) pairs with u(t) >= threshold * u(D), sorted by PatternOrder.
inline std::vector<PatternUtility> oracle_mine(const QSequenceDatabase& db,
                                               const Threshold& threshold,
                                               const OracleLimits& limits = {}) {
  const auto total = database_utility(db);
  std::vector<PatternUtility> out;
  for_each_contained_pattern(db, limits, [&](const Pattern& p) {
    const auto u = pattern_utility(p, db);
    if (threshold.admits(u, total)) out.push_back({p, u});
  });
  sort_patterns(out);
  return out;
}

}  // namespace proum
