#pragma once

// Reference semantics for matching a pattern against a q-sequence, pattern
// utility, remaining utility and the SWU/SEU/SPU bounds. Everything here
// works directly on the raw sequences; the incremental machinery in
// utility_array.hpp must agree with it.

#include <optional>
#include <vector>

#include "proum/model.hpp"

namespace proum {

/// One pattern itemset pinned to a q-element. `item_indices` index into
/// that element's items.
struct MatchedElement {
  std::size_t element = 0;
  std::vector<std::size_t> item_indices;

  friend bool operator==(const MatchedElement&, const MatchedElement&) = default;
};

struct Match {
  std::vector<MatchedElement> positions;
  /// 1-based global position of the last matched item; 0 for the empty pattern.
  std::size_t end_position = 0;

  friend bool operator==(const Match&, const Match&) = default;
};

/// Suffix of a q-sequence strictly after some global position. The first
/// element may be a partial element.
struct RestPart {
  std::size_t after_position = 0;
  std::vector<QElement> elements;
};

namespace detail {

/// Global 1-based position of item `k` of element `e` is offsets[e] + k + 1.
inline std::vector<std::size_t> element_offsets(const QSequence& s) {
  std::vector<std::size_t> off(s.elements.size() + 1, 0);
  for (std::size_t e = 0; e < s.elements.size(); ++e)
    off[e + 1] = off[e] + s.elements[e].items.size();
  return off;
}

/// Both sides are sorted ascending; fills `idx` with the positions of the
/// itemset's items within the element.
inline bool locate(const Itemset& set, const QElement& element, std::vector<std::size_t>* idx) {
  if (idx) idx->clear();
  std::size_t k = 0;
  for (ItemId want : set) {
    while (k < element.items.size() && element.items[k].item < want) ++k;
    if (k == element.items.size() || element.items[k].item != want) return false;
    if (idx) idx->push_back(k);
    ++k;
  }
  return true;
}

inline Utility itemset_utility(const Itemset& set, const QElement& element,
                               const ProfitTable& profits) {
  Utility sum = 0;
  std::size_t k = 0;
  for (ItemId want : set) {
    while (element.items[k].item < want) ++k;
    sum += q_item_utility(element.items[k], profits);
  }
  return sum;
}

inline void enumerate_from(const Pattern& t, const QSequence& s, std::size_t k,
                           std::size_t first_element, const std::vector<std::size_t>& off,
                           Match& current, std::vector<Match>& out) {
  if (k == t.size()) {
    out.push_back(current);
    return;
  }
  std::vector<std::size_t> idx;
  for (std::size_t e = first_element; e < s.elements.size(); ++e) {
    if (!locate(t[k], s.elements[e], &idx)) continue;
    current.positions.push_back({e, idx});
    const auto saved_end = current.end_position;
    current.end_position = off[e] + idx.back() + 1;
    enumerate_from(t, s, k + 1, e + 1, off, current, out);
    current.end_position = saved_end;
    current.positions.pop_back();
  }
}

}  // namespace detail

/// All matches of `t` in `s`, in lexicographic order of their element
/// index vectors. The empty pattern has exactly one (empty) match.
inline std::vector<Match> enumerate_matches(const Pattern& t, const QSequence& s) {
  std::vector<Match> out;
  Match current;
  const auto off = detail::element_offsets(s);
  detail::enumerate_from(t, s, 0, 0, off, current, out);
  return out;
}

inline Utility match_utility(const Match& m, const QSequence& s, const ProfitTable& profits) {
  Utility sum = 0;
  for (const auto& me : m.positions)
    for (auto k : me.item_indices) sum += q_item_utility(s.elements[me.element].items[k], profits);
  return sum;
}

/// The lexicographically smallest match, found greedily: each itemset is
/// pinned to the earliest element that can hold it. It also has the
/// earliest end position of any match.
inline std::optional<Match> first_match(const Pattern& t, const QSequence& s) {
  Match m;
  const auto off = detail::element_offsets(s);
  std::vector<std::size_t> idx;
  std::size_t e = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    while (e < s.elements.size() && !detail::locate(t[k], s.elements[e], &idx)) ++e;
    if (e == s.elements.size()) return std::nullopt;
    m.positions.push_back({e, idx});
    m.end_position = off[e] + idx.back() + 1;
    ++e;
  }
  return m;
}

inline bool contains(const QSequence& s, const Pattern& t) { return first_match(t, s).has_value(); }

/// u(t, s): the maximum utility over all matches, or nullopt when t is not
/// contained in s. Computed by dynamic programming over (itemset, element)
/// so it stays polynomial on long sequences.
inline std::optional<Utility> pattern_utility_in_seq(const Pattern& t, const QSequence& s,
                                                     const ProfitTable& profits) {
  if (t.empty()) return Utility{0};
  const std::size_t n = s.elements.size();
  // best[e]: max utility of matching itemsets 0..k with itemset k at element e.
  std::vector<std::optional<Utility>> best(n), next(n);
  for (std::size_t e = 0; e < n; ++e)
    if (detail::locate(t[0], s.elements[e], nullptr))
      best[e] = detail::itemset_utility(t[0], s.elements[e], profits);
  for (std::size_t k = 1; k < t.size(); ++k) {
    std::optional<Utility> prefix_max;
    for (std::size_t e = 0; e < n; ++e) {
      next[e].reset();
      if (prefix_max && detail::locate(t[k], s.elements[e], nullptr))
        next[e] = *prefix_max + detail::itemset_utility(t[k], s.elements[e], profits);
      if (best[e] && (!prefix_max || *best[e] > *prefix_max)) prefix_max = best[e];
    }
    std::swap(best, next);
  }
  std::optional<Utility> out;
  for (const auto& b : best)
    if (b && (!out || *b > *out)) out = b;
  return out;
}

/// u(t) = sum over containing sequences of u(t, s).
inline Utility pattern_utility(const Pattern& t, const QSequenceDatabase& db) {
  Utility sum = 0;
  for (const auto& s : db.sequences)
    if (auto u = pattern_utility_in_seq(t, s, db.profits)) sum += *u;
  return sum;
}

/// Sum of item utilities strictly after 1-based global position `pos`.
inline Utility remaining_utility_at(const QSequence& s, std::size_t pos,
                                    const ProfitTable& profits) {
  const auto len = s.length();
  if (pos < 1 || pos > len)
    throw std::out_of_range("position " + std::to_string(pos) + " outside 1.." +
                            std::to_string(len));
  Utility sum = 0;
  std::size_t p = 0;
  for (const auto& e : s.elements)
    for (const auto& qi : e.items)
      if (++p > pos) sum += q_item_utility(qi, profits);
  return sum;
}

inline std::optional<RestPart> first_match_rest(const Pattern& t, const QSequence& s) {
  auto m = first_match(t, s);
  if (!m) return std::nullopt;
  RestPart rest;
  rest.after_position = m->end_position;
  std::size_t p = 0;
  for (const auto& e : s.elements) {
    QElement tail;
    for (const auto& qi : e.items)
      if (++p > m->end_position) tail.items.push_back(qi);
    if (!tail.items.empty()) rest.elements.push_back(std::move(tail));
  }
  return rest;
}

inline Utility rest_utility(const RestPart& rest, const ProfitTable& profits) {
  Utility sum = 0;
  for (const auto& e : rest.elements) sum += element_utility(e, profits);
  return sum;
}

/// u_rest(t, s): the largest remaining utility over all matches. The first
/// match ends earliest, so its rest is that maximum.
inline std::optional<Utility> remaining_utility_of_pattern(const Pattern& t, const QSequence& s,
                                                           const ProfitTable& profits) {
  auto rest = first_match_rest(t, s);
  if (!rest) return std::nullopt;
  return rest_utility(*rest, profits);
}

inline Utility remaining_utility_of_pattern(const Pattern& t, const QSequenceDatabase& db) {
  Utility sum = 0;
  for (const auto& s : db.sequences)
    if (auto r = remaining_utility_of_pattern(t, s, db.profits)) sum += *r;
  return sum;
}

inline Utility swu(const Pattern& t, const QSequenceDatabase& db) {
  Utility sum = 0;
  for (const auto& s : db.sequences)
    if (contains(s, t)) sum += sequence_utility(s, db.profits);
  return sum;
}

/// SEU(t, s) = u(t, s) + utility of the rest after the first match.
inline std::optional<Utility> seu_in_seq(const Pattern& t, const QSequence& s,
                                         const ProfitTable& profits) {
  auto u = pattern_utility_in_seq(t, s, profits);
  if (!u) return std::nullopt;
  return *u + *remaining_utility_of_pattern(t, s, profits);
}

inline Utility seu(const Pattern& t, const QSequenceDatabase& db) {
  Utility sum = 0;
  for (const auto& s : db.sequences)
    if (auto v = seu_in_seq(t, s, db.profits)) sum += *v;
  return sum;
}

/// SPU(t, s) = utility of the first (pivot) match + rest after it. Not an
/// upper bound on u(t); kept for diagnostics only.
inline std::optional<Utility> spu_in_seq(const Pattern& t, const QSequence& s,
                                         const ProfitTable& profits) {
  auto m = first_match(t, s);
  if (!m) return std::nullopt;
  const auto rest = m->end_position == 0 ? sequence_utility(s, profits)
                                         : remaining_utility_at(s, m->end_position, profits);
  return match_utility(*m, s, profits) + rest;
}

inline Utility spu(const Pattern& t, const QSequenceDatabase& db) {
  Utility sum = 0;
  for (const auto& s : db.sequences)
    if (auto v = spu_in_seq(t, s, db.profits)) sum += *v;
  return sum;
}

}  // namespace proum
