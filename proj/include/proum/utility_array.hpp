#pragma once

// Utility-arrays and prefix projection.
//
// A utility-array flattens one q-sequence into entries indexed by 1-based
// global position, each carrying the item's utility, the utility remaining
// after it, and two links: the next occurrence of the same item and the
// first position of the following element. A projection never copies
// sequence content; it only records pivots (match end positions) into the
// immutable arrays.

#include <cassert>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "proum/model.hpp"

namespace proum {

using Position = std::uint32_t;

/// Marks an absent link.
inline constexpr Position kNoPosition = 0;

struct UtilityArrayEntry {
  std::uint32_t eid = 0;
  ItemId item = 0;
  Utility u = 0;
  Utility ru = 0;
  Position next_pos = kNoPosition;
  Position next_eid = kNoPosition;

  friend bool operator==(const UtilityArrayEntry&, const UtilityArrayEntry&) = default;
};

class UtilityArray {
 public:
  UtilityArray() = default;
  UtilityArray(std::uint32_t sid, std::vector<UtilityArrayEntry> entries,
               std::vector<std::pair<ItemId, Position>> first_occurrence)
      : sid_(sid), entries_(std::move(entries)), first_occurrence_(std::move(first_occurrence)) {}

  std::uint32_t sid() const noexcept { return sid_; }
  std::size_t size() const noexcept { return entries_.size(); }

  const UtilityArrayEntry& at(Position pos) const {
    assert(pos >= 1 && pos <= entries_.size());
    return entries_[pos - 1];
  }

  const std::vector<UtilityArrayEntry>& entries() const noexcept { return entries_; }

  /// Position of the first entry holding `item`, or kNoPosition.
  Position first_occurrence(ItemId item) const {
    auto it = std::lower_bound(first_occurrence_.begin(), first_occurrence_.end(), item,
                               [](const auto& p, ItemId i) { return p.first < i; });
    return it != first_occurrence_.end() && it->first == item ? it->second : kNoPosition;
  }

  /// Sorted by item.
  const std::vector<std::pair<ItemId, Position>>& first_occurrences() const noexcept {
    return first_occurrence_;
  }

  /// Sum of all entry utilities.
  Utility total() const noexcept { return entries_.empty() ? 0 : entries_[0].u + entries_[0].ru; }

 private:
  std::uint32_t sid_ = 0;
  std::vector<UtilityArrayEntry> entries_;
  std::vector<std::pair<ItemId, Position>> first_occurrence_;
};

inline UtilityArray build_utility_array(const QSequence& s, const ProfitTable& profits) {
  std::vector<UtilityArrayEntry> entries;
  entries.reserve(s.length());
  std::vector<Position> element_start;
  for (std::size_t e = 0; e < s.elements.size(); ++e) {
    element_start.push_back(static_cast<Position>(entries.size() + 1));
    for (const auto& qi : s.elements[e].items)
      entries.push_back({static_cast<std::uint32_t>(e + 1), qi.item, q_item_utility(qi, profits)});
  }
  Utility rest = 0;
  std::vector<std::pair<ItemId, Position>> last_seen;  // item -> smallest position seen so far
  for (std::size_t k = entries.size(); k-- > 0;) {
    auto& entry = entries[k];
    entry.ru = rest;
    rest += entry.u;
    entry.next_eid = entry.eid < element_start.size() ? element_start[entry.eid] : kNoPosition;
    const auto pos = static_cast<Position>(k + 1);
    auto it = std::find_if(last_seen.begin(), last_seen.end(),
                           [&](const auto& p) { return p.first == entry.item; });
    if (it == last_seen.end()) {
      last_seen.emplace_back(entry.item, pos);
    } else {
      entry.next_pos = it->second;
      it->second = pos;
    }
  }
  std::sort(last_seen.begin(), last_seen.end());
  return UtilityArray(s.sid, std::move(entries), std::move(last_seen));
}

inline std::vector<UtilityArray> build_all(const QSequenceDatabase& db) {
  std::vector<UtilityArray> arrays;
  arrays.reserve(db.sequences.size());
  for (const auto& s : db.sequences) arrays.push_back(build_utility_array(s, db.profits));
  return arrays;
}

/// Table layout: pos, eid, item, u, ru, next_pos, next_eid; `-` for absent links.
inline void dump(std::ostream& os, const UtilityArray& ua) {
  auto link = [](Position p) { return p == kNoPosition ? std::string("-") : std::to_string(p); };
  os << "pos\teid\titem\tu\tru\tnext_pos\tnext_eid\n";
  for (Position pos = 1; pos <= ua.size(); ++pos) {
    const auto& e = ua.at(pos);
    os << pos << '\t' << e.eid << '\t' << e.item << '\t' << e.u << '\t' << e.ru << '\t'
       << link(e.next_pos) << '\t' << link(e.next_eid) << '\n';
  }
}

/// End of a match of the prefix pattern. At most one pivot exists per
/// element, because the match end is always the prefix's last item.
struct Pivot {
  Position pos = kNoPosition;  // kNoPosition for the empty prefix
  std::uint32_t eid = 0;
  Utility best = 0;  // max utility over matches ending here

  friend bool operator==(const Pivot&, const Pivot&) = default;
};

struct SequenceProjection {
  std::uint32_t array_index = 0;
  std::vector<Pivot> pivots;  // strictly increasing by pos
};

struct ProjectionState {
  std::vector<SequenceProjection> sequences;
  /// u(t) over the projected sequences.
  Utility utility = 0;
  /// SEU(t): per sequence, best pivot utility plus ru at the first pivot.
  Utility seu = 0;

  bool empty() const noexcept { return sequences.empty(); }
};

/// State for the empty prefix: every sequence has one virtual pivot in
/// front of its first element.
inline ProjectionState root_projection(const std::vector<UtilityArray>& arrays) {
  ProjectionState st;
  for (std::uint32_t k = 0; k < arrays.size(); ++k) {
    if (arrays[k].size() == 0) continue;
    st.sequences.push_back({k, {Pivot{}}});
    st.seu += arrays[k].total();
  }
  return st;
}

namespace detail {

inline void finish_sequence(ProjectionState& out, std::uint32_t index, std::vector<Pivot>&& pivots,
                            const UtilityArray& ua) {
  if (pivots.empty()) return;
  Utility best = 0;
  for (const auto& p : pivots) best = std::max(best, p.best);
  out.utility += best;
  out.seu += best + ua.at(pivots.front().pos).ru;
  out.sequences.push_back({index, std::move(pivots)});
}

/// First position belonging to an element after the pivot's.
inline Position first_after(const Pivot& p, const UtilityArray& ua) {
  return p.pos == kNoPosition ? (ua.size() ? 1 : kNoPosition) : ua.at(p.pos).next_eid;
}

}  // namespace detail

/// Projection for i_concatenate(t, item): each pivot extends to `item` if it
/// occurs later in the pivot's own element.
inline ProjectionState project_i(const ProjectionState& state,
                                 const std::vector<UtilityArray>& arrays, ItemId item) {
  ProjectionState out;
  for (const auto& sp : state.sequences) {
    const auto& ua = arrays[sp.array_index];
    std::vector<Pivot> next;
    for (const auto& p : sp.pivots) {
      if (p.pos == kNoPosition) continue;
      for (Position q = p.pos + 1; q <= ua.size(); ++q) {
        const auto& e = ua.at(q);
        if (e.eid != p.eid || e.item > item) break;
        if (e.item == item) {
          next.push_back({q, e.eid, p.best + e.u});
          break;
        }
      }
    }
    detail::finish_sequence(out, sp.array_index, std::move(next), ua);
  }
  return out;
}

/// Projection for s_concatenate(t, item): every occurrence of `item` in an
/// element after some pivot becomes a new pivot, carrying the best utility
/// among the pivots before its element. Occurrences are walked through the
/// first-occurrence index and next_pos links.
inline ProjectionState project_s(const ProjectionState& state,
                                 const std::vector<UtilityArray>& arrays, ItemId item) {
  ProjectionState out;
  for (const auto& sp : state.sequences) {
    const auto& ua = arrays[sp.array_index];
    std::vector<Pivot> next;
    const auto min_eid = sp.pivots.front().eid;
    std::size_t k = 0;
    std::optional<Utility> reach;
    for (Position q = ua.first_occurrence(item); q != kNoPosition; q = ua.at(q).next_pos) {
      const auto& e = ua.at(q);
      if (e.eid <= min_eid) continue;
      while (k < sp.pivots.size() && sp.pivots[k].eid < e.eid) {
        reach = std::max(reach.value_or(0), sp.pivots[k].best);
        ++k;
      }
      next.push_back({q, e.eid, *reach + e.u});
    }
    detail::finish_sequence(out, sp.array_index, std::move(next), ua);
  }
  return out;
}

/// Projection for the single-item pattern <[item]>.
inline ProjectionState initial_projection(const std::vector<UtilityArray>& arrays, ItemId item) {
  return project_s(root_projection(arrays), arrays, item);
}

struct Candidate {
  ItemId item = 0;
  Utility seu = 0;  // SEU of the extended pattern

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct Candidates {
  std::vector<Candidate> i_items;  // ascending by item
  std::vector<Candidate> s_items;  // ascending by item
};

/// Collects I- and S-extension items of a projected prefix and, in the same
/// pass, the SEU each extension would have after projection. Holds scratch
/// buffers indexed by item id so repeated scans do not allocate.
class ExtensionScanner {
 public:
  Candidates scan(const ProjectionState& state, const std::vector<UtilityArray>& arrays) {
    Candidates out;
    for (const auto& sp : state.sequences) {
      const auto& ua = arrays[sp.array_index];
      scan_i(sp, ua);
      scan_s(sp, ua);
      flush(i_, out_i_);
      flush(s_, out_s_);
    }
    out.i_items = collect(out_i_);
    out.s_items = collect(out_s_);
    return out;
  }

 private:
  struct Slot {
    bool seen = false;
    Utility best = 0;
    Utility first_ru = 0;
  };
  struct Table {
    std::vector<Slot> slots;
    std::vector<ItemId> touched;
  };
  struct Totals {
    std::vector<Utility> seu;
    std::vector<bool> present;
    std::vector<ItemId> touched;
  };

  static Slot& slot(Table& t, ItemId item) {
    if (item >= t.slots.size()) t.slots.resize(std::size_t{item} * 2 + 1);
    auto& s = t.slots[item];
    if (!s.seen) t.touched.push_back(item);
    return s;
  }

  // Positions are visited in ascending order, so the first hit per item is
  // the first pivot of the extended pattern.
  static void offer(Table& t, ItemId item, Utility value, Utility ru) {
    auto& s = slot(t, item);
    if (!s.seen) {
      s.seen = true;
      s.best = value;
      s.first_ru = ru;
    } else if (value > s.best) {
      s.best = value;
    }
  }

  void scan_i(const SequenceProjection& sp, const UtilityArray& ua) {
    for (const auto& p : sp.pivots) {
      if (p.pos == kNoPosition) continue;
      for (Position q = p.pos + 1; q <= ua.size() && ua.at(q).eid == p.eid; ++q) {
        const auto& e = ua.at(q);
        offer(i_, e.item, p.best + e.u, e.ru);
      }
    }
  }

  void scan_s(const SequenceProjection& sp, const UtilityArray& ua) {
    const auto start = detail::first_after(sp.pivots.front(), ua);
    if (start == kNoPosition) return;
    std::size_t k = 0;
    Utility reach = 0;
    for (Position q = start; q <= ua.size(); ++q) {
      const auto& e = ua.at(q);
      while (k < sp.pivots.size() && sp.pivots[k].eid < e.eid) {
        reach = std::max(reach, sp.pivots[k].best);
        ++k;
      }
      offer(s_, e.item, reach + e.u, e.ru);
    }
  }

  static void flush(Table& t, Totals& totals) {
    for (ItemId item : t.touched) {
      auto& s = t.slots[item];
      if (item >= totals.seu.size()) {
        totals.seu.resize(std::size_t{item} * 2 + 1, 0);
        totals.present.resize(std::size_t{item} * 2 + 1, false);
      }
      if (!totals.present[item]) {
        totals.present[item] = true;
        totals.touched.push_back(item);
      }
      totals.seu[item] += s.best + s.first_ru;
      s = Slot{};
    }
    t.touched.clear();
  }

  static std::vector<Candidate> collect(Totals& totals) {
    std::vector<Candidate> out;
    out.reserve(totals.touched.size());
    for (ItemId item : totals.touched) {
      out.push_back({item, totals.seu[item]});
      totals.seu[item] = 0;
      totals.present[item] = false;
    }
    totals.touched.clear();
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.item < b.item; });
    return out;
  }

  Table i_, s_;
  Totals out_i_, out_s_;
};

inline Candidates extension_candidates(const ProjectionState& state,
                                       const std::vector<UtilityArray>& arrays) {
  ExtensionScanner scanner;
  return scanner.scan(state, arrays);
}

}  // namespace proum
