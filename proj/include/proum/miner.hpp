#pragma once

// Projection-based high-utility sequential pattern mining.
//
// mine() scans the database for per-item SWU, optionally removes items whose
// SWU is below the threshold (PUO), builds utility-arrays and runs a
// depth-first search over I-/S-concatenations. Extensions whose SEU is below
// the threshold are skipped along with their whole subtree (PUK).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "proum/matcher.hpp"
#include "proum/model.hpp"
#include "proum/utility_array.hpp"

namespace proum {

struct MinerConfig {
  Threshold threshold{1, 1};
  bool enable_puo = true;
  bool enable_puk = true;
  /// Patterns longer than this raise ResourceError instead of being explored.
  std::optional<std::size_t> max_pattern_length;
  bool parallel_roots = false;
};

struct MiningStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t projections_built = 0;
  std::uint64_t puo_removed_items = 0;
  std::uint64_t puk_pruned_nodes = 0;
  std::uint64_t husp_count = 0;
  std::chrono::nanoseconds elapsed{0};

  /// Counter equality; wall time is ignored.
  bool same_counters(const MiningStats& o) const noexcept {
    return nodes_visited == o.nodes_visited && projections_built == o.projections_built &&
           puo_removed_items == o.puo_removed_items && puk_pruned_nodes == o.puk_pruned_nodes &&
           husp_count == o.husp_count;
  }
};

struct PatternUtility {
  Pattern pattern;
  Utility utility = 0;

  friend bool operator==(const PatternUtility&, const PatternUtility&) = default;
};

struct MiningResult {
  /// Sorted by PatternOrder; duplicate-free.
  std::vector<PatternUtility> husps;
  MiningStats stats;
  /// u(D) of the input database, before any revision.
  Utility database_utility = 0;
  Threshold threshold{1, 1};
};

inline void sort_patterns(std::vector<PatternUtility>& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return PatternOrder{}(a.pattern, b.pattern); });
}

struct RevisedDatabase {
  QSequenceDatabase db;
  std::vector<ItemId> removed_items;  // ascending
};

/// Per-item SWU: each item counts the utility of every sequence it occurs in, once.
inline std::map<ItemId, Utility> item_swu(const QSequenceDatabase& db) {
  std::map<ItemId, Utility> out;
  std::vector<ItemId> seen;
  for (const auto& s : db.sequences) {
    const auto su = sequence_utility(s, db.profits);
    seen.clear();
    for (const auto& e : s.elements)
      for (const auto& qi : e.items) seen.push_back(qi.item);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (ItemId i : seen) out[i] += su;
  }
  return out;
}

/// Drops every item whose single-item SWU falls below threshold * `total`,
/// then any element or sequence left empty. `total` is u(D) of the original
/// database.
inline RevisedDatabase revise_database(const QSequenceDatabase& db, const Threshold& threshold,
                                       Utility total) {
  RevisedDatabase out;
  out.db.profits = db.profits;
  std::set<ItemId> removed;
  for (const auto& [item, w] : item_swu(db))
    if (!threshold.admits(w, total)) removed.insert(item);
  out.removed_items.assign(removed.begin(), removed.end());
  for (const auto& s : db.sequences) {
    QSequence kept{s.sid, {}};
    for (const auto& e : s.elements) {
      QElement ke;
      for (const auto& qi : e.items)
        if (!removed.count(qi.item)) ke.items.push_back(qi);
      if (!ke.items.empty()) kept.elements.push_back(std::move(ke));
    }
    if (!kept.elements.empty()) out.db.sequences.push_back(std::move(kept));
  }
  return out;
}

inline RevisedDatabase revise_database(const QSequenceDatabase& db, const Threshold& threshold) {
  return revise_database(db, threshold, database_utility(db));
}

namespace detail {

/// Depth-first search below one prefix, with an explicit stack so deep
/// patterns do not exhaust the call stack. Children are visited I-extensions
/// first, then S-extensions, each in ascending item order.
class ProjectSearch {
 public:
  ProjectSearch(const std::vector<UtilityArray>& arrays, const MinerConfig& config, Utility total)
      : arrays_(arrays), config_(config), total_(total) {}

  void run(Pattern prefix, ProjectionState state) {
    push(std::move(prefix), std::move(state));
    while (!stack_.empty()) {
      auto& top = stack_.back();
      if (top.next == top.children.size()) {
        stack_.pop_back();
        continue;
      }
      const auto [item, is_s, candidate_seu] = top.children[top.next++];
      Pattern child = is_s ? s_concatenate(top.pattern, item) : i_concatenate(top.pattern, item);
      if (config_.max_pattern_length && child.length() > *config_.max_pattern_length)
        throw ResourceError("pattern length cap of " +
                            std::to_string(*config_.max_pattern_length) + " exceeded");
      ProjectionState projected = is_s ? project_s(top.state, arrays_, item)
                                       : project_i(top.state, arrays_, item);
      ++stats.projections_built;
      assert(projected.seu == candidate_seu);
      (void)candidate_seu;
      if (config_.enable_puk && !admits(projected.seu)) {
        ++stats.puk_pruned_nodes;
        continue;
      }
      if (admits(projected.utility)) husps.push_back({child, projected.utility});
      push(std::move(child), std::move(projected));
    }
  }

  std::vector<PatternUtility> husps;
  MiningStats stats;

 private:
  struct Child {
    ItemId item;
    bool is_s;
    Utility seu;
  };
  struct Frame {
    Pattern pattern;
    ProjectionState state;
    std::vector<Child> children;
    std::size_t next = 0;
  };

  bool admits(Utility u) const { return config_.threshold.admits(u, total_); }

  void push(Pattern pattern, ProjectionState state) {
    if (!pattern.empty()) ++stats.nodes_visited;
    auto cands = scanner_.scan(state, arrays_);
    std::vector<Child> children;
    children.reserve(cands.i_items.size() + cands.s_items.size());
    auto keep = [&](const Candidate& c, bool is_s) {
      if (config_.enable_puk && !admits(c.seu)) {
        ++stats.puk_pruned_nodes;
        return;
      }
      children.push_back({c.item, is_s, c.seu});
    };
    for (const auto& c : cands.i_items) keep(c, false);
    for (const auto& c : cands.s_items) keep(c, true);
    stack_.push_back({std::move(pattern), std::move(state), std::move(children)});
  }

  const std::vector<UtilityArray>& arrays_;
  const MinerConfig& config_;
  Utility total_;
  ExtensionScanner scanner_;
  std::vector<Frame> stack_;
};

inline void merge_stats(MiningStats& into, const MiningStats& from) {
  into.nodes_visited += from.nodes_visited;
  into.projections_built += from.projections_built;
  into.puk_pruned_nodes += from.puk_pruned_nodes;
}

}  // namespace detail

/// Mines the complete set of patterns t with u(t) >= threshold * u(D).
/// Pruning flags change only the cost, never the result.
inline MiningResult mine(const QSequenceDatabase& db, const MinerConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  validate(db);
  MiningResult result;
  result.threshold = config.threshold;
  result.database_utility = database_utility(db);
  if (result.database_utility >= kMaxDatabaseUtility)
    throw ResourceError("database utility exceeds 2^63");
  const Utility total = result.database_utility;

  std::optional<RevisedDatabase> revised;
  if (config.enable_puo) {
    revised = revise_database(db, config.threshold, total);
    result.stats.puo_removed_items = revised->removed_items.size();
  }
  const auto& working = revised ? revised->db : db;
  const auto arrays = build_all(working);
  const auto root = root_projection(arrays);

  if (!config.parallel_roots) {
    detail::ProjectSearch search(arrays, config, total);
    search.run(Pattern{}, root);
    result.husps = std::move(search.husps);
    detail::merge_stats(result.stats, search.stats);
  } else {
    // Each surviving root item's subtree is independent. Roots are handed
    // out through an atomic cursor and results merged afterwards; the final
    // sort makes the output independent of scheduling.
    const auto roots = extension_candidates(root, arrays).s_items;
    std::vector<std::vector<PatternUtility>> found(roots.size());
    std::vector<MiningStats> stats(roots.size());
    std::vector<std::exception_ptr> errors(roots.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (std::size_t k; (k = cursor.fetch_add(1)) < roots.size();) {
        try {
          const auto item = roots[k].item;
          if (config.enable_puk && !config.threshold.admits(roots[k].seu, total)) {
            ++stats[k].puk_pruned_nodes;
            continue;
          }
          detail::ProjectSearch search(arrays, config, total);
          auto state = project_s(root, arrays, item);
          ++search.stats.projections_built;
          Pattern p = s_concatenate(Pattern{}, item);
          if (config.threshold.admits(state.utility, total))
            search.husps.push_back({p, state.utility});
          search.run(std::move(p), std::move(state));
          found[k] = std::move(search.husps);
          stats[k] = search.stats;
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    };
    const auto n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                   static_cast<unsigned>(roots.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (std::size_t k = 0; k < roots.size(); ++k) {
      result.husps.insert(result.husps.end(), found[k].begin(), found[k].end());
      detail::merge_stats(result.stats, stats[k]);
    }
  }

  sort_patterns(result.husps);
  result.stats.husp_count = result.husps.size();
  result.stats.elapsed = std::chrono::steady_clock::now() - started;
  return result;
}

}  // namespace proum
