#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "support/fixtures.hpp"

namespace proum {
namespace {

using namespace proum::testing;

constexpr Position none = kNoPosition;

/// SEU contribution of one sequence to a projection.
std::optional<Utility> contribution(const ProjectionState& st, const std::vector<UtilityArray>& arrays,
                                    std::uint32_t array_index) {
  for (const auto& sp : st.sequences) {
    if (sp.array_index != array_index) continue;
    Utility best = 0;
    for (const auto& p : sp.pivots) best = std::max(best, p.best);
    return best + arrays[array_index].at(sp.pivots.front().pos).ru;
  }
  return std::nullopt;
}

std::optional<Utility> utility_in(const ProjectionState& st, std::uint32_t array_index) {
  for (const auto& sp : st.sequences) {
    if (sp.array_index != array_index) continue;
    Utility best = 0;
    for (const auto& p : sp.pivots) best = std::max(best, p.best);
    return best;
  }
  return std::nullopt;
}

TEST(UtilityArray, FirstSequenceLayout) {
  const auto db = running_example();
  const auto ua = build_utility_array(db.sequences[0], db.profits);
  const std::vector<UtilityArrayEntry> expected{
      {1, a, 6, 65, 6, 3},     {1, c, 10, 55, 3, 3},      {2, c, 20, 35, none, 4},
      {3, b, 20, 15, none, 6}, {3, f, 3, 12, none, 6},    {4, a, 6, 6, none, none},
      {4, e, 6, 0, none, none}};
  EXPECT_EQ(ua.entries(), expected);
  EXPECT_EQ(ua.sid(), 1u);
  EXPECT_EQ(ua.first_occurrence(a), 1u);
  EXPECT_EQ(ua.first_occurrence(c), 2u);
  EXPECT_EQ(ua.first_occurrence(e), 7u);
  EXPECT_EQ(ua.first_occurrence(d), none);
  EXPECT_EQ(ua.total(), 71u);
}

TEST(UtilityArray, DumpUsesTableColumns) {
  const auto db = running_example();
  std::ostringstream os;
  dump(os, build_utility_array(db.sequences[0], db.profits));
  EXPECT_EQ(os.str(),
            "pos\teid\titem\tu\tru\tnext_pos\tnext_eid\n"
            "1\t1\t1\t6\t65\t6\t3\n"
            "2\t1\t3\t10\t55\t3\t3\n"
            "3\t2\t3\t20\t35\t-\t4\n"
            "4\t3\t2\t20\t15\t-\t6\n"
            "5\t3\t6\t3\t12\t-\t6\n"
            "6\t4\t1\t6\t6\t-\t-\n"
            "7\t4\t5\t6\t0\t-\t-\n");
}

TEST(UtilityArray, SingleItemSequence) {
  ProfitTable profits{{a, 3}};
  const auto ua = build_utility_array(QSequence{1, {QElement{{{a, 1}}}}}, profits);
  ASSERT_EQ(ua.size(), 1u);
  EXPECT_EQ(ua.at(1), (UtilityArrayEntry{1, a, 3, 0, none, none}));
}

TEST(UtilityArray, BuildAll) {
  const auto db = running_example();
  const auto arrays = build_all(db);
  ASSERT_EQ(arrays.size(), 5u);
  const std::vector<std::size_t> sizes{7, 7, 6, 5, 7};
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(arrays[k].size(), sizes[k]) << "S" << k + 1;
  EXPECT_TRUE(build_all(QSequenceDatabase{}).empty());

  QSequenceDatabase only_s1{{db.sequences[0]}, db.profits};
  const auto one = build_all(only_s1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].entries(), arrays[0].entries());
}

TEST(UtilityArray, FieldConsistency) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto db = seed < 20 ? random_db(seed) : generate({.sequence_count = 30, .item_universe_size = 8, .seed = seed});
    for (const auto& ua : build_all(db)) {
      const auto n = static_cast<Position>(ua.size());
      ASSERT_GT(n, 0u);
      EXPECT_EQ(ua.at(n).ru, 0u);
      std::map<ItemId, Position> last;
      for (Position k = 1; k <= n; ++k) {
        const auto& entry = ua.at(k);
        if (k < n) {
          EXPECT_EQ(entry.ru, ua.at(k + 1).ru + ua.at(k + 1).u);
        }
        if (!last.count(entry.item)) {
          EXPECT_EQ(ua.first_occurrence(entry.item), k);
        } else {
          EXPECT_EQ(ua.at(last[entry.item]).next_pos, k);
        }
        last[entry.item] = k;
        if (entry.next_eid != none) {
          EXPECT_EQ(ua.at(entry.next_eid).eid, entry.eid + 1);
          EXPECT_NE(ua.at(entry.next_eid - 1).eid, entry.eid + 1);
        } else {
          EXPECT_EQ(ua.at(n).eid, entry.eid);
        }
      }
      for (const auto& [item, pos] : last) EXPECT_EQ(ua.at(pos).next_pos, none);
    }
  }
}

TEST(Projection, InitialProjection) {
  const auto db = running_example();
  const auto arrays = build_all(db);
  const auto pa = initial_projection(arrays, a);
  EXPECT_EQ(pa.utility, 54u);
  EXPECT_EQ(contribution(pa, arrays, 0), 71u);
  for (std::uint32_t k = 0; k < 5; ++k)
    EXPECT_EQ(contribution(pa, arrays, k), seu_in_seq(pat({{a}}), db.sequences[k], db.profits));
  EXPECT_EQ(pa.seu, seu(pat({{a}}), db));

  const auto pc = initial_projection(arrays, c);
  EXPECT_EQ(contribution(pc, arrays, 0), 75u);

  const auto absent = initial_projection(arrays, 42);
  EXPECT_TRUE(absent.empty());
  EXPECT_EQ(absent.seu, 0u);
  EXPECT_EQ(absent.utility, 0u);
}

TEST(Projection, ProjectI) {
  const auto db = running_example();
  const auto arrays = build_all(db);
  const auto pa = initial_projection(arrays, a);
  const auto ac = project_i(pa, arrays, c);
  EXPECT_EQ(utility_in(ac, 0), 16u);
  const auto ab = project_i(pa, arrays, b);
  EXPECT_EQ(utility_in(ab, 3), 17u);
  EXPECT_EQ(ab.utility, pattern_utility(pat({{a, b}}), db));
  EXPECT_TRUE(project_i(pa, arrays, 42).empty());
  // f never follows a within an element.
  EXPECT_TRUE(project_i(pa, arrays, f).empty());
}

TEST(Projection, ProjectS) {
  const auto db = running_example();
  const auto arrays = build_all(db);
  const auto ab = project_s(initial_projection(arrays, a), arrays, b);
  EXPECT_EQ(ab.utility, 69u);
  EXPECT_EQ(contribution(ab, arrays, 2), 38u);
  EXPECT_EQ(contribution(ab, arrays, 1), 39u);
  EXPECT_EQ(contribution(ab, arrays, 0), 41u);
  EXPECT_EQ(ab.seu, seu(pat({{a}, {b}}), db));

  const auto ea = project_s(initial_projection(arrays, e), arrays, a);
  EXPECT_EQ(utility_in(ea, 4), 18u);
}

TEST(Projection, ExtensionCandidates) {
  const auto db = running_example();
  const auto arrays = build_all(db);
  const auto root = extension_candidates(root_projection(arrays), arrays);
  EXPECT_TRUE(root.i_items.empty());
  std::vector<ItemId> s_items;
  for (const auto& cand : root.s_items) s_items.push_back(cand.item);
  EXPECT_EQ(s_items, (std::vector<ItemId>{a, b, c, d, e, f}));
  for (const auto& cand : root.s_items) EXPECT_EQ(cand.seu, seu(pat({{cand.item}}), db));

  QSequenceDatabase s4{{db.sequences[3]}, db.profits};
  const auto s4_arrays = build_all(s4);
  const auto cb = extension_candidates(initial_projection(s4_arrays, b), s4_arrays);
  auto has = [](const std::vector<Candidate>& v, ItemId i) {
    return std::any_of(v.begin(), v.end(), [&](const Candidate& x) { return x.item == i; });
  };
  EXPECT_TRUE(has(cb.i_items, d));
  EXPECT_TRUE(has(cb.s_items, c));
  EXPECT_TRUE(has(cb.s_items, e));
  EXPECT_FALSE(has(cb.i_items, a));

  QSequenceDatabase s1{{db.sequences[0]}, db.profits};
  const auto s1_arrays = build_all(s1);
  const auto tail = extension_candidates(initial_projection(s1_arrays, e), s1_arrays);
  EXPECT_TRUE(tail.s_items.empty());
  EXPECT_TRUE(tail.i_items.empty());
}

// Walks the whole concatenation tree through projections and checks every
// node against the reference matcher.
void check_against_reference(const QSequenceDatabase& db, std::size_t& nodes) {
  const auto arrays = build_all(db);
  ExtensionScanner scanner;
  std::set<Pattern> reached;
  std::function<void(const Pattern&, const ProjectionState&)> walk = [&](const Pattern& t,
                                                                          const ProjectionState& st) {
    const auto cands = scanner.scan(st, arrays);
    auto visit = [&](const Candidate& cand, bool is_s) {
      const auto child = is_s ? s_concatenate(t, cand.item) : i_concatenate(t, cand.item);
      const auto cs = is_s ? project_s(st, arrays, cand.item) : project_i(st, arrays, cand.item);
      ASSERT_FALSE(cs.empty());
      ASSERT_EQ(cs.utility, pattern_utility(child, db)) << to_string(child);
      ASSERT_EQ(cs.seu, seu(child, db)) << to_string(child);
      ASSERT_EQ(cand.seu, cs.seu) << to_string(child);
      std::size_t containing = 0;
      for (const auto& s : db.sequences) containing += contains(s, child);
      ASSERT_EQ(cs.sequences.size(), containing);
      for (const auto& sp : cs.sequences)
        ASSERT_TRUE(contains(db.sequences[sp.array_index], child));
      reached.insert(child);
      ++nodes;
      walk(child, cs);
    };
    for (const auto& cand : cands.i_items) visit(cand, false);
    for (const auto& cand : cands.s_items) visit(cand, true);
  };
  walk(Pattern{}, root_projection(arrays));
  const auto all = enumerate_all_patterns(db);
  EXPECT_EQ(reached, std::set<Pattern>(all.begin(), all.end()));
}

TEST(Projection, AgreesWithReferenceOnRandomDatabases) {
  std::size_t nodes = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) check_against_reference(random_db(seed), nodes);
  check_against_reference(running_example(), nodes);
  EXPECT_GT(nodes, 1000u);
}

}  // namespace
}  // namespace proum
