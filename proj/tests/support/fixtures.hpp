#pragma once

#include <random>
#include <string>

#include "proum/proum.hpp"

namespace proum::testing {

// Running example; items a..f are ids 1..6.
inline constexpr ItemId a = 1, b = 2, c = 3, d = 4, e = 5, f = 6;

inline const std::string kExampleDataset =
    "1:2 3:1 -1 3:2 -1 2:10 6:3 -1 1:2 5:1 -2\n"
    "6:2 -1 1:5 4:2 -1 3:2 -1 2:4 -1 1:4 4:1 -2\n"
    "1:4 -1 2:4 -1 6:5 -1 1:1 2:2 5:1 -2\n"
    "1:3 2:4 4:5 -1 3:2 5:1 -2\n"
    "2:1 5:1 -1 3:1 -1 6:2 -1 4:2 -1 1:4 5:2 -2\n";

inline const std::string kExampleProfits = "1\t3\n2\t2\n3\t10\n4\t4\n5\t6\n6\t1\n";

inline QSequenceDatabase running_example() { return load_database(kExampleDataset, kExampleProfits); }

inline Pattern pat(std::vector<Itemset> elements) { return Pattern(std::move(elements)); }

struct RandomDbShape {
  std::size_t max_sequences = 12;
  std::uint32_t items = 6;
  std::size_t max_elements = 4;
  std::size_t max_items_per_element = 3;
  std::uint32_t max_quantity = 5;
  Utility max_profit = 10;
};

/// Small random database for differential and property tests.
inline QSequenceDatabase random_db(std::uint64_t seed, const RandomDbShape& shape = {}) {
  std::mt19937_64 rng(seed);
  auto draw = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  QSequenceDatabase db;
  for (ItemId i = 1; i <= shape.items; ++i) db.profits.insert(i, draw(1, shape.max_profit));
  const auto n = draw(1, shape.max_sequences);
  for (std::size_t s = 0; s < n; ++s) {
    QSequence seq{static_cast<std::uint32_t>(s + 1), {}};
    const auto elements = draw(1, shape.max_elements);
    for (std::size_t k = 0; k < elements; ++k) {
      std::vector<ItemId> pool;
      for (ItemId i = 1; i <= shape.items; ++i) pool.push_back(i);
      std::shuffle(pool.begin(), pool.end(), rng);
      const auto size = draw(1, std::min<std::size_t>(shape.max_items_per_element, shape.items));
      pool.resize(size);
      std::sort(pool.begin(), pool.end());
      QElement el;
      for (ItemId i : pool)
        el.items.push_back({i, static_cast<std::uint32_t>(draw(1, shape.max_quantity))});
      seq.elements.push_back(std::move(el));
    }
    db.sequences.push_back(std::move(seq));
  }
  return db;
}

}  // namespace proum::testing
