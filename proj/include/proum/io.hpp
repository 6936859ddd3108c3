#pragma once

// Text formats and the synthetic data generator.
//
// Dataset: one q-sequence per line, `item:quantity` tokens, `-1` between
// elements, `-2` closing the sequence (`-1 -2` is accepted too).
// Profits: one `item<TAB>profit` line per item.

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "proum/miner.hpp"
#include "proum/model.hpp"

namespace proum {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t')) ++k;
    const auto start = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t') ++k;
    if (k > start) out.push_back({line.substr(start, k - start), start + 1});
  }
  return out;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    f(++line_no, line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

template <class T>
bool parse_uint(std::string_view s, T& out) {
  if (s.empty() || s.front() == '+' || s.front() == '-') return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace detail

/// Sequences get sids 1..n in line order; blank lines are skipped. Items
/// within an element are sorted ascending.
inline std::vector<QSequence> parse_dataset(std::string_view text) {
  std::vector<QSequence> out;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) return;
    QSequence seq{static_cast<std::uint32_t>(out.size() + 1), {}};
    QElement current;
    std::vector<std::size_t> columns;
    bool closed = false;

    auto close_element = [&](std::size_t column) {
      if (current.items.empty()) throw ParseError(line_no, column, "empty element");
      std::vector<std::size_t> order(current.items.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return current.items[a].item < current.items[b].item;
      });
      QElement sorted;
      for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& qi = current.items[order[k]];
        if (k > 0 && sorted.items.back().item == qi.item)
          throw ParseError(line_no, columns[order[k]],
                           "duplicate item " + std::to_string(qi.item) + " in element");
        sorted.items.push_back(qi);
      }
      seq.elements.push_back(std::move(sorted));
      current.items.clear();
      columns.clear();
    };

    for (std::size_t k = 0; k < tokens.size(); ++k) {
      const auto& tok = tokens[k];
      if (closed) throw ParseError(line_no, tok.column, "token after -2");
      if (tok.text == "-1") {
        close_element(tok.column);
      } else if (tok.text == "-2") {
        if (!current.items.empty()) close_element(tok.column);
        if (seq.elements.empty()) throw ParseError(line_no, tok.column, "sequence has no elements");
        closed = true;
      } else {
        const auto colon = tok.text.find(':');
        if (colon == std::string_view::npos)
          throw ParseError(line_no, tok.column,
                           "expected item:quantity, got '" + std::string(tok.text) + "'");
        QItem qi;
        if (!detail::parse_uint(tok.text.substr(0, colon), qi.item) || qi.item == 0)
          throw ParseError(line_no, tok.column, "malformed item in '" + std::string(tok.text) + "'");
        if (!detail::parse_uint(tok.text.substr(colon + 1), qi.quantity))
          throw ParseError(line_no, tok.column + colon + 1,
                           "malformed quantity in '" + std::string(tok.text) + "'");
        if (qi.quantity == 0) throw ParseError(line_no, tok.column + colon + 1, "zero quantity");
        current.items.push_back(qi);
        columns.push_back(tok.column);
      }
    }
    if (!closed) throw ParseError(line_no, line.size() + 1, "missing -2 at end of sequence");
    out.push_back(std::move(seq));
  });
  return out;
}

inline std::string serialize_dataset(const std::vector<QSequence>& sequences) {
  std::string out;
  for (const auto& s : sequences) {
    for (std::size_t e = 0; e < s.elements.size(); ++e) {
      if (e > 0) out += "-1 ";
      for (const auto& qi : s.elements[e].items) {
        out += std::to_string(qi.item);
        out += ':';
        out += std::to_string(qi.quantity);
        out += ' ';
      }
    }
    out += "-2\n";
  }
  return out;
}

inline ProfitTable parse_profits(std::string_view text) {
  ProfitTable table;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) return;
    if (tokens.size() != 2) throw ParseError(line_no, 1, "expected 'item<TAB>profit'");
    ItemId item = 0;
    Utility profit = 0;
    if (!detail::parse_uint(tokens[0].text, item) || item == 0)
      throw ParseError(line_no, tokens[0].column, "malformed item '" + std::string(tokens[0].text) + "'");
    if (!detail::parse_uint(tokens[1].text, profit))
      throw ParseError(line_no, tokens[1].column,
                       "malformed profit '" + std::string(tokens[1].text) + "'");
    if (!table.insert(item, profit))
      throw ParseError(line_no, tokens[0].column, "duplicate item " + std::to_string(item));
  });
  return table;
}

inline std::string serialize_profits(const ProfitTable& profits) {
  std::string out;
  for (const auto& [item, profit] : profits) {
    out += std::to_string(item);
    out += '\t';
    out += std::to_string(profit);
    out += '\n';
  }
  return out;
}

/// Parses both texts and checks every database invariant.
inline QSequenceDatabase load_database(std::string_view dataset, std::string_view profits) {
  QSequenceDatabase db{parse_dataset(dataset), parse_profits(profits)};
  validate(db);
  return db;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write to '" + path + "' failed");
}

/// One `pattern<TAB>utility` line per HUSP in PatternOrder, followed by
/// `# key=value` summary lines. Search counters and wall time are only
/// emitted with `with_stats`, so output without them is identical across
/// pruning configurations.
inline std::string write_results(const MiningResult& result, bool with_stats = false) {
  std::vector<PatternUtility> sorted = result.husps;
  sort_patterns(sorted);
  std::string out;
  for (const auto& pu : sorted) {
    out += to_string(pu.pattern);
    out += '\t';
    out += std::to_string(pu.utility);
    out += '\n';
  }
  out += "# husp_count=" + std::to_string(sorted.size()) + '\n';
  out += "# database_utility=" + std::to_string(result.database_utility) + '\n';
  out += "# threshold=" + result.threshold.to_string() + '\n';
  if (with_stats) {
    const auto& s = result.stats;
    out += "# nodes_visited=" + std::to_string(s.nodes_visited) + '\n';
    out += "# projections_built=" + std::to_string(s.projections_built) + '\n';
    out += "# puo_removed_items=" + std::to_string(s.puo_removed_items) + '\n';
    out += "# puk_pruned_nodes=" + std::to_string(s.puk_pruned_nodes) + '\n';
    out += "# elapsed_ms=" +
           std::to_string(std::chrono::duration<double, std::milli>(s.elapsed).count()) + '\n';
  }
  return out;
}

struct GenParams {
  std::size_t sequence_count = 1000;
  std::uint32_t item_universe_size = 100;
  double mean_elements = 4.0;
  double mean_items_per_element = 2.0;
  std::uint32_t max_quantity = 5;
  Utility profit_min = 1;
  Utility profit_max = 10;
  std::uint64_t seed = 1;
};

namespace detail {

// mt19937_64 with integer and real draws computed directly from the engine
// output.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = engine_(); while (x >= limit);
    return x % n;
  }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Geometric on {1, 2, ...} with the given mean, truncated at `cap`.
  std::size_t geometric(double mean, std::size_t cap) {
    const double stay = 1.0 - 1.0 / mean;
    std::size_t n = 1;
    while (n < cap && unit() < stay) ++n;
    return n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace detail

/// Items are 1..item_universe_size, every one of them listed in the profit
/// table. Element counts and element sizes follow geometric distributions
/// truncated at four times their means (element size also at the universe
/// size); quantities and profits are uniform.
inline QSequenceDatabase generate(const GenParams& p) {
  if (p.item_universe_size == 0) throw InvariantError("item universe must not be empty");
  if (p.mean_elements < 1.0 || p.mean_items_per_element < 1.0)
    throw InvariantError("mean sizes must be at least 1");
  if (p.max_quantity == 0) throw InvariantError("max quantity must be at least 1");
  if (p.profit_min > p.profit_max) throw InvariantError("empty profit range");

  detail::PortableRng rng(p.seed);
  QSequenceDatabase db;
  for (ItemId i = 1; i <= p.item_universe_size; ++i)
    db.profits.insert(i, rng.between(p.profit_min, p.profit_max));

  const auto element_cap = static_cast<std::size_t>(std::ceil(4.0 * p.mean_elements));
  const auto item_cap = std::min<std::size_t>(
      p.item_universe_size, static_cast<std::size_t>(std::ceil(4.0 * p.mean_items_per_element)));
  for (std::size_t n = 0; n < p.sequence_count; ++n) {
    QSequence s{static_cast<std::uint32_t>(n + 1), {}};
    const auto elements = rng.geometric(p.mean_elements, element_cap);
    for (std::size_t e = 0; e < elements; ++e) {
      const auto k = rng.geometric(p.mean_items_per_element, item_cap);
      // Floyd's sampling of k distinct ids from 1..universe.
      std::set<ItemId> chosen;
      for (std::uint64_t j = p.item_universe_size - k; j < p.item_universe_size; ++j) {
        const auto t = static_cast<ItemId>(rng.below(j + 1) + 1);
        if (!chosen.insert(t).second) chosen.insert(static_cast<ItemId>(j + 1));
      }
      QElement element;
      for (ItemId i : chosen)
        element.items.push_back({i, static_cast<std::uint32_t>(rng.between(1, p.max_quantity))});
      s.elements.push_back(std::move(element));
    }
    db.sequences.push_back(std::move(s));
  }
  return db;
}

}  // namespace proum
