#pragma once

// Quantitative sequence data: items, profits, q-sequences, patterns and
// exact utility arithmetic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace proum {

using ItemId = std::uint32_t;

/// Utilities are exact unsigned integers. Databases are expected to keep
/// u(D) below 2^63 so that sums of per-sequence values never wrap.
using Utility = std::uint64_t;

inline constexpr Utility kMaxDatabaseUtility = Utility{1} << 63;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An item referenced by the data has no entry in the profit table.
class LookupError : public Error {
 public:
  explicit LookupError(ItemId item)
      : Error("item " + std::to_string(item) + " has no profit entry"), item_(item) {}
  ItemId item() const noexcept { return item_; }

 private:
  ItemId item_;
};

/// A structural invariant of a domain value was violated.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// A configured safety cap (pattern length, pattern count) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

struct QItem {
  ItemId item = 0;
  std::uint32_t quantity = 0;

  friend bool operator==(const QItem&, const QItem&) = default;
};

struct QElement {
  std::vector<QItem> items;

  friend bool operator==(const QElement&, const QElement&) = default;
};

struct QSequence {
  std::uint32_t sid = 0;
  std::vector<QElement> elements;

  /// Total number of q-items.
  std::size_t length() const noexcept {
    std::size_t n = 0;
    for (const auto& e : elements) n += e.items.size();
    return n;
  }

  friend bool operator==(const QSequence&, const QSequence&) = default;
};

class ProfitTable {
 public:
  ProfitTable() = default;
  ProfitTable(std::initializer_list<std::pair<const ItemId, Utility>> init) : profits_(init) {}

  /// Returns false if the item already had an entry (the entry is left unchanged).
  bool insert(ItemId item, Utility profit) { return profits_.emplace(item, profit).second; }

  Utility profit(ItemId item) const {
    auto it = profits_.find(item);
    if (it == profits_.end()) throw LookupError(item);
    return it->second;
  }

  bool contains(ItemId item) const { return profits_.count(item) != 0; }
  std::size_t size() const noexcept { return profits_.size(); }
  bool empty() const noexcept { return profits_.empty(); }

  auto begin() const noexcept { return profits_.begin(); }
  auto end() const noexcept { return profits_.end(); }

  friend bool operator==(const ProfitTable&, const ProfitTable&) = default;

 private:
  std::map<ItemId, Utility> profits_;
};

struct QSequenceDatabase {
  std::vector<QSequence> sequences;
  ProfitTable profits;

  friend bool operator==(const QSequenceDatabase&, const QSequenceDatabase&) = default;
};

inline void validate(const QElement& element) {
  if (element.items.empty()) throw InvariantError("empty element");
  for (std::size_t k = 0; k < element.items.size(); ++k) {
    const auto& qi = element.items[k];
    if (qi.item == 0) throw InvariantError("item ids start at 1");
    if (qi.quantity == 0)
      throw InvariantError("item " + std::to_string(qi.item) + " has zero quantity");
    if (k > 0 && element.items[k - 1].item >= qi.item)
      throw InvariantError("items within an element must be strictly ascending");
  }
}

inline void validate(const QSequence& s) {
  if (s.elements.empty())
    throw InvariantError("sequence " + std::to_string(s.sid) + " has no elements");
  for (const auto& e : s.elements) validate(e);
}

/// Checks element/sequence invariants, sid uniqueness and that every item
/// resolves in the profit table.
inline void validate(const QSequenceDatabase& db) {
  std::vector<std::uint32_t> sids;
  sids.reserve(db.sequences.size());
  for (const auto& s : db.sequences) {
    validate(s);
    for (const auto& e : s.elements)
      for (const auto& qi : e.items)
        if (!db.profits.contains(qi.item)) throw LookupError(qi.item);
    sids.push_back(s.sid);
  }
  std::sort(sids.begin(), sids.end());
  if (std::adjacent_find(sids.begin(), sids.end()) != sids.end())
    throw InvariantError("duplicate sequence id");
}

inline Utility q_item_utility(const QItem& qi, const ProfitTable& profits) {
  return Utility{qi.quantity} * profits.profit(qi.item);
}

inline Utility element_utility(const QElement& element, const ProfitTable& profits) {
  if (element.items.empty()) throw InvariantError("empty element");
  Utility sum = 0;
  for (const auto& qi : element.items) sum += q_item_utility(qi, profits);
  return sum;
}

inline Utility sequence_utility(const QSequence& s, const ProfitTable& profits) {
  Utility sum = 0;
  for (const auto& e : s.elements) sum += element_utility(e, profits);
  return sum;
}

inline Utility database_utility(const QSequenceDatabase& db) {
  Utility sum = 0;
  for (const auto& s : db.sequences) sum += sequence_utility(s, db.profits);
  return sum;
}

using Itemset = std::vector<ItemId>;

/// A sequence of itemsets without quantities. The default-constructed
/// pattern is the empty prefix (search-tree root).
class Pattern {
 public:
  Pattern() = default;

  /// Throws InvariantError unless every itemset is non-empty and strictly ascending.
  explicit Pattern(std::vector<Itemset> elements) : elements_(std::move(elements)) {
    for (const auto& set : elements_) {
      if (set.empty()) throw InvariantError("pattern itemset is empty");
      if (std::adjacent_find(set.begin(), set.end(), std::greater_equal<>{}) != set.end())
        throw InvariantError("pattern itemset must be strictly ascending");
    }
  }

  const std::vector<Itemset>& elements() const noexcept { return elements_; }
  const Itemset& operator[](std::size_t k) const { return elements_[k]; }

  /// Number of itemsets.
  std::size_t size() const noexcept { return elements_.size(); }
  /// Number of items over all itemsets.
  std::size_t length() const noexcept {
    std::size_t n = 0;
    for (const auto& set : elements_) n += set.size();
    return n;
  }
  bool empty() const noexcept { return elements_.empty(); }

  ItemId last_item() const {
    if (empty()) throw InvariantError("empty pattern has no last item");
    return elements_.back().back();
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend auto operator<=>(const Pattern&, const Pattern&) = default;

 private:
  friend Pattern i_concatenate(const Pattern& t, ItemId item);
  friend Pattern s_concatenate(const Pattern& t, ItemId item);

  std::vector<Itemset> elements_;
};

/// Appends `item` to the last itemset. The item must sort after every item
/// already in that itemset, which keeps the enumeration canonical.
inline Pattern i_concatenate(const Pattern& t, ItemId item) {
  if (t.empty()) throw InvariantError("I-concatenation needs a non-empty prefix");
  if (item <= t.last_item())
    throw InvariantError("I-concatenation item " + std::to_string(item) +
                         " does not follow item " + std::to_string(t.last_item()));
  Pattern out = t;
  out.elements_.back().push_back(item);
  return out;
}

/// Appends `item` as a new single-item itemset.
inline Pattern s_concatenate(const Pattern& t, ItemId item) {
  if (item == 0) throw InvariantError("item ids start at 1");
  Pattern out = t;
  out.elements_.push_back({item});
  return out;
}

/// Output order: size, then length, then lexicographic on the itemsets.
struct PatternOrder {
  bool operator()(const Pattern& a, const Pattern& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.length() != b.length()) return a.length() < b.length();
    return a < b;
  }
};

/// `1 2 -1 3 -1` notation: each itemset's items followed by -1.
inline std::string to_string(const Pattern& t) {
  std::string out;
  for (const auto& set : t.elements()) {
    for (ItemId i : set) {
      out += std::to_string(i);
      out += ' ';
    }
    out += "-1";
    if (&set != &t.elements().back()) out += ' ';
  }
  return out;
}

/// Minimum utility threshold as an exact fraction in (0, 1].
class Threshold {
 public:
  Threshold(std::uint64_t numerator, std::uint64_t denominator) {
    if (numerator == 0 || denominator == 0 || numerator > denominator)
      throw InvariantError("threshold must lie in (0, 1]");
    const auto g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
  }

  /// Parses `0.25`, `25%`, `1.5%` or `1/4` into an exact fraction.
  static Threshold parse(std::string_view text);

  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }

  /// u * den >= num * total, evaluated without overflow.
  bool admits(Utility u, Utility total) const noexcept {
    using wide = unsigned __int128;
    return static_cast<wide>(u) * den_ >= static_cast<wide>(num_) * total;
  }

  std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const Threshold&, const Threshold&) = default;

 private:
  std::uint64_t num_ = 1;
  std::uint64_t den_ = 1;
};

namespace detail {

inline std::uint64_t parse_digits(std::string_view s, std::string_view whole) {
  if (s.empty()) throw InvariantError("malformed threshold '" + std::string(whole) + "'");
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw InvariantError("malformed threshold '" + std::string(whole) + "'");
    if (v > (UINT64_MAX - 9) / 10)
      throw InvariantError("threshold '" + std::string(whole) + "' has too many digits");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace detail

inline Threshold Threshold::parse(std::string_view text) {
  const std::string_view whole = text;
  std::uint64_t scale = 1;
  if (!text.empty() && text.back() == '%') {
    scale = 100;
    text.remove_suffix(1);
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (scale != 1) throw InvariantError("malformed threshold '" + std::string(whole) + "'");
    const auto n = detail::parse_digits(text.substr(0, slash), whole);
    const auto d = detail::parse_digits(text.substr(slash + 1), whole);
    return Threshold(n, d);
  }
  std::uint64_t num = 0;
  std::uint64_t den = scale;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    if (frac_part.size() > 15)
      throw InvariantError("threshold '" + std::string(whole) + "' has too many digits");
    std::uint64_t pow10 = 1;
    for (std::size_t k = 0; k < frac_part.size(); ++k) pow10 *= 10;
    const auto ip = int_part.empty() ? 0 : detail::parse_digits(int_part, whole);
    const auto fp = frac_part.empty() ? 0 : detail::parse_digits(frac_part, whole);
    if (int_part.empty() && frac_part.empty())
      throw InvariantError("malformed threshold '" + std::string(whole) + "'");
    num = ip * pow10 + fp;
    den *= pow10;
  } else {
    num = detail::parse_digits(text, whole);
  }
  return Threshold(num, den);
}

}  // namespace proum
