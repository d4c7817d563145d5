// Rotation itineraries and finite-word machinery over the alphabet {0, 1}.
#pragma once

#include "dendro/exactnum.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dendro {

/// Growable bit vector, symbol i stored at bit (i % 64) of block i / 64.
/// One zero block of padding is kept past the end so 64-bit windows can be
/// read at any position < size() without bounds checks.
class PackedBits {
public:
  PackedBits() : blocks_(1, 0) {}

  std::size_t size() const { return size_; }
  int at(std::size_t i) const { return static_cast<int>((blocks_[i >> 6] >> (i & 63)) & 1u); }
  void push_back(int s);
  void append(const PackedBits& src, std::size_t from, std::size_t count);
  void reserve(std::size_t n) { blocks_.reserve(n / 64 + 2); }

  /// 64 symbols starting at `pos`; positions past size() read as 0.
  std::uint64_t window(std::size_t pos) const {
    const std::size_t blk = pos >> 6;
    const unsigned sh = pos & 63;
    if (blk + 1 >= blocks_.size()) return blk < blocks_.size() ? blocks_[blk] >> sh : 0;
    if (sh == 0) return blocks_[blk];
    return (blocks_[blk] >> sh) | (blocks_[blk + 1] << (64 - sh));
  }

  std::span<const std::uint64_t> blocks() const { return blocks_; }

private:
  std::vector<std::uint64_t> blocks_;
  std::size_t size_ = 0;
};

/// Length of the common prefix of x[px..] and y[py..], capped at `cap`.
/// Both ranges must hold at least `cap` symbols.
std::size_t common_prefix(const PackedBits& x, std::size_t px, const PackedBits& y, std::size_t py,
                          std::size_t cap);

/// Finite binary word.
class Word {
public:
  Word() = default;
  /// Parses a plain 0/1 string; throws ParseError on any other character.
  explicit Word(std::string_view text);
  static Word from_key(std::uint64_t key, std::size_t length);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.size() == 0; }
  /// 0-based symbol access.
  int operator[](std::size_t i) const { return bits_.at(i); }
  void push_back(int s) { bits_.push_back(s); }

  Word prefix(std::size_t n) const { return substr(0, n); }
  Word substr(std::size_t pos, std::size_t n) const;
  /// Drops the first symbol.
  Word tail() const { return substr(1, size() - 1); }
  Word operator+(const Word& rhs) const;

  /// Packed value for words of length <= 64 (bit j = symbol j).
  std::uint64_t key() const;
  std::string str() const;
  const PackedBits& bits() const { return bits_; }

  friend bool operator==(const Word& x, const Word& y);
  /// Lexicographic order on the 0/1 strings, shorter prefix first.
  friend std::strong_ordering operator<=>(const Word& x, const Word& y);

private:
  PackedBits bits_;
};

/// Infinite binary word with a lazily grown, memoized prefix.
///
/// Copies share the memo. Extension is serialized by a mutex; readers work
/// on immutable snapshots, so a snapshot stays valid while other threads
/// extend the stream.
class SymbolStream {
public:
  /// Appends symbols to `out` until out.size() >= target.
  using Generator = std::function<void(PackedBits& out, std::size_t target)>;

  SymbolStream() = default;
  static SymbolStream from_generator(std::string label, Generator gen);
  static SymbolStream constant(int symbol);
  /// period^infinity
  static SymbolStream periodic(const Word& period);
  /// prefix followed by tail (used for negative controls and transients).
  static SymbolStream concat(const Word& prefix, SymbolStream tail);

  /// 1-based access, x_i.
  int at(std::size_t i) const;
  Word prefix(std::size_t n) const;
  /// Ensures at least n symbols (counted from this view's origin) are cached.
  void materialize(std::size_t n) const;
  /// Materializes n symbols and returns the backing bits plus this view's offset.
  std::pair<std::shared_ptr<const PackedBits>, std::size_t> snapshot(std::size_t n) const;

  /// The stream y with y_i = x_{i+n}; shares the memo.
  SymbolStream shifted(std::size_t n) const;
  std::size_t offset() const { return offset_; }
  const std::string& label() const;
  bool valid() const { return static_cast<bool>(impl_); }

private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  std::size_t offset_ = 0;
  std::string label_;
};

SymbolStream shift(const SymbolStream& x, std::size_t n);

/// Circle rotation x -> x + alpha with cells [0, 1/4) -> 0 and [1/4, 1) -> 1.
struct RotationCoding {
  RotationCoding(QuadSurd alpha, CirclePoint start);
  QuadSurd alpha;
  CirclePoint start;
};

/// w_i = 0 iff rotate^{i-1}(start) lies in [0, 1/4), for i = 1..n.
/// Throws CutPointCollision (orbit_step = i - 1) when an orbit point is 0 or 1/4.
Word itinerary(const RotationCoding& rc, std::size_t n);
SymbolStream rotation_stream(const RotationCoding& rc, std::string label = {});

/// A(alpha): symbol i codes R_alpha^i(alpha), i >= 1.
Word sturmian_A(const QuadSurd& alpha, std::size_t n);
SymbolStream sturmian_stream(const QuadSurd& alpha);

std::size_t lcp(const SymbolStream& x, const SymbolStream& y, std::size_t cap);
std::size_t lcp(const Word& x, const Word& y, std::size_t cap);

/// rho(x, y) = 2^{-k} with k = lcp + 1; `within_cap` means the words agree on
/// all `cap` compared symbols and only the bound rho <= 2^{-cap} is known.
struct DyadicDistance {
  std::size_t exponent = 0;
  bool within_cap = false;
};
DyadicDistance dist(const SymbolStream& x, const SymbolStream& y, std::size_t cap);
DyadicDistance dist(const Word& x, const Word& y, std::size_t cap);

/// Set of words of one fixed length n <= 64, stored as sorted packed keys.
class FactorSet {
public:
  FactorSet() = default;
  FactorSet(std::size_t length, std::vector<std::uint64_t> keys);

  std::size_t length() const { return length_; }
  std::size_t size() const { return keys_.size(); }
  bool contains(const Word& w) const;
  bool contains_key(std::uint64_t key) const;
  const std::vector<std::uint64_t>& keys() const { return keys_; }
  /// Members as words, in lexicographic order.
  std::vector<Word> words() const;

  bool subset_of(const FactorSet& other) const;
  FactorSet set_union(const FactorSet& other) const;
  FactorSet set_difference(const FactorSet& other) const;
  FactorSet set_intersection(const FactorSet& other) const;

  friend bool operator==(const FactorSet&, const FactorSet&) = default;

private:
  std::size_t length_ = 0;
  std::vector<std::uint64_t> keys_;
};

inline constexpr std::size_t kMaxFactorLength = 64;

/// All length-n words occurring in x_[1, horizon].
FactorSet factors(const SymbolStream& x, std::size_t n, std::size_t horizon);
FactorSet factors(const Word& w, std::size_t n);

/// Tail-recurrence parameters for the finite omega-limit surrogate.
struct RecurrenceWindow {
  std::size_t horizon = 0;
  std::size_t tail_start = 0; // 1-based first position counted
  std::size_t min_count = 5;
  /// (horizon / 100, 5)
  static RecurrenceWindow defaults(std::size_t horizon);
};

/// Length-n words occurring at least min_count times at 1-based positions
/// >= tail_start inside x_[1, horizon]. An approximation of L_n(omega(x)),
/// not an exact computation.
FactorSet recurrent_factors(const SymbolStream& x, std::size_t n, const RecurrenceWindow& window);

/// Refinement of the circle by the cut points mod1(c - i*alpha), c in {0, 1/4}.
///
/// After refining to depth k the atoms are exactly the maximal arcs on which
/// the first k itinerary symbols are constant.
class AtomRefinement {
public:
  explicit AtomRefinement(QuadSurd alpha);

  std::size_t depth() const { return depth_; }
  void refine_to(std::size_t k);
  /// Largest atom length at depth k (refines as needed).
  QuadSurd diameter(std::size_t k);

private:
  void insert(const QuadSurd& cut);

  QuadSurd alpha_;
  std::size_t depth_ = 0;
  std::vector<QuadSurd> cuts_; // sorted
  std::vector<QuadSurd> history_; // history_[k-1] = max gap at depth k
};

/// Maximum gap between consecutive cut points {mod1(c - i*alpha) : c in {0,1/4}, 0 <= i < k}.
QuadSurd atom_diameter(const QuadSurd& alpha, std::size_t k);

/// L_n of the rotation subshift for angle alpha: one word per atom of depth n.
std::vector<Word> rotation_language(const QuadSurd& alpha, std::size_t n);

/// Least K such that y and y + delta have different length-K itineraries for
/// every circle point y. Decided exactly on the common refinement of the
/// depth-K cuts and their translates by -delta. A small atom diameter is not
/// enough here: with cells of length 1/4 a cylinder can be a union of several
/// arcs, so points far apart may still share a long itinerary prefix.
std::optional<std::size_t> offset_separation(const QuadSurd& alpha, const QuadSurd& delta,
                                             std::size_t max_depth = 1 << 14);

/// Least n such that the rotation subshifts for alpha and gamma share no word
/// of length n; nullopt if they still share one at max_length.
std::optional<std::size_t> language_separation(const QuadSurd& alpha, const QuadSurd& gamma,
                                               std::size_t max_length = 4096);

} // namespace dendro
