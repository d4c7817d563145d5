#include "dendro/coding.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace dendro {

// ---------------------------------------------------------------------------
// PackedBits / Word

void PackedBits::push_back(int s) {
  const std::size_t blk = size_ >> 6;
  if (blk + 1 >= blocks_.size()) blocks_.resize(blk + 2, 0);
  if (s) blocks_[blk] |= std::uint64_t{1} << (size_ & 63);
  ++size_;
}

void PackedBits::append(const PackedBits& src, std::size_t from, std::size_t count) {
  reserve(size_ + count);
  std::size_t done = 0;
  while (done < count) {
    const std::size_t chunk = std::min<std::size_t>(64, count - done);
    std::uint64_t w = src.window(from + done);
    for (std::size_t k = 0; k < chunk; ++k) push_back(static_cast<int>((w >> k) & 1u));
    done += chunk;
  }
}

std::size_t common_prefix(const PackedBits& x, std::size_t px, const PackedBits& y, std::size_t py,
                          std::size_t cap) {
  std::size_t k = 0;
  while (k < cap) {
    const std::uint64_t diff = x.window(px + k) ^ y.window(py + k);
    if (diff != 0) return std::min(cap, k + static_cast<std::size_t>(std::countr_zero(diff)));
    k += 64;
  }
  return cap;
}

Word::Word(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') throw ParseError("word symbols must be 0 or 1", i);
    bits_.push_back(text[i] - '0');
  }
}

Word Word::from_key(std::uint64_t key, std::size_t length) {
  Word w;
  for (std::size_t j = 0; j < length; ++j) w.push_back(static_cast<int>((key >> j) & 1u));
  return w;
}

Word Word::substr(std::size_t pos, std::size_t n) const {
  if (pos > size() || n > size() - pos) throw ContractViolation("Word::substr out of range");
  Word w;
  w.bits_.append(bits_, pos, n);
  return w;
}

Word Word::operator+(const Word& rhs) const {
  Word w = *this;
  w.bits_.append(rhs.bits_, 0, rhs.size());
  return w;
}

std::uint64_t Word::key() const {
  if (size() > kMaxFactorLength) throw ContractViolation("Word::key requires length <= 64");
  if (size() == 0) return 0;
  const std::uint64_t w = bits_.window(0);
  return size() == 64 ? w : (w & ((std::uint64_t{1} << size()) - 1));
}

std::string Word::str() const {
  std::string s(size(), '0');
  for (std::size_t i = 0; i < size(); ++i) s[i] = static_cast<char>('0' + bits_.at(i));
  return s;
}

bool operator==(const Word& x, const Word& y) {
  return x.size() == y.size() && common_prefix(x.bits_, 0, y.bits_, 0, x.size()) == x.size();
}

std::strong_ordering operator<=>(const Word& x, const Word& y) {
  const std::size_t n = std::min(x.size(), y.size());
  const std::size_t k = common_prefix(x.bits_, 0, y.bits_, 0, n);
  if (k < n) return x[k] <=> y[k];
  return x.size() <=> y.size();
}

// ---------------------------------------------------------------------------
// SymbolStream

struct SymbolStream::Impl {
  Generator generate;
  std::mutex mutex;
  std::shared_ptr<const PackedBits> memo = std::make_shared<PackedBits>();

  std::shared_ptr<const PackedBits> ensure(std::size_t n) {
    std::lock_guard lock(mutex);
    if (memo->size() >= n) return memo;
    auto next = std::make_shared<PackedBits>(*memo);
    next->reserve(n);
    generate(*next, n);
    memo = std::move(next);
    return memo;
  }

  std::shared_ptr<const PackedBits> current() {
    std::lock_guard lock(mutex);
    return memo;
  }
};

SymbolStream SymbolStream::from_generator(std::string label, Generator gen) {
  SymbolStream s;
  s.impl_ = std::make_shared<Impl>();
  s.impl_->generate = std::move(gen);
  s.label_ = std::move(label);
  return s;
}

SymbolStream SymbolStream::constant(int symbol) {
  return from_generator(std::string(1, static_cast<char>('0' + symbol)) + "^inf",
                        [symbol](PackedBits& out, std::size_t target) {
                          while (out.size() < target) out.push_back(symbol);
                        });
}

SymbolStream SymbolStream::periodic(const Word& period) {
  if (period.empty()) throw ContractViolation("periodic stream needs a nonempty period");
  return from_generator("(" + period.str() + ")^inf", [period](PackedBits& out, std::size_t target) {
    while (out.size() < target) out.push_back(period[out.size() % period.size()]);
  });
}

SymbolStream SymbolStream::concat(const Word& prefix, SymbolStream tail) {
  const std::string label = prefix.str() + "." + tail.label();
  return from_generator(label, [prefix, tail](PackedBits& out, std::size_t target) {
    while (out.size() < target && out.size() < prefix.size()) out.push_back(prefix[out.size()]);
    if (out.size() >= target) return;
    const std::size_t need = target - prefix.size();
    auto [bits, off] = tail.snapshot(need);
    const std::size_t have = out.size() - prefix.size();
    out.append(*bits, off + have, need - have);
  });
}

void SymbolStream::materialize(std::size_t n) const {
  if (!impl_) throw ContractViolation("empty SymbolStream");
  impl_->ensure(offset_ + n);
}

std::pair<std::shared_ptr<const PackedBits>, std::size_t> SymbolStream::snapshot(std::size_t n) const {
  if (!impl_) throw ContractViolation("empty SymbolStream");
  return {impl_->ensure(offset_ + n), offset_};
}

int SymbolStream::at(std::size_t i) const {
  if (i == 0) throw ContractViolation("SymbolStream::at is 1-based");
  auto cur = impl_->current();
  if (cur->size() < offset_ + i) {
    // Grow geometrically so symbol-by-symbol loops stay linear.
    const std::size_t want = std::max<std::size_t>({offset_ + i, 2 * cur->size(), 1024});
    cur = impl_->ensure(want);
  }
  return cur->at(offset_ + i - 1);
}

Word SymbolStream::prefix(std::size_t n) const {
  auto [bits, off] = snapshot(n);
  Word w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(bits->at(off + i));
  return w;
}

SymbolStream SymbolStream::shifted(std::size_t n) const {
  SymbolStream s = *this;
  s.offset_ += n;
  if (n != 0) s.label_ = "shift(" + label_ + "," + std::to_string(n) + ")";
  return s;
}

const std::string& SymbolStream::label() const { return label_; }

SymbolStream shift(const SymbolStream& x, std::size_t n) { return x.shifted(n); }

// ---------------------------------------------------------------------------
// Rotation codings

RotationCoding::RotationCoding(QuadSurd a, CirclePoint s) : alpha(std::move(a)), start(std::move(s)) {
  if (alpha.is_rational()) throw ContractViolation("rotation angle must be irrational");
  if (alpha.sign() <= 0 || quad_compare(alpha, QuadSurd(1)) >= 0) {
    throw ContractViolation("rotation angle must lie in (0, 1)");
  }
  common_field(alpha, start.value());
}

Word itinerary(const RotationCoding& rc, std::size_t n) {
  RotationWalker walker(rc.start, rc.alpha);
  Word w;
  for (std::size_t i = 0; i < n; ++i) {
    w.push_back(walker.symbol());
    walker.step();
  }
  return w;
}

SymbolStream rotation_stream(const RotationCoding& rc, std::string label) {
  if (label.empty()) label = "pt:" + to_string(rc.start.value()) + "@" + to_string(rc.alpha);
  auto walker = std::make_shared<RotationWalker>(rc.start, rc.alpha);
  return SymbolStream::from_generator(std::move(label), [walker](PackedBits& out, std::size_t target) {
    while (out.size() < target) {
      out.push_back(walker->symbol());
      walker->step();
    }
  });
}

namespace {
RotationCoding sturmian_coding(const QuadSurd& alpha) {
  return RotationCoding(alpha, rotate(mod1(alpha), alpha));
}
} // namespace

Word sturmian_A(const QuadSurd& alpha, std::size_t n) { return itinerary(sturmian_coding(alpha), n); }

SymbolStream sturmian_stream(const QuadSurd& alpha) {
  return rotation_stream(sturmian_coding(alpha), "A:" + to_string(alpha));
}

// ---------------------------------------------------------------------------
// Metric

std::size_t lcp(const SymbolStream& x, const SymbolStream& y, std::size_t cap) {
  auto [xb, xo] = x.snapshot(cap);
  auto [yb, yo] = y.snapshot(cap);
  return common_prefix(*xb, xo, *yb, yo, cap);
}

std::size_t lcp(const Word& x, const Word& y, std::size_t cap) {
  const std::size_t n = std::min({cap, x.size(), y.size()});
  return common_prefix(x.bits(), 0, y.bits(), 0, n);
}

namespace {
DyadicDistance from_lcp(std::size_t k, std::size_t cap) {
  if (k >= cap) return {cap, true};
  return {k + 1, false};
}
} // namespace

DyadicDistance dist(const SymbolStream& x, const SymbolStream& y, std::size_t cap) {
  return from_lcp(lcp(x, y, cap), cap);
}

DyadicDistance dist(const Word& x, const Word& y, std::size_t cap) {
  const std::size_t k = lcp(x, y, cap);
  if (k < cap && k == std::min(x.size(), y.size()) && x.size() != y.size()) {
    throw ContractViolation("dist on words: one word is a proper prefix of the other within cap");
  }
  return from_lcp(k, cap);
}

// ---------------------------------------------------------------------------
// Factor sets

namespace {
std::uint64_t length_mask(std::size_t n) { return n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1); }

void check_length(std::size_t n) {
  if (n == 0 || n > kMaxFactorLength) throw ContractViolation("factor length must be in [1, 64]");
}
} // namespace

FactorSet::FactorSet(std::size_t length, std::vector<std::uint64_t> keys) : length_(length), keys_(std::move(keys)) {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

bool FactorSet::contains(const Word& w) const { return w.size() == length_ && contains_key(w.key()); }

bool FactorSet::contains_key(std::uint64_t key) const { return std::binary_search(keys_.begin(), keys_.end(), key); }

std::vector<Word> FactorSet::words() const {
  std::vector<Word> out;
  out.reserve(keys_.size());
  for (auto k : keys_) out.push_back(Word::from_key(k, length_));
  std::sort(out.begin(), out.end());
  return out;
}

bool FactorSet::subset_of(const FactorSet& other) const {
  return std::includes(other.keys_.begin(), other.keys_.end(), keys_.begin(), keys_.end());
}

FactorSet FactorSet::set_union(const FactorSet& other) const {
  if (keys_.empty()) return FactorSet(other.length_ ? other.length_ : length_, other.keys_);
  std::vector<std::uint64_t> out;
  std::set_union(keys_.begin(), keys_.end(), other.keys_.begin(), other.keys_.end(), std::back_inserter(out));
  return FactorSet(length_, std::move(out));
}

FactorSet FactorSet::set_difference(const FactorSet& other) const {
  std::vector<std::uint64_t> out;
  std::set_difference(keys_.begin(), keys_.end(), other.keys_.begin(), other.keys_.end(), std::back_inserter(out));
  return FactorSet(length_, std::move(out));
}

FactorSet FactorSet::set_intersection(const FactorSet& other) const {
  std::vector<std::uint64_t> out;
  std::set_intersection(keys_.begin(), keys_.end(), other.keys_.begin(), other.keys_.end(),
                        std::back_inserter(out));
  return FactorSet(length_, std::move(out));
}

FactorSet factors(const SymbolStream& x, std::size_t n, std::size_t horizon) {
  check_length(n);
  if (horizon < n) throw ContractViolation("factors: horizon must be >= n");
  auto [bits, off] = x.snapshot(horizon);
  const std::uint64_t mask = length_mask(n);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(4 * n + 16);
  for (std::size_t i = 0; i + n <= horizon; ++i) seen.insert(bits->window(off + i) & mask);
  return FactorSet(n, std::vector<std::uint64_t>(seen.begin(), seen.end()));
}

FactorSet factors(const Word& w, std::size_t n) {
  check_length(n);
  std::vector<std::uint64_t> keys;
  const std::uint64_t mask = length_mask(n);
  for (std::size_t i = 0; i + n <= w.size(); ++i) keys.push_back(w.bits().window(i) & mask);
  return FactorSet(n, std::move(keys));
}

RecurrenceWindow RecurrenceWindow::defaults(std::size_t horizon) {
  return RecurrenceWindow{horizon, std::max<std::size_t>(1, horizon / 100), 5};
}

FactorSet recurrent_factors(const SymbolStream& x, std::size_t n, const RecurrenceWindow& win) {
  check_length(n);
  if (win.min_count < 2) throw ContractViolation("recurrent_factors: min_count must be >= 2");
  if (win.tail_start == 0 || win.tail_start + n > win.horizon) {
    throw ContractViolation("recurrent_factors: need 1 <= tail_start and tail_start + n <= horizon");
  }
  auto [bits, off] = x.snapshot(win.horizon);
  const std::uint64_t mask = length_mask(n);
  std::unordered_map<std::uint64_t, std::size_t> counts;
  counts.reserve(4 * n + 16);
  for (std::size_t pos = win.tail_start; pos + n - 1 <= win.horizon; ++pos) {
    ++counts[bits->window(off + pos - 1) & mask];
  }
  std::vector<std::uint64_t> keep;
  for (const auto& [key, c] : counts) {
    if (c >= win.min_count) keep.push_back(key);
  }
  return FactorSet(n, std::move(keep));
}

// ---------------------------------------------------------------------------
// Refinement atoms

AtomRefinement::AtomRefinement(QuadSurd alpha) : alpha_(std::move(alpha)) {
  if (alpha_.is_rational()) throw ContractViolation("AtomRefinement needs an irrational angle");
}

void AtomRefinement::insert(const QuadSurd& cut) {
  auto it = std::lower_bound(cuts_.begin(), cuts_.end(), cut,
                             [](const QuadSurd& a, const QuadSurd& b) { return quad_compare(a, b) < 0; });
  cuts_.insert(it, cut);
}

void AtomRefinement::refine_to(std::size_t k) {
  while (depth_ < k) {
    const QuadSurd back = alpha_ * Rational(static_cast<long>(depth_));
    insert(mod1(-back).value());
    insert(mod1(QuadSurd(Rational(1, 4)) - back).value());
    ++depth_;
    // Max gap over the sorted cut list, wrap-around arc included.
    QuadSurd best = QuadSurd(1) - cuts_.back() + cuts_.front();
    for (std::size_t i = 0; i + 1 < cuts_.size(); ++i) {
      QuadSurd gap = cuts_[i + 1] - cuts_[i];
      if (quad_compare(gap, best) > 0) best = std::move(gap);
    }
    history_.push_back(std::move(best));
  }
}

QuadSurd AtomRefinement::diameter(std::size_t k) {
  if (k == 0) throw ContractViolation("atom diameter needs k >= 1");
  refine_to(k);
  return history_[k - 1];
}

QuadSurd atom_diameter(const QuadSurd& alpha, std::size_t k) {
  AtomRefinement r(alpha);
  return r.diameter(k);
}

namespace {

// Depth-n atoms: atom t is [cuts[t], cuts[t+1]) (the last one runs up to 1;
// cuts[0] is always 0), words[t] its itinerary.
struct AtomTable {
  std::vector<QuadSurd> cuts;
  std::vector<Word> words;

  std::size_t locate(const QuadSurd& p) const {
    auto it = std::upper_bound(cuts.begin(), cuts.end(), p,
                               [](const QuadSurd& a, const QuadSurd& b) { return quad_compare(a, b) < 0; });
    return static_cast<std::size_t>(it - cuts.begin()) - 1;
  }
};

AtomTable atom_table(const QuadSurd& alpha, std::size_t n) {
  struct Cut {
    QuadSurd value;
    std::size_t step;
    int cell_edge; // 0: start of [0,1/4) arc, 1: its end
  };
  std::vector<Cut> cuts;
  cuts.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const QuadSurd back = alpha * Rational(static_cast<long>(i));
    cuts.push_back({mod1(-back).value(), i, 0});
    cuts.push_back({mod1(QuadSurd(Rational(1, 4)) - back).value(), i, 1});
  }
  std::sort(cuts.begin(), cuts.end(),
            [](const Cut& a, const Cut& b) { return quad_compare(a.value, b.value) < 0; });
  const std::size_t m = cuts.size();
  std::vector<std::size_t> open(n), close(n);
  for (std::size_t r = 0; r < m; ++r) (cuts[r].cell_edge == 0 ? open : close)[cuts[r].step] = r;

  // symbol i is 0 iff atom t lies in the cyclic rank range [open_i, close_i)
  AtomTable table;
  table.cuts.reserve(m);
  table.words.reserve(m);
  for (std::size_t t = 0; t < m; ++t) {
    table.cuts.push_back(cuts[t].value);
    Word w;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t span = (close[i] + m - open[i]) % m;
      const std::size_t pos = (t + m - open[i]) % m;
      w.push_back(pos < span ? 0 : 1);
    }
    table.words.push_back(std::move(w));
  }
  return table;
}

// True iff no y has the same depth-n itinerary as y + delta.
bool offset_separates(const QuadSurd& alpha, const QuadSurd& delta, std::size_t n) {
  const AtomTable table = atom_table(alpha, n);
  // On each piece of the common refinement of the cuts and the cuts moved by
  // -delta, both itineraries are constant; the piece's left end represents it.
  std::vector<QuadSurd> probes = table.cuts;
  for (const auto& c : table.cuts) probes.push_back(mod1(c - delta).value());
  for (const auto& y : probes) {
    if (table.words[table.locate(y)] == table.words[table.locate(mod1(y + delta).value())]) return false;
  }
  return true;
}

} // namespace

std::vector<Word> rotation_language(const QuadSurd& alpha, std::size_t n) {
  if (alpha.is_rational()) throw ContractViolation("rotation_language needs an irrational angle");
  if (n == 0) return {Word{}};
  std::vector<Word> out = atom_table(alpha, n).words;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::size_t> offset_separation(const QuadSurd& alpha, const QuadSurd& delta, std::size_t max_depth) {
  if (alpha.is_rational()) throw ContractViolation("offset_separation needs an irrational angle");
  const QuadSurd d = mod1(delta).value();
  if (d.sign() == 0 || max_depth == 0) return std::nullopt;
  // Separation at depth k persists at every larger depth: double, then bisect.
  std::size_t hi = 1;
  while (!offset_separates(alpha, d, hi)) {
    if (hi >= max_depth) return std::nullopt;
    hi = std::min(2 * hi, max_depth);
  }
  std::size_t lo = hi / 2; // fails (or 0)
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (offset_separates(alpha, d, mid) ? hi : lo) = mid;
  }
  return hi;
}

std::optional<std::size_t> language_separation(const QuadSurd& alpha, const QuadSurd& gamma,
                                               std::size_t max_length) {
  for (std::size_t len = std::min<std::size_t>(64, max_length);; len = std::min(2 * len, max_length)) {
    const auto lhs = rotation_language(alpha, len);
    const auto rhs = rotation_language(gamma, len);
    std::vector<std::pair<const Word*, int>> all;
    all.reserve(lhs.size() + rhs.size());
    for (const auto& w : lhs) all.emplace_back(&w, 0);
    for (const auto& w : rhs) all.emplace_back(&w, 1);
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return *a.first < *b.first; });
    // The longest common prefix across the two sets is attained by a pair
    // adjacent in lexicographic order.
    std::size_t best = 0;
    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
      if (all[i].second == all[i + 1].second) continue;
      best = std::max(best, lcp(*all[i].first, *all[i + 1].first, len));
    }
    if (best < len) return best + 1;
    if (len == max_length) return std::nullopt;
  }
}

} // namespace dendro
