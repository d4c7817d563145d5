#include "dendro/diamond.hpp"

#include <algorithm>
#include <cmath>

namespace dendro {

DiamondPosition position_decode(std::uint64_t i) {
  if (i == 0) throw ContractViolation("position_decode is 1-based");
  // k is the unique integer with k(k-1) < i <= k(k+1), close to sqrt(i).
  auto k = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(i))));
  if (k == 0) k = 1;
  while (k * (k - 1) >= i) --k;
  while (k * (k + 1) < i) ++k;
  const std::uint64_t first = k * (k - 1);
  if (i <= k * k) return {DiamondSource::A, k, i - first};
  return {DiamondSource::B, k, i - k * k};
}

DiamondStream::DiamondStream(SymbolStream a, SymbolStream b) : a_(std::move(a)), b_(std::move(b)) {
  const SymbolStream sa = a_;
  const SymbolStream sb = b_;
  stream_ = SymbolStream::from_generator(
      "diamond(" + a_.label() + "," + b_.label() + ")", [sa, sb](PackedBits& out, std::size_t target) {
        const DiamondPosition last = position_decode(target);
        auto [abits, aoff] = sa.snapshot(last.block);
        auto [bbits, boff] = sb.snapshot(last.block);
        while (out.size() < target) {
          const DiamondPosition p = position_decode(out.size() + 1);
          const std::size_t left = p.block - p.offset + 1;
          const std::size_t count = std::min<std::size_t>(left, target - out.size());
          if (p.source == DiamondSource::A) {
            out.append(*abits, aoff + p.offset - 1, count);
          } else {
            out.append(*bbits, boff + p.offset - 1, count);
          }
        }
      });
}

DiamondStream diamond(SymbolStream a, SymbolStream b) { return DiamondStream(std::move(a), std::move(b)); }

const char* to_string(SplitForm f) {
  switch (f) {
  case SplitForm::FactorOfA: return "factor-of-a";
  case SplitForm::FactorOfB: return "factor-of-b";
  case SplitForm::CrossoverAB: return "crossover-ab";
  case SplitForm::CrossoverBA: return "crossover-ba";
  case SplitForm::None: return "none";
  }
  return "none";
}

SplitClassifier::SplitClassifier(const SymbolStream& a, const SymbolStream& b, std::size_t n,
                                 std::size_t source_horizon)
    : n_(n) {
  if (n == 0 || n > kMaxFactorLength) throw ContractViolation("SplitClassifier: length must be in [1, 64]");
  if (source_horizon < n) throw ContractViolation("SplitClassifier: source horizon shorter than n");
  for (std::size_t l = 1; l <= n; ++l) {
    factors_a_.push_back(factors(a, l, source_horizon));
    factors_b_.push_back(factors(b, l, source_horizon));
  }
  prefix_a_ = a.prefix(n);
  prefix_b_ = b.prefix(n);
}

bool SplitClassifier::crossover(const Word& w, const std::vector<FactorSet>& left, const Word& right_prefix) const {
  for (std::size_t cut = 1; cut < w.size(); ++cut) {
    const std::size_t tail = w.size() - cut;
    if (lcp(w.substr(cut, tail), right_prefix, tail) != tail) continue;
    if (left[cut - 1].contains(w.prefix(cut))) return true;
  }
  return false;
}

SplitForm SplitClassifier::classify(const Word& w) const {
  if (w.empty() || w.size() > n_) throw ContractViolation("SplitClassifier: word length out of range");
  const std::size_t l = w.size();
  if (factors_a_[l - 1].contains(w)) return SplitForm::FactorOfA;
  if (factors_b_[l - 1].contains(w)) return SplitForm::FactorOfB;
  if (crossover(w, factors_a_, prefix_b_)) return SplitForm::CrossoverAB;
  if (crossover(w, factors_b_, prefix_a_)) return SplitForm::CrossoverBA;
  return SplitForm::None;
}

namespace {
bool window_too_short(std::size_t n, std::size_t source_horizon, const RecurrenceWindow& w) {
  return w.tail_start == 0 || w.tail_start + n > w.horizon || source_horizon < n;
}
} // namespace

InclusionReport omega_lower_check(const SymbolStream& a, const SymbolStream& b, std::size_t n,
                                  std::size_t source_horizon, const RecurrenceWindow& window) {
  InclusionReport report;
  report.factor_length = n;
  if (window_too_short(n, source_horizon, window)) {
    report.insufficient_horizon = true;
    return report;
  }
  const DiamondStream x = diamond(a, b);
  const FactorSet rec = recurrent_factors(x.stream(), n, window);
  const FactorSet wanted = factors(a, n, source_horizon).set_union(factors(b, n, source_horizon));
  report.checked = wanted.size();
  for (const Word& w : wanted.set_difference(rec).words()) report.violations.push_back(w);
  return report;
}

InclusionReport closure_form_check(const SymbolStream& x, const SymbolStream& a, const SymbolStream& b,
                                   std::size_t n, std::size_t source_horizon, const RecurrenceWindow& window) {
  InclusionReport report;
  report.factor_length = n;
  if (window_too_short(n, source_horizon, window)) {
    report.insufficient_horizon = true;
    return report;
  }
  const SplitClassifier classifier(a, b, n, source_horizon);
  const FactorSet rec = recurrent_factors(x, n, window);
  report.checked = rec.size();
  for (const Word& w : rec.words()) {
    if (classifier.classify(w) == SplitForm::None) report.violations.push_back(w);
  }
  return report;
}

InclusionReport omega_upper_check(const SymbolStream& a, const SymbolStream& b, std::size_t n,
                                  std::size_t source_horizon, const RecurrenceWindow& window) {
  return closure_form_check(diamond(a, b).stream(), a, b, n, source_horizon, window);
}

} // namespace dendro
