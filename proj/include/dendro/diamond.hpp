// The interleaving a <> b = a1 b1 a1a2 b1b2 a1a2a3 b1b2b3 ...
//
// Block k (k >= 1) occupies positions k(k-1)+1 .. k(k+1): first the prefix
// a_[1,k], then the prefix b_[1,k].
#pragma once

#include "dendro/coding.hpp"

#include <cstdint>
#include <vector>

namespace dendro {

enum class DiamondSource { A, B };

struct DiamondPosition {
  DiamondSource source;
  std::uint64_t block;  // k
  std::uint64_t offset; // j, 1-based inside the half-block
  friend bool operator==(const DiamondPosition&, const DiamondPosition&) = default;
};

/// Closed-form decode of the 1-based global position i >= 1.
DiamondPosition position_decode(std::uint64_t i);

/// First global position (1-based) of block k.
constexpr std::uint64_t block_start(std::uint64_t k) { return k * (k - 1) + 1; }

class DiamondStream {
public:
  DiamondStream() = default;
  DiamondStream(SymbolStream a, SymbolStream b);

  const SymbolStream& stream() const { return stream_; }
  const SymbolStream& a() const { return a_; }
  const SymbolStream& b() const { return b_; }
  operator const SymbolStream&() const { return stream_; } // NOLINT(google-explicit-constructor)

  int at(std::size_t i) const { return stream_.at(i); }
  Word prefix(std::size_t n) const { return stream_.prefix(n); }

private:
  SymbolStream a_;
  SymbolStream b_;
  SymbolStream stream_;
};

DiamondStream diamond(SymbolStream a, SymbolStream b);

/// Which of the closure forms a word takes with respect to sources a, b.
enum class SplitForm { FactorOfA, FactorOfB, CrossoverAB, CrossoverBA, None };

const char* to_string(SplitForm f);

/// Factor and prefix tables of a and b up to length n, read from the first
/// `source_horizon` symbols of each source.
///
/// A word w is CrossoverAB when w = u v with u a nonempty factor of a and v a
/// nonempty prefix of b (the tail of an a-block followed by the head of the
/// next b-block); CrossoverBA symmetrically.
class SplitClassifier {
public:
  SplitClassifier(const SymbolStream& a, const SymbolStream& b, std::size_t n, std::size_t source_horizon);

  std::size_t max_length() const { return n_; }
  SplitForm classify(const Word& w) const;

private:
  bool crossover(const Word& w, const std::vector<FactorSet>& left, const Word& right_prefix) const;

  std::size_t n_;
  std::vector<FactorSet> factors_a_; // index l-1 holds length-l factors
  std::vector<FactorSet> factors_b_;
  Word prefix_a_;
  Word prefix_b_;
};

struct InclusionReport {
  std::size_t factor_length = 0;
  std::size_t checked = 0;
  bool insufficient_horizon = false;
  std::vector<Word> violations;
  bool pass() const { return !insufficient_horizon && violations.empty(); }
};

/// factors(a) u factors(b) must all be recurrent in a <> b.
InclusionReport omega_lower_check(const SymbolStream& a, const SymbolStream& b, std::size_t n,
                                  std::size_t source_horizon, const RecurrenceWindow& window);

/// Every recurrent factor of x must take one of the four split forms relative
/// to (a, b). With x = a <> b this is the upper inclusion.
InclusionReport closure_form_check(const SymbolStream& x, const SymbolStream& a, const SymbolStream& b,
                                   std::size_t n, std::size_t source_horizon, const RecurrenceWindow& window);

InclusionReport omega_upper_check(const SymbolStream& a, const SymbolStream& b, std::size_t n,
                                  std::size_t source_horizon, const RecurrenceWindow& window);

} // namespace dendro
