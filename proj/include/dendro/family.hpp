// The Cantor-indexed family of points x_s = a_s <> b_s.
//
//   alpha_s = sqrt(2)/8 + sum_i s_i 4^{-(i+1)}     (rotation angles, all in Q(sqrt 2))
//   beta    = sqrt(3)/8                             (the common Z-side angle)
//   r_s     = 1/8 + sum_i s_i 3^{-(i+1)}            (start of b_s under beta)
//
// a_s codes the orbit of 1/8 under alpha_s from step 1 on, matching the
// indexing of A(alpha); b_s codes the orbit of r_s under beta from step 0.
// Rational starts under irrational angles never meet the cut points 0, 1/4.
#pragma once

#include "dendro/coding.hpp"
#include "dendro/diamond.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace dendro {

/// Binary code s with 1 <= |s| <= 20, indexing one member of the family.
class AlphaCode {
public:
  static constexpr std::size_t kMaxLength = 20;
  explicit AlphaCode(std::string bits);
  const std::string& str() const { return bits_; }
  std::size_t size() const { return bits_.size(); }
  friend auto operator<=>(const AlphaCode&, const AlphaCode&) = default;

private:
  std::string bits_;
};

/// The 8 codes {0,1}^3 in lexicographic order.
std::vector<AlphaCode> default_codes();
/// One code per line, '#' starts a comment, blank lines ignored.
std::vector<AlphaCode> parse_codes(std::string_view text);
/// Comma separated list.
std::vector<AlphaCode> parse_codes_inline(std::string_view text);

struct FamilyConfig {
  QuadSurd alpha_base = QuadSurd::root(2, Rational(1, 8));
  QuadSurd beta = QuadSurd::root(3, Rational(1, 8));
  Rational a_start{1, 8};
  Rational b_base{1, 8};
  long alpha_digit_base = 4;
  long start_digit_base = 3;
};

struct XPoint {
  AlphaCode code;
  SymbolStream a;
  SymbolStream b;
  DiamondStream x;
};

enum class ClosureCase { SSide, ZSide, CrossoverAB, CrossoverBA, None };
const char* to_string(ClosureCase c);

/// Family instance with per-code stream caches (streams are shared so their
/// memoized prefixes are computed once).
class Family {
public:
  explicit Family(FamilyConfig config = {});

  const FamilyConfig& config() const { return config_; }
  const QuadSurd& beta() const { return config_.beta; }

  QuadSurd alpha_of(const AlphaCode& s) const;
  Rational base_of(const AlphaCode& s) const;

  SymbolStream a_stream(const AlphaCode& s) const;
  SymbolStream b_stream(const AlphaCode& s) const;
  const XPoint& x_point(const AlphaCode& s) const;

  /// Union over codes of the length-n factors of x_s inside x_[1, horizon].
  FactorSet language_of_X(const std::vector<AlphaCode>& codes, std::size_t n, std::size_t horizon) const;

  /// Case of the closure analysis that explains w relative to x_s, using the
  /// first `horizon` symbols of a_s and b_s.
  ClosureCase classify_closure_case(const Word& w, const AlphaCode& s, std::size_t horizon) const;

private:
  FamilyConfig config_;
  mutable std::mutex mutex_;
  mutable std::map<AlphaCode, std::unique_ptr<XPoint>> points_;
};

} // namespace dendro
