// Exact arithmetic in a real quadratic field Q(sqrt(d)).
//
// Every itinerary symbol in this library is decided by exact comparisons of
// numbers a + b*sqrt(d) with rational a, b. Two surds may only be compared
// when they live in the same field (or when one of them is rational); the
// constructions never need a degree-4 comparison.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dendro {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised when an operation's precondition is violated by its arguments.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Mixing sqrt(d) and sqrt(d') with d != d' in one comparison or sum.
class FieldMismatch : public ContractViolation {
public:
  FieldMismatch(long lhs, long rhs);
  long lhs_field;
  long rhs_field;
};

/// Literal parse failure; `position` is the 0-based offset of the problem.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, std::size_t position);
  std::string message; // without the position suffix
  std::size_t position;
};

bool is_square_free(long d);

/// Value a + b*sqrt(d). When b == 0 the number is rational and `field()` is 1.
class QuadSurd {
public:
  QuadSurd() = default;
  QuadSurd(Rational a); // NOLINT(google-explicit-constructor): rationals embed
  QuadSurd(long a) : QuadSurd(Rational(a)) {} // NOLINT
  QuadSurd(Rational a, Rational b, long d);

  /// b*sqrt(d) / 1 convenience: `QuadSurd::root(d, q)` is q*sqrt(d).
  static QuadSurd root(long d, const Rational& coeff = 1);

  const Rational& rational_part() const { return a_; }
  const Rational& root_coeff() const { return b_; }
  long radicand() const { return d_; }
  /// 1 for rationals, otherwise the square-free radicand.
  long field() const { return is_rational() ? 1 : d_; }
  bool is_rational() const { return b_ == 0; }

  QuadSurd operator-() const;
  QuadSurd& operator+=(const QuadSurd& rhs);
  QuadSurd& operator-=(const QuadSurd& rhs);
  QuadSurd& operator*=(const Rational& k);
  friend QuadSurd operator+(QuadSurd lhs, const QuadSurd& rhs) { return lhs += rhs; }
  friend QuadSurd operator-(QuadSurd lhs, const QuadSurd& rhs) { return lhs -= rhs; }
  friend QuadSurd operator*(QuadSurd lhs, const Rational& k) { return lhs *= k; }
  friend QuadSurd operator*(const Rational& k, QuadSurd rhs) { return rhs *= k; }

  /// Sign of the value: -1, 0 or +1.
  int sign() const;
  /// Largest integer not exceeding the value.
  Integer floor() const;
  /// Closest double; for diagnostics and reporting only.
  double approx() const;

  friend bool operator==(const QuadSurd& x, const QuadSurd& y);
  friend std::strong_ordering operator<=>(const QuadSurd& x, const QuadSurd& y);

private:
  void canonicalize();

  Rational a_{0};
  Rational b_{0};
  long d_ = 1;
};

/// Sign of x - y, decided exactly. Throws FieldMismatch for mixed fields.
int quad_compare(const QuadSurd& x, const QuadSurd& y);

/// Common field of two surds (1 if both rational); throws on mismatch.
long common_field(const QuadSurd& x, const QuadSurd& y);

/// Point of the circle R/Z, stored as its representative in [0, 1).
class CirclePoint {
public:
  CirclePoint() = default;
  const QuadSurd& value() const { return x_; }
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;

private:
  friend CirclePoint mod1(const QuadSurd& x);
  explicit CirclePoint(QuadSurd x) : x_(std::move(x)) {}
  QuadSurd x_;
};

CirclePoint mod1(const QuadSurd& x);
CirclePoint rotate(const CirclePoint& p, const QuadSurd& alpha);
/// True iff the point lies in the half-open cell [0, 1/4).
bool in_left_cell(const CirclePoint& p);
/// Length of the shorter arc between two points, in [0, 1/2].
QuadSurd circle_distance(const CirclePoint& p, const CirclePoint& q);

/// Parses "a/b + c/e*sqrt(d)", "a/b - c/e*sqrt(d)", "c/e*sqrt(d)", "a/b" or "a".
/// Whitespace is ignored. Decimal literals are rejected.
QuadSurd parse_surd(std::string_view text);
/// Inverse of parse_surd: always "a/b + c/e*sqrt(d)" or "a/b" when rational.
std::string to_string(const QuadSurd& x);
std::string to_string(const Rational& q);

/// Exact orbit walker for x -> x + alpha (mod 1) with fast cell tests.
///
/// All quantities share one integer denominator L, so a point is held as
/// (A + B*sqrt(d)) / L with integers A, B. A step costs two integer additions
/// and at most two small squarings.
class RotationWalker {
public:
  RotationWalker(const CirclePoint& start, const QuadSurd& alpha);

  /// Current orbit point, normalized.
  CirclePoint point() const;
  /// Number of steps taken so far.
  std::uint64_t steps() const { return steps_; }
  /// Compares the current point against the cut c (a rational in [0,1)).
  /// Returns the sign of point - c.
  int compare_cut(const Rational& c) const;
  /// Symbol of the current point: 0 iff it lies in [0, 1/4).
  /// Throws CutPointCollision if the point equals 0 or 1/4 exactly.
  int symbol() const;
  void step();

private:
  int sign_of(const Integer& u, const Integer& v) const;

  Integer num_;   // A
  Integer root_;  // B
  Integer step_num_;
  Integer step_root_;
  Integer denom_; // L
  Integer quarter_; // L / 4
  long d_ = 1;
  std::uint64_t steps_ = 0;
  mutable Integer t0_, t1_;
};

/// The orbit of a start point hit one of the cut points 0 or 1/4.
class CutPointCollision : public std::runtime_error {
public:
  explicit CutPointCollision(std::uint64_t orbit_step);
  std::uint64_t orbit_step;
};

} // namespace dendro
