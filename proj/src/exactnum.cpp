#include "dendro/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace dendro {

FieldMismatch::FieldMismatch(long lhs, long rhs)
    : ContractViolation("mixed quadratic fields: sqrt(" + std::to_string(lhs) + ") vs sqrt(" +
                        std::to_string(rhs) + ")"),
      lhs_field(lhs), rhs_field(rhs) {}

ParseError::ParseError(std::string message, std::size_t pos)
    : std::runtime_error(message + " at position " + std::to_string(pos)), message(std::move(message)),
      position(pos) {}

CutPointCollision::CutPointCollision(std::uint64_t step)
    : std::runtime_error("cut-point collision: orbit point at step " + std::to_string(step) +
                         " equals a cell boundary (0 or 1/4)"),
      orbit_step(step) {}

bool is_square_free(long d) {
  if (d < 1) return false;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

namespace {

int sign_of_int(const Integer& z) {
  const int s = mpz_sgn(z.get_mpz_t());
  return (s > 0) - (s < 0);
}

int sign_of_rat(const Rational& q) {
  const int s = mpq_sgn(q.get_mpq_t());
  return (s > 0) - (s < 0);
}

// sign(u + v*sqrt(d)) for rationals u, v.
int sign_uv(const Rational& u, const Rational& v, long d) {
  const int su = sign_of_rat(u);
  const int sv = sign_of_rat(v);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  // Opposite signs: the larger magnitude wins.
  const Rational lhs = u * u;
  const Rational rhs = v * v * d;
  const int c = cmp(lhs, rhs);
  if (c > 0) return su;
  if (c < 0) return sv;
  return 0;
}

} // namespace

QuadSurd::QuadSurd(Rational a) : a_(std::move(a)) { a_.canonicalize(); }

QuadSurd::QuadSurd(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (!is_square_free(d)) {
    throw ContractViolation("radicand " + std::to_string(d) + " is not a positive square-free integer");
  }
  canonicalize();
}

QuadSurd QuadSurd::root(long d, const Rational& coeff) { return QuadSurd(0, coeff, d); }

void QuadSurd::canonicalize() {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (b_ == 0) d_ = 1;
}

long common_field(const QuadSurd& x, const QuadSurd& y) {
  const long fx = x.field();
  const long fy = y.field();
  if (fx == 1) return fy;
  if (fy == 1 || fx == fy) return fx;
  throw FieldMismatch(fx, fy);
}

QuadSurd QuadSurd::operator-() const {
  QuadSurd r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadSurd& QuadSurd::operator+=(const QuadSurd& rhs) {
  const long f = common_field(*this, rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  d_ = f;
  canonicalize();
  return *this;
}

QuadSurd& QuadSurd::operator-=(const QuadSurd& rhs) { return *this += -rhs; }

QuadSurd& QuadSurd::operator*=(const Rational& k) {
  a_ *= k;
  b_ *= k;
  canonicalize();
  return *this;
}

int QuadSurd::sign() const { return sign_uv(a_, b_, d_); }

Integer QuadSurd::floor() const {
  // Start from the floor of a + (approximate root term), then correct by exact steps.
  Integer guess;
  {
    const Integer& p = b_.get_num();
    const Integer& q = b_.get_den();
    Integer radicand = p * p * d_;
    Integer s = sqrt(radicand);
    Rational root_approx(p >= 0 ? s : Integer(-s), q);
    Rational total = a_ + root_approx;
    mpz_fdiv_q(guess.get_mpz_t(), total.get_num_mpz_t(), total.get_den_mpz_t());
  }
  while (quad_compare(*this, QuadSurd(Rational(guess))) < 0) guess -= 1;
  while (quad_compare(*this, QuadSurd(Rational(guess + 1))) >= 0) guess += 1;
  return guess;
}

double QuadSurd::approx() const { return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_)); }

bool operator==(const QuadSurd& x, const QuadSurd& y) {
  return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
}

std::strong_ordering operator<=>(const QuadSurd& x, const QuadSurd& y) {
  const int c = quad_compare(x, y);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int quad_compare(const QuadSurd& x, const QuadSurd& y) {
  const long f = common_field(x, y);
  return sign_uv(x.rational_part() - y.rational_part(), x.root_coeff() - y.root_coeff(), f);
}

CirclePoint mod1(const QuadSurd& x) {
  const Integer fl = x.floor();
  return CirclePoint(x - QuadSurd(Rational(fl)));
}

CirclePoint rotate(const CirclePoint& p, const QuadSurd& alpha) { return mod1(p.value() + alpha); }

bool in_left_cell(const CirclePoint& p) { return quad_compare(p.value(), Rational(1, 4)) < 0; }

QuadSurd circle_distance(const CirclePoint& p, const CirclePoint& q) {
  QuadSurd diff = p.value() - q.value();
  if (diff.sign() < 0) diff = -diff;
  QuadSurd other = QuadSurd(1) - diff;
  return quad_compare(diff, other) <= 0 ? diff : other;
}

// ---------------------------------------------------------------------------
// Literal parsing

namespace {

class SurdParser {
public:
  explicit SurdParser(std::string_view text) : text_(text) {}

  QuadSurd parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty surd literal", pos_);
    QuadSurd total;
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (!at_end() && (peek() == '+' || peek() == '-')) {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      QuadSurd term = parse_term();
      if (sign < 0) term = -term;
      total += term;
      first = false;
      skip_ws();
      if (at_end()) break;
    }
    return total;
  }

private:
  QuadSurd parse_term() {
    skip_ws();
    if (starts_with("sqrt")) return QuadSurd::root(parse_sqrt(), 1);
    Rational coeff = parse_rational();
    skip_ws();
    if (!at_end() && peek() == '*') {
      ++pos_;
      skip_ws();
      if (!starts_with("sqrt")) throw ParseError("expected 'sqrt(' after '*'", pos_);
      const long d = parse_sqrt();
      return QuadSurd::root(d, coeff);
    }
    return QuadSurd(coeff);
  }

  long parse_sqrt() {
    pos_ += 4;
    skip_ws();
    expect('(');
    skip_ws();
    const std::size_t num_pos = pos_;
    Integer d = parse_integer();
    skip_ws();
    expect(')');
    if (d < 2 || !d.fits_slong_p() || !is_square_free(d.get_si())) {
      throw ParseError("radicand must be a square-free integer >= 2", num_pos);
    }
    return d.get_si();
  }

  Rational parse_rational() {
    Integer num = parse_integer();
    skip_ws();
    Integer den = 1;
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      const std::size_t den_pos = pos_;
      den = parse_integer();
      if (den <= 0) throw ParseError("denominator must be positive", den_pos);
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  Integer parse_integer() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", pos_);
    if (!at_end() && (peek() == '.' || peek() == 'e' || peek() == 'E')) {
      throw ParseError("decimal literals are not accepted", pos_);
    }
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    if (at_end() || peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

QuadSurd parse_surd(std::string_view text) { return SurdParser(text).parse(); }

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const QuadSurd& x) {
  if (x.is_rational()) return to_string(x.rational_part());
  const Rational& b = x.root_coeff();
  const bool negative = b < 0;
  const Rational mag = negative ? Rational(-b) : b;
  return to_string(x.rational_part()) + (negative ? " - " : " + ") + to_string(mag) + "*sqrt(" +
         std::to_string(x.radicand()) + ")";
}

// ---------------------------------------------------------------------------
// RotationWalker

RotationWalker::RotationWalker(const CirclePoint& start, const QuadSurd& alpha) {
  const CirclePoint step = mod1(alpha);
  d_ = common_field(start.value(), step.value());
  const QuadSurd& s = start.value();
  const QuadSurd& a = step.value();
  Integer l = 4;
  for (const Rational* q : {&s.rational_part(), &s.root_coeff(), &a.rational_part(), &a.root_coeff()}) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q->get_den_mpz_t());
  }
  denom_ = l;
  quarter_ = l / 4;
  auto scaled = [&](const Rational& q) { return Integer(q.get_num() * (l / q.get_den())); };
  num_ = scaled(s.rational_part());
  root_ = scaled(s.root_coeff());
  step_num_ = scaled(a.rational_part());
  step_root_ = scaled(a.root_coeff());
}

int RotationWalker::sign_of(const Integer& u, const Integer& v) const {
  const int su = sign_of_int(u);
  const int sv = sign_of_int(v);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  t0_ = u * u;
  t1_ = v * v;
  t1_ *= d_;
  const int c = cmp(t0_, t1_);
  if (c > 0) return su;
  if (c < 0) return sv;
  return 0;
}

CirclePoint RotationWalker::point() const {
  return mod1(QuadSurd(Rational(num_, denom_), Rational(root_, denom_), d_));
}

int RotationWalker::compare_cut(const Rational& c) const {
  Integer u = num_ * c.get_den() - c.get_num() * denom_;
  Integer v = root_ * c.get_den();
  return sign_of(u, v);
}

int RotationWalker::symbol() const {
  const int at_zero = sign_of(num_, root_);
  if (at_zero == 0) throw CutPointCollision(steps_);
  Integer u = num_ - quarter_;
  const int at_quarter = sign_of(u, root_);
  if (at_quarter == 0) throw CutPointCollision(steps_);
  return at_quarter < 0 ? 0 : 1;
}

void RotationWalker::step() {
  num_ += step_num_;
  root_ += step_root_;
  Integer u = num_ - denom_;
  if (sign_of(u, root_) >= 0) num_ -= denom_;
  ++steps_;
}

} // namespace dendro
