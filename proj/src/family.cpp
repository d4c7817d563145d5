#include "dendro/family.hpp"

#include <sstream>

namespace dendro {

AlphaCode::AlphaCode(std::string bits) : bits_(std::move(bits)) {
  if (bits_.empty() || bits_.size() > kMaxLength) {
    throw ContractViolation("alpha code length must be in [1, 20]: '" + bits_ + "'");
  }
  for (char c : bits_) {
    if (c != '0' && c != '1') throw ContractViolation("alpha code must be binary: '" + bits_ + "'");
  }
}

std::vector<AlphaCode> default_codes() {
  std::vector<AlphaCode> out;
  for (int v = 0; v < 8; ++v) {
    std::string s;
    for (int bit = 2; bit >= 0; --bit) s.push_back(static_cast<char>('0' + ((v >> bit) & 1)));
    out.emplace_back(s);
  }
  return out;
}

namespace {
std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}
} // namespace

std::vector<AlphaCode> parse_codes(std::string_view text) {
  std::vector<AlphaCode> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string t = trim(line);
    if (!t.empty()) out.emplace_back(std::move(t));
  }
  return out;
}

std::vector<AlphaCode> parse_codes_inline(std::string_view text) {
  std::vector<AlphaCode> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    std::string t = trim(text.substr(pos, end - pos));
    if (!t.empty()) out.emplace_back(std::move(t));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

const char* to_string(ClosureCase c) {
  switch (c) {
  case ClosureCase::SSide: return "S-side";
  case ClosureCase::ZSide: return "Z-side";
  case ClosureCase::CrossoverAB: return "crossover-ab";
  case ClosureCase::CrossoverBA: return "crossover-ba";
  case ClosureCase::None: return "none";
  }
  return "none";
}

Family::Family(FamilyConfig config) : config_(std::move(config)) {
  if (config_.beta.field() == config_.alpha_base.field()) {
    throw ContractViolation("beta must live in a different quadratic field than the alpha family");
  }
}

QuadSurd Family::alpha_of(const AlphaCode& s) const {
  QuadSurd alpha = config_.alpha_base;
  mpz_class weight = config_.alpha_digit_base;
  for (char c : s.str()) {
    weight *= config_.alpha_digit_base;
    if (c == '1') alpha += QuadSurd(Rational(mpz_class(1), weight));
  }
  return alpha;
}

Rational Family::base_of(const AlphaCode& s) const {
  Rational r = config_.b_base;
  mpz_class weight = config_.start_digit_base;
  for (char c : s.str()) {
    weight *= config_.start_digit_base;
    if (c == '1') r += Rational(mpz_class(1), weight);
  }
  r.canonicalize();
  return r;
}

SymbolStream Family::a_stream(const AlphaCode& s) const { return x_point(s).a; }
SymbolStream Family::b_stream(const AlphaCode& s) const { return x_point(s).b; }

const XPoint& Family::x_point(const AlphaCode& s) const {
  std::lock_guard lock(mutex_);
  auto it = points_.find(s);
  if (it != points_.end()) return *it->second;
  const QuadSurd alpha = alpha_of(s);
  const CirclePoint a_origin = rotate(mod1(QuadSurd(config_.a_start)), alpha);
  SymbolStream a = rotation_stream(RotationCoding(alpha, a_origin), "a:" + s.str());
  SymbolStream b = rotation_stream(RotationCoding(config_.beta, mod1(QuadSurd(base_of(s)))), "b:" + s.str());
  auto point = std::make_unique<XPoint>(XPoint{s, a, b, diamond(a, b)});
  auto& ref = *point;
  points_.emplace(s, std::move(point));
  return ref;
}

FactorSet Family::language_of_X(const std::vector<AlphaCode>& codes, std::size_t n, std::size_t horizon) const {
  if (codes.empty()) throw ContractViolation("language_of_X needs at least one code");
  FactorSet out(n, {});
  for (const auto& s : codes) out = out.set_union(factors(x_point(s).x.stream(), n, horizon));
  return out;
}

ClosureCase Family::classify_closure_case(const Word& w, const AlphaCode& s, std::size_t horizon) const {
  const XPoint& p = x_point(s);
  const SplitClassifier classifier(p.a, p.b, w.size(), horizon);
  switch (classifier.classify(w)) {
  case SplitForm::FactorOfA: return ClosureCase::SSide;
  case SplitForm::FactorOfB: return ClosureCase::ZSide;
  case SplitForm::CrossoverAB: return ClosureCase::CrossoverAB;
  case SplitForm::CrossoverBA: return ClosureCase::CrossoverBA;
  case SplitForm::None: return ClosureCase::None;
  }
  return ClosureCase::None;
}

} // namespace dendro
