#include "dendro/dendrite.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dendro {

namespace {

Rational pow2_neg(std::size_t k) {
  Rational r(1);
  mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), k);
  return r;
}

const Word* address(const DendritePoint& pt) {
  if (const auto* b = std::get_if<Branch>(&pt)) return &b->w;
  if (const auto* i = std::get_if<Interior>(&pt)) return &i->w;
  return nullptr;
}

Rational depth_of(const DendritePoint& pt) {
  return std::visit(
      [](const auto& p) -> Rational {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Root>) {
          return 0;
        } else if constexpr (std::is_same_v<P, Branch>) {
          return 1 - pow2_neg(p.w.size());
        } else if constexpr (std::is_same_v<P, Interior>) {
          return 1 - pow2_neg(p.w.size() - 1) + p.t * pow2_neg(p.w.size());
        } else {
          return 1;
        }
      },
      pt);
}

} // namespace

NotInModel::NotInModel(const Word& w)
    : std::domain_error("arc '" + w.str() + "' is not in the model"), address(w) {}

DendritePoint make_interior(const Word& w, const Rational& t) {
  if (w.empty()) throw ContractViolation("interior point needs a nonempty address");
  if (t < 0 || t > 1) throw ContractViolation("interior parameter must lie in [0, 1]");
  if (t == 1) return Branch{w};
  if (t == 0) {
    if (w.size() == 1) return Root{};
    return Branch{w.prefix(w.size() - 1)};
  }
  Rational c = t;
  c.canonicalize();
  return Interior{w, c};
}

DendriteModel::DendriteModel(std::string label, Oracle oracle) : label_(std::move(label)), oracle_(std::move(oracle)) {}

DendriteModel DendriteModel::full_binary() {
  return DendriteModel("full", [](const Word&) { return true; });
}

DendriteModel DendriteModel::from_words(const std::vector<Word>& words) {
  auto closure = std::make_shared<std::set<std::string>>();
  for (const Word& w : words) {
    const std::string s = w.str();
    for (std::size_t k = 1; k <= s.size(); ++k) closure->insert(s.substr(0, k));
  }
  return DendriteModel("words", [closure](const Word& w) { return closure->count(w.str()) > 0; });
}

DendriteModel DendriteModel::from_family(const Family& family, std::vector<AlphaCode> codes, std::size_t horizon) {
  if (codes.empty()) throw ContractViolation("family dendrite needs at least one code");
  struct Cache {
    std::mutex mutex;
    std::map<std::size_t, FactorSet> by_length;
  };
  auto cache = std::make_shared<Cache>();
  std::string label = "family(";
  for (std::size_t i = 0; i < codes.size(); ++i) label += (i ? "," : "") + codes[i].str();
  label += ")";
  return DendriteModel(std::move(label), [&family, codes = std::move(codes), horizon, cache](const Word& w) {
    if (w.size() > kMaxFactorLength || w.size() > horizon) return false;
    std::lock_guard lock(cache->mutex);
    auto it = cache->by_length.find(w.size());
    if (it == cache->by_length.end()) {
      it = cache->by_length.emplace(w.size(), family.language_of_X(codes, w.size(), horizon)).first;
    }
    return it->second.contains(w);
  });
}

bool DendriteModel::contains_arc(const Word& w) const {
  if (w.empty()) throw ContractViolation("arc address must be nonempty");
  return oracle_(w);
}

bool DendriteModel::contains(const DendritePoint& pt, std::size_t end_check) const {
  if (std::holds_alternative<Root>(pt)) return true;
  if (const auto* e = std::get_if<End>(&pt)) return contains_arc(e->x.prefix(end_check));
  return contains_arc(*address(pt));
}

std::vector<Word> DendriteModel::accepted_extensions(const Word& w, std::size_t n) const {
  std::vector<Word> out;
  std::vector<Word> stack{w};
  if (!w.empty() && !oracle_(w)) return out;
  // depth-first, children pushed in reverse so output is lexicographic
  while (!stack.empty()) {
    Word cur = std::move(stack.back());
    stack.pop_back();
    if (cur.size() == n) {
      out.push_back(std::move(cur));
      continue;
    }
    for (int s = 1; s >= 0; --s) {
      Word next = cur;
      next.push_back(s);
      if (oracle_(next)) stack.push_back(std::move(next));
    }
  }
  return out;
}

std::vector<Word> DendriteModel::accepted_words(std::size_t depth) const {
  std::vector<Word> out;
  std::vector<Word> stack;
  for (int s = 1; s >= 0; --s) {
    Word w;
    w.push_back(s);
    if (depth >= 1 && oracle_(w)) stack.push_back(std::move(w));
  }
  while (!stack.empty()) {
    Word cur = std::move(stack.back());
    stack.pop_back();
    if (cur.size() < depth) {
      for (int s = 1; s >= 0; --s) {
        Word next = cur;
        next.push_back(s);
        if (oracle_(next)) stack.push_back(std::move(next));
      }
    }
    out.push_back(std::move(cur));
  }
  return out;
}

DendritePoint apply_f(const DendriteModel& model, const DendritePoint& pt) {
  if (const auto* w = address(pt); w && !model.contains_arc(*w)) throw NotInModel(*w);
  return std::visit(
      [](const auto& p) -> DendritePoint {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Root>) {
          return Root{};
        } else if constexpr (std::is_same_v<P, Branch>) {
          if (p.w.size() == 1) return Root{};
          return Branch{p.w.tail()};
        } else if constexpr (std::is_same_v<P, Interior>) {
          if (p.w.size() == 1) return Root{};
          return Interior{p.w.tail(), p.t};
        } else {
          return End{p.x.shifted(1)};
        }
      },
      pt);
}

PathDistance path_dist(const DendritePoint& u, const DendritePoint& v, std::size_t cap) {
  const auto* eu = std::get_if<End>(&u);
  const auto* ev = std::get_if<End>(&v);
  std::size_t c = 0;
  bool saturated = false;
  if (eu && ev) {
    c = lcp(eu->x, ev->x, cap);
    saturated = c == cap;
  } else if (eu || ev) {
    const End& e = eu ? *eu : *ev;
    const Word* w = address(eu ? v : u);
    if (w) c = lcp(e.x.prefix(w->size()), *w, w->size());
  } else {
    const Word* wu = address(u);
    const Word* wv = address(v);
    if (wu && wv) c = lcp(*wu, *wv, std::min(wu->size(), wv->size()));
  }
  const Rational du = depth_of(u);
  const Rational dv = depth_of(v);
  const Rational meet = std::min({du, dv, Rational(1 - pow2_neg(c))});
  Rational d = du + dv - 2 * meet;
  d.canonicalize();
  return {d, saturated};
}

std::optional<std::size_t> steps_to_root(const DendritePoint& pt) {
  if (std::holds_alternative<End>(pt)) return std::nullopt;
  if (const auto* w = address(pt)) return w->size();
  return 0;
}

IsolationReport no_isolated_points_check(const DendriteModel& model, std::size_t n, std::size_t ext) {
  if (n == 0 || ext == 0) throw ContractViolation("no_isolated_points_check: n and ext must be >= 1");
  IsolationReport report{n, ext, 0, {}};
  for (const Word& w : model.accepted_extensions(Word(), n)) {
    ++report.checked;
    if (model.accepted_extensions(w, n + ext).size() < 2) report.isolated.push_back(w);
  }
  return report;
}

InvarianceReport f_invariance_check(const DendriteModel& model, std::size_t depth) {
  InvarianceReport report{depth, 0, {}};
  for (const Word& w : model.accepted_words(depth)) {
    ++report.checked;
    if (w.size() > 1 && !model.contains_arc(w.tail())) report.violations.push_back(w);
  }
  return report;
}

std::string emit_graph(const DendriteModel& model, std::size_t depth) {
  if (depth > 24) throw ContractViolation("emit_graph depth must be <= 24");
  const auto words = model.accepted_words(depth);
  std::ostringstream out;
  out << "digraph dendrite {\n";
  out << "  \"p\";\n";
  for (const Word& w : words) out << "  \"" << w.str() << "\";\n";
  for (const Word& w : words) {
    const std::string parent = w.size() == 1 ? "p" : w.prefix(w.size() - 1).str();
    out << "  \"" << parent << "\" -> \"" << w.str() << "\" [len=\"2^-" << w.size() << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_string(const DendritePoint& pt) {
  return std::visit(
      [](const auto& p) -> std::string {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Root>) {
          return "root";
        } else if constexpr (std::is_same_v<P, Branch>) {
          return "branch:" + p.w.str();
        } else if constexpr (std::is_same_v<P, Interior>) {
          return "int:" + p.w.str() + ":" + to_string(p.t);
        } else {
          return "end:" + p.x.label();
        }
      },
      pt);
}

namespace {
Word parse_address(std::string_view text, std::size_t base) {
  if (text.empty()) throw ParseError("empty arc address", base);
  try {
    return Word(text);
  } catch (const ParseError& e) {
    throw ParseError(e.message, base + e.position);
  }
}

Rational parse_parameter(std::string_view text, std::size_t base) {
  const auto slash = text.find('/');
  const auto digits = [&](std::string_view s, std::size_t at) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("parameter must be p/q with decimal integers", at);
    }
    return mpz_class(std::string(s));
  };
  const mpz_class num = digits(text.substr(0, slash), base);
  mpz_class den = 1;
  if (slash != std::string_view::npos) den = digits(text.substr(slash + 1), base + slash + 1);
  if (den == 0) throw ParseError("zero denominator", base + slash + 1);
  Rational t(num, den);
  t.canonicalize();
  if (t <= 0 || t >= 1) throw ParseError("interior parameter must lie strictly between 0 and 1", base);
  return t;
}
} // namespace

DendritePoint parse_point(std::string_view text, const std::function<SymbolStream(std::string_view)>& resolve) {
  if (text == "root") return Root{};
  if (text.substr(0, 7) == "branch:") return Branch{parse_address(text.substr(7), 7)};
  if (text.substr(0, 4) == "int:") {
    const auto colon = text.find(':', 4);
    if (colon == std::string_view::npos) throw ParseError("int: point needs '<address>:<t>'", text.size());
    return Interior{parse_address(text.substr(4, colon - 4), 4), parse_parameter(text.substr(colon + 1), colon + 1)};
  }
  if (text.substr(0, 4) == "end:") {
    try {
      return End{resolve(text.substr(4))};
    } catch (const ParseError& e) {
      throw ParseError(e.message, 4 + e.position);
    }
  }
  throw ParseError("unknown point literal", 0);
}

} // namespace dendro
