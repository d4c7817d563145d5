#include "dendro/streamspec.hpp"

#include <string>

namespace dendro {

namespace {

// Re-throws parse errors from a sub-parser with positions relative to the whole spec.
template <class F>
auto shifted_errors(std::size_t base, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(e.message, base + e.position);
  }
}

AlphaCode parse_code(std::string_view text, std::size_t base) {
  try {
    return AlphaCode(std::string(text));
  } catch (const ContractViolation& e) {
    throw ParseError(e.what(), base);
  }
}

SymbolStream parse_at(std::string_view spec, std::size_t base, const Family& family) {
  const auto starts = [&](std::string_view p) { return spec.substr(0, p.size()) == p; };
  if (starts("A:")) {
    const QuadSurd alpha = shifted_errors(base + 2, [&] { return parse_surd(spec.substr(2)); });
    try {
      return sturmian_stream(alpha);
    } catch (const ContractViolation& e) {
      throw ParseError(e.what(), base + 2);
    }
  }
  if (starts("pt:")) {
    const auto at = spec.find('@');
    if (at == std::string_view::npos) throw ParseError("pt: spec needs '<start>@<alpha>'", base + spec.size());
    const QuadSurd start = shifted_errors(base + 3, [&] { return parse_surd(spec.substr(3, at - 3)); });
    const QuadSurd alpha = shifted_errors(base + at + 1, [&] { return parse_surd(spec.substr(at + 1)); });
    try {
      return rotation_stream(RotationCoding(alpha, mod1(start)));
    } catch (const ContractViolation& e) {
      throw ParseError(e.what(), base + at + 1);
    }
  }
  if (starts("x:")) return family.x_point(parse_code(spec.substr(2), base + 2)).x.stream();
  if (starts("a:")) return family.a_stream(parse_code(spec.substr(2), base + 2));
  if (starts("b:")) return family.b_stream(parse_code(spec.substr(2), base + 2));
  if (starts("periodic:")) {
    const Word w = shifted_errors(base + 9, [&] { return Word(spec.substr(9)); });
    if (w.empty()) throw ParseError("periodic: needs a nonempty word", base + 9);
    return SymbolStream::periodic(w);
  }
  if (spec == "const:0") return SymbolStream::constant(0);
  if (spec == "const:1") return SymbolStream::constant(1);
  if (starts("diamond(")) {
    if (spec.back() != ')') throw ParseError("diamond( without closing ')'", base + spec.size());
    int depth = 0;
    std::size_t comma = std::string_view::npos;
    for (std::size_t i = 8; i + 1 < spec.size(); ++i) {
      if (spec[i] == '(') ++depth;
      if (spec[i] == ')') --depth;
      if (spec[i] == ',' && depth == 0) {
        comma = i;
        break;
      }
    }
    if (comma == std::string_view::npos) throw ParseError("diamond needs two comma separated specs", base + 8);
    SymbolStream a = parse_at(spec.substr(8, comma - 8), base + 8, family);
    SymbolStream b = parse_at(spec.substr(comma + 1, spec.size() - comma - 2), base + comma + 1, family);
    return diamond(std::move(a), std::move(b)).stream();
  }
  throw ParseError("unknown stream spec '" + std::string(spec) + "'", base);
}

} // namespace

SymbolStream parse_stream(std::string_view spec, const Family& family) {
  if (spec.empty()) throw ParseError("empty stream spec", 0);
  return parse_at(spec, 0, family);
}

} // namespace dendro
