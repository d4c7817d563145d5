#include "dendro/chaoscan.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace dendro {

const char* to_string(DistalityCertificate::Kind k) {
  switch (k) {
  case DistalityCertificate::Kind::RotationOffset: return "rotation-offset";
  case DistalityCertificate::Kind::LanguageSeparation: return "language-separation";
  case DistalityCertificate::Kind::DiamondPair: return "diamond-pair";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
  case Verdict::LYCandidate: return "LY-candidate";
  case Verdict::AsymptoticCandidate: return "asymptotic-candidate";
  case Verdict::DistalCandidate: return "distal-candidate";
  case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool PairVerdict::nonasymptotic_complete() const {
  return std::all_of(nonasymptotic.begin(), nonasymptotic.end(), [](const auto& t) { return t.has_value(); });
}

std::vector<std::uint64_t> PairVerdict::nonasymptotic_times() const {
  std::vector<std::uint64_t> out;
  for (const auto& t : nonasymptotic) {
    if (t) out.push_back(*t);
  }
  return out;
}

std::vector<std::uint64_t> checkpoint_grid(const ScanParams& params) {
  std::vector<std::uint64_t> grid;
  for (std::uint64_t c = params.resolution; c > 0 && c <= params.horizon; c *= 2) grid.push_back(c);
  return grid;
}

std::vector<std::size_t> lcp_series(const SymbolStream& x, const SymbolStream& y, std::uint64_t horizon,
                                    std::size_t cap) {
  auto [xb, xo] = x.snapshot(horizon + cap + 1);
  auto [yb, yo] = y.snapshot(horizon + cap + 1);
  std::vector<std::size_t> out(horizon + 1);
  for (std::uint64_t n = 0; n <= horizon; ++n) out[n] = common_prefix(*xb, xo + n, *yb, yo + n, cap);
  return out;
}

PairVerdict classify_pair(const SymbolStream& x, const SymbolStream& y, const ScanParams& params,
                          const std::optional<DistalityCertificate>& certificate) {
  if (params.horizon == 0 || params.resolution == 0) throw ContractViolation("classify_pair: N and m must be >= 1");
  PairVerdict v;
  v.params = params;
  v.certificate = certificate;
  v.checkpoints = checkpoint_grid(params);
  v.nonasymptotic.assign(v.checkpoints.size(), std::nullopt);

  const std::size_t m = params.resolution;
  const std::size_t cap = std::max(m + 1, certificate ? certificate->exponent : std::size_t{0});
  const std::uint64_t N = params.horizon;
  auto [xb, xo] = x.snapshot(N + cap + 1);
  auto [yb, yo] = y.snapshot(N + cap + 1);

  std::size_t next_checkpoint = 0;
  std::optional<std::uint64_t> last_below_m;
  for (std::uint64_t n = 0; n <= N; ++n) {
    const std::size_t l = common_prefix(*xb, xo + n, *yb, yo + n, cap);
    if (!v.proximal && l >= m) v.proximal = ProximalEvidence{n, l};
    if (l <= 2) {
      while (next_checkpoint < v.checkpoints.size() && v.checkpoints[next_checkpoint] <= n) {
        v.nonasymptotic[next_checkpoint++] = n;
      }
    }
    if (l < m) last_below_m = n;
    v.max_lcp = std::max(v.max_lcp, l);
    if (certificate && n >= certificate->valid_from) {
      v.certified_range_max_lcp = std::max(v.certified_range_max_lcp, l);
    }
  }

  if (certificate) {
    v.certificate_violated = v.certified_range_max_lcp >= certificate->exponent;
    v.verdict = v.certificate_violated ? Verdict::Inconclusive : Verdict::DistalCandidate;
    return v;
  }
  if (!v.proximal) {
    v.verdict = Verdict::DistalCandidate;
  } else if (v.nonasymptotic_complete()) {
    v.verdict = Verdict::LYCandidate;
  } else {
    const std::uint64_t first_missing = v.checkpoints[next_checkpoint];
    const bool tail_close = !last_below_m || *last_below_m < first_missing;
    v.verdict = tail_close ? Verdict::AsymptoticCandidate : Verdict::Inconclusive;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Certificates

std::optional<DistalityCertificate> rotation_offset_certificate(const QuadSurd& alpha, const QuadSurd& delta,
                                                                std::size_t max_depth) {
  if (delta.sign() <= 0) return std::nullopt;
  const auto k = offset_separation(alpha, delta, max_depth);
  if (!k) return std::nullopt;
  DistalityCertificate c;
  c.kind = DistalityCertificate::Kind::RotationOffset;
  c.exponent = *k;
  c.offset_exponent = *k;
  c.delta = delta;
  return c;
}

DistalityCertificate certified_b_distality(const Family& family, const AlphaCode& s, const AlphaCode& t,
                                           std::uint64_t p, std::uint64_t q) {
  if (s == t) throw ContractViolation("certified_b_distality requires distinct codes");
  const QuadSurd& beta = family.beta();
  const auto point = [&](const AlphaCode& c, std::uint64_t shift_by) {
    return mod1(QuadSurd(family.base_of(c)) + beta * Rational(mpz_class(std::to_string(shift_by))));
  };
  const QuadSurd delta = circle_distance(point(s, p), point(t, q));
  if (delta.sign() == 0) throw std::logic_error("certified_b_distality: zero circle offset between distinct codes");
  auto cert = rotation_offset_certificate(beta, delta);
  if (!cert) throw std::logic_error("certified_b_distality: refinement depth limit reached");
  return *cert;
}

std::optional<DistalityCertificate> language_certificate(const QuadSurd& alpha, const QuadSurd& gamma) {
  const auto k = language_separation(alpha, gamma);
  if (!k) return std::nullopt;
  DistalityCertificate c;
  c.kind = DistalityCertificate::Kind::LanguageSeparation;
  c.exponent = *k;
  c.language_exponent = *k;
  return c;
}

DistalityCertificate x_pair_certificate(const Family& family, const AlphaCode& s, const AlphaCode& t) {
  const DistalityCertificate b_side = certified_b_distality(family, s, t, 0, 0);
  const auto a_side = language_separation(family.alpha_of(s), family.alpha_of(t));
  if (!a_side) throw std::logic_error("x_pair_certificate: alpha languages not separated within the length limit");
  DistalityCertificate c;
  c.kind = DistalityCertificate::Kind::DiamondPair;
  c.offset_exponent = b_side.exponent;
  c.language_exponent = *a_side;
  c.exponent = b_side.exponent + *a_side;
  c.delta = b_side.delta;
  const std::uint64_t k0 = std::max(b_side.exponent, *a_side) + 1;
  c.valid_from = k0 * (k0 - 1);
  return c;
}

// ---------------------------------------------------------------------------
// Scrambled scans

ScanPoint scan_point_x(const Family& family, const AlphaCode& s) {
  return {"x:" + s.str(), family.x_point(s).x.stream(), OriginX{s}};
}
ScanPoint scan_point_a(const Family& family, const AlphaCode& s) {
  return {"a:" + s.str(), family.a_stream(s), OriginA{s}};
}
ScanPoint scan_point_b(const Family& family, const AlphaCode& s) {
  return {"b:" + s.str(), family.b_stream(s), OriginB{s}};
}

Certifier family_certifier(const Family& family) {
  return [&family](const ScanPoint& p, const ScanPoint& q) -> std::optional<DistalityCertificate> {
    return std::visit(
        [&](const auto& u, const auto& v) -> std::optional<DistalityCertificate> {
          using U = std::decay_t<decltype(u)>;
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<U, OriginX> && std::is_same_v<V, OriginX>) {
            if (u.code == v.code) return std::nullopt;
            return x_pair_certificate(family, u.code, v.code);
          } else if constexpr (std::is_same_v<U, OriginB> && std::is_same_v<V, OriginB>) {
            if (u.code == v.code) return std::nullopt;
            return certified_b_distality(family, u.code, v.code, 0, 0);
          } else if constexpr (std::is_same_v<U, OriginA> && std::is_same_v<V, OriginA>) {
            if (u.code == v.code) return std::nullopt;
            return language_certificate(family.alpha_of(u.code), family.alpha_of(v.code));
          } else if constexpr (std::is_same_v<U, OriginA> && std::is_same_v<V, OriginB>) {
            return language_certificate(family.alpha_of(u.code), family.beta());
          } else if constexpr (std::is_same_v<U, OriginB> && std::is_same_v<V, OriginA>) {
            return language_certificate(family.alpha_of(v.code), family.beta());
          } else {
            return std::nullopt;
          }
        },
        p.origin, q.origin);
  };
}

const PairRecord& ScrambleReport::pair(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  for (const auto& r : pairs) {
    if (r.i == i && r.j == j) return r;
  }
  throw ContractViolation("ScrambleReport::pair: no such pair");
}

namespace {

void bron_kerbosch(std::uint64_t r, std::uint64_t p, std::uint64_t x, const std::vector<std::uint64_t>& nbr,
                   std::uint64_t& best) {
  if (p == 0 && x == 0) {
    if (std::popcount(r) > std::popcount(best)) best = r;
    return;
  }
  if (std::popcount(r) + std::popcount(p) <= std::popcount(best)) return;
  const int pivot = std::countr_zero(p | x);
  std::uint64_t candidates = p & ~nbr[pivot];
  while (candidates) {
    const int v = std::countr_zero(candidates);
    const std::uint64_t bit = std::uint64_t{1} << v;
    bron_kerbosch(r | bit, p & nbr[v], x & nbr[v], nbr, best);
    p &= ~bit;
    x |= bit;
    candidates &= ~bit;
  }
}

} // namespace

std::vector<std::size_t> max_clique(const std::vector<std::vector<bool>>& adjacency) {
  const std::size_t n = adjacency.size();
  if (n > 32) throw ContractViolation("max_clique supports at most 32 vertices");
  std::vector<std::uint64_t> nbr(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && adjacency[i][j]) nbr[i] |= std::uint64_t{1} << j;
    }
  }
  std::uint64_t best = 0;
  const std::uint64_t all = n == 0 ? 0 : ((std::uint64_t{1} << n) - 1);
  bron_kerbosch(0, all, 0, nbr, best);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (best >> i & 1u) out.push_back(i);
  }
  return out;
}

ScrambleReport scrambled_scan(const std::vector<ScanPoint>& points, const ScanParams& params,
                              const Certifier& certifier) {
  if (points.size() < 2 || points.size() > 32) throw ContractViolation("scrambled_scan needs 2..32 points");
  ScrambleReport report;
  const std::size_t n = points.size();
  std::vector<std::vector<bool>> ly(n, std::vector<bool>(n, false));
  for (const auto& p : points) report.labels.push_back(p.label);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::optional<DistalityCertificate> cert;
      if (certifier) cert = certifier(points[i], points[j]);
      PairRecord rec{i, j, classify_pair(points[i].stream, points[j].stream, params, cert)};
      if (rec.verdict.verdict == Verdict::LYCandidate) ly[i][j] = ly[j][i] = true;
      report.pairs.push_back(std::move(rec));
    }
  }
  const auto clique = max_clique(ly);
  if (clique.size() >= 2) {
    report.max_ly_clique = clique.size();
    report.clique_witness = clique;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Omega-scrambled surrogate

bool OmegaRow::pass() const {
  return !insufficient_horizon && diff_st >= 1 && diff_ts >= 1 && z_missing == 0 && aperiodic_s && aperiodic_t;
}

bool OmegaScrambleReport::pass() const {
  bool any = false;
  for (const auto& r : rows) {
    if (r.insufficient_horizon) continue;
    any = true;
    if (!r.pass()) return false;
  }
  return any;
}

bool not_eventually_periodic_language(const FactorSet& set, std::size_t max_period) {
  if (set.size() == 0) return false;
  if (set.size() > max_period) return true;
  const std::size_t n = set.length();
  for (std::size_t p = 1; p <= max_period; ++p) {
    if (set.size() > p) continue;
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << p); ++u) {
      std::vector<std::uint64_t> windows;
      for (std::size_t start = 0; start < p; ++start) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < n; ++i) key |= ((u >> ((start + i) % p)) & 1u) << i;
        windows.push_back(key);
      }
      if (set.subset_of(FactorSet(n, std::move(windows)))) return false;
    }
  }
  return true;
}

OmegaProfile omega_profile(const Family& family, const AlphaCode& s, std::size_t n_min, std::size_t n_max,
                           const RecurrenceWindow& window) {
  if (n_min == 0 || n_min > n_max) throw ContractViolation("omega_profile: need 1 <= n_min <= n_max");
  OmegaProfile prof{s, window, n_min, {}};
  const SymbolStream& x = family.x_point(s).x.stream();
  for (std::size_t n = n_min; n <= n_max; ++n) {
    // factor lengths beyond horizon/100 are not trusted at this horizon
    if (window.tail_start == 0 || window.tail_start + n > window.horizon || n > window.horizon / 100) {
      prof.recurrent.emplace_back(std::nullopt);
    } else {
      prof.recurrent.emplace_back(recurrent_factors(x, n, window));
    }
  }
  return prof;
}

namespace {
FactorSet language_set(const QuadSurd& angle, std::size_t n) {
  std::vector<std::uint64_t> keys;
  for (const Word& w : rotation_language(angle, n)) keys.push_back(w.key());
  return FactorSet(n, std::move(keys));
}
} // namespace

OmegaScrambleReport compare_omega(const Family& family, const OmegaProfile& s, const OmegaProfile& t) {
  if (s.code == t.code) throw ContractViolation("omega check requires distinct codes");
  if (s.n_min != t.n_min || s.recurrent.size() != t.recurrent.size()) {
    throw ContractViolation("omega profiles cover different length ranges");
  }
  OmegaScrambleReport report{s.code, t.code, s.window, {}};
  for (std::size_t idx = 0; idx < s.recurrent.size(); ++idx) {
    OmegaRow row;
    row.n = s.n_min + idx;
    if (!s.recurrent[idx] || !t.recurrent[idx]) {
      row.insufficient_horizon = true;
      report.rows.push_back(row);
      continue;
    }
    const FactorSet& rs = *s.recurrent[idx];
    const FactorSet& rt = *t.recurrent[idx];
    const FactorSet both = rs.set_intersection(rt);
    const FactorSet z = language_set(family.beta(), row.n);
    row.diff_st = rs.set_difference(rt).size();
    row.diff_ts = rt.set_difference(rs).size();
    row.intersection = both.size();
    row.z_words = z.size();
    row.z_missing = z.set_difference(both).size();
    row.aperiodic_s = not_eventually_periodic_language(rs);
    row.aperiodic_t = not_eventually_periodic_language(rt);
    report.rows.push_back(row);
  }
  return report;
}

OmegaScrambleReport omega_scrambled_check(const Family& family, const AlphaCode& s, const AlphaCode& t,
                                          std::size_t n_min, std::size_t n_max, const RecurrenceWindow& window) {
  if (s == t) throw ContractViolation("omega check requires distinct codes");
  return compare_omega(family, omega_profile(family, s, n_min, n_max, window),
                       omega_profile(family, t, n_min, n_max, window));
}

// ---------------------------------------------------------------------------
// Sturmian remark, limit coherence

SturmianReport sturmian_no_LY_check(const QuadSurd& alpha, std::size_t max_shift, const ScanParams& params) {
  SturmianReport report;
  report.alpha = alpha;
  report.params = params;
  const SymbolStream a = sturmian_stream(alpha);
  // One certificate per shift difference: the offset depends on j - i only.
  std::vector<std::optional<DistalityCertificate>> by_gap(max_shift + 1);
  for (std::size_t gap = 1; gap <= max_shift; ++gap) {
    const QuadSurd delta = circle_distance(mod1(alpha * Rational(static_cast<long>(gap))), mod1(QuadSurd(0)));
    by_gap[gap] = rotation_offset_certificate(alpha, delta);
  }
  for (std::size_t i = 0; i <= max_shift; ++i) {
    for (std::size_t j = i + 1; j <= max_shift; ++j) {
      SturmianPair pair{i, j, classify_pair(a.shifted(i), a.shifted(j), params, by_gap[j - i])};
      if (pair.verdict.verdict == Verdict::LYCandidate) ++report.ly_candidates;
      if (pair.verdict.verdict == Verdict::DistalCandidate && pair.verdict.certificate) ++report.certified_distal;
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

std::vector<AlphaCode> nested_codes(std::size_t count) {
  std::vector<AlphaCode> out;
  for (std::size_t k = 1; k <= count; ++k) out.emplace_back(std::string(k - 1, '0') + "1");
  return out;
}

namespace {
std::size_t growing_lcp(const SymbolStream& x, const SymbolStream& y, std::size_t horizon) {
  for (std::size_t cap = std::min<std::size_t>(1024, horizon);; cap = std::min(2 * cap, horizon)) {
    const std::size_t l = lcp(x, y, cap);
    if (l < cap || cap == horizon) return l;
  }
}
} // namespace

SclosedReport sclosed_limit_check(const Family& family, const std::vector<AlphaCode>& codes,
                                  const AlphaCode& limit, std::size_t horizon) {
  SclosedReport report;
  if (codes.size() < 3) return report;
  const QuadSurd target = family.alpha_of(limit);
  std::optional<QuadSurd> previous;
  report.applicable = true;
  for (const auto& c : codes) {
    QuadSurd gap = family.alpha_of(c) - target;
    if (gap.sign() < 0) gap = -gap;
    if (previous && quad_compare(gap, *previous) > 0) report.applicable = false;
    previous = gap;
  }
  if (!report.applicable) return report;
  const SymbolStream lim = family.a_stream(limit);
  for (const auto& c : codes) report.lcps.push_back(growing_lcp(family.a_stream(c), lim, horizon));
  report.strictly_increasing = true;
  report.nondecreasing = true;
  for (std::size_t k = 1; k < report.lcps.size(); ++k) {
    const std::size_t prev = report.lcps[k - 1];
    const std::size_t cur = report.lcps[k];
    if (cur < prev) report.nondecreasing = false;
    if (!(cur > prev || (cur == horizon && prev == horizon))) report.strictly_increasing = false;
  }
  return report;
}

} // namespace dendro
