// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance            all criteria
//   acceptance 3 7        selected ones
// Exit status 1 if any selected criterion fails.
#include "dendro/chaoscan.hpp"
#include "dendro/dendrite.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <unistd.h>

using namespace dendro;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const Family& family() {
  static const Family f;
  return f;
}

oracle::Surd to_oracle(const QuadSurd& x) { return {x.rational_part(), x.root_coeff(), x.radicand()}; }

std::size_t mismatches(const Word& w, const std::string& ref) {
  std::size_t bad = ref.size() == w.size() ? 0 : 1;
  for (std::size_t i = 0; i < std::min(ref.size(), w.size()); ++i) bad += (w[i] != ref[i] - '0');
  return bad;
}

Outcome c1_exactness() {
  const std::size_t n = 10'000;
  std::size_t bad = 0;
  for (const auto& s : default_codes()) {
    const auto alpha = to_oracle(family().alpha_of(s));
    const oracle::Surd beta = to_oracle(family().beta());
    bad += mismatches(sturmian_A(family().alpha_of(s), n), oracle::itinerary(alpha, alpha, 1, n));
    bad += mismatches(family().a_stream(s).prefix(n), oracle::itinerary({Rational(1, 8), 0, alpha.d}, alpha, 1, n));
    bad += mismatches(family().b_stream(s).prefix(n),
                      oracle::itinerary({family().base_of(s), 0, beta.d}, beta, 0, n));
  }
  std::ostringstream d;
  d << "24 streams x " << n << " symbols, mismatches=" << bad << ", oracle precision up to "
    << oracle::max_precision_used() << " bits";
  return {bad == 0, d.str()};
}

Outcome c2_diamond_layout() {
  const std::string prefix = diamond(SymbolStream::constant(0), SymbolStream::constant(1)).prefix(12).str();
  // direct construction of the layout, block by block
  std::uint64_t i = 0;
  std::size_t bad = 0;
  const std::uint64_t limit = 100'000;
  const XPoint& p = family().x_point(AlphaCode("010"));
  for (std::uint64_t k = 1; i < limit; ++k) {
    for (int half = 0; half < 2; ++half) {
      for (std::uint64_t j = 1; j <= k && i < limit; ++j) {
        ++i;
        const DiamondPosition expect{half == 0 ? DiamondSource::A : DiamondSource::B, k, j};
        if (position_decode(i) != expect) ++bad;
        const int src = half == 0 ? p.a.at(j) : p.b.at(j);
        if (p.x.at(i) != src) ++bad;
      }
    }
  }
  std::ostringstream d;
  d << "prefix " << prefix << ", positions checked=" << i << ", mismatches=" << bad;
  return {prefix == "010011000111" && bad == 0, d.str()};
}

Outcome c3_lower_inclusion() {
  std::size_t checked = 0;
  std::size_t misses = 0;
  bool insufficient = false;
  for (const auto& s : default_codes()) {
    const XPoint& p = family().x_point(s);
    const auto r = omega_lower_check(p.a, p.b, 20, 10'000, {1'000'000, 10'001, 5});
    checked += r.checked;
    misses += r.violations.size();
    insufficient = insufficient || r.insufficient_horizon;
  }
  std::ostringstream d;
  d << "n=20, source horizon 1e4, >=5 occurrences past 1e4 within 1e6: words=" << checked << " misses=" << misses;
  return {misses == 0 && !insufficient && checked > 0, d.str()};
}

Outcome c4_upper_inclusion() {
  std::size_t checked = 0;
  std::size_t none = 0;
  for (const auto& s : default_codes()) {
    const XPoint& p = family().x_point(s);
    const auto r = closure_form_check(p.x, p.a, p.b, 20, 100'000, RecurrenceWindow::defaults(1'000'000));
    checked += r.checked;
    none += r.violations.size();
  }
  std::ostringstream d;
  d << "n=20, recurrent factors of x_s over 1e6: words=" << checked << " unclassified=" << none;
  return {none == 0 && checked > 0, d.str()};
}

Outcome c5_ly_pairs() {
  const ScanParams params{1'000'000, 30};
  std::size_t ly = 0;
  std::size_t seed_ok = 0;
  std::ostringstream times;
  for (const auto& s : default_codes()) {
    const SymbolStream x = family().x_point(s).x.stream();
    const SymbolStream a = family().a_stream(s);
    const PairVerdict v = classify_pair(x, a, params);
    if (v.verdict == Verdict::LYCandidate) ++ly;
    times << ' ' << (v.proximal ? std::to_string(v.proximal->time) : "-");
    // block 30 starts at 870 and repeats a_1..a_30
    if (lcp(shift(x, 870), a, 30) >= 30) ++seed_ok;
  }
  std::ostringstream d;
  d << "(N,m)=(1e6,30): LY-candidates " << ly << "/8, seed lcp(sigma^870 x_s, a_s)>=30 for " << seed_ok
    << "/8, first proximal n:" << times.str();
  return {ly == 8 && seed_ok == 8, d.str()};
}

Outcome c6_no_triple() {
  const ScanParams params{1'000'000, 30};
  const Certifier cert = family_certifier(family());
  std::size_t good_triples = 0;
  bool violated = false;
  for (const auto& s : default_codes()) {
    const auto r = scrambled_scan({scan_point_x(family(), s), scan_point_a(family(), s), scan_point_b(family(), s)},
                                  params, cert);
    if (r.max_ly_clique == 2) ++good_triples;
    for (const auto& p : r.pairs) violated = violated || p.verdict.certificate_violated;
  }
  std::vector<ScanPoint> xs;
  for (const auto& s : default_codes()) xs.push_back(scan_point_x(family(), s));
  const auto r = scrambled_scan(xs, params, cert);
  std::size_t ly_edges = 0;
  std::size_t certified = 0;
  std::size_t max_k = 0;
  for (const auto& p : r.pairs) {
    if (p.verdict.verdict == Verdict::LYCandidate) ++ly_edges;
    if (p.verdict.certificate && !p.verdict.certificate_violated) {
      ++certified;
      max_k = std::max(max_k, p.verdict.certificate->exponent);
    }
    violated = violated || p.verdict.certificate_violated;
  }
  std::ostringstream d;
  d << "{x_s,a_s,b_s} clique 2 for " << good_triples << "/8; x-points: LY edges=" << ly_edges
    << ", certified non-edges " << certified << "/" << r.pairs.size() << " (K<=" << max_k
    << "), violations=" << (violated ? "yes" : "none");
  return {good_triples == 8 && ly_edges == 0 && certified == r.pairs.size() && !violated, d.str()};
}

Outcome c7_omega() {
  const auto window = RecurrenceWindow::defaults(1'000'000);
  std::vector<OmegaProfile> profiles;
  for (const auto& s : default_codes()) profiles.push_back(omega_profile(family(), s, 5, 20, window));
  std::size_t rows = 0;
  std::size_t failed = 0;
  std::size_t insufficient = 0;
  std::size_t small_n = 0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      const auto r = compare_omega(family(), profiles[i], profiles[j]);
      for (const auto& row : r.rows) {
        ++rows;
        if (row.insufficient_horizon) ++insufficient;
        if (!row.pass()) {
          ++failed;
          if (row.n < 12) ++small_n;
        }
      }
    }
  }
  std::ostringstream d;
  d << "28 pairs x n=5..20: rows=" << rows << " failed=" << failed << " (n<12: " << small_n
    << "), insufficient horizon=" << insufficient;
  return {failed == 0 && rows == 28 * 16, d.str()};
}

Outcome c8_sturmian() {
  const auto r = sturmian_no_LY_check(QuadSurd::root(2, Rational(1, 4)), 50, {100'000, 20});
  std::size_t max_k = 0;
  for (const auto& p : r.pairs) {
    if (p.verdict.certificate) max_k = std::max(max_k, p.verdict.certificate->exponent);
  }
  std::ostringstream d;
  d << "alpha=sqrt2/4, shifts 0..50: pairs=" << r.pairs.size() << " certified distal=" << r.certified_distal
    << " LY=" << r.ly_candidates << " (K<=" << max_k << ")";
  return {r.pass(), d.str()};
}

Outcome c9_sclosed() {
  const auto r = sclosed_limit_check(family(), nested_codes(10), AlphaCode("0"), 1'000'000);
  std::ostringstream d;
  d << "lcp(a_{0^{k-1}1}, a_0), k=1..10:";
  for (auto l : r.lcps) d << ' ' << l;
  d << (r.strictly_increasing ? " (strictly increasing)" : r.nondecreasing ? " (nondecreasing, ties)" : "");
  return {r.pass(), d.str()};
}

Outcome c10_dendrite() {
  const DendriteModel m = DendriteModel::from_family(family(), default_codes(), 100'000);
  std::mt19937_64 rng(20240611);
  // random accepted address; the model language is extendable, so one of the two children is always accepted
  const auto walk = [&](std::size_t len) {
    Word w;
    while (w.size() < len) {
      const int c = static_cast<int>(rng() % 2);
      Word e = w;
      e.push_back(c);
      if (!m.contains_arc(e)) {
        e = w;
        e.push_back(1 - c);
      }
      w = e;
    }
    return w;
  };
  std::size_t bad_steps = 0;
  for (int i = 0; i < 1000; ++i) {
    const Word w = walk(1 + rng() % 20);
    DendritePoint p = make_interior(w, Rational(static_cast<long>(1 + rng() % 999), 1000));
    const auto steps = steps_to_root(p);
    if (!steps || *steps != w.size()) ++bad_steps;
    for (std::size_t k = 0; k < w.size(); ++k) p = apply_f(m, p);
    if (!std::holds_alternative<Root>(p)) ++bad_steps;
  }
  std::size_t bad_shift = 0;
  std::size_t bad_ratio = 0;
  const auto codes = default_codes();
  for (int i = 0; i < 100; ++i) {
    const SymbolStream x = shift(family().x_point(codes[rng() % 8]).x.stream(), rng() % 10'000);
    const DendritePoint fx = apply_f(m, End{x});
    if (std::get<End>(fx).x.prefix(1000) != shift(x, 1).prefix(1000)) ++bad_shift;
    const SymbolStream y = shift(family().x_point(codes[rng() % 8]).x.stream(), rng() % 10'000);
    const auto pd = path_dist(End{x}, End{y}, 4096);
    const auto rho = dist(x, y, 4096);
    mpz_class den = 1;
    den <<= rho.exponent;
    if (pd.upper_bound || pd.value != 4 * Rational(mpz_class(1), den)) ++bad_ratio;
  }
  std::size_t bad_lip = 0;
  for (int i = 0; i < 1000; ++i) {
    const Word w = walk(2 + rng() % 19);
    const DendritePoint u = make_interior(w, Rational(static_cast<long>(rng() % 1001), 1000));
    const DendritePoint v = make_interior(w, Rational(static_cast<long>(rng() % 1001), 1000));
    if (path_dist(apply_f(m, u), apply_f(m, v)).value != 2 * path_dist(u, v).value) ++bad_lip;
  }
  std::ostringstream d;
  d << "steps_to_root mismatches " << bad_steps << "/1000, endpoint shift mismatches " << bad_shift
    << "/100 (1e3 symbols), Lipschitz-2 failures " << bad_lip << "/1000, ratio-4 failures " << bad_ratio << "/100";
  return {bad_steps + bad_shift + bad_lip + bad_ratio == 0, d.str()};
}

Outcome c11_complexity() {
  std::size_t violations = 0;
  std::size_t max_p50 = 0;
  for (const auto& s : default_codes()) {
    const SymbolStream a = family().a_stream(s);
    for (std::size_t n = 1; n <= 50; ++n) {
      const std::size_t p = factors(a, n, 1'000'000).size();
      if (p > 2 * n) ++violations;
      if (n == 50) max_p50 = std::max(max_p50, p);
    }
  }
  std::ostringstream d;
  d << "p(n) <= 2n for n=1..50 over 1e6 symbols: violations=" << violations << ", max p(50)=" << max_p50;
  return {violations == 0, d.str()};
}

bool same_tree(const fs::path& x, const fs::path& y, std::size_t& files) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(x)) names.push_back(e.path().filename().string());
  std::size_t count_y = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(y)) ++count_y;
  if (names.size() != count_y) return false;
  for (const auto& n : names) {
    std::ifstream a(x / n, std::ios::binary);
    std::ifstream b(y / n, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(a)), {});
    const std::string sb((std::istreambuf_iterator<char>(b)), {});
    if (!b || sa != sb) return false;
    ++files;
  }
  return true;
}

Outcome c12_determinism() {
  const fs::path base = fs::temp_directory_path() / ("dendro_determinism_" + std::to_string(::getpid()));
  fs::remove_all(base);
  for (const char* run : {"run1", "run2"}) {
    const std::string cmd =
        std::string("sh ") + DENDRO_SUITE + " " + DENDRO_CLI + " " + (base / run).string();
    if (std::system(cmd.c_str()) != 0) return {false, "suite script failed"};
  }
  std::size_t files = 0;
  const bool same = same_tree(base / "run1", base / "run2", files);
  fs::remove_all(base);
  std::ostringstream d;
  d << "two CLI suite runs, " << files << " output files " << (same ? "byte-identical" : "differ");
  return {same && files > 0, d.str()};
}

const std::vector<std::function<Outcome()>>& criteria() {
  static const std::vector<std::function<Outcome()>> list = {
      c1_exactness, c2_diamond_layout, c3_lower_inclusion, c4_upper_inclusion, c5_ly_pairs,   c6_no_triple,
      c7_omega,     c8_sturmian,       c9_sclosed,         c10_dendrite,       c11_complexity, c12_determinism,
  };
  return list;
}

} // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const long c = std::strtol(argv[i], nullptr, 10);
    if (c < 1 || c > static_cast<long>(criteria().size())) {
      std::cerr << "usage: acceptance [criterion numbers 1..12]\n";
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(c));
  }
  if (selected.empty()) {
    for (std::size_t c = 1; c <= criteria().size(); ++c) selected.push_back(c);
  }
  bool all = true;
  for (std::size_t c : selected) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria()[c - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << c << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << " ["
              << std::fixed << std::setprecision(2) << secs << " s]" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
