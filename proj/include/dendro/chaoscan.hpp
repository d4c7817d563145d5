// Finite-horizon pair classification and scrambled-set scans.
//
// Every verdict is a "-candidate": the scans look at shifts n = 0..N and at
// a resolution m, and the reported parameters make each claim reproducible.
// Distality can be *certified* when both orbits are codings of circle
// rotations by the same angle: the circle offset between the two points is
// then constant in time, so the itineraries disagree within the fixed number
// of symbols given by offset_separation.
#pragma once

#include "dendro/coding.hpp"
#include "dendro/family.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dendro {

struct ScanParams {
  std::uint64_t horizon = 1'000'000; // N
  std::size_t resolution = 30;       // m
  static ScanParams quick() { return {100'000, 20}; }
};

struct ProximalEvidence {
  std::uint64_t time = 0;
  std::size_t lcp = 0;
};

/// Proof that lcp(shift(x, n), shift(y, n)) < exponent for every n >= valid_from,
/// i.e. rho >= 2^{-exponent} along the whole tail of the orbit pair.
struct DistalityCertificate {
  enum class Kind { RotationOffset, LanguageSeparation, DiamondPair };
  Kind kind = Kind::RotationOffset;
  std::size_t exponent = 0; // K
  std::uint64_t valid_from = 0;
  std::optional<QuadSurd> delta; // constant circle offset, when the derivation has one
  std::size_t offset_exponent = 0;   // K from the rotation offset part
  std::size_t language_exponent = 0; // K from the language separation part
};

const char* to_string(DistalityCertificate::Kind k);

enum class Verdict { LYCandidate, AsymptoticCandidate, DistalCandidate, Inconclusive };
const char* to_string(Verdict v);

struct PairVerdict {
  ScanParams params;
  std::optional<ProximalEvidence> proximal;
  std::vector<std::uint64_t> checkpoints;
  /// For each checkpoint c, the first n in [c, N] with lcp <= 2 (if any).
  std::vector<std::optional<std::uint64_t>> nonasymptotic;
  std::optional<DistalityCertificate> certificate;
  /// Largest lcp observed over n in [valid_from, N] when a certificate is attached.
  std::size_t certified_range_max_lcp = 0;
  /// Largest lcp over the whole scan n = 0..N (capped).
  std::size_t max_lcp = 0;
  bool certificate_violated = false;
  Verdict verdict = Verdict::Inconclusive;

  bool nonasymptotic_complete() const;
  std::vector<std::uint64_t> nonasymptotic_times() const;
};

/// Scans n = 0..N; lcp is computed with cap max(m + 1, K).
///
/// Verdict rules, in order: a certificate that holds on the scan makes the
/// pair distal-candidate (a violated one makes it inconclusive); otherwise
/// proximal evidence plus non-asymptotic evidence at every checkpoint gives
/// LY-candidate; proximal evidence with lcp >= m on the whole tail after the
/// first failing checkpoint gives asymptotic-candidate; no proximal evidence
/// gives distal-candidate; anything else is inconclusive.
PairVerdict classify_pair(const SymbolStream& x, const SymbolStream& y, const ScanParams& params,
                          const std::optional<DistalityCertificate>& certificate = std::nullopt);

/// Geometric checkpoint grid m, 2m, 4m, ... <= N.
std::vector<std::uint64_t> checkpoint_grid(const ScanParams& params);

/// lcp(shift(x, n), shift(y, n), cap) for n = 0..N.
std::vector<std::size_t> lcp_series(const SymbolStream& x, const SymbolStream& y, std::uint64_t horizon,
                                    std::size_t cap);

/// Certificate for the pair (shift(b_s, p), shift(b_t, q)).
DistalityCertificate certified_b_distality(const Family& family, const AlphaCode& s, const AlphaCode& t,
                                           std::uint64_t p, std::uint64_t q);

/// Certificate for (x_s, x_t), s != t. Combines the b-side offset bound K_b with
/// the language separation K_a of the two alpha-rotations: every window that
/// starts in block k >= max(K_a, K_b) + 1 agrees on fewer than K_a + K_b symbols.
DistalityCertificate x_pair_certificate(const Family& family, const AlphaCode& s, const AlphaCode& t);

/// Certificate for codings of two different rotations (disjoint subshifts).
std::optional<DistalityCertificate> language_certificate(const QuadSurd& alpha, const QuadSurd& gamma);

/// Certificate for two codings of the same rotation whose orbit points differ
/// by the constant circle offset delta.
std::optional<DistalityCertificate> rotation_offset_certificate(const QuadSurd& alpha, const QuadSurd& delta,
                                                                std::size_t max_depth = 1 << 14);

// ---------------------------------------------------------------------------
// Scrambled-set scans

struct OriginX { AlphaCode code; };
struct OriginA { AlphaCode code; };
struct OriginB { AlphaCode code; };
struct OriginGeneric {};
using PointOrigin = std::variant<OriginGeneric, OriginX, OriginA, OriginB>;

struct ScanPoint {
  std::string label;
  SymbolStream stream;
  PointOrigin origin;
};

ScanPoint scan_point_x(const Family& family, const AlphaCode& s);
ScanPoint scan_point_a(const Family& family, const AlphaCode& s);
ScanPoint scan_point_b(const Family& family, const AlphaCode& s);

using Certifier = std::function<std::optional<DistalityCertificate>(const ScanPoint&, const ScanPoint&)>;

/// Certificates for pairs of family points: (x_s, x_t), (b_s, b_t), (a_s, a_t),
/// (a_s, b_t). Other pairs get none.
Certifier family_certifier(const Family& family);

struct PairRecord {
  std::size_t i = 0;
  std::size_t j = 0;
  PairVerdict verdict;
};

struct ScrambleReport {
  std::vector<std::string> labels;
  std::vector<PairRecord> pairs; // (i, j) with i < j, lexicographic
  /// Size of the largest set whose pairs are all LY-candidates; 0 when no pair is.
  std::size_t max_ly_clique = 0;
  std::vector<std::size_t> clique_witness;
  const PairRecord& pair(std::size_t i, std::size_t j) const;
};

ScrambleReport scrambled_scan(const std::vector<ScanPoint>& points, const ScanParams& params,
                              const Certifier& certifier = {});

/// Exact maximum clique in the graph given by an adjacency matrix (n <= 32).
std::vector<std::size_t> max_clique(const std::vector<std::vector<bool>>& adjacency);

// ---------------------------------------------------------------------------
// Omega-scrambled surrogate

struct OmegaRow {
  std::size_t n = 0;
  bool insufficient_horizon = false;
  std::size_t diff_st = 0;       // |R_s \ R_t|
  std::size_t diff_ts = 0;       // |R_t \ R_s|
  std::size_t intersection = 0;  // |R_s n R_t|
  std::size_t z_words = 0;       // |L_n(Z)|
  std::size_t z_missing = 0;     // words of L_n(Z) outside R_s n R_t
  bool aperiodic_s = false;
  bool aperiodic_t = false;
  bool pass() const;
};

struct OmegaScrambleReport {
  AlphaCode s;
  AlphaCode t;
  RecurrenceWindow window;
  std::vector<OmegaRow> rows;
  bool pass() const;
};

/// Per-code recurrent factor sets R_n(x_s) for n in [n_min, n_max].
struct OmegaProfile {
  AlphaCode code;
  RecurrenceWindow window;
  std::size_t n_min = 0;
  std::vector<std::optional<FactorSet>> recurrent; // nullopt: insufficient horizon
};

OmegaProfile omega_profile(const Family& family, const AlphaCode& s, std::size_t n_min, std::size_t n_max,
                           const RecurrenceWindow& window);
OmegaScrambleReport compare_omega(const Family& family, const OmegaProfile& s, const OmegaProfile& t);
OmegaScrambleReport omega_scrambled_check(const Family& family, const AlphaCode& s, const AlphaCode& t,
                                          std::size_t n_min, std::size_t n_max, const RecurrenceWindow& window);

/// True unless the set is contained in the factor set of u^infinity for some
/// word u with |u| <= max_period.
bool not_eventually_periodic_language(const FactorSet& set, std::size_t max_period = 12);

// ---------------------------------------------------------------------------
// Sturmian remark and limit coherence

struct SturmianPair {
  std::size_t i = 0;
  std::size_t j = 0;
  PairVerdict verdict;
};

struct SturmianReport {
  QuadSurd alpha;
  ScanParams params;
  std::vector<SturmianPair> pairs;
  std::size_t ly_candidates = 0;
  std::size_t certified_distal = 0;
  bool pass() const { return ly_candidates == 0 && certified_distal == pairs.size(); }
};

SturmianReport sturmian_no_LY_check(const QuadSurd& alpha, std::size_t max_shift, const ScanParams& params);

struct SclosedReport {
  bool applicable = false;
  std::vector<std::size_t> lcps;   // lcp(a_{s_k}, a_{limit}) capped at horizon
  bool strictly_increasing = false; // saturated neighbours count as increasing
  bool nondecreasing = false;
  bool pass() const { return applicable && strictly_increasing; }
};

/// s_k = 0^{k-1} 1 for k = 1..count.
std::vector<AlphaCode> nested_codes(std::size_t count);

SclosedReport sclosed_limit_check(const Family& family, const std::vector<AlphaCode>& codes,
                                  const AlphaCode& limit, std::size_t horizon);

} // namespace dendro
