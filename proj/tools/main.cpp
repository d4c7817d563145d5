// dendro: command line front end.
//
// Exit codes: 0 ok, 2 usage / input errors, 3 verification failures.

#include "dendro/chaoscan.hpp"
#include "dendro/dendrite.hpp"
#include "dendro/streamspec.hpp"
#include "report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

using namespace dendro;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kVerificationFailed = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::optional<std::uint64_t> horizon;
  std::optional<std::size_t> resolution;
  std::optional<std::size_t> factor_len;
  std::string codes_file;
  std::string codes_inline;
  std::string format;
  std::string out;
  bool quick = false;
  bool include_limits = false;
};

std::uint64_t horizon_or(const Globals& g, std::uint64_t normal, std::uint64_t quick) {
  const std::uint64_t h = g.horizon.value_or(g.quick ? quick : normal);
  if (h == 0) throw UsageError("--horizon must be positive");
  return h;
}

ScanParams scan_params(const Globals& g) {
  ScanParams p = g.quick ? ScanParams::quick() : ScanParams{};
  if (g.horizon) p.horizon = *g.horizon;
  if (g.resolution) p.resolution = *g.resolution;
  if (p.horizon == 0 || p.resolution == 0) throw UsageError("--horizon and --resolution must be positive");
  return p;
}

std::string format_or(const Globals& g, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = g.format.empty() ? fallback : g.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw UsageError("format '" + f + "' not supported by this command");
}

std::vector<AlphaCode> load_codes(const Globals& g) {
  std::vector<AlphaCode> codes;
  try {
    if (!g.codes_file.empty()) {
      std::ifstream in(g.codes_file);
      if (!in) throw UsageError("cannot read codes file '" + g.codes_file + "'");
      std::stringstream text;
      text << in.rdbuf();
      codes = parse_codes(text.str());
    } else if (!g.codes_inline.empty()) {
      codes = parse_codes_inline(g.codes_inline);
    } else {
      codes = default_codes();
    }
  } catch (const ContractViolation& e) {
    throw UsageError(std::string("bad codes: ") + e.what());
  }
  return codes;
}

std::vector<AlphaCode> distinct_codes(const Globals& g, std::size_t at_least) {
  auto codes = load_codes(g);
  std::set<AlphaCode> seen;
  for (const auto& c : codes) {
    if (!seen.insert(c).second) throw UsageError("duplicate code '" + c.str() + "'");
  }
  if (codes.size() < at_least) throw UsageError("need at least " + std::to_string(at_least) + " codes");
  return codes;
}

AlphaCode code_arg(const std::string& text) {
  try {
    return AlphaCode(text);
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
}

// Family points keep their origin so pairs of them can be certified.
ScanPoint scan_point_from_spec(const std::string& spec, const Family& family) {
  const auto code_of = [&](std::size_t skip) -> std::optional<AlphaCode> {
    try {
      return AlphaCode(spec.substr(skip));
    } catch (const ContractViolation&) {
      return std::nullopt;
    }
  };
  if (spec.rfind("x:", 0) == 0) {
    if (auto c = code_of(2)) return scan_point_x(family, *c);
  } else if (spec.rfind("a:", 0) == 0) {
    if (auto c = code_of(2)) return scan_point_a(family, *c);
  } else if (spec.rfind("b:", 0) == 0) {
    if (auto c = code_of(2)) return scan_point_b(family, *c);
  }
  return {spec, parse_stream(spec, family), OriginGeneric{}};
}

// ---------------------------------------------------------------------------

int cmd_gen(const Globals& g, const Family& family, const std::string& spec, std::size_t n, std::ostream& out) {
  format_or(g, "text", {"text"});
  const SymbolStream x = parse_stream(spec, family);
  if (n > 0) out << x.prefix(n).str() << '\n';
  return kOk;
}

int cmd_diamond(const Globals& g, const Family& family, const std::string& a, const std::string& b, std::size_t n,
                std::ostream& out) {
  const std::string fmt = format_or(g, "text", {"text", "csv"});
  const DiamondStream x = diamond(parse_stream(a, family), parse_stream(b, family));
  if (fmt == "text") {
    if (n > 0) out << x.prefix(n).str() << '\n';
    return kOk;
  }
  out << "i,source,block,offset,symbol\n";
  for (std::size_t i = 1; i <= n; ++i) {
    const DiamondPosition p = position_decode(i);
    out << i << ',' << (p.source == DiamondSource::A ? 'a' : 'b') << ',' << p.block << ',' << p.offset << ','
        << x.at(i) << '\n';
  }
  return kOk;
}

int cmd_pair(const Globals& g, const Family& family, const std::string& xs, const std::string& ys, std::ostream& out) {
  const std::string fmt = format_or(g, "text", {"text", "jsonl", "csv"});
  const ScanParams params = scan_params(g);
  const ScanPoint x = scan_point_from_spec(xs, family);
  const ScanPoint y = scan_point_from_spec(ys, family);
  if (fmt == "csv") {
    out << report::lcp_csv(x.stream, y.stream, params.horizon, params.resolution + 1);
    return kOk;
  }
  const PairVerdict v = classify_pair(x.stream, y.stream, params, family_certifier(family)(x, y));
  if (fmt == "jsonl") {
    out << report::pair_record(xs, ys, v).dump() << '\n';
    return kOk;
  }
  out << "pair " << xs << " " << ys << "\n";
  out << "N " << params.horizon << " m " << params.resolution << "\n";
  out << "verdict " << to_string(v.verdict) << "\n";
  if (v.proximal) out << "proximal n=" << v.proximal->time << " lcp=" << v.proximal->lcp << "\n";
  for (std::size_t i = 0; i < v.checkpoints.size(); ++i) {
    out << "checkpoint " << v.checkpoints[i] << " nonasymptotic ";
    if (v.nonasymptotic[i]) {
      out << "n=" << *v.nonasymptotic[i] << "\n";
    } else {
      out << "none\n";
    }
  }
  if (v.certificate) {
    out << "certificate " << to_string(v.certificate->kind) << " K=" << v.certificate->exponent
        << " valid_from=" << v.certificate->valid_from << " observed_max_lcp=" << v.certified_range_max_lcp
        << (v.certificate_violated ? " VIOLATED" : "") << "\n";
  }
  return v.certificate_violated ? kVerificationFailed : kOk;
}

int cmd_scan(const Globals& g, const Family& family, std::ostream& out) {
  format_or(g, "jsonl", {"jsonl"});
  const ScanParams params = scan_params(g);
  const auto codes = distinct_codes(g, 2);
  std::vector<ScanPoint> points;
  for (const auto& s : codes) points.push_back(scan_point_x(family, s));
  if (g.include_limits) {
    for (const auto& s : codes) points.push_back(scan_point_a(family, s));
    for (const auto& s : codes) points.push_back(scan_point_b(family, s));
  }
  if (points.size() > 32) throw UsageError("scan supports at most 32 points");
  const ScrambleReport r = scrambled_scan(points, params, family_certifier(family));
  bool violated = false;
  for (const auto& p : r.pairs) {
    out << report::pair_record(r.labels[p.i], r.labels[p.j], p.verdict).dump() << '\n';
    violated = violated || p.verdict.certificate_violated;
  }
  ordered_json summary;
  summary["summary"] = "scan";
  summary["points"] = points.size();
  summary["pairs"] = r.pairs.size();
  summary["N"] = params.horizon;
  summary["m"] = params.resolution;
  summary["max_ly_clique"] = r.max_ly_clique;
  ordered_json witness = ordered_json::array();
  for (auto i : r.clique_witness) witness.push_back(r.labels[i]);
  summary["witness"] = witness;
  summary["certificate_violations"] = violated;
  out << summary.dump() << '\n';
  return (r.max_ly_clique > 2 || violated) ? kVerificationFailed : kOk;
}

int cmd_omega(const Globals& g, const Family& family, const std::string& s, const std::string& t, std::size_t n_min,
              std::optional<std::size_t> tail_start, std::size_t min_count, std::ostream& out) {
  format_or(g, "csv", {"csv"});
  const AlphaCode cs = code_arg(s);
  const AlphaCode ct = code_arg(t);
  if (cs == ct) throw UsageError("omega needs two distinct codes");
  const std::uint64_t horizon = horizon_or(g, 1'000'000, 100'000);
  const std::size_t n_max = g.factor_len.value_or(20);
  if (n_min == 0 || n_min > n_max || n_max > kMaxFactorLength) throw UsageError("need 1 <= n-min <= factor-len <= 64");
  RecurrenceWindow w = RecurrenceWindow::defaults(horizon);
  if (tail_start) w.tail_start = *tail_start;
  if (min_count < 2) throw UsageError("--min-count must be >= 2");
  w.min_count = min_count;
  const OmegaScrambleReport r = omega_scrambled_check(family, cs, ct, n_min, n_max, w);
  out << "# omega s=" << s << " t=" << t << " horizon=" << horizon << " tail_start=" << w.tail_start
      << " min_count=" << w.min_count << "\n";
  out << "n,diff_st,diff_ts,intersection,z_words,z_missing,aperiodic_s,aperiodic_t,status\n";
  for (const auto& row : r.rows) {
    if (row.insufficient_horizon) {
      out << row.n << ",,,,,,,,insufficient horizon\n";
      continue;
    }
    out << row.n << ',' << row.diff_st << ',' << row.diff_ts << ',' << row.intersection << ',' << row.z_words << ','
        << row.z_missing << ',' << row.aperiodic_s << ',' << row.aperiodic_t << ',' << (row.pass() ? "pass" : "fail")
        << '\n';
  }
  bool any_insufficient = false;
  for (const auto& row : r.rows) any_insufficient = any_insufficient || row.insufficient_horizon;
  if (any_insufficient) out << "# note: insufficient horizon for some factor lengths (n > horizon/100)\n";
  out << "# summary " << (r.pass() ? "pass" : "fail") << "\n";
  return r.pass() ? kOk : kVerificationFailed;
}

int cmd_sturmian(const Globals& g, const std::string& alpha_text, std::size_t max_shift, std::ostream& out) {
  const std::string fmt = format_or(g, "text", {"text", "jsonl"});
  QuadSurd alpha = parse_surd(alpha_text);
  ScanParams params{horizon_or(g, 100'000, 100'000), g.resolution.value_or(20)};
  if (params.resolution == 0) throw UsageError("--resolution must be positive");
  const SturmianReport r = sturmian_no_LY_check(alpha, max_shift, params);
  const std::string base = "A:" + to_string(alpha);
  if (fmt == "jsonl") {
    for (const auto& p : r.pairs) {
      out << report::pair_record("shift(" + base + "," + std::to_string(p.i) + ")",
                                 "shift(" + base + "," + std::to_string(p.j) + ")", p.verdict)
                 .dump()
          << '\n';
    }
  }
  ordered_json summary;
  summary["summary"] = "sturmian";
  summary["alpha"] = to_string(alpha);
  summary["max_shift"] = max_shift;
  summary["N"] = params.horizon;
  summary["m"] = params.resolution;
  summary["pairs"] = r.pairs.size();
  summary["ly_candidates"] = r.ly_candidates;
  summary["certified_distal"] = r.certified_distal;
  summary["pass"] = r.pass();
  out << summary.dump() << '\n';
  return r.pass() ? kOk : kVerificationFailed;
}

int cmd_sclosed(const Globals& g, const Family& family, std::size_t count, const std::string& limit,
                std::ostream& out) {
  format_or(g, "text", {"text"});
  const std::uint64_t horizon = horizon_or(g, 1'000'000, 100'000);
  std::vector<AlphaCode> codes;
  if (!g.codes_file.empty() || !g.codes_inline.empty()) {
    codes = load_codes(g);
  } else {
    if (count == 0 || count > AlphaCode::kMaxLength) throw UsageError("--count must be in [1, 20]");
    codes = nested_codes(count);
  }
  const AlphaCode lim = code_arg(limit);
  const SclosedReport r = sclosed_limit_check(family, codes, lim, horizon);
  out << "# limit " << lim.str() << " horizon " << horizon << "\n";
  if (!r.applicable) {
    out << "# not applicable: need >= 3 codes whose angles approach the limit monotonically\n";
    return kInputError;
  }
  for (std::size_t k = 0; k < codes.size(); ++k) out << k + 1 << ' ' << codes[k].str() << ' ' << r.lcps[k] << '\n';
  out << "# nondecreasing " << (r.nondecreasing ? "yes" : "no") << "\n";
  out << "# summary " << (r.pass() ? "pass" : "fail") << " (strictly increasing)\n";
  return r.pass() ? kOk : kVerificationFailed;
}

DendriteModel make_model(const Globals& g, const Family& family, const std::string& kind) {
  if (kind == "full") return DendriteModel::full_binary();
  if (kind == "family") return DendriteModel::from_family(family, distinct_codes(g, 1), horizon_or(g, 100'000, 100'000));
  throw UsageError("unknown model '" + kind + "' (full | family)");
}

std::string end_text(const DendritePoint& pt) {
  if (const auto* e = std::get_if<End>(&pt)) return "end:" + e->x.prefix(32).str() + "...";
  return to_string(pt);
}

int cmd_dendrite_iterate(const Globals& g, const Family& family, const std::string& model_kind,
                         const std::string& literal, std::size_t steps, std::ostream& out) {
  format_or(g, "text", {"text"});
  const DendriteModel model = make_model(g, family, model_kind);
  DendritePoint pt = parse_point(literal, [&](std::string_view spec) { return parse_stream(spec, family); });
  if (!model.contains(pt)) {
    std::cerr << "dendro: point not in model: " << literal << "\n";
    return kInputError;
  }
  const auto to_root = steps_to_root(pt);
  const std::size_t n = to_root ? *to_root : steps;
  out << 0 << ' ' << end_text(pt) << '\n';
  for (std::size_t i = 1; i <= n; ++i) {
    pt = apply_f(model, pt);
    out << i << ' ' << end_text(pt) << '\n';
  }
  std::cerr << "steps_to_root: " << (to_root ? std::to_string(*to_root) : std::string("never")) << "\n";
  return kOk;
}

int cmd_dendrite_graph(const Globals& g, const Family& family, const std::string& model_kind, std::size_t depth,
                       std::ostream& out) {
  format_or(g, "dot", {"dot"});
  if (depth > 24) throw UsageError("--depth must be <= 24");
  out << emit_graph(make_model(g, family, model_kind), depth);
  return kOk;
}

int cmd_dendrite_check(const Globals& g, const Family& family, const std::string& model_kind, std::size_t n,
                       std::size_t ext, std::ostream& out) {
  format_or(g, "text", {"text"});
  if (n == 0 || ext == 0) throw UsageError("--n and --ext must be positive");
  const DendriteModel model = make_model(g, family, model_kind);
  const IsolationReport iso = no_isolated_points_check(model, n, ext);
  const InvarianceReport inv = f_invariance_check(model, n + ext);
  out << "# model " << model.label() << "\n";
  out << "isolation n=" << n << " ext=" << ext << " checked=" << iso.checked << " isolated=" << iso.isolated.size()
      << "\n";
  for (const Word& w : iso.isolated) out << "isolated " << w.str() << "\n";
  out << "invariance depth=" << inv.depth << " checked=" << inv.checked << " violations=" << inv.violations.size()
      << "\n";
  for (const Word& w : inv.violations) out << "violation " << w.str() << "\n";
  const bool ok = iso.pass() && inv.pass();
  out << "# summary " << (ok ? "pass" : "fail") << "\n";
  return ok ? kOk : kVerificationFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic dynamics toolkit: rotation codings, diamond interleavings, pair scans, dendrites"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file mirroring the long flags");

  Globals g;
  app.add_option("--horizon", g.horizon, "scan horizon N");
  app.add_option("--resolution", g.resolution, "proximality resolution m");
  app.add_option("--factor-len", g.factor_len, "largest factor length n");
  app.add_option("--codes", g.codes_file, "codes file (one binary code per line)");
  app.add_option("--codes-inline", g.codes_inline, "comma separated codes");
  app.add_option("--format", g.format, "text | jsonl | csv | dot");
  app.add_option("--out", g.out, "write output to this file");
  app.add_flag("--quick", g.quick, "smaller default horizons");
  app.add_flag("--include-limits", g.include_limits, "scan: add a_s and b_s for each code");

  std::string spec_a, spec_b, code_s, code_t, literal;
  std::size_t count = 0;
  auto* gen = app.add_subcommand("gen", "print a stream prefix");
  gen->add_option("spec", spec_a)->required();
  gen->add_option("n", count)->required();

  auto* dia = app.add_subcommand("diamond", "print a prefix of diamond(a, b)");
  dia->add_option("a", spec_a)->required();
  dia->add_option("b", spec_b)->required();
  dia->add_option("n", count)->required();

  auto* pair = app.add_subcommand("pair", "classify one pair of streams");
  pair->add_option("x", spec_a)->required();
  pair->add_option("y", spec_b)->required();

  auto* scan = app.add_subcommand("scan", "scrambled-set scan over family points");

  std::size_t n_min = 5;
  std::optional<std::size_t> tail_start;
  std::size_t min_count = 5;
  auto* omega = app.add_subcommand("omega", "omega-limit surrogate for two codes");
  omega->add_option("s", code_s)->required();
  omega->add_option("t", code_t)->required();
  omega->add_option("--n-min", n_min, "smallest factor length");
  omega->add_option("--tail-start", tail_start, "first counted position (default horizon/100)");
  omega->add_option("--min-count", min_count, "occurrences needed to count as recurrent");

  std::string alpha_text = "0/1 + 1/4*sqrt(2)";
  std::size_t max_shift = 50;
  auto* sturm = app.add_subcommand("sturmian-check", "no Li-Yorke pairs among shifts of A(alpha)");
  sturm->add_option("--alpha", alpha_text, "rotation angle");
  sturm->add_option("--max-shift", max_shift, "largest shift");

  std::size_t nested = 10;
  std::string limit = "0";
  auto* sclosed = app.add_subcommand("sclosed-check", "codings of converging angles converge");
  sclosed->add_option("--count", nested, "nested codes 0^{k-1}1, k = 1..count");
  sclosed->add_option("--limit", limit, "limit code");

  std::string model_kind = "family";
  std::size_t steps = 5, depth = 3, iso_n = 5, iso_ext = 10;
  auto* den = app.add_subcommand("dendrite", "dendrite model");
  den->require_subcommand(1);
  den->add_option("--model", model_kind, "full | family");
  auto* iter = den->add_subcommand("iterate", "orbit of a point under f");
  iter->add_option("point", literal, "root | branch:w | int:w:p/q | end:<spec>")->required();
  iter->add_option("--steps", steps, "iterations for endpoints");
  auto* graph = den->add_subcommand("graph", "DOT graph of the model up to a depth");
  graph->add_option("--depth", depth, "address length limit (<= 24)");
  auto* check = den->add_subcommand("check", "no isolated points and f-invariance");
  check->add_option("--n", iso_n, "word length");
  check->add_option("--ext", iso_ext, "extension length");

  for (auto* sub : {gen, dia, pair, scan, omega, sturm, sclosed, den, iter, graph, check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  std::ostringstream out;
  int rc = kOk;
  try {
    const Family family;
    if (*gen) {
      rc = cmd_gen(g, family, spec_a, count, out);
    } else if (*dia) {
      rc = cmd_diamond(g, family, spec_a, spec_b, count, out);
    } else if (*pair) {
      rc = cmd_pair(g, family, spec_a, spec_b, out);
    } else if (*scan) {
      rc = cmd_scan(g, family, out);
    } else if (*omega) {
      rc = cmd_omega(g, family, code_s, code_t, n_min, tail_start, min_count, out);
    } else if (*sturm) {
      rc = cmd_sturmian(g, alpha_text, max_shift, out);
    } else if (*sclosed) {
      rc = cmd_sclosed(g, family, nested, limit, out);
    } else if (*iter) {
      rc = cmd_dendrite_iterate(g, family, model_kind, literal, steps, out);
    } else if (*graph) {
      rc = cmd_dendrite_graph(g, family, model_kind, depth, out);
    } else if (*check) {
      rc = cmd_dendrite_check(g, family, model_kind, iso_n, iso_ext, out);
    }
  } catch (const UsageError& e) {
    std::cerr << "dendro: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "dendro: parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const CutPointCollision& e) {
    std::cerr << "dendro: " << e.what() << "\n";
    return kInputError;
  } catch (const NotInModel& e) {
    std::cerr << "dendro: point not in model: " << e.address.str() << "\n";
    return kInputError;
  } catch (const ContractViolation& e) {
    std::cerr << "dendro: " << e.what() << "\n";
    return kInputError;
  }

  if (g.out.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(g.out, std::ios::binary);
    if (!file) {
      std::cerr << "dendro: cannot write '" << g.out << "'\n";
      return kInputError;
    }
    file << out.str();
  }
  return rc;
}
