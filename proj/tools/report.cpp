#include "report.hpp"

#include <sstream>

namespace report {

using nlohmann::ordered_json;

ordered_json integer(const dendro::Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str(); // too big for a JSON number, keep it exact
}

ordered_json pair_record(const std::string& x, const std::string& y, const dendro::PairVerdict& v) {
  ordered_json rec;
  rec["x"] = x;
  rec["y"] = y;
  rec["verdict"] = dendro::to_string(v.verdict);
  rec["N"] = v.params.horizon;
  rec["m"] = v.params.resolution;
  if (v.proximal) {
    rec["proximal"] = {{"n", v.proximal->time}, {"lcp", v.proximal->lcp}};
  } else {
    rec["proximal"] = nullptr;
  }
  rec["checkpoints"] = v.checkpoints;
  ordered_json times = ordered_json::array();
  for (const auto& t : v.nonasymptotic) times.push_back(t ? ordered_json(*t) : ordered_json(nullptr));
  rec["nonasymptotic"] = times;
  if (v.certificate) {
    const auto& c = *v.certificate;
    ordered_json b;
    b["K"] = c.exponent;
    b["kind"] = dendro::to_string(c.kind);
    b["valid_from"] = c.valid_from;
    if (c.delta) {
      b["delta"] = dendro::to_string(*c.delta);
      if (c.delta->is_rational()) {
        b["delta_num"] = integer(c.delta->rational_part().get_num());
        b["delta_den"] = integer(c.delta->rational_part().get_den());
      }
    }
    if (c.kind == dendro::DistalityCertificate::Kind::DiamondPair) {
      b["K_offset"] = c.offset_exponent;
      b["K_language"] = c.language_exponent;
    }
    b["observed_max_lcp"] = v.certified_range_max_lcp;
    b["violated"] = v.certificate_violated;
    rec["certified_bound"] = b;
  } else {
    rec["certified_bound"] = nullptr;
  }
  return rec;
}

std::string lcp_csv(const dendro::SymbolStream& x, const dendro::SymbolStream& y, std::uint64_t horizon,
                    std::size_t cap) {
  std::ostringstream out;
  out << "n,lcp,dist_exponent\n";
  const auto series = dendro::lcp_series(x, y, horizon, cap);
  for (std::size_t n = 0; n < series.size(); ++n) {
    // saturated rows only bound the distance, same convention as dist()
    const std::size_t e = series[n] < cap ? series[n] + 1 : cap;
    out << n << ',' << series[n] << ',' << e << '\n';
  }
  return out.str();
}

} // namespace report
