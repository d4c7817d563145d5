// JSON / CSV / text emission for the command line.
#pragma once

#include "dendro/chaoscan.hpp"

#include <json.hpp>

#include <string>

namespace report {

nlohmann::ordered_json integer(const dendro::Integer& z);
nlohmann::ordered_json pair_record(const std::string& x, const std::string& y, const dendro::PairVerdict& v);
std::string lcp_csv(const dendro::SymbolStream& x, const dendro::SymbolStream& y, std::uint64_t horizon,
                    std::size_t cap);

} // namespace report
