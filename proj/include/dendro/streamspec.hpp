// Textual stream specifications shared by the command line and the tests.
//
//   A:<surd>               Sturmian word A(alpha)
//   pt:<start>@<alpha>     coding of the orbit of start under alpha, from step 0
//   x:<code> a:<code> b:<code>   family points
//   diamond(<spec>,<spec>)
//   periodic:<word>        word^infinity
//   const:0 | const:1
#pragma once

#include "dendro/coding.hpp"
#include "dendro/family.hpp"

#include <string_view>

namespace dendro {

SymbolStream parse_stream(std::string_view spec, const Family& family);

} // namespace dendro
