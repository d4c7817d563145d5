// The dendrite D_X spanned by the root p and the endpoints coded by a subshift X.
//
// Arc B_w joins p_{w minus last symbol} (p itself when |w| = 1) to p_w and has
// length 2^{-|w|}; interior points carry a rational parameter t in (0, 1)
// measured from the root side. The point at depth 1 is an endpoint.
#pragma once

#include "dendro/coding.hpp"
#include "dendro/family.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dendro {

struct Root {};
struct Branch {
  Word w;
};
struct Interior {
  Word w;
  Rational t;
};
struct End {
  SymbolStream x;
};
using DendritePoint = std::variant<Root, Branch, Interior, End>;

/// Interior(w, t) with t = 0 / t = 1 folded onto the arc's branch points.
DendritePoint make_interior(const Word& w, const Rational& t);

/// Domain error: the point's arc is not part of the model.
class NotInModel : public std::domain_error {
public:
  explicit NotInModel(const Word& w);
  Word address;
};

class DendriteModel {
public:
  using Oracle = std::function<bool(const Word&)>;

  /// `oracle` must be prefix-closed.
  DendriteModel(std::string label, Oracle oracle);

  static DendriteModel full_binary();
  static DendriteModel from_words(const std::vector<Word>& words);
  /// X = the family points for `codes`; L_n(X) is approximated by the factors of
  /// x_s[1, horizon] (an inner approximation of the language).
  static DendriteModel from_family(const Family& family, std::vector<AlphaCode> codes, std::size_t horizon);

  const std::string& label() const { return label_; }
  bool contains_arc(const Word& w) const;
  /// Root, Branch and Interior by their address; End by its first `end_check` symbols.
  bool contains(const DendritePoint& pt, std::size_t end_check = 20) const;
  /// Accepted words of length 1..depth, lexicographic.
  std::vector<Word> accepted_words(std::size_t depth) const;
  /// Accepted extensions of w of total length n.
  std::vector<Word> accepted_extensions(const Word& w, std::size_t n) const;

private:
  std::string label_;
  Oracle oracle_;
};

DendritePoint apply_f(const DendriteModel& model, const DendritePoint& pt);

struct PathDistance {
  Rational value;
  bool upper_bound = false; // End/End pair agreeing on all `cap` compared symbols
};
PathDistance path_dist(const DendritePoint& u, const DendritePoint& v, std::size_t cap = 1024);

/// |w| for Branch / Interior, 0 for Root, nullopt ("never") for End.
std::optional<std::size_t> steps_to_root(const DendritePoint& pt);

struct IsolationReport {
  std::size_t n = 0;
  std::size_t ext = 0;
  std::size_t checked = 0;
  std::vector<Word> isolated; // accepted words with fewer than two extensions
  bool pass() const { return checked > 0 && isolated.empty(); }
};
IsolationReport no_isolated_points_check(const DendriteModel& model, std::size_t n, std::size_t ext);

struct InvarianceReport {
  std::size_t depth = 0;
  std::size_t checked = 0;
  std::vector<Word> violations; // accepted w whose tail is rejected
  bool pass() const { return violations.empty(); }
};
InvarianceReport f_invariance_check(const DendriteModel& model, std::size_t depth);

/// DOT text: root "p", nodes named by address, edges with len="2^-k".
std::string emit_graph(const DendriteModel& model, std::size_t depth);

std::string to_string(const DendritePoint& pt);

/// "root", "branch:101", "int:101:1/3", "end:<spec>"; end specs go to `resolve`.
DendritePoint parse_point(std::string_view text, const std::function<SymbolStream(std::string_view)>& resolve);

} // namespace dendro
