#pragma once

#include "rpmc/formula.hpp"
#include "rpmc/truth_value.hpp"

namespace rpmc {

/// Embeds an implication-free classical formula into the robust logic by
/// reading every temporal operator as its robust counterpart. The syntax is
/// shared, so only the logic tag changes. Throws FormulaError on robust input
/// or when an implication occurs.
TaggedFormula dot(const TaggedFormula& f);

/// Classical formula that holds in a state iff the robust formula evaluates
/// there to at least `level` (for comparisons in {>=, >}). The result is a
/// pctl-star formula; level 0000 yields `true`.
///
///   p_t = p                       (!f)_t = !f_1111
///   (f & g)_t = f_t & g_t         (f | g)_t = f_t | g_t
///   (f -> g)_1111 = AND_u (g_u | !f_u)
///   (f -> g)_t    = (f -> g)_1111 | g_t
///   (P~l [h])_t = P~l [h_t]       (X h)_t = X h_t       (F h)_t = F h_t
///   (G h)_1111 = G h_1111         (G h)_0111 = F G h_0111
///   (G h)_0011 = G F h_0011       (G h)_0001 = F h_0001
/// Shared subterms are built once, so the result stays linear in |f| as a DAG.
TaggedFormula lower(const TaggedFormula& f, TruthValue level);

}  // namespace rpmc
