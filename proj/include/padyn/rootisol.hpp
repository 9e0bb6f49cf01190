#pragma once

#include <padyn/upoly.hpp>

#include <optional>
#include <vector>

namespace padyn {

/// Krawczyk existence/uniqueness test. If the returned box is nonempty it is
/// certified to contain exactly one root of p, and that root lies in box.
std::optional<CBox> krawczyk_contract(const UPoly& p, const UPoly& dp, const CBox& box,
                                      unsigned prec);

/// All complex roots of a squarefree polynomial as pairwise disjoint certified
/// boxes; the result has exactly deg(p) entries.
std::vector<CBox> isolate_all_roots(const UPoly& squarefree_p);

/// The unique root of squarefree_p inside seed. Throws NoRootInBox /
/// AmbiguousRoot per the refinement contract.
CBox isolate_unique_root(const UPoly& squarefree_p, const CBox& seed);

/// Contract a certified root box until width <= target (Krawczyk iteration
/// with escalating precision).
CBox refine_root_box(const UPoly& p, CBox box, const Dyadic& target_width);

/// Disjointness-or-identity decision for two certified boxes of the same
/// squarefree polynomial. Returns true iff they hold the same root.
bool same_root(const UPoly& p, CBox a, CBox b);

inline DyIv iv_intersect(const DyIv& a, const DyIv& b) {
    DyIv r(a.lo < b.lo ? b.lo : a.lo, a.hi < b.hi ? a.hi : b.hi);
    return r;
}
inline CBox cbox_intersect(const CBox& a, const CBox& b) {
    return CBox(iv_intersect(a.re, b.re), iv_intersect(a.im, b.im));
}

}  // namespace padyn
