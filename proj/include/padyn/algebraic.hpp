#pragma once

#include <padyn/mpoly.hpp>
#include <padyn/rootisol.hpp>
#include <padyn/upoly.hpp>

#include <vector>

namespace padyn {

/// A complex algebraic number over Q(i): a squarefree monic annihilating
/// polynomial together with a certified isolating box designating one root.
/// Refining the box never changes the designated root.
class Alg {
  public:
    Alg() : Alg(GRat(0)) {}
    explicit Alg(const GRat& g);
    Alg(UPoly annihilator, CBox isolating_box);

    /// alg_from_root: refine `seed` inside until it isolates exactly one root
    /// of the squarefree part of `minpoly`. Throws NoRootInBox / AmbiguousRoot.
    static Alg from_root(const UPoly& minpoly, const CBox& seed);

    /// All roots of p (not necessarily squarefree) with multiplicities.
    static std::vector<std::pair<Alg, int>> roots_of(const UPoly& p);

    const UPoly& ann() const { return ann_; }
    const CBox& box() const { return box_; }

    bool is_gaussian() const { return ann_.degree() == 1; }
    GRat gaussian_value() const;
    bool is_zero() const;

    /// Certified enclosure with width <= target.
    CBox enclosure(const Dyadic& target_width) const;
    void refine(const Dyadic& target_width);

    Alg operator-() const;
    Alg operator+(const Alg& o) const;
    Alg operator-(const Alg& o) const { return *this + (-o); }
    Alg operator*(const Alg& o) const;
    Alg inv() const;
    Alg operator/(const Alg& o) const { return *this * o.inv(); }

    /// Both roots of x^2 = a, as a pair with disjoint boxes. Throws ZeroInput.
    static std::pair<Alg, Alg> sqrt_branches(const Alg& a);

    /// Decides g(alpha) = 0 exactly.
    bool satisfies(const UPoly& g) const;

    double approx_re() const { return box_.re.mid().to_double(); }
    double approx_im() const { return box_.im.mid().to_double(); }

    std::string str() const;

  private:
    UPoly ann_;  // monic, squarefree, no root at 0 unless the value is 0
    CBox box_;
    mutable unsigned prec_ = 64;
};

/// Exact equality of two algebraic numbers (never by floating comparison).
bool alg_equals(const Alg& a, const Alg& b);
inline bool alg_equals(const Alg& a, const GRat& g) { return alg_equals(a, Alg(g)); }

}  // namespace padyn
