#pragma once

#include <padyn/dyadic.hpp>
#include <padyn/rational.hpp>

#include <vector>

namespace padyn {

/// Dense univariate polynomial over Q(i), coefficients low-to-high.
struct UPoly {
    std::vector<GRat> c;

    UPoly() = default;
    explicit UPoly(std::vector<GRat> coeffs) : c(std::move(coeffs)) { trim(); }
    static UPoly constant(const GRat& k) { return k.is_zero() ? UPoly() : UPoly({k}); }
    static UPoly x() { return UPoly({GRat(0), GRat(1)}); }
    /// x - a
    static UPoly x_minus(const GRat& a) { return UPoly({-a, GRat(1)}); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const GRat& lc() const { return c.back(); }
    GRat coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : GRat(0);
    }

    UPoly operator-() const;
    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly operator*(const GRat& k) const;
    bool operator==(const UPoly& o) const { return c == o.c; }

    UPoly monic() const;
    UPoly derivative() const;
    GRat eval(const GRat& x) const;
    CBox eval_box(const CBox& x, unsigned prec) const;

    /// Quotient and remainder over the field Q(i).
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
    UPoly mod(const UPoly& d) const { return divmod(d).second; }
    UPoly div_exact(const UPoly& d) const;

    UPoly compose(const UPoly& inner) const;
    UPoly subst_x2() const;          // p(x^2)
    UPoly shift(const GRat& a) const { return compose(UPoly({a, GRat(1)})); }
    UPoly pow(unsigned n) const;

    std::string str(const std::string& var = "x") const;
};

/// Monic gcd over Q(i); gcd(0, q) = monic q.
UPoly upoly_gcd(UPoly a, UPoly b);

/// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
struct ExtGcd {
    UPoly g, u, v;
};
ExtGcd upoly_exgcd(const UPoly& a, const UPoly& b);

/// Squarefree part (product of distinct roots' linear factors), monic.
UPoly upoly_squarefree(const UPoly& p);

/// Yun squarefree decomposition: returns {(f1,1),(f2,2),...} with p ~ prod fi^i.
std::vector<std::pair<UPoly, int>> upoly_squarefree_decomposition(const UPoly& p);

/// Sylvester resultant of two univariate polynomials over Q(i).
GRat upoly_resultant(UPoly a, UPoly b);

/// Clear denominators and content: returns primitive Gaussian-integer poly
/// \a q with q = scalar * p for a nonzero Gaussian-rational scalar.
UPoly upoly_integer_primitive(const UPoly& p);

/// Cauchy bound: dyadic R with every complex root in |z| < R.
Dyadic upoly_root_bound(const UPoly& p);

/// Lower bound 2^-k on min distance between distinct roots (p squarefree).
Dyadic upoly_separation_bound(const UPoly& p);

}  // namespace padyn
