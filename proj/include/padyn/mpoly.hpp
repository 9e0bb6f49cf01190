#pragma once

#include <padyn/rational.hpp>
#include <padyn/upoly.hpp>

#include <map>
#include <string>
#include <vector>

namespace padyn {

/// Exponent vector aligned with the owning polynomial's variable list.
using Expo = std::vector<int>;

/// Graded lexicographic order, descending (begin() of the term map is the
/// leading term).
struct TermOrder {
    bool operator()(const Expo& a, const Expo& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da > db;
        return a > b;  // lex, earlier variable more significant
    }
};

/// Sparse multivariate polynomial over Q(i). Variables are kept sorted by
/// name; binary operations unify variable sets automatically.
struct MPoly {
    std::vector<std::string> vars;
    std::map<Expo, GRat, TermOrder> terms;

    MPoly() = default;
    static MPoly zero() { return MPoly(); }
    static MPoly constant(const GRat& k);
    static MPoly var(const std::string& name);

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    GRat constant_value() const;  // requires is_constant()
    int total_degree() const;     // -1 for zero
    int degree_in(const std::string& v) const;
    bool is_homogeneous() const;
    int num_terms() const { return static_cast<int>(terms.size()); }

    const GRat& leading_coeff() const { return terms.begin()->second; }
    /// Divide by the graded-lex leading coefficient (canonical form).
    MPoly normalized() const;

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const GRat& k) const;
    MPoly pow(unsigned n) const;
    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly derivative(const std::string& v) const;
    /// Simultaneous substitution; variables absent from the bindings persist.
    MPoly substitute(const std::map<std::string, MPoly>& bindings) const;
    GRat eval(const std::map<std::string, GRat>& point) const;

    /// View as a dense polynomial in `v` with MPoly coefficients.
    std::vector<MPoly> coeffs_in(const std::string& v) const;
    static MPoly assemble_in(const std::string& v, const std::vector<MPoly>& cs);

    /// Exact division; throws ComputationError when not divisible.
    MPoly div_exact(const MPoly& d) const;
    bool divisible_by(const MPoly& d, MPoly* quotient = nullptr) const;

    /// Conversion to/from univariate (at most one variable may occur).
    UPoly to_upoly() const;
    static MPoly from_upoly(const UPoly& p, const std::string& v);

    MPoly homogenized(const std::string& v, int target_deg = -1) const;
    MPoly dehomogenized(const std::string& v) const;
    MPoly rename_var(const std::string& from, const std::string& to) const;
    MPoly drop_unused_vars() const;

    std::string str() const;
};

MPoly operator*(long k, const MPoly& p);

/// Unify variable lists of two polynomials (both reindexed).
void mpoly_unify(MPoly& a, MPoly& b);

/// gcd, normalized so the graded-lex leading coefficient is 1; gcd(0,q) is
/// normalized q.
MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

/// Sylvester resultant with respect to `var` (Bareiss fraction-free
/// elimination, exact including sign).
MPoly mpoly_resultant(const MPoly& p, const MPoly& q, const std::string& var);

/// Product of the distinct irreducible factors, leading coefficient 1.
MPoly mpoly_squarefree(const MPoly& p);

struct LinearFactors {
    std::vector<std::pair<MPoly, int>> factors;  // degree-1 factors with multiplicity
    MPoly cofactor;                              // no linear factors over Q(i) remain
};

/// All degree-one factors of a homogeneous polynomial over Q(i).
LinearFactors mpoly_linear_factors(const MPoly& p);

std::pair<int, MPoly> mpoly_lowest_degree_form(const MPoly& p);

/// Gaussian-rational roots of a univariate polynomial (exact, complete).
std::vector<std::pair<GRat, int>> upoly_gaussian_roots(const UPoly& p);

}  // namespace padyn
