#pragma once

#include <padyn/algebraic.hpp>

#include <array>
#include <memory>
#include <optional>

namespace padyn {

/// The number field Q(i)(gamma). Elements are polynomial residues in gamma.
/// The annihilator is squarefree but not necessarily irreducible; it shrinks
/// to a factor (still designating the same root) whenever a zero divisor is
/// met, in the style of dynamic evaluation.
class AlgField {
  public:
    explicit AlgField(Alg gen) : gen_(std::move(gen)) {}
    static std::shared_ptr<AlgField> rationals() {
        return std::make_shared<AlgField>(Alg(GRat(0)));
    }

    const Alg& gen() const { return gen_; }
    const UPoly& ann() const { return gen_.ann(); }
    int degree() const { return ann().degree(); }
    bool is_rational_field() const { return degree() == 1; }

    UPoly reduce(const UPoly& e) const { return e.mod(ann()); }
    UPoly constant(const GRat& g) const { return UPoly::constant(g); }
    UPoly mul(const UPoly& a, const UPoly& b) const { return reduce(a * b); }
    bool is_zero(const UPoly& e) const;
    /// Inverse modulo the annihilator; may shrink it. Throws ZeroInput.
    UPoly inv(const UPoly& e) const;
    /// The element's value as a standalone algebraic number.
    Alg value(const UPoly& e) const;
    CBox enclosure(const UPoly& e, const Dyadic& target_width) const;

  private:
    mutable Alg gen_;
    void shrink(const UPoly& factor) const;
};

using AlgFieldPtr = std::shared_ptr<AlgField>;

/// Projective point with coordinates in a single number field; canonical form
/// scales the first nonzero coordinate to 1.
struct PPoint {
    AlgFieldPtr field;
    std::array<UPoly, 3> c;

    PPoint() : field(AlgField::rationals()) {}
    PPoint(AlgFieldPtr f, std::array<UPoly, 3> coords) : field(std::move(f)), c(std::move(coords)) {}

    static PPoint gaussian(const GRat& a, const GRat& b, const GRat& d);
    static PPoint affine_gaussian(const GRat& y, const GRat& z);  // [1:y:z]

    bool is_gaussian() const;
    std::array<GRat, 3> gaussian_coords() const;  // requires is_gaussian()
    Alg coord_value(int k) const { return field->value(c[static_cast<size_t>(k)]); }
    bool coord_is_zero(int k) const { return field->is_zero(c[static_cast<size_t>(k)]); }

    void canonicalize();
    std::string str() const;
};

bool ppoint_equal(const PPoint& a, const PPoint& b);

/// Both square roots of the field element w (nonzero). Each branch comes with
/// the new field, the root as its generator, and the old generator expressed
/// in the new field (when the embedding is available).
struct SqrtBranch {
    AlgFieldPtr field;                  // Q(i)(gamma'), gamma'^2 = w
    std::optional<UPoly> old_gen_rep;   // old gamma inside the new field
};
std::pair<SqrtBranch, SqrtBranch> sqrt_extend(const AlgFieldPtr& f, const UPoly& w);

/// Dense polynomial over a field F = Q(i)(gamma); used for fiber solving.
struct FPoly {
    AlgFieldPtr field;
    std::vector<UPoly> c;  // coefficients, elements of the field

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    FPoly mod(const FPoly& d) const;
    FPoly monic() const;
};
FPoly fpoly_gcd(FPoly a, FPoly b);

}  // namespace padyn
