#include <padyn/algpoint.hpp>
#include <padyn/errors.hpp>

#include <sstream>

namespace padyn {

void AlgField::shrink(const UPoly& factor) const {
    CBox b = gen_.box();
    gen_ = Alg(factor.monic(), b);
}

bool AlgField::is_zero(const UPoly& e) const {
    UPoly r = reduce(e);
    if (r.is_zero()) return true;
    if (is_rational_field()) return false;  // nonzero constant
    UPoly g = upoly_gcd(r, ann());
    if (g.degree() < 1) return false;
    return gen_.satisfies(g);
}

UPoly AlgField::inv(const UPoly& e) const {
    UPoly r = reduce(e);
    for (int guard = 0; guard < 64; ++guard) {
        if (r.is_zero()) throw ZeroInput("AlgField::inv of zero element");
        if (is_rational_field()) return UPoly::constant(r.c[0].inv());
        auto [g, u, v] = upoly_exgcd(r, ann());
        if (g.degree() < 1) return reduce(u);  // u*r = 1 mod ann (g scaled monic = 1)
        if (gen_.satisfies(g)) throw ZeroInput("AlgField::inv of zero element");
        shrink(ann().div_exact(g));
        r = reduce(r);
    }
    throw ComputationError("AlgField::inv: shrink loop did not terminate");
}

Alg AlgField::value(const UPoly& e) const {
    UPoly r = reduce(e);
    if (is_rational_field() || r.degree() <= 0) return Alg(r.is_zero() ? GRat(0) : r.c[0]);
    // Annihilator of e(gamma): Res_y(ann(y), x - e(y)).
    MPoly A = MPoly::from_upoly(ann(), "y");
    MPoly E;
    MPoly yv = MPoly::var("y");
    for (size_t k = r.c.size(); k-- > 0;) E = E * yv + MPoly::constant(r.c[k]);
    MPoly B = MPoly::var("x") - E;
    UPoly cand = mpoly_resultant(A, B, "y").rename_var("x", "t").to_upoly();
    cand = upoly_squarefree(cand).monic();
    const AlgField* self = this;
    Dyadic w(Int(1), -8);
    for (int attempt = 0; attempt < 48; ++attempt) {
        CBox seed = self->enclosure(r, w);
        try {
            CBox box = isolate_unique_root(cand, seed);
            return Alg(cand, box);
        } catch (const AmbiguousRoot&) {
            w = Dyadic(w.m, w.e - 4);
        } catch (const NoRootInBox&) {
            w = Dyadic(w.m, w.e - 4);
        }
    }
    throw ComputationError("AlgField::value: could not isolate element value");
}

CBox AlgField::enclosure(const UPoly& e, const Dyadic& target_width) const {
    UPoly r = reduce(e);
    unsigned prec = 128;
    Dyadic gw = target_width;
    for (int rounds = 0; rounds < 48; ++rounds) {
        CBox gb = gen_.enclosure(gw);
        CBox val = r.eval_box(gb, prec);
        if (val.width() < target_width || r.degree() <= 0) return val;
        gw = Dyadic(gw.m, gw.e - 4);
        prec *= 2;
    }
    throw ComputationError("AlgField::enclosure: no convergence");
}

PPoint PPoint::gaussian(const GRat& a, const GRat& b, const GRat& d) {
    PPoint p;
    p.c = {UPoly::constant(a), UPoly::constant(b), UPoly::constant(d)};
    p.canonicalize();
    return p;
}

PPoint PPoint::affine_gaussian(const GRat& y, const GRat& z) {
    return gaussian(GRat(1), y, z);
}

bool PPoint::is_gaussian() const {
    if (field->is_rational_field()) return true;
    for (const auto& e : c)
        if (field->reduce(e).degree() > 0) return false;
    return true;
}

std::array<GRat, 3> PPoint::gaussian_coords() const {
    std::array<GRat, 3> out;
    for (int k = 0; k < 3; ++k) {
        UPoly r = field->reduce(c[static_cast<size_t>(k)]);
        if (r.degree() > 0) throw ComputationError("gaussian_coords of a non-Gaussian point");
        out[static_cast<size_t>(k)] = r.is_zero() ? GRat(0) : r.c[0];
    }
    return out;
}

void PPoint::canonicalize() {
    for (auto& e : c) e = field->reduce(e);
    for (size_t k = 0; k < 3; ++k) {
        if (!field->is_zero(c[k])) {
            UPoly inv = field->inv(c[k]);
            for (auto& e : c) e = field->mul(e, inv);
            return;
        }
    }
    throw ComputationError("PPoint: all coordinates are zero");
}

std::string PPoint::str() const {
    std::ostringstream os;
    os << "[";
    for (int k = 0; k < 3; ++k) {
        if (k) os << ":";
        UPoly r = field->reduce(c[static_cast<size_t>(k)]);
        if (r.degree() <= 0) {
            os << (r.is_zero() ? std::string("0") : r.c[0].str());
        } else {
            os << coord_value(k).str();
        }
    }
    os << "]";
    return os.str();
}

bool ppoint_equal(const PPoint& a, const PPoint& b) {
    PPoint x = a, y = b;
    x.canonicalize();
    y.canonicalize();
    if (x.is_gaussian() && y.is_gaussian()) {
        auto cx = x.gaussian_coords(), cy = y.gaussian_coords();
        return cx[0] == cy[0] && cx[1] == cy[1] && cx[2] == cy[2];
    }
    for (int k = 0; k < 3; ++k) {
        bool zx = x.coord_is_zero(k), zy = y.coord_is_zero(k);
        if (zx != zy) return false;
        if (zx) continue;
        if (!alg_equals(x.coord_value(k), y.coord_value(k))) return false;
    }
    return true;
}

std::pair<SqrtBranch, SqrtBranch> sqrt_extend(const AlgFieldPtr& f, const UPoly& w) {
    UPoly r = f->reduce(w);
    if (f->is_zero(r)) throw ZeroInput("sqrt_extend of zero");
    if (r.degree() <= 0) {
        // Constant argument: a fresh quadratic extension of Q(i). The old
        // generator embeds only when the base field is trivial.
        auto [p, m] = Alg::sqrt_branches(Alg(r.c[0]));
        SqrtBranch bp{std::make_shared<AlgField>(p),
                      f->is_rational_field() ? std::optional<UPoly>(UPoly()) : std::nullopt};
        SqrtBranch bm{std::make_shared<AlgField>(m),
                      f->is_rational_field() ? std::optional<UPoly>(UPoly()) : std::nullopt};
        return {bp, bm};
    }
    if (r.degree() == 1) {
        // w = a + b*gamma with b != 0: gamma = (x^2 - a)/b in the new field.
        GRat a = r.c[0], b = r.c[1];
        Alg wval = f->value(r);
        auto [p, m] = Alg::sqrt_branches(wval);
        UPoly embed;  // (x^2 - a) * b^{-1}
        embed.c = {-a / b, GRat(0), b.inv()};
        embed.trim();
        SqrtBranch bp{std::make_shared<AlgField>(p), embed};
        SqrtBranch bm{std::make_shared<AlgField>(m), embed};
        return {bp, bm};
    }
    throw ComputationError("sqrt_extend: tower shape not supported (argument degree > 1)");
}

void FPoly::trim() {
    while (!c.empty() && field->is_zero(c.back())) c.pop_back();
}

FPoly FPoly::monic() const {
    FPoly r = *this;
    r.trim();
    if (r.is_zero()) return r;
    UPoly inv = field->inv(r.c.back());
    for (auto& e : r.c) e = field->mul(e, inv);
    return r;
}

FPoly FPoly::mod(const FPoly& d) const {
    FPoly r = *this;
    r.trim();
    FPoly dd = d;
    dd.trim();
    if (dd.is_zero()) throw ComputationError("FPoly::mod by zero");
    UPoly lcinv = field->inv(dd.c.back());
    while (!r.is_zero() && r.degree() >= dd.degree()) {
        UPoly f = field->mul(r.c.back(), lcinv);
        int shift = r.degree() - dd.degree();
        for (int i = 0; i <= dd.degree(); ++i) {
            size_t idx = static_cast<size_t>(i + shift);
            r.c[idx] = field->reduce(r.c[idx] - f * dd.c[static_cast<size_t>(i)]);
        }
        r.trim();
    }
    return r;
}

FPoly fpoly_gcd(FPoly a, FPoly b) {
    a.trim();
    b.trim();
    while (!b.is_zero()) {
        FPoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

}  // namespace padyn
