#include <padyn/algebraic.hpp>
#include <padyn/errors.hpp>

#include <functional>
#include <sstream>

namespace padyn {

namespace {

// Strip x^k factors; the designated root is known to be nonzero.
UPoly strip_zero_root(UPoly p) {
    size_t k = 0;
    while (k < p.c.size() && p.c[k].is_zero()) ++k;
    if (k == 0) return p;
    p.c.erase(p.c.begin(), p.c.begin() + static_cast<long>(k));
    return p;
}

}  // namespace

Alg::Alg(const GRat& g) : ann_(UPoly::x_minus(g)), box_(CBox::of_grat(g, 64)) {}

Alg::Alg(UPoly annihilator, CBox isolating_box)
    : ann_(std::move(annihilator)), box_(std::move(isolating_box)) {}

Alg Alg::from_root(const UPoly& minpoly, const CBox& seed) {
    if (minpoly.is_zero()) throw ZeroInput("alg_from_root: zero polynomial");
    UPoly sf = upoly_squarefree(minpoly).monic();
    CBox box = isolate_unique_root(sf, seed);
    return Alg(std::move(sf), std::move(box));
}

std::vector<std::pair<Alg, int>> Alg::roots_of(const UPoly& p) {
    std::vector<std::pair<Alg, int>> out;
    if (p.degree() < 1) return out;
    for (const auto& [f, mult] : upoly_squarefree_decomposition(p)) {
        UPoly fm = f.monic();
        for (const CBox& b : isolate_all_roots(fm)) out.push_back({Alg(fm, b), mult});
    }
    return out;
}

GRat Alg::gaussian_value() const {
    if (!is_gaussian()) throw ComputationError("gaussian_value of a non-rational algebraic number");
    return -ann_.c[0] / ann_.c[1];
}

bool Alg::satisfies(const UPoly& g) const {
    if (g.is_zero()) return true;
    if (is_gaussian()) return g.eval(gaussian_value()).is_zero();
    UPoly h = upoly_gcd(ann_, g);
    if (h.degree() < 1) return false;
    if (h.degree() == ann_.degree()) return true;
    UPoly d = ann_.div_exact(h);
    CBox b = box_;
    unsigned prec = prec_;
    while (true) {
        CBox hv = h.eval_box(b, prec);
        if (!hv.contains_zero()) return false;
        CBox dv = d.eval_box(b, prec);
        if (!dv.contains_zero()) return true;
        Dyadic w = b.width();
        b = refine_root_box(ann_, b, Dyadic(w.m, w.e - 2));
        prec *= 2;
    }
}

bool Alg::is_zero() const {
    if (is_gaussian()) return gaussian_value().is_zero();
    if (!ann_.c[0].is_zero()) return false;
    return satisfies(UPoly::x());
}

CBox Alg::enclosure(const Dyadic& target_width) const {
    if (is_gaussian()) {
        GRat g = gaussian_value();
        unsigned prec = 64;
        CBox b = CBox::of_grat(g, prec);
        while (!(b.width() < target_width) && prec < (1u << 22)) {
            prec *= 2;
            b = CBox::of_grat(g, prec);
        }
        return b;
    }
    return refine_root_box(ann_, box_, target_width);
}

void Alg::refine(const Dyadic& target_width) { box_ = enclosure(target_width); }

bool alg_equals(const Alg& a, const Alg& b) {
    if (a.is_gaussian() && b.is_gaussian()) return a.gaussian_value() == b.gaussian_value();
    if (a.is_gaussian()) return b.satisfies(a.ann());
    if (b.is_gaussian()) return a.satisfies(b.ann());
    UPoly g = upoly_gcd(a.ann(), b.ann());
    if (g.degree() < 1) return false;
    if (!a.satisfies(g) || !b.satisfies(g)) return false;
    // Both designate roots of the same squarefree g.
    CBox ba = a.box(), bb = b.box();
    // Boxes isolate at most one root of g (roots of g are roots of each ann).
    return same_root(g, ba, bb);
}

Alg Alg::operator-() const {
    UPoly m;
    m.c = ann_.c;
    for (size_t i = 0; i < m.c.size(); ++i)
        if (i % 2 == 1) m.c[i] = -m.c[i];
    m.trim();
    return Alg(m.monic(), -box_);
}

namespace {

// Locate the value with enclosure-generator `enc` among roots of cand.
Alg locate_root(UPoly cand, const std::function<CBox(const Dyadic&)>& enc) {
    cand = upoly_squarefree(cand).monic();
    Dyadic w(Int(1), -8);
    for (int attempt = 0; attempt < 40; ++attempt) {
        CBox seed = enc(w);
        try {
            CBox b = isolate_unique_root(cand, seed);
            return Alg(std::move(cand), std::move(b));
        } catch (const AmbiguousRoot&) {
            w = Dyadic(w.m, w.e - 4);
        }
    }
    throw ComputationError("locate_root: could not isolate the designated root");
}

}  // namespace

Alg Alg::operator+(const Alg& o) const {
    if (is_gaussian() && o.is_gaussian()) return Alg(gaussian_value() + o.gaussian_value());
    if (is_gaussian()) return o + *this;
    if (o.is_gaussian()) {
        GRat g = o.gaussian_value();
        UPoly cand = ann_.shift(-g);  // roots shifted by +g
        const Alg& a = *this;
        return locate_root(cand, [&a, g](const Dyadic& w) {
            return (a.enclosure(w) + CBox::of_grat(g, 256)).rounded_out(256);
        });
    }
    // Res_y(A(y), B(x - y)) annihilates all sums alpha + beta.
    MPoly A = MPoly::from_upoly(ann_, "y");
    MPoly xmy = MPoly::var("x") - MPoly::var("y");
    MPoly B;
    for (size_t i = o.ann_.c.size(); i-- > 0;) B = B * xmy + MPoly::constant(o.ann_.c[i]);
    UPoly cand = mpoly_resultant(A, B, "y").rename_var("x", "t").to_upoly();
    const Alg& a = *this;
    const Alg& b = o;
    return locate_root(cand, [&a, &b](const Dyadic& w) {
        return (a.enclosure(w) + b.enclosure(w)).rounded_out(256);
    });
}

Alg Alg::operator*(const Alg& o) const {
    if (is_gaussian() && o.is_gaussian()) return Alg(gaussian_value() * o.gaussian_value());
    if (is_zero() || o.is_zero()) return Alg(GRat(0));
    if (is_gaussian()) return o * *this;
    if (o.is_gaussian()) {
        GRat g = o.gaussian_value();
        UPoly cand = strip_zero_root(ann_);
        GRat gp(1);
        for (size_t k = 0; k < cand.c.size(); ++k) {  // roots scaled by g
            cand.c[k] = cand.c[k] / gp;
            gp *= g;
        }
        const Alg& a = *this;
        return locate_root(cand, [&a, g](const Dyadic& w) {
            return (a.enclosure(w) * CBox::of_grat(g, 256)).rounded_out(256);
        });
    }
    UPoly pa = strip_zero_root(ann_);
    UPoly pb = strip_zero_root(o.ann_);
    // Res_y(A(y), y^m B(x/y)) annihilates all products alpha * beta.
    MPoly A = MPoly::from_upoly(pa, "y");
    MPoly B;
    MPoly x = MPoly::var("x"), y = MPoly::var("y");
    int m = pb.degree();
    for (int k = 0; k <= m; ++k) {
        if (pb.c[static_cast<size_t>(k)].is_zero()) continue;
        B = B + MPoly::constant(pb.c[static_cast<size_t>(k)]) * x.pow(static_cast<unsigned>(k)) *
                    y.pow(static_cast<unsigned>(m - k));
    }
    UPoly cand = mpoly_resultant(A, B, "y").rename_var("x", "t").to_upoly();
    const Alg& a = *this;
    const Alg& b = o;
    return locate_root(cand, [&a, &b](const Dyadic& w) {
        return (a.enclosure(w) * b.enclosure(w)).rounded_out(256);
    });
}

Alg Alg::inv() const {
    if (is_zero()) throw ZeroInput("Alg::inv of zero");
    if (is_gaussian()) return Alg(gaussian_value().inv());
    UPoly p = strip_zero_root(ann_);
    UPoly rev;
    rev.c.assign(p.c.rbegin(), p.c.rend());
    rev.trim();
    const Alg& a = *this;
    return locate_root(rev, [&a](const Dyadic& w) {
        CBox e = a.enclosure(w);
        return e.recip(256).rounded_out(256);
    });
}

std::pair<Alg, Alg> Alg::sqrt_branches(const Alg& a) {
    if (a.is_zero()) throw ZeroInput("sqrt_branches of zero");
    UPoly p = a.is_gaussian() ? UPoly::x_minus(a.gaussian_value()) : strip_zero_root(a.ann());
    UPoly cand = p.subst_x2();  // squarefree: distinct nonzero roots stay distinct
    auto roots = isolate_all_roots(cand);
    // Identify the two roots whose squares equal a.
    std::vector<Alg> hits;
    for (const CBox& b : roots) {
        Alg r(cand, b);
        // r^2 is a root of p; decide whether it is the designated one.
        Dyadic w(Int(1), -16);
        CBox rb = b;
        while (true) {
            CBox sq = (rb * rb).rounded_out(512);
            CBox target = a.enclosure(w);
            if (!sq.intersects(target)) break;
            Dyadic sep = upoly_separation_bound(p);
            if (sq.width() < sep && target.width() < sep) {
                hits.push_back(r);
                break;
            }
            w = Dyadic(w.m, w.e - 4);
            rb = refine_root_box(cand, rb, w);
        }
    }
    if (hits.size() != 2)
        throw ComputationError("sqrt_branches: expected 2 branches, found " + std::to_string(hits.size()));
    return {hits[0], hits[1]};
}

std::string Alg::str() const {
    if (is_gaussian()) return gaussian_value().str();
    std::ostringstream os;
    os << "alg(" << ann_.str("t") << " ~ " << approx_re();
    double im = approx_im();
    os << (im < 0 ? " - " : " + ") << std::abs(im) << "i)";
    return os.str();
}

}  // namespace padyn
