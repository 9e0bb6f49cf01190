#include <padyn/upoly.hpp>

#include <sstream>
#include <stdexcept>

namespace padyn {

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& k : r.c) k = -k;
    return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
    UPoly r;
    r.c.resize(std::max(c.size(), o.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) {
        if (i < c.size()) r.c[i] += c[i];
        if (i < o.c.size()) r.c[i] += o.c[i];
    }
    r.trim();
    return r;
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    UPoly r;
    r.c.assign(c.size() + o.c.size() - 1, GRat(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        for (size_t j = 0; j < o.c.size(); ++j) {
            if (o.c[j].is_zero()) continue;
            r.c[i + j] += c[i] * o.c[j];
        }
    }
    r.trim();
    return r;
}

UPoly UPoly::operator*(const GRat& k) const {
    if (k.is_zero()) return UPoly();
    UPoly r = *this;
    for (auto& x : r.c) x *= k;
    return r;
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return *this * lc().inv();
}

UPoly UPoly::derivative() const {
    if (c.size() <= 1) return UPoly();
    UPoly r;
    r.c.resize(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * GRat(Rat(static_cast<long>(i)));
    r.trim();
    return r;
}

GRat UPoly::eval(const GRat& x) const {
    GRat acc(0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

CBox UPoly::eval_box(const CBox& x, unsigned prec) const {
    CBox acc = CBox::of_grat(GRat(0), prec);
    for (size_t i = c.size(); i-- > 0;) {
        acc = (acc * x + CBox::of_grat(c[i], prec)).rounded_out(prec);
    }
    return acc;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
    if (d.is_zero()) throw std::domain_error("UPoly::divmod by zero polynomial");
    UPoly q, r = *this;
    if (r.degree() < d.degree()) return {q, r};
    q.c.assign(r.degree() - d.degree() + 1, GRat(0));
    GRat inv = d.lc().inv();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        GRat f = r.lc() * inv;
        q.c[k] = f;
        for (int i = 0; i <= d.degree(); ++i) r.c[k + i] -= f * d.c[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

UPoly UPoly::div_exact(const UPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::logic_error("UPoly::div_exact: inexact division");
    return q;
}

UPoly UPoly::compose(const UPoly& inner) const {
    UPoly acc;
    for (size_t i = c.size(); i-- > 0;) {
        acc = acc * inner + UPoly::constant(c[i]);
    }
    return acc;
}

UPoly UPoly::subst_x2() const {
    UPoly r;
    if (is_zero()) return r;
    r.c.assign(2 * c.size() - 1, GRat(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[2 * i] = c[i];
    r.trim();
    return r;
}

UPoly UPoly::pow(unsigned n) const {
    UPoly acc = UPoly::constant(GRat(1));
    UPoly base = *this;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

std::string UPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c[i].str() << ")";
        if (i == 1) os << "*" << var;
        if (i > 1) os << "*" << var << "^" << i;
    }
    return os.str();
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        UPoly r = a.mod(b);
        a = std::move(b);
        b = r.is_zero() ? r : r.monic();
    }
    return a;
}

ExtGcd upoly_exgcd(const UPoly& a, const UPoly& b) {
    UPoly r0 = a, r1 = b;
    UPoly u0 = UPoly::constant(GRat(1)), u1;
    UPoly v0, v1 = UPoly::constant(GRat(1));
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        UPoly u2 = u0 - q * u1;
        UPoly v2 = v0 - q * v1;
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (r0.is_zero()) return {r0, u0, v0};
    GRat inv = r0.lc().inv();
    return {r0 * inv, u0 * inv, v0 * inv};
}

UPoly upoly_squarefree(const UPoly& p) {
    if (p.is_zero()) throw std::domain_error("squarefree part of zero polynomial");
    if (p.degree() == 0) return UPoly::constant(GRat(1));
    UPoly g = upoly_gcd(p, p.derivative());
    return p.div_exact(g).monic();
}

std::vector<std::pair<UPoly, int>> upoly_squarefree_decomposition(const UPoly& p) {
    // Yun's algorithm over a characteristic-zero field.
    std::vector<std::pair<UPoly, int>> out;
    if (p.degree() <= 0) return out;
    UPoly f = p.monic();
    UPoly a = upoly_gcd(f, f.derivative());
    UPoly b = f.div_exact(a);
    UPoly d = f.derivative().div_exact(a) - b.derivative();
    int k = 1;
    while (b.degree() > 0) {
        UPoly w = upoly_gcd(b, d);
        if (w.degree() > 0) out.push_back({w, k});
        b = b.div_exact(w);
        d = d.div_exact(w) - b.derivative();
        ++k;
    }
    return out;
}

GRat upoly_resultant(UPoly a, UPoly b) {
    if (a.is_zero() || b.is_zero()) return GRat(0);
    GRat acc(1);
    bool swapped = false;
    while (true) {
        if (a.degree() < b.degree()) {
            if ((static_cast<long>(a.degree()) * b.degree()) % 2 != 0) acc = -acc;
            std::swap(a, b);
            swapped = !swapped;
        }
        if (b.degree() == 0) {
            acc *= b.c[0].pow(static_cast<unsigned long>(a.degree()));
            return acc;
        }
        UPoly r = a.mod(b);
        if (r.is_zero()) return GRat(0);
        acc *= b.lc().pow(static_cast<unsigned long>(a.degree() - r.degree()));
        if ((static_cast<long>(a.degree()) * b.degree()) % 2 != 0) acc = -acc;
        a = std::move(b);
        b = std::move(r);
    }
}

UPoly upoly_integer_primitive(const UPoly& p) {
    if (p.is_zero()) return p;
    Int l(1);
    for (const auto& k : p.c) {
        l = lcm(l, k.re.get_den());
        l = lcm(l, k.im.get_den());
    }
    std::vector<GRat> c = p.c;
    for (auto& k : c) {
        k.re *= Rat(l);
        k.im *= Rat(l);
        k.re.canonicalize();
        k.im.canonicalize();
    }
    Int g(0);
    for (const auto& k : c) {
        g = gcd(g, k.re.get_num());
        g = gcd(g, k.im.get_num());
    }
    if (g != 0 && g != 1) {
        for (auto& k : c) {
            k.re /= Rat(g);
            k.im /= Rat(g);
            k.re.canonicalize();
            k.im.canonicalize();
        }
    }
    return UPoly(std::move(c));
}

Dyadic upoly_root_bound(const UPoly& p) {
    if (p.degree() < 1) return Dyadic(1);
    // |c| <= |re| + |im| gives a cheap exact magnitude bound.
    Rat lead = abs(p.lc().re) + abs(p.lc().im);
    Rat mx(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rat m = (abs(p.c[i].re) + abs(p.c[i].im)) / lead;
        if (m > mx) mx = m;
    }
    Rat bound = mx + 2;
    return Dyadic::from_rat(bound, 32, false);
}

Dyadic upoly_separation_bound(const UPoly& p) {
    int d = p.degree();
    if (d <= 1) return Dyadic(1);
    UPoly q = upoly_integer_primitive(p);
    // Mahler: sep > sqrt(3*|disc|) * d^{-(d+2)/2} * M^{-(d-1)}, |disc| >= 1 for a
    // squarefree Gaussian-integer polynomial, M <= 2-norm.
    Int s(0);
    for (const auto& k : q.c) {
        s += k.re.get_num() * k.re.get_num() + k.im.get_num() * k.im.get_num();
    }
    Int t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(d + 2));
    Int sp;
    mpz_pow_ui(sp.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(d - 1));
    t *= sp;
    size_t bits = mpz_sizeinbase(t.get_mpz_t(), 2);
    long k = static_cast<long>(bits / 2) + 2;
    return Dyadic(Int(1), -k);
}

}  // namespace padyn
