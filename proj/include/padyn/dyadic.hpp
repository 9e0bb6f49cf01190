#pragma once

#include <padyn/rational.hpp>

#include <algorithm>
#include <string>

namespace padyn {

/// Exact dyadic rational m * 2^e.
struct Dyadic {
    Int m;
    long e = 0;

    Dyadic() : m(0) {}
    Dyadic(long v) : m(v) {}
    Dyadic(Int v, long exp = 0) : m(std::move(v)), e(exp) { normalize(); }

    void normalize();
    bool is_zero() const { return m == 0; }
    int sign() const { return sgn(m); }

    Rat to_rat() const;
    double to_double() const;

    Dyadic operator-() const { return Dyadic(-m, e); }
    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
    Dyadic operator*(const Dyadic& o) const { return Dyadic(m * o.m, e + o.e); }

    // Multiply by 2^k.
    Dyadic shifted(long k) const { return Dyadic(m, e + k); }

    /// Round to `prec` significant bits. down = toward -inf, else toward +inf.
    Dyadic rounded(unsigned prec, bool down) const;

    static int cmp(const Dyadic& a, const Dyadic& b);
    bool operator<(const Dyadic& o) const { return cmp(*this, o) < 0; }
    bool operator<=(const Dyadic& o) const { return cmp(*this, o) <= 0; }
    bool operator==(const Dyadic& o) const { return cmp(*this, o) == 0; }
    bool operator>(const Dyadic& o) const { return cmp(*this, o) > 0; }
    bool operator>=(const Dyadic& o) const { return cmp(*this, o) >= 0; }

    /// Directed conversion of an exact rational, correct to `prec` bits.
    static Dyadic from_rat(const Rat& r, unsigned prec, bool down);
    /// Directed square root of a nonnegative dyadic.
    Dyadic sqrt(unsigned prec, bool down) const;

    std::string str() const;
};

/// Closed real interval with dyadic endpoints; all operations are enclosures.
struct DyIv {
    Dyadic lo, hi;

    DyIv() = default;
    DyIv(Dyadic v) : lo(v), hi(v) {}
    DyIv(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {}

    static DyIv of_rat(const Rat& r, unsigned prec) {
        return DyIv(Dyadic::from_rat(r, prec, true), Dyadic::from_rat(r, prec, false));
    }

    bool valid() const { return lo <= hi; }
    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    bool contains(const Dyadic& x) const { return lo <= x && x <= hi; }
    Dyadic width() const { return hi - lo; }
    Dyadic mid() const { return Dyadic((lo + hi).m, (lo + hi).e - 1); }

    DyIv operator-() const { return DyIv(-hi, -lo); }
    DyIv operator+(const DyIv& o) const { return DyIv(lo + o.lo, hi + o.hi); }
    DyIv operator-(const DyIv& o) const { return *this + (-o); }
    DyIv operator*(const DyIv& o) const;
    DyIv square() const;
    /// Enclosure of 1/x; requires 0 outside the interval.
    DyIv recip(unsigned prec) const;
    DyIv sqrt_enclosure(unsigned prec) const;  // requires lo >= 0

    DyIv rounded_out(unsigned prec) const {
        return DyIv(lo.rounded(prec, true), hi.rounded(prec, false));
    }
    bool subset_of_interior(const DyIv& o) const {
        return o.lo < lo && hi < o.hi;
    }
    bool intersects(const DyIv& o) const { return !(hi < o.lo || o.hi < lo); }
};

/// Axis-aligned complex rectangle (the ComplexInterval of the toolkit).
struct CBox {
    DyIv re, im;

    CBox() = default;
    CBox(DyIv r, DyIv i) : re(std::move(r)), im(std::move(i)) {}

    static CBox of_grat(const GRat& g, unsigned prec) {
        return CBox(DyIv::of_rat(g.re, prec), DyIv::of_rat(g.im, prec));
    }
    static CBox exact_point(const Dyadic& r, const Dyadic& i) { return CBox(DyIv(r), DyIv(i)); }

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    Dyadic width() const {
        Dyadic a = re.width(), b = im.width();
        return a < b ? b : a;
    }

    CBox operator-() const { return CBox(-re, -im); }
    CBox operator+(const CBox& o) const { return CBox(re + o.re, im + o.im); }
    CBox operator-(const CBox& o) const { return CBox(re - o.re, im - o.im); }
    CBox operator*(const CBox& o) const {
        return CBox(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    CBox conj() const { return CBox(re, -im); }
    /// Enclosure of |z|^2.
    DyIv mag2() const { return re.square() + im.square(); }
    /// Enclosure of 1/z; requires 0 not in the box (checked via mag2 lower bound).
    CBox recip(unsigned prec) const;
    CBox div(const CBox& o, unsigned prec) const { return *this * o.recip(prec); }

    CBox rounded_out(unsigned prec) const {
        return CBox(re.rounded_out(prec), im.rounded_out(prec));
    }
    bool subset_of_interior(const CBox& o) const {
        return re.subset_of_interior(o.re) && im.subset_of_interior(o.im);
    }
    bool intersects(const CBox& o) const { return re.intersects(o.re) && im.intersects(o.im); }
    CBox inflated() const;  // pad by half the width on each side (min one ulp)

    std::string str() const;
};

inline Dyadic max_cmp(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

}  // namespace padyn
