#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace padyn {

using Int = mpz_class;
using Rat = mpq_class;  // always canonical: gcd(num,den)=1, den>0

inline Rat rat_of(long n, long d = 1) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline Rat rat_parse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

/// Gaussian rational a + b*i with exact rational components.
struct GRat {
    Rat re, im;

    GRat() : re(0), im(0) {}
    GRat(long n) : re(n), im(0) {}
    GRat(const Rat& r) : re(r), im(0) {}
    GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GRat I() { return GRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_rational() const { return im == 0; }

    GRat conj() const { return GRat(re, -im); }
    /// |z|^2, an exact nonnegative rational.
    Rat norm() const { return re * re + im * im; }

    GRat operator-() const { return GRat(-re, -im); }
    GRat operator+(const GRat& o) const { return GRat(re + o.re, im + o.im); }
    GRat operator-(const GRat& o) const { return GRat(re - o.re, im - o.im); }
    GRat operator*(const GRat& o) const {
        return GRat(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GRat operator/(const GRat& o) const {
        if (o.is_zero()) throw std::domain_error("GRat: division by zero");
        Rat n = o.norm();
        return GRat((re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n);
    }
    GRat& operator+=(const GRat& o) { re += o.re; im += o.im; return *this; }
    GRat& operator-=(const GRat& o) { re -= o.re; im -= o.im; return *this; }
    GRat& operator*=(const GRat& o) { *this = *this * o; return *this; }
    GRat& operator/=(const GRat& o) { *this = *this / o; return *this; }

    bool operator==(const GRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GRat& o) const { return !(*this == o); }

    GRat inv() const { return GRat(Rat(1)) / *this; }

    GRat pow(unsigned long e) const {
        GRat acc(1), base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    std::string str() const {
        std::ostringstream os;
        if (im == 0) { os << re; return os.str(); }
        if (re != 0) os << re;
        if (im > 0 && re != 0) os << "+";
        if (im == -1) os << "-";
        else if (im != 1) os << im << "*";
        os << "i";
        return os.str();
    }
};

inline GRat operator*(long a, const GRat& b) { return GRat(a) * b; }

/// Total order on GRat used only for canonical term/coefficient ordering.
inline int grat_cmp(const GRat& a, const GRat& b) {
    int c = cmp(a.re, b.re);
    if (c != 0) return c;
    return cmp(a.im, b.im);
}

struct GRatHash {
    size_t operator()(const GRat& g) const {
        auto h = std::hash<double>()(g.re.get_d());
        auto h2 = std::hash<double>()(g.im.get_d());
        return h ^ (h2 * 0x9e3779b97f4a7c15ULL);
    }
};

}  // namespace padyn
