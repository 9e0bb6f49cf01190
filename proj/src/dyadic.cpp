#include <padyn/dyadic.hpp>

#include <cmath>
#include <stdexcept>

namespace padyn {

void Dyadic::normalize() {
    if (m == 0) {
        e = 0;
        return;
    }
    unsigned long z = mpz_scan1(m.get_mpz_t(), 0);
    if (z > 0) {
        m >>= z;
        e += static_cast<long>(z);
    }
}

Rat Dyadic::to_rat() const {
    Rat r(m);
    if (e >= 0) {
        mpz_mul_2exp(r.get_num().get_mpz_t(), r.get_num().get_mpz_t(), e);
    } else {
        Int d(1);
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), -e);
        r /= Rat(d);
    }
    r.canonicalize();
    return r;
}

double Dyadic::to_double() const {
    // Fits rendering/debugging only; clamps on overflow.
    signed long ex;
    double d = mpz_get_d_2exp(&ex, m.get_mpz_t());
    double total = static_cast<double>(ex) + static_cast<double>(e);
    if (total > 1020) return d > 0 ? 1e307 : -1e307;
    if (total < -1060) return 0.0;
    return std::ldexp(d, static_cast<int>(total));
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    if (m == 0) return o;
    if (o.m == 0) return *this;
    if (e == o.e) return Dyadic(m + o.m, e);
    if (e > o.e) {
        Int s = m;
        mpz_mul_2exp(s.get_mpz_t(), s.get_mpz_t(), e - o.e);
        return Dyadic(s + o.m, o.e);
    }
    Int s = o.m;
    mpz_mul_2exp(s.get_mpz_t(), s.get_mpz_t(), o.e - e);
    return Dyadic(m + s, e);
}

int Dyadic::cmp(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    Dyadic d = a - b;
    return d.sign();
}

Dyadic Dyadic::rounded(unsigned prec, bool down) const {
    if (m == 0) return *this;
    size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    if (bits <= prec) return *this;
    long shift = static_cast<long>(bits - prec);
    Int q;
    if (down)
        mpz_fdiv_q_2exp(q.get_mpz_t(), m.get_mpz_t(), shift);
    else
        mpz_cdiv_q_2exp(q.get_mpz_t(), m.get_mpz_t(), shift);
    return Dyadic(q, e + shift);
}

Dyadic Dyadic::from_rat(const Rat& r, unsigned prec, bool down) {
    const Int& n = r.get_num();
    const Int& d = r.get_den();
    if (n == 0) return Dyadic();
    if (d == 1) return Dyadic(n, 0).rounded(prec, down);
    long nb = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
    long db = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
    long k = static_cast<long>(prec) + db - nb + 2;
    if (k < 0) k = 0;
    Int num = n;
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), k);
    Int q;
    if (down)
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), d.get_mpz_t());
    else
        mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), d.get_mpz_t());
    return Dyadic(q, -k);
}

Dyadic Dyadic::sqrt(unsigned prec, bool down) const {
    if (sign() < 0) throw std::domain_error("Dyadic::sqrt of negative value");
    if (m == 0) return Dyadic();
    size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    long t = 0;
    if (bits < 2 * static_cast<size_t>(prec)) t = 2 * static_cast<long>(prec) - static_cast<long>(bits);
    if ((e - t) % 2 != 0) ++t;
    Int M = m;
    mpz_mul_2exp(M.get_mpz_t(), M.get_mpz_t(), t);
    Int rt, rem;
    mpz_sqrtrem(rt.get_mpz_t(), rem.get_mpz_t(), M.get_mpz_t());
    if (!down && rem != 0) rt += 1;
    return Dyadic(rt, (e - t) / 2);
}

std::string Dyadic::str() const {
    return m.get_str() + "*2^" + std::to_string(e);
}

DyIv DyIv::operator*(const DyIv& o) const {
    Dyadic p1 = lo * o.lo, p2 = lo * o.hi, p3 = hi * o.lo, p4 = hi * o.hi;
    Dyadic mn = p1, mx = p1;
    for (const Dyadic* p : {&p2, &p3, &p4}) {
        if (*p < mn) mn = *p;
        if (mx < *p) mx = *p;
    }
    return DyIv(mn, mx);
}

DyIv DyIv::square() const {
    Dyadic a = lo * lo, b = hi * hi;
    Dyadic mx = a < b ? b : a;
    if (contains_zero()) return DyIv(Dyadic(), mx);
    Dyadic mn = a < b ? a : b;
    return DyIv(mn, mx);
}

DyIv DyIv::recip(unsigned prec) const {
    if (contains_zero()) throw std::domain_error("DyIv::recip: interval contains zero");
    Rat rlo = Rat(1) / hi.to_rat();
    Rat rhi = Rat(1) / lo.to_rat();
    return DyIv(Dyadic::from_rat(rlo, prec, true), Dyadic::from_rat(rhi, prec, false));
}

DyIv DyIv::sqrt_enclosure(unsigned prec) const {
    if (lo.sign() < 0) throw std::domain_error("DyIv::sqrt_enclosure: negative lower end");
    return DyIv(lo.sqrt(prec, true), hi.sqrt(prec, false));
}

CBox CBox::recip(unsigned prec) const {
    DyIv n = mag2();
    if (n.lo.sign() <= 0) throw std::domain_error("CBox::recip: box may contain zero");
    DyIv inv_n = n.recip(prec);
    CBox c = conj();
    return CBox(c.re * inv_n, c.im * inv_n);
}

CBox CBox::inflated() const {
    Dyadic w = width();
    Dyadic pad = Dyadic(w.m, w.e - 1);
    if (pad.is_zero()) pad = Dyadic(Int(1), re.lo.e - 4);
    DyIv p(-pad, pad);
    return CBox(re + p, im + p);
}

std::string CBox::str() const {
    return "[" + re.lo.str() + "," + re.hi.str() + "] + [" + im.lo.str() + "," + im.hi.str() + "]*i";
}

}  // namespace padyn
