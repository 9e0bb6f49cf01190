#include <padyn/errors.hpp>
#include <padyn/projmap.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace padyn {

// ---------------------------------------------------------------------------
// Dense homogeneous trivariate arithmetic over Z[i] (composition fast path)
// ---------------------------------------------------------------------------

namespace {

struct DenseH {
    int deg = 0;
    std::vector<Int> re, im;  // size (deg+1)(deg+2)/2; im all zero when real

    static size_t size_for(int d) {
        return static_cast<size_t>((d + 1) * (d + 2) / 2);
    }
    static size_t idx(int a, int b, int d) {
        return static_cast<size_t>(b * (d + 1) - b * (b - 1) / 2 + a);
    }
    void alloc(int d) {
        deg = d;
        re.assign(size_for(d), Int(0));
        im.assign(size_for(d), Int(0));
    }
    bool is_zero() const {
        for (const auto& x : re)
            if (x != 0) return false;
        for (const auto& x : im)
            if (x != 0) return false;
        return true;
    }
};

const std::vector<std::string> kXYZ = {"X", "Y", "Z"};

DenseH to_dense(const MPoly& p, const Int& denom_scale) {
    // p assumed homogeneous in X,Y,Z; multiply by denom_scale to clear.
    DenseH d;
    int deg = std::max(p.total_degree(), 0);
    d.alloc(deg);
    std::vector<int> pos(p.vars.size(), -1);
    for (size_t i = 0; i < p.vars.size(); ++i) {
        if (p.vars[i] == "X") pos[i] = 0;
        if (p.vars[i] == "Y") pos[i] = 1;
        if (p.vars[i] == "Z") pos[i] = 2;
    }
    for (const auto& [e, c] : p.terms) {
        int abc[3] = {0, 0, 0};
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (pos[i] < 0) throw ComputationError("dense path: unexpected variable " + p.vars[i]);
            abc[pos[i]] = e[i];
        }
        Rat sre = c.re * Rat(denom_scale);
        Rat sim = c.im * Rat(denom_scale);
        sre.canonicalize();
        sim.canonicalize();
        if (sre.get_den() != 1 || sim.get_den() != 1)
            throw ComputationError("dense path: denominator not cleared");
        size_t k = DenseH::idx(abc[0], abc[1], deg);
        d.re[k] = sre.get_num();
        d.im[k] = sim.get_num();
    }
    return d;
}

MPoly from_dense(const DenseH& d) {
    MPoly p;
    p.vars = kXYZ;
    for (int b = 0; b <= d.deg; ++b) {
        for (int a = 0; a + b <= d.deg; ++a) {
            size_t k = DenseH::idx(a, b, d.deg);
            if (d.re[k] == 0 && d.im[k] == 0) continue;
            Expo e = {a, b, d.deg - a - b};
            p.terms[e] = GRat(Rat(d.re[k]), Rat(d.im[k]));
        }
    }
    return p;
}

DenseH dense_mul(const DenseH& f, const DenseH& g) {
    DenseH r;
    r.alloc(f.deg + g.deg);
    bool fc = false, gc = false;
    for (const auto& x : f.im)
        if (x != 0) { fc = true; break; }
    for (const auto& x : g.im)
        if (x != 0) { gc = true; break; }
    for (int b1 = 0; b1 <= f.deg; ++b1) {
        for (int a1 = 0; a1 + b1 <= f.deg; ++a1) {
            size_t k1 = DenseH::idx(a1, b1, f.deg);
            const Int &r1 = f.re[k1], &i1 = f.im[k1];
            if (r1 == 0 && i1 == 0) continue;
            for (int b2 = 0; b2 <= g.deg; ++b2) {
                for (int a2 = 0; a2 + b2 <= g.deg; ++a2) {
                    size_t k2 = DenseH::idx(a2, b2, g.deg);
                    const Int &r2 = g.re[k2], &i2 = g.im[k2];
                    if (r2 == 0 && i2 == 0) continue;
                    size_t k = DenseH::idx(a1 + a2, b1 + b2, r.deg);
                    mpz_addmul(r.re[k].get_mpz_t(), r1.get_mpz_t(), r2.get_mpz_t());
                    if (fc && gc) mpz_submul(r.re[k].get_mpz_t(), i1.get_mpz_t(), i2.get_mpz_t());
                    if (gc) mpz_addmul(r.im[k].get_mpz_t(), r1.get_mpz_t(), i2.get_mpz_t());
                    if (fc) mpz_addmul(r.im[k].get_mpz_t(), i1.get_mpz_t(), r2.get_mpz_t());
                }
            }
        }
    }
    return r;
}

void dense_axpy(DenseH& acc, const GRat& coef, const DenseH& t) {
    // acc += coef * t, coef a Gaussian integer (integral components)
    Int cr = coef.re.get_num(), ci = coef.im.get_num();
    if (acc.deg != t.deg) throw ComputationError("dense_axpy degree mismatch");
    for (size_t k = 0; k < t.re.size(); ++k) {
        if (t.re[k] != 0) {
            mpz_addmul(acc.re[k].get_mpz_t(), cr.get_mpz_t(), t.re[k].get_mpz_t());
            if (ci != 0) mpz_addmul(acc.im[k].get_mpz_t(), ci.get_mpz_t(), t.re[k].get_mpz_t());
        }
        if (t.im[k] != 0) {
            mpz_submul(acc.re[k].get_mpz_t(), ci.get_mpz_t(), t.im[k].get_mpz_t());
            mpz_addmul(acc.im[k].get_mpz_t(), cr.get_mpz_t(), t.im[k].get_mpz_t());
        }
    }
}

// Divide the three components by their common integer content.
void triple_content_normalize(std::array<DenseH, 3>& t) {
    Int g(0);
    for (const auto& d : t) {
        for (const auto& x : d.re) g = gcd(g, x);
        for (const auto& x : d.im) g = gcd(g, x);
    }
    if (g == 0 || g == 1) return;
    for (auto& d : t) {
        for (auto& x : d.re) x /= g;
        for (auto& x : d.im) x /= g;
    }
}

// --------------------------- mod-p certificates ---------------------------

struct ModP {
    unsigned long p;
    unsigned long iu;  // square root of -1 mod p
};

unsigned long pw(unsigned long b, unsigned long e, unsigned long p) {
    unsigned long r = 1;
    while (e) {
        if (e & 1) r = static_cast<unsigned long>((__uint128_t)r * b % p);
        b = static_cast<unsigned long>((__uint128_t)b * b % p);
        e >>= 1;
    }
    return r;
}

ModP make_modp(int which) {
    static const unsigned long primes[] = {1000000009ul, 998244353ul, 754974721ul, 167772161ul};
    unsigned long p = primes[which % 4];
    for (unsigned long g = 2;; ++g) {
        unsigned long r = pw(g, (p - 1) / 4, p);
        if (static_cast<unsigned long>((__uint128_t)r * r % p) == p - 1) return {p, r};
    }
}

unsigned long int_mod(const Int& x, unsigned long p) {
    Int r = x % Int(static_cast<long>(p));
    long v = r.get_si();
    if (v < 0) v += static_cast<long>(p);
    return static_cast<unsigned long>(v);
}

std::vector<unsigned long> gfp_gcd(std::vector<unsigned long> a, std::vector<unsigned long> b,
                                   unsigned long p) {
    auto trim = [](std::vector<unsigned long>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        unsigned long lcinv = pw(b.back(), p - 2, p);
        while (a.size() >= b.size() && !a.empty()) {
            unsigned long f = static_cast<unsigned long>((__uint128_t)a.back() * lcinv % p);
            size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                unsigned long sub = static_cast<unsigned long>((__uint128_t)f * b[i] % p);
                size_t k = i + shift;
                a[k] = (a[k] + p - sub) % p;
            }
            trim(a);
            if (a.size() < b.size()) break;
        }
        std::swap(a, b);
        trim(b);
    }
    return a;
}

// Restriction of a dense component to the line {u*P + v*Q : [u:v]} mod p,
// dehomogenized at u=1 (coefficients in t = v).
std::vector<unsigned long> restrict_line_modp(const DenseH& d, const ModP& mp,
                                              const std::array<long, 3>& P,
                                              const std::array<long, 3>& Q) {
    unsigned long p = mp.p;
    // coords_i(t) = P_i + t*Q_i: degree-1 polys; build pow tables per variable.
    auto lin = [&](long a0, long a1) {
        std::vector<unsigned long> v(2);
        v[0] = static_cast<unsigned long>((a0 % static_cast<long>(p) + static_cast<long>(p)) % static_cast<long>(p));
        v[1] = static_cast<unsigned long>((a1 % static_cast<long>(p) + static_cast<long>(p)) % static_cast<long>(p));
        return v;
    };
    auto mulp = [&](const std::vector<unsigned long>& a, const std::vector<unsigned long>& b) {
        std::vector<unsigned long> r(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < b.size(); ++j) {
                if (!b[j]) continue;
                r[i + j] = static_cast<unsigned long>((r[i + j] + (__uint128_t)a[i] * b[j]) % p);
            }
        }
        return r;
    };
    int dg = d.deg;
    std::vector<std::vector<unsigned long>> powX(static_cast<size_t>(dg) + 1),
        powY(static_cast<size_t>(dg) + 1), powZ(static_cast<size_t>(dg) + 1);
    powX[0] = powY[0] = powZ[0] = {1ul};
    for (int k = 1; k <= dg; ++k) {
        powX[static_cast<size_t>(k)] = mulp(powX[static_cast<size_t>(k - 1)], lin(P[0], Q[0]));
        powY[static_cast<size_t>(k)] = mulp(powY[static_cast<size_t>(k - 1)], lin(P[1], Q[1]));
        powZ[static_cast<size_t>(k)] = mulp(powZ[static_cast<size_t>(k - 1)], lin(P[2], Q[2]));
    }
    std::vector<unsigned long> acc(static_cast<size_t>(dg) + 1, 0);
    for (int b = 0; b <= dg; ++b) {
        for (int a = 0; a + b <= dg; ++a) {
            size_t k = DenseH::idx(a, b, dg);
            unsigned long cr = int_mod(d.re[k], p);
            unsigned long cim = int_mod(d.im[k], p);
            if (cr == 0 && cim == 0) continue;
            unsigned long coef = (cr + (__uint128_t)cim * mp.iu) % p;
            if (!coef) continue;
            int c = dg - a - b;
            auto t1 = mulp(powX[static_cast<size_t>(a)], powY[static_cast<size_t>(b)]);
            auto t2 = mulp(t1, powZ[static_cast<size_t>(c)]);
            for (size_t j = 0; j < t2.size(); ++j)
                acc[j] = static_cast<unsigned long>((acc[j] + (__uint128_t)coef * t2[j]) % p);
        }
    }
    return acc;
}

// Certified check that the three components share no polynomial factor.
bool certify_coprime(const std::array<DenseH, 3>& t) {
    static const std::array<std::array<long, 3>, 4> Ps = {
        {{1, 0, 0}, {1, 2, -1}, {0, 1, 3}, {2, -1, 5}}};
    static const std::array<std::array<long, 3>, 4> Qs = {
        {{0, 1, 1}, {3, 1, 2}, {1, -2, 1}, {1, 3, -2}}};
    for (int attempt = 0; attempt < 4; ++attempt) {
        ModP mp = make_modp(attempt);
        auto r0 = restrict_line_modp(t[0], mp, Ps[static_cast<size_t>(attempt)], Qs[static_cast<size_t>(attempt)]);
        auto r1 = restrict_line_modp(t[1], mp, Ps[static_cast<size_t>(attempt)], Qs[static_cast<size_t>(attempt)]);
        auto r2 = restrict_line_modp(t[2], mp, Ps[static_cast<size_t>(attempt)], Qs[static_cast<size_t>(attempt)]);
        auto trim_deg = [](const std::vector<unsigned long>& v) {
            int dd = static_cast<int>(v.size()) - 1;
            while (dd >= 0 && v[static_cast<size_t>(dd)] == 0) --dd;
            return dd;
        };
        int d0 = trim_deg(r0), d1 = trim_deg(r1), d2 = trim_deg(r2);
        int full = t[0].deg;
        if (d0 != full && d1 != full && d2 != full) continue;  // common root at infinity?
        auto g = gfp_gcd(r0, r1, mp.p);
        g = gfp_gcd(g, r2, mp.p);
        if (static_cast<int>(g.size()) - 1 == 0) return true;
    }
    return false;
}

std::array<DenseH, 3> map_to_dense(const std::array<MPoly, 3>& comp) {
    Int l(1);
    for (const auto& p : comp)
        for (const auto& [e, c] : p.terms) {
            l = lcm(l, c.re.get_den());
            l = lcm(l, c.im.get_den());
        }
    std::array<DenseH, 3> out = {to_dense(comp[0], l), to_dense(comp[1], l), to_dense(comp[2], l)};
    triple_content_normalize(out);
    return out;
}

// Evaluate the (small) map f at the dense triple g.
std::array<DenseH, 3> compose_dense(const std::array<MPoly, 3>& f_comp, int f_deg,
                                    const std::array<DenseH, 3>& g) {
    // Clear f's denominators.
    Int l(1);
    for (const auto& p : f_comp)
        for (const auto& [e, c] : p.terms) {
            l = lcm(l, c.re.get_den());
            l = lcm(l, c.im.get_den());
        }
    int dg = g[0].deg;
    int out_deg = f_deg * dg;
    // Collect needed monomials (a,b,c) of f across components.
    std::map<std::array<int, 3>, DenseH> cache;
    auto monomial_value = [&](const std::array<int, 3>& abc) -> const DenseH& {
        auto it = cache.find(abc);
        if (it != cache.end()) return it->second;
        DenseH v;
        v.alloc(0);
        v.re[0] = 1;
        bool started = false;
        // build by repeated multiplication (monomial degrees are tiny)
        for (int which = 0; which < 3; ++which) {
            for (int k = 0; k < abc[static_cast<size_t>(which)]; ++k) {
                if (!started) {
                    v = g[static_cast<size_t>(which)];
                    started = true;
                } else {
                    v = dense_mul(v, g[static_cast<size_t>(which)]);
                }
            }
        }
        if (!started) {
            v.alloc(0);
            v.re[0] = 1;
        }
        return cache.emplace(abc, std::move(v)).first->second;
    };
    std::array<DenseH, 3> out;
    for (int ci = 0; ci < 3; ++ci) {
        out[static_cast<size_t>(ci)].alloc(out_deg);
        const MPoly& p = f_comp[static_cast<size_t>(ci)];
        std::vector<int> pos(p.vars.size(), -1);
        for (size_t i = 0; i < p.vars.size(); ++i) {
            if (p.vars[i] == "X") pos[i] = 0;
            if (p.vars[i] == "Y") pos[i] = 1;
            if (p.vars[i] == "Z") pos[i] = 2;
        }
        for (const auto& [e, c] : p.terms) {
            std::array<int, 3> abc = {0, 0, 0};
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) abc[static_cast<size_t>(pos[i])] = e[i];
            GRat coef = c;
            coef.re *= Rat(l);
            coef.im *= Rat(l);
            coef.re.canonicalize();
            coef.im.canonicalize();
            dense_axpy(out[static_cast<size_t>(ci)], coef, monomial_value(abc));
        }
    }
    triple_content_normalize(out);
    return out;
}

long dense_terms(const std::array<DenseH, 3>& t) {
    return static_cast<long>(3 * DenseH::size_for(t[0].deg));
}

// Remove any common polynomial factor; returns the reduced triple.
std::array<MPoly, 3> reduce_common_factor(std::array<MPoly, 3> comp) {
    MPoly g = mpoly_gcd(mpoly_gcd(comp[0], comp[1]), comp[2]);
    if (!g.is_constant()) {
        for (auto& p : comp) p = p.div_exact(g);
    }
    return comp;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProjMap construction
// ---------------------------------------------------------------------------

namespace {

// Joint canonical form: clear denominators jointly, divide common integer
// content, fix a deterministic sign.
std::array<MPoly, 3> canonicalize_triple(std::array<MPoly, 3> comp) {
    auto dense = map_to_dense(comp);
    std::array<MPoly, 3> out = {from_dense(dense[0]), from_dense(dense[1]), from_dense(dense[2])};
    for (auto& p : out)
        if (p.vars.empty()) p.vars = kXYZ;
    // sign normalization: first nonzero component's leading coefficient gets
    // positive real part (or positive imaginary part when purely imaginary)
    for (const auto& p : out) {
        if (p.is_zero()) continue;
        GRat lead = p.leading_coeff();
        bool flip = lead.re < 0 || (lead.re == 0 && lead.im < 0);
        if (flip)
            for (auto& q : out) q = -q;
        break;
    }
    return out;
}

}  // namespace

ProjMap ProjMap::normalize(std::array<MPoly, 3> components) {
    bool all_zero = true;
    for (const auto& p : components) all_zero = all_zero && p.is_zero();
    if (all_zero) throw ZeroMap("all three components vanish");
    int d = -1;
    for (auto& p : components) {
        for (const auto& v : p.vars)
            if (v != "X" && v != "Y" && v != "Z")
                throw ComputationError("map components must use variables X, Y, Z");
        if (p.is_zero()) continue;
        if (!p.is_homogeneous()) throw NotHomogeneous("component is not homogeneous: " + p.str());
        if (d < 0) d = p.total_degree();
        if (p.total_degree() != d) throw UnequalDegrees("components have different degrees");
    }
    components = reduce_common_factor(std::move(components));
    components = canonicalize_triple(std::move(components));
    ProjMap f;
    f.comp = components;
    f.deg = -1;
    for (const auto& p : f.comp)
        if (!p.is_zero()) f.deg = std::max(f.deg, p.total_degree());
    return f;
}

ProjMap ProjMap::identity() {
    return normalize({MPoly::var("X"), MPoly::var("Y"), MPoly::var("Z")});
}

ProjMap ProjMap::from_definition(const MapDefinition& def) {
    auto comp = def.parse_components();
    if (def.vars.size() != 3) throw ComputationError("map definition must have three variables");
    std::array<MPoly, 3> renamed;
    for (size_t k = 0; k < 3; ++k) {
        MPoly p = comp[k];
        const std::array<std::string, 3> tmp = {"__x", "__y", "__z"};
        for (size_t i = 0; i < 3; ++i) p = p.rename_var(def.vars[i], tmp[i]);
        p = p.rename_var("__x", "X").rename_var("__y", "Y").rename_var("__z", "Z");
        renamed[k] = p;
    }
    return normalize(renamed);
}

ProjMap ProjMap::linear(const std::array<std::array<GRat, 3>, 3>& m) {
    MPoly X = MPoly::var("X"), Y = MPoly::var("Y"), Z = MPoly::var("Z");
    std::array<MPoly, 3> comp;
    for (size_t r = 0; r < 3; ++r)
        comp[r] = MPoly::constant(m[r][0]) * X + MPoly::constant(m[r][1]) * Y +
                  MPoly::constant(m[r][2]) * Z;
    ProjMap f = normalize(comp);
    if (f.deg != 1) throw ComputationError("linear map degenerated");
    return f;
}

bool ProjMap::operator==(const ProjMap& o) const {
    // canonical form makes componentwise comparison meaningful
    return comp[0] == o.comp[0] && comp[1] == o.comp[1] && comp[2] == o.comp[2];
}

std::string ProjMap::str() const {
    return "[" + comp[0].str() + " : " + comp[1].str() + " : " + comp[2].str() + "]";
}

// ---------------------------------------------------------------------------
// Composition and degree sequences
// ---------------------------------------------------------------------------

ProjMap compose(const ProjMap& f, const ProjMap& g) {
    auto gd = map_to_dense(g.comp);
    auto rd = compose_dense(f.comp, f.deg, gd);
    if (!certify_coprime(rd)) {
        // exact fallback: divide out the common factor via MPoly gcd
        std::array<MPoly, 3> comp = {from_dense(rd[0]), from_dense(rd[1]), from_dense(rd[2])};
        return ProjMap::normalize(comp);
    }
    std::array<MPoly, 3> comp = {from_dense(rd[0]), from_dense(rd[1]), from_dense(rd[2])};
    ProjMap r;
    r.comp = canonicalize_triple(comp);
    r.deg = rd[0].deg;
    for (const auto& p : r.comp)
        if (!p.is_zero()) r.deg = p.total_degree();
    return r;
}

ProjMap iterate(const ProjMap& f, int n) {
    if (n < 1) throw ComputationError("iterate: n must be >= 1");
    ProjMap acc = f;
    for (int k = 1; k < n; ++k) acc = compose(f, acc);
    return acc;
}

std::vector<int> degree_sequence(const ProjMap& f, int N, long term_cap) {
    std::vector<int> out;
    auto cur = map_to_dense(f.comp);
    out.push_back(f.deg);
    for (int k = 1; k < N; ++k) {
        auto next = compose_dense(f.comp, f.deg, cur);
        if (dense_terms(next) > term_cap)
            throw ResourceCap("degree_sequence: term cap exceeded at step " + std::to_string(k + 1));
        if (!certify_coprime(next)) {
            std::array<MPoly, 3> comp = {from_dense(next[0]), from_dense(next[1]), from_dense(next[2])};
            ProjMap red = ProjMap::normalize(comp);
            next = map_to_dense(red.comp);
        }
        out.push_back(next[0].deg);
        cur = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Jacobian and critical structure
// ---------------------------------------------------------------------------

MPoly jacobian_det(const ProjMap& f) {
    std::array<std::array<MPoly, 3>, 3> J;
    const std::array<std::string, 3> vars = {"X", "Y", "Z"};
    for (size_t r = 0; r < 3; ++r)
        for (size_t c = 0; c < 3; ++c) J[r][c] = f.comp[r].derivative(vars[c]);
    MPoly det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    return det;
}

std::vector<CriticalComponent> critical_locus(const ProjMap& f) {
    MPoly det = jacobian_det(f);
    std::vector<CriticalComponent> out;
    if (det.is_zero()) throw ComputationError("map is not dominant (Jacobian vanishes identically)");
    if (det.is_constant()) return out;
    auto lf = mpoly_linear_factors(det);
    for (const auto& [lin, mult] : lf.factors) out.push_back({lin.normalized(), mult});
    if (!lf.cofactor.is_constant()) {
        // split squarefree pieces of the nonlinear cofactor with multiplicity
        MPoly rest = lf.cofactor.normalized();
        int mult = 0;
        MPoly sf = mpoly_squarefree(rest);
        MPoly q = rest;
        while (q.divisible_by(sf, &q)) ++mult;
        // q now holds rest / sf^mult; in scope the cofactor is a power of its
        // squarefree part, otherwise record it with multiplicity 1 pieces.
        if (q.is_constant() && mult >= 1) {
            out.push_back({sf, mult});
        } else {
            out.push_back({sf, 1});
        }
    }
    return out;
}

std::optional<PPoint> apply_map(const ProjMap& f, const PPoint& x) {
    PPoint out;
    out.field = x.field;
    const auto& F = *x.field;
    for (size_t ci = 0; ci < 3; ++ci) {
        const MPoly& p = f.comp[ci];
        std::vector<int> pos(p.vars.size(), -1);
        for (size_t i = 0; i < p.vars.size(); ++i) {
            if (p.vars[i] == "X") pos[i] = 0;
            if (p.vars[i] == "Y") pos[i] = 1;
            if (p.vars[i] == "Z") pos[i] = 2;
        }
        UPoly acc;
        for (const auto& [e, c] : p.terms) {
            UPoly t = UPoly::constant(c);
            for (size_t i = 0; i < e.size(); ++i) {
                for (int k = 0; k < e[i]; ++k) t = F.mul(t, x.c[static_cast<size_t>(pos[i])]);
            }
            acc = acc + t;
        }
        out.c[ci] = F.reduce(acc);
    }
    bool all_zero = true;
    for (int k = 0; k < 3; ++k) all_zero = all_zero && out.coord_is_zero(k);
    if (all_zero) return std::nullopt;
    out.canonicalize();
    return out;
}

std::optional<std::array<GRat, 3>> apply_map_gaussian(const ProjMap& f, const std::array<GRat, 3>& x) {
    std::map<std::string, GRat> pt{{"X", x[0]}, {"Y", x[1]}, {"Z", x[2]}};
    std::array<GRat, 3> out;
    bool all_zero = true;
    for (size_t k = 0; k < 3; ++k) {
        out[k] = f.comp[k].eval(pt);
        all_zero = all_zero && out[k].is_zero();
    }
    if (all_zero) return std::nullopt;
    // canonical scaling: first nonzero coordinate 1
    for (size_t k = 0; k < 3; ++k) {
        if (!out[k].is_zero()) {
            GRat inv = out[k].inv();
            for (auto& v : out) v = v * inv;
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Zero-dimensional solving
// ---------------------------------------------------------------------------

namespace {

// Solutions with Z = 1 of the system {p_i(X, Y, 1) = 0}.
void solve_affine_chart(const std::vector<MPoly>& polys, std::vector<std::pair<PPoint, int>>& out);

// Solutions with Z = 0 (binary forms in X, Y).
void solve_at_infinity(const std::vector<MPoly>& polys, std::vector<std::pair<PPoint, int>>& out) {
    std::map<std::string, MPoly> z0{{"Z", MPoly::zero()}};
    std::vector<UPoly> forms;  // dehomogenized at X = 1 -> poly in t = Y
    bool all_zero_at_010 = true;
    UPoly common;
    bool first = true;
    for (const auto& p : polys) {
        MPoly b = p.substitute(z0);
        if (b.is_zero()) continue;  // vanishes on the whole line at infinity
        // value at [0:1:0]: coefficient of Y^deg
        MPoly atY = b;
        std::map<std::string, MPoly> x0{{"X", MPoly::zero()}};
        MPoly q = b.substitute(x0);
        if (q.is_zero()) {
            // [0:1:0] is a root of this form
        } else {
            all_zero_at_010 = false;
        }
        UPoly u = b.dehomogenized("X").rename_var("Y", "t").to_upoly();
        if (first) {
            common = u;
            first = false;
        } else {
            common = upoly_gcd(common, u);
        }
    }
    if (first)
        throw PositiveDimensionalIntersection("every equation vanishes on the line at infinity");
    if (all_zero_at_010) out.push_back({PPoint::gaussian(GRat(0), GRat(1), GRat(0)), 1});
    if (common.degree() >= 1) {
        for (const auto& [alg, mult] : Alg::roots_of(common)) {
            // verify against all forms (gcd chain already ensures it)
            PPoint pt(std::make_shared<AlgField>(alg),
                      {UPoly::constant(GRat(1)), UPoly::x(), UPoly()});
            pt.canonicalize();
            out.push_back({pt, mult});
        }
    }
}

void solve_affine_chart(const std::vector<MPoly>& polys, std::vector<std::pair<PPoint, int>>& out) {
    std::map<std::string, MPoly> z1{{"Z", MPoly::constant(GRat(1))}};
    std::vector<MPoly> affine;
    for (const auto& p : polys) {
        MPoly q = p.substitute(z1);
        if (q.is_zero()) continue;
        affine.push_back(q);
    }
    if (affine.empty()) throw PositiveDimensionalIntersection("system vanishes identically");
    // Eliminate Y via pairwise resultants to obtain candidate X values.
    UPoly xcond;
    bool have = false;
    std::vector<MPoly> with_y, without_y;
    for (const auto& q : affine)
        (q.degree_in("Y") > 0 ? with_y : without_y).push_back(q);
    for (const auto& q : without_y) {
        UPoly u = q.rename_var("X", "t").to_upoly();
        xcond = have ? upoly_gcd(xcond, u) : u.monic();
        have = true;
    }
    for (size_t i = 0; i + 1 < with_y.size(); ++i) {
        MPoly r = mpoly_resultant(with_y[i], with_y[i + 1], "Y");
        if (r.is_zero()) continue;  // shared factor in Y; handled by gcd below
        UPoly u = r.rename_var("X", "t").to_upoly();
        xcond = have ? upoly_gcd(xcond, u) : u.monic();
        have = true;
    }
    if (with_y.size() == 1 && !have) {
        // single bivariate equation: positive-dimensional
        throw PositiveDimensionalIntersection("only one independent equation");
    }
    if (!have || xcond.degree() < 0) throw PositiveDimensionalIntersection("no X-eliminant");
    if (xcond.degree() == 0) return;  // no affine solutions
    if (with_y.empty()) throw PositiveDimensionalIntersection("Y is unconstrained");
    for (const auto& [alg, multx] : Alg::roots_of(xcond)) {
        AlgFieldPtr F = std::make_shared<AlgField>(alg);
        // substitute X = alg into each Y-poly and take the gcd over F
        FPoly g;
        g.field = F;
        bool first = true;
        for (const auto& q : with_y) {
            auto cs = q.coeffs_in("Y");
            FPoly fq;
            fq.field = F;
            for (const auto& cY : cs) {
                // cY is a poly in X: evaluate at the generator
                UPoly e;
                auto xs = cY.coeffs_in("X");
                for (size_t k = xs.size(); k-- > 0;) {
                    GRat g0 = xs[k].is_zero() ? GRat(0) : xs[k].constant_value();
                    e = e * UPoly::x() + UPoly::constant(g0);
                    e = F->reduce(e);
                }
                fq.c.push_back(e);
            }
            fq.trim();
            if (fq.is_zero()) continue;
            g = first ? fq.monic() : fpoly_gcd(g, fq);
            first = false;
            if (!g.is_zero() && g.degree() == 0) break;
        }
        if (first) throw PositiveDimensionalIntersection("no Y-condition at candidate");
        if (g.is_zero() || g.degree() == 0) continue;  // no common Y root here
        // also the without_y conditions must vanish at alg (already in xcond gcd)
        bool extra_ok = true;
        for (const auto& q : without_y) {
            UPoly u = q.rename_var("X", "t").to_upoly();
            if (!F->is_zero(u)) {
                extra_ok = false;
                break;
            }
        }
        if (!extra_ok) continue;
        if (g.degree() == 1) {
            UPoly y0 = F->mul(-g.c[0], F->inv(g.c[1]));
            PPoint pt(F, {UPoly::constant(GRat(1)), y0, UPoly::constant(GRat(1))});
            // verify exactly
            bool ok = true;
            for (const auto& q : affine) {
                // evaluate q at (X=gen, Y=y0)
                auto cs = q.coeffs_in("Y");
                UPoly acc;
                for (size_t k = cs.size(); k-- > 0;) {
                    UPoly e;
                    auto xs = cs[k].coeffs_in("X");
                    for (size_t j = xs.size(); j-- > 0;) {
                        GRat g0 = xs[j].is_zero() ? GRat(0) : xs[j].constant_value();
                        e = e * UPoly::x() + UPoly::constant(g0);
                        e = F->reduce(e);
                    }
                    acc = F->reduce(acc * y0 + e);
                }
                if (!F->is_zero(acc)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                // chart Z=1: affine (X, Y) = (gen, y0) is the point [x0 : y0 : 1]
                PPoint proj(F, {UPoly::x(), y0, UPoly::constant(GRat(1))});
                proj.canonicalize();
                out.push_back({proj, multx});
            }
        } else if (g.degree() == 2) {
            // complete the square: y = (-b +- sqrt(b^2-4ac)) / (2a)
            UPoly a2 = g.c[2], b1 = g.c[1], c0 = g.c[0];
            UPoly disc = F->reduce(b1 * b1 - UPoly::constant(GRat(4)) * a2 * c0);
            UPoly inv2a = F->inv(F->reduce(UPoly::constant(GRat(2)) * a2));
            if (F->is_zero(disc)) {
                UPoly y0 = F->mul(-b1, inv2a);
                PPoint proj(F, {UPoly::x(), y0, UPoly::constant(GRat(1))});
                proj.canonicalize();
                out.push_back({proj, 2 * multx});
            } else {
                auto [bp, bm] = sqrt_extend(F, disc);
                for (const auto& br : {bp, bm}) {
                    if (!br.old_gen_rep)
                        throw ComputationError("solve: sqrt extension without embedding");
                    AlgFieldPtr G = br.field;
                    // embed: x0 = old_gen(new), y = (-b(old) + root)/(2a(old))
                    auto embed = [&](const UPoly& e) {
                        UPoly acc;
                        for (size_t k = e.c.size(); k-- > 0;) {
                            acc = G->reduce(acc * (*br.old_gen_rep) + UPoly::constant(e.c[k]));
                        }
                        return acc;
                    };
                    UPoly xg = embed(UPoly::x());
                    UPoly yv = G->reduce(G->mul(embed(-b1) + UPoly::x(), embed(inv2a)));
                    PPoint proj(G, {xg, yv, UPoly::constant(GRat(1))});
                    proj.canonicalize();
                    out.push_back({proj, multx});
                }
            }
        } else {
            throw ComputationError("solve: fiber needs an extension of degree > 2");
        }
    }
}

}  // namespace

std::vector<std::pair<PPoint, int>> solve_common_zeros(const std::vector<MPoly>& polys) {
    std::vector<MPoly> ps;
    for (const auto& p : polys)
        if (!p.is_zero()) ps.push_back(p);
    if (ps.size() < 2) throw PositiveDimensionalIntersection("fewer than two nonzero equations");
    std::vector<std::pair<PPoint, int>> out;
    solve_at_infinity(ps, out);
    solve_affine_chart(ps, out);
    // dedup (multiplicity: keep max)
    std::vector<std::pair<PPoint, int>> dedup;
    for (auto& [pt, m] : out) {
        bool found = false;
        for (auto& [qt, mq] : dedup)
            if (ppoint_equal(pt, qt)) {
                mq = std::max(mq, m);
                found = true;
                break;
            }
        if (!found) dedup.push_back({pt, m});
    }
    return dedup;
}

std::vector<PPoint> indeterminacy(const ProjMap& f) {
    std::vector<MPoly> polys = {f.comp[0], f.comp[1], f.comp[2]};
    std::vector<PPoint> out;
    for (auto& [pt, m] : solve_common_zeros(polys)) out.push_back(pt);
    return out;
}

// ---------------------------------------------------------------------------
// Collapsed curves
// ---------------------------------------------------------------------------

namespace {

// Parameterize a line {aX+bY+cZ=0} by two Gaussian points.
std::pair<std::array<GRat, 3>, std::array<GRat, 3>> line_points(const MPoly& line) {
    std::map<std::string, GRat> coeff{{"X", GRat(0)}, {"Y", GRat(0)}, {"Z", GRat(0)}};
    for (const auto& [e, c] : line.terms) {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] == 1) coeff[line.vars[i]] = c;
    }
    GRat a = coeff["X"], b = coeff["Y"], c = coeff["Z"];
    std::vector<std::array<GRat, 3>> pts;
    if (!a.is_zero()) {
        pts.push_back({-b / a, GRat(1), GRat(0)});
        pts.push_back({-c / a, GRat(0), GRat(1)});
    } else if (!b.is_zero()) {
        pts.push_back({GRat(1), -a / b, GRat(0)});
        pts.push_back({GRat(0), -c / b, GRat(1)});
    } else {
        pts.push_back({GRat(1), GRat(0), GRat(0)});
        pts.push_back({GRat(0), GRat(1), GRat(0)});
    }
    return {pts[0], pts[1]};
}

}  // namespace

std::vector<CollapsedCurve> collapsed_curves(const ProjMap& f) {
    std::vector<CollapsedCurve> out;
    for (const auto& comp : critical_locus(f)) {
        const MPoly& h = comp.curve;
        if (h.total_degree() == 1) {
            auto [P, Q] = line_points(h);
            // image of the parameterized line t -> P + tQ
            MPoly t = MPoly::var("t");
            std::map<std::string, MPoly> sub;
            const std::array<std::string, 3> vars = {"X", "Y", "Z"};
            for (size_t i = 0; i < 3; ++i)
                sub[vars[i]] = MPoly::constant(P[i]) + MPoly::constant(Q[i]) * t;
            std::array<MPoly, 3> img;
            for (size_t k = 0; k < 3; ++k) img[k] = f.comp[k].substitute(sub);
            // collapsed iff all cross products vanish identically
            bool collapsed = (img[0] * img[1].derivative("t") == img[1] * img[0].derivative("t")) &&
                             (img[0] * img[2].derivative("t") == img[2] * img[0].derivative("t")) &&
                             (img[1] * img[2].derivative("t") == img[2] * img[1].derivative("t"));
            if (collapsed) {
                // image point: evaluate at a parameter value where not all vanish
                for (long tv = 0; tv < 16; ++tv) {
                    std::array<GRat, 3> x = {P[0] + GRat(tv) * Q[0], P[1] + GRat(tv) * Q[1],
                                             P[2] + GRat(tv) * Q[2]};
                    auto y = apply_map_gaussian(f, x);
                    if (y) {
                        out.push_back({h, PPoint::gaussian((*y)[0], (*y)[1], (*y)[2])});
                        break;
                    }
                }
            }
        } else {
            // sample-based decision, sound via a Bezout count
            int df = f.deg, dh = h.total_degree();
            int lines_needed = 2 * df + 3;
            std::vector<PPoint> images;
            bool consistent = true;
            int points_used = 0;
            for (long cval = 0; consistent && points_used < (df * dh + 1) && cval < 8 * lines_needed;
                 ++cval) {
                std::map<std::string, MPoly> sub{{"X", MPoly::constant(GRat(cval))},
                                                 {"Z", MPoly::constant(GRat(1))}};
                MPoly slice = h.substitute(sub);
                if (slice.is_zero() || slice.degree_in("Y") < 1) continue;
                UPoly u = slice.rename_var("Y", "t").to_upoly();
                for (const auto& [alg, m] : Alg::roots_of(u)) {
                    AlgFieldPtr F = std::make_shared<AlgField>(alg);
                    PPoint pt(F, {UPoly::constant(GRat(cval)), UPoly::x(), UPoly::constant(GRat(1))});
                    auto img = apply_map(f, pt);
                    if (!img) continue;
                    ++points_used;
                    if (images.empty()) {
                        images.push_back(*img);
                    } else if (!ppoint_equal(images[0], *img)) {
                        consistent = false;
                        break;
                    }
                }
            }
            if (consistent && points_used > df * dh && !images.empty()) {
                out.push_back({h, images[0]});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Iterate bundles and finiteness
// ---------------------------------------------------------------------------

IterateData make_iterate_data(const ProjMap& f, int k) {
    IterateData d;
    d.base = f;
    d.k = k;
    d.composed = k == 1 ? f : iterate(f, k);
    // indeterminacy recursion: I_{f^k} = I_f ∪ f^{-1}(I_{f^{k-1}}), each
    // candidate verified against the normalized composite.
    std::vector<PPoint> cur = indeterminacy(f);
    std::vector<PPoint> all = cur;
    for (int step = 2; step <= k; ++step) {
        std::vector<PPoint> next = indeterminacy(f);
        for (const auto& q : cur) {
            if (!q.is_gaussian())
                throw ComputationError("indeterminacy recursion: non-Gaussian intermediate target");
            auto qs = q.gaussian_coords();
            for (auto& [pre, m] : preimages(f, PPoint::gaussian(qs[0], qs[1], qs[2]))) {
                bool dup = false;
                for (const auto& ex : next) dup = dup || ppoint_equal(ex, pre);
                if (!dup) next.push_back(pre);
            }
        }
        cur = next;
        if (step == k) all = cur;
    }
    // verify each candidate kills all components of the composed map
    for (const auto& pt : all) {
        bool in = true;
        for (size_t ci = 0; ci < 3 && in; ++ci) {
            // evaluate composed component at pt
            PPoint tmp = pt;
            const MPoly& p = d.composed.comp[ci];
            std::vector<int> pos(p.vars.size(), -1);
            for (size_t i = 0; i < p.vars.size(); ++i) {
                if (p.vars[i] == "X") pos[i] = 0;
                if (p.vars[i] == "Y") pos[i] = 1;
                if (p.vars[i] == "Z") pos[i] = 2;
            }
            UPoly acc;
            for (const auto& [e, c] : p.terms) {
                UPoly t = UPoly::constant(c);
                for (size_t i = 0; i < e.size(); ++i)
                    for (int j = 0; j < e[i]; ++j) t = tmp.field->mul(t, tmp.c[static_cast<size_t>(pos[i])]);
                acc = tmp.field->reduce(acc + t);
            }
            in = tmp.field->is_zero(acc);
        }
        if (in) d.indeterminacy_set.push_back(pt);
    }
    // collapsed curves of the iterate: pullbacks of the base collapsed curves
    auto base_collapsed = collapsed_curves(f);
    for (int j = 0; j <= k - 1; ++j) {
        ProjMap fj = j == 0 ? ProjMap::identity() : iterate(f, j);
        for (const auto& cc : base_collapsed) {
            // (f^j)^{-1}(curve): the form pulled back through f^j
            std::map<std::string, MPoly> sub{{"X", fj.comp[0]}, {"Y", fj.comp[1]}, {"Z", fj.comp[2]}};
            MPoly form = j == 0 ? cc.curve : cc.curve.substitute(sub);
            // image under f^k: the (k-1-j)-step forward orbit of cc.image
            PPoint img = cc.image;
            bool defined = true;
            for (int s = 0; s < k - 1 - j && defined; ++s) {
                auto nxt = apply_map(f, img);
                if (!nxt) {
                    defined = false;
                    break;
                }
                img = *nxt;
            }
            CollapsedCurve entry{form.normalized(), img};
            if (!defined) entry.image = cc.image;  // partial orbit; curve still non-finite
            d.collapsed.push_back(entry);
        }
    }
    return d;
}

FiniteCheck is_finite_at(const IterateData& fk, const PPoint& p) {
    for (const auto& ip : fk.indeterminacy_set)
        if (ppoint_equal(ip, p)) return {false, "indeterminate point of the iterate"};
    for (const auto& cc : fk.collapsed) {
        // membership: evaluate the form at p
        PPoint tmp = p;
        const MPoly& form = cc.curve;
        std::vector<int> pos(form.vars.size(), -1);
        for (size_t i = 0; i < form.vars.size(); ++i) {
            if (form.vars[i] == "X") pos[i] = 0;
            if (form.vars[i] == "Y") pos[i] = 1;
            if (form.vars[i] == "Z") pos[i] = 2;
        }
        UPoly acc;
        for (const auto& [e, c] : form.terms) {
            UPoly t = UPoly::constant(c);
            for (size_t i = 0; i < e.size(); ++i)
                for (int j = 0; j < e[i]; ++j) t = tmp.field->mul(t, tmp.c[static_cast<size_t>(pos[i])]);
            acc = tmp.field->reduce(acc + t);
        }
        if (tmp.field->is_zero(acc)) return {false, "lies on a collapsed curve of the iterate"};
    }
    return {true, "not indeterminate and on no collapsed curve"};
}

// ---------------------------------------------------------------------------
// Stability certificate
// ---------------------------------------------------------------------------

StabilityCertificate is_algebraically_stable_up_to(const ProjMap& f, int N) {
    StabilityCertificate cert;
    cert.degrees = degree_sequence(f, N);
    cert.degrees_multiplicative = true;
    long dk = 1;
    for (int k = 0; k < N; ++k) {
        dk *= f.deg;
        if (cert.degrees[static_cast<size_t>(k)] != dk) cert.degrees_multiplicative = false;
    }
    auto ind = indeterminacy(f);
    bool any_hit = false;
    for (const auto& cc : collapsed_curves(f)) {
        StabilityCertificate::OrbitRecord rec;
        rec.curve = cc.curve;
        PPoint cur = cc.image;
        rec.orbit.push_back(cur);
        for (int step = 1; step <= N; ++step) {
            // indeterminacy hit?  (the collapse image itself counts as step 1)
            bool hit = false;
            for (const auto& ip : ind) hit = hit || ppoint_equal(ip, cur);
            if (hit) {
                rec.hits_indeterminacy_at = step;
                any_hit = true;
                break;
            }
            auto nxt = apply_map(f, cur);
            if (!nxt) {
                rec.hits_indeterminacy_at = step;
                any_hit = true;
                break;
            }
            cur = *nxt;
            // periodicity: compare against earlier orbit points
            bool closed = false;
            for (size_t j = 0; j < rec.orbit.size(); ++j) {
                if (ppoint_equal(rec.orbit[j], cur)) {
                    rec.periodic = true;
                    rec.preperiod = static_cast<int>(j);
                    rec.period = static_cast<int>(rec.orbit.size() - j);
                    closed = true;
                    break;
                }
            }
            if (closed) break;
            rec.orbit.push_back(cur);
        }
        cert.collapsed_orbits.push_back(std::move(rec));
    }
    cert.stable = !any_hit && cert.degrees_multiplicative;
    if (!any_hit && !cert.degrees_multiplicative)
        cert.summary = "collapsed orbits avoid indeterminacy but degrees drop (inconsistent)";
    else if (any_hit && cert.degrees_multiplicative)
        cert.summary = "degrees multiply but a collapsed orbit hits indeterminacy (inconsistent)";
    else if (cert.stable)
        cert.summary = "degrees multiply and every collapsed orbit avoids indeterminacy";
    else
        cert.summary = "not algebraically stable up to N";
    return cert;
}

// ---------------------------------------------------------------------------
// Preimages and topological degree
// ---------------------------------------------------------------------------

std::vector<std::pair<PPoint, int>> preimages(const ProjMap& f, const PPoint& q) {
    if (!q.is_gaussian()) throw ComputationError("preimages: only Gaussian targets are supported");
    auto qs = q.gaussian_coords();
    for (const auto& cc : collapsed_curves(f)) {
        if (ppoint_equal(cc.image, q))
            throw PositiveDimensionalFiber("target is the image of a collapsed curve");
    }
    // minors f_i * q_j - f_j * q_i
    std::vector<MPoly> minors;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            MPoly m = f.comp[static_cast<size_t>(i)] * MPoly::constant(qs[static_cast<size_t>(j)]) -
                      f.comp[static_cast<size_t>(j)] * MPoly::constant(qs[static_cast<size_t>(i)]);
            if (!m.is_zero()) minors.push_back(m);
        }
    auto sols = solve_common_zeros(minors);
    // filter: drop indeterminacy points (all components vanish), verify images
    std::vector<std::pair<PPoint, int>> out;
    for (auto& [pt, m] : sols) {
        auto img = apply_map(f, pt);
        if (!img) continue;  // indeterminate: not a preimage
        PPoint target = q;
        if (ppoint_equal(*img, target)) out.push_back({pt, m});
    }
    return out;
}

int topological_degree(const ProjMap& f, int samples, unsigned seed, const std::vector<MPoly>& avoid) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 7);
    MPoly jac = jacobian_det(f);
    int agreed = -1, agree_count = 0, attempts = 0;
    while (agree_count < samples && attempts < 400) {
        ++attempts;
        GRat a(Rat(num(rng), den(rng)));
        GRat b(Rat(num(rng), den(rng)));
        std::array<GRat, 3> q = {GRat(1), a, b};
        std::map<std::string, GRat> pt{{"X", q[0]}, {"Y", q[1]}, {"Z", q[2]}};
        bool bad = false;
        for (const auto& form : avoid)
            if (form.eval(pt).is_zero()) bad = true;
        if (bad) continue;
        std::vector<std::pair<PPoint, int>> fib;
        try {
            fib = preimages(f, PPoint::gaussian(q[0], q[1], q[2]));
        } catch (const PositiveDimensionalFiber&) {
            continue;
        }
        // require all preimages simple: Jacobian nonzero at each
        int count = 0;
        bool clean = true;
        for (auto& [p, m] : fib) {
            if (m != 1) {
                clean = false;
                break;
            }
            // evaluate jac at p
            PPoint tmp = p;
            std::vector<int> pos(jac.vars.size(), -1);
            for (size_t i = 0; i < jac.vars.size(); ++i) {
                if (jac.vars[i] == "X") pos[i] = 0;
                if (jac.vars[i] == "Y") pos[i] = 1;
                if (jac.vars[i] == "Z") pos[i] = 2;
            }
            UPoly acc;
            for (const auto& [e, c] : jac.terms) {
                UPoly t = UPoly::constant(c);
                for (size_t i = 0; i < e.size(); ++i)
                    for (int j = 0; j < e[i]; ++j)
                        t = tmp.field->mul(t, tmp.c[static_cast<size_t>(pos[i])]);
                acc = tmp.field->reduce(acc + t);
            }
            if (tmp.field->is_zero(acc)) {
                clean = false;
                break;
            }
            ++count;
        }
        if (!clean) continue;
        if (agreed < 0) {
            agreed = count;
            agree_count = 1;
        } else if (agreed == count) {
            ++agree_count;
        } else {
            throw InconsistentSamples("fiber counts disagree: " + std::to_string(agreed) + " vs " +
                                      std::to_string(count));
        }
    }
    if (agree_count < samples) throw InconsistentSamples("could not collect enough generic samples");
    return agreed;
}

// ---------------------------------------------------------------------------
// Line restrictions
// ---------------------------------------------------------------------------

bool LineRestriction::is_translation() const {
    return num.degree() == 1 && den.degree() == 0 && num.c[1] == den.c[0];
}

LineRestriction restrict_to_line(const ProjMap& f, const std::string& line_var, int num_idx,
                                 int den_idx) {
    int line_idx = line_var == "X" ? 0 : line_var == "Y" ? 1 : 2;
    // parameterize: the line {line_var = 0}, chart coordinate t = num/den:
    // point has den-coordinate 1, num-coordinate t, line-coordinate 0.
    std::map<std::string, MPoly> sub;
    const std::array<std::string, 3> vars = {"X", "Y", "Z"};
    sub[vars[static_cast<size_t>(line_idx)]] = MPoly::zero();
    sub[vars[static_cast<size_t>(den_idx)]] = MPoly::constant(GRat(1));
    sub[vars[static_cast<size_t>(num_idx)]] = MPoly::var("t");
    std::array<MPoly, 3> img;
    for (size_t k = 0; k < 3; ++k) img[k] = f.comp[k].substitute(sub);
    if (!img[static_cast<size_t>(line_idx)].is_zero())
        throw NotInvariant("line " + line_var + " = 0 is not invariant under the map");
    UPoly n = img[static_cast<size_t>(num_idx)].rename_var("t", "t").to_upoly();
    UPoly d = img[static_cast<size_t>(den_idx)].rename_var("t", "t").to_upoly();
    if (d.is_zero()) throw NotInvariant("restriction collapses the chart (denominator vanishes)");
    UPoly g = upoly_gcd(n, d);
    if (g.degree() > 0) {
        n = n.div_exact(g);
        d = d.div_exact(g);
    }
    // scale so the denominator is monic
    GRat s = d.lc().inv();
    n = n * s;
    d = d * s;
    LineRestriction r;
    r.line = MPoly::var(line_var);
    r.chart = vars[static_cast<size_t>(num_idx)] + "/" + vars[static_cast<size_t>(den_idx)];
    r.num_idx = num_idx;
    r.den_idx = den_idx;
    r.num = n;
    r.den = d;
    r.map_degree = std::max(n.degree(), d.degree());
    return r;
}

}  // namespace padyn
