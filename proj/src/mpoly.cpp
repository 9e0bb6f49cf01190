#include <padyn/errors.hpp>
#include <padyn/mpoly.hpp>
#include <padyn/rootisol.hpp>

#include <algorithm>
#include <sstream>

namespace padyn {

MPoly MPoly::constant(const GRat& k) {
    MPoly p;
    if (!k.is_zero()) p.terms[{}] = k;
    return p;
}

MPoly MPoly::var(const std::string& name) {
    MPoly p;
    p.vars = {name};
    p.terms[{1}] = GRat(1);
    return p;
}

bool MPoly::is_constant() const {
    if (terms.empty()) return true;
    if (terms.size() > 1) return false;
    for (int e : terms.begin()->first)
        if (e != 0) return false;
    return true;
}

GRat MPoly::constant_value() const {
    if (terms.empty()) return GRat(0);
    return terms.begin()->second;
}

int MPoly::total_degree() const {
    if (terms.empty()) return -1;
    int best = 0;
    for (const auto& [e, c] : terms) {
        int d = 0;
        for (int x : e) d += x;
        best = std::max(best, d);
    }
    return best;
}

int MPoly::degree_in(const std::string& v) const {
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) return 0;
    size_t idx = static_cast<size_t>(it - vars.begin());
    int best = 0;
    for (const auto& [e, c] : terms) best = std::max(best, e[idx]);
    return best;
}

bool MPoly::is_homogeneous() const {
    if (terms.empty()) return true;
    int d = -1;
    for (const auto& [e, c] : terms) {
        int t = 0;
        for (int x : e) t += x;
        if (d < 0) d = t;
        if (t != d) return false;
    }
    return true;
}

MPoly MPoly::normalized() const {
    if (is_zero()) return *this;
    return *this * leading_coeff().inv();
}

namespace {

Expo remap(const Expo& e, const std::vector<int>& pos, size_t n) {
    Expo out(n, 0);
    for (size_t i = 0; i < e.size(); ++i) out[static_cast<size_t>(pos[i])] = e[i];
    return out;
}

}  // namespace

void mpoly_unify(MPoly& a, MPoly& b) {
    if (a.vars == b.vars) return;
    std::vector<std::string> u = a.vars;
    for (const auto& v : b.vars)
        if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
    std::sort(u.begin(), u.end());
    auto rebuild = [&u](MPoly& p) {
        std::vector<int> pos(p.vars.size());
        for (size_t i = 0; i < p.vars.size(); ++i)
            pos[i] = static_cast<int>(std::find(u.begin(), u.end(), p.vars[i]) - u.begin());
        std::map<Expo, GRat, TermOrder> t;
        for (const auto& [e, c] : p.terms) t[remap(e, pos, u.size())] = c;
        p.vars = u;
        p.terms = std::move(t);
    };
    rebuild(a);
    rebuild(b);
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly a = *this, b = o;
    mpoly_unify(a, b);
    for (const auto& [e, c] : b.terms) {
        auto it = a.terms.find(e);
        if (it == a.terms.end()) {
            a.terms[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) a.terms.erase(it);
        }
    }
    return a;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly a = *this, b = o;
    mpoly_unify(a, b);
    MPoly r;
    r.vars = a.vars;
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            Expo e(a.vars.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            GRat prod = ca * cb;
            auto it = r.terms.find(e);
            if (it == r.terms.end()) {
                if (!prod.is_zero()) r.terms[std::move(e)] = prod;
            } else {
                it->second += prod;
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
    }
    return r;
}

MPoly MPoly::operator*(const GRat& k) const {
    if (k.is_zero()) return MPoly();
    MPoly r = *this;
    for (auto& [e, c] : r.terms) c *= k;
    return r;
}

MPoly operator*(long k, const MPoly& p) { return p * GRat(k); }

MPoly MPoly::pow(unsigned n) const {
    MPoly acc = MPoly::constant(GRat(1));
    MPoly base = *this;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

bool MPoly::operator==(const MPoly& o) const {
    MPoly a = *this, b = o;
    mpoly_unify(a, b);
    return a.terms == b.terms;
}

MPoly MPoly::derivative(const std::string& v) const {
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) return MPoly();
    size_t idx = static_cast<size_t>(it - vars.begin());
    MPoly r;
    r.vars = vars;
    for (const auto& [e, c] : terms) {
        if (e[idx] == 0) continue;
        Expo d = e;
        d[idx] -= 1;
        r.terms[d] = c * GRat(Rat(e[idx]));
    }
    return r;
}

MPoly MPoly::substitute(const std::map<std::string, MPoly>& bindings) const {
    MPoly result;
    // Memoized powers of each binding / untouched variable.
    std::vector<MPoly> base(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) {
        auto it = bindings.find(vars[i]);
        base[i] = (it != bindings.end()) ? it->second : MPoly::var(vars[i]);
    }
    std::vector<std::map<int, MPoly>> powers(vars.size());
    auto power = [&](size_t i, int e) -> const MPoly& {
        auto it = powers[i].find(e);
        if (it != powers[i].end()) return it->second;
        return powers[i].emplace(e, base[i].pow(static_cast<unsigned>(e))).first->second;
    };
    for (const auto& [e, c] : terms) {
        MPoly t = MPoly::constant(c);
        for (size_t i = 0; i < vars.size(); ++i)
            if (e[i] != 0) t = t * power(i, e[i]);
        result = result + t;
    }
    return result;
}

GRat MPoly::eval(const std::map<std::string, GRat>& point) const {
    GRat acc(0);
    for (const auto& [e, c] : terms) {
        GRat t = c;
        for (size_t i = 0; i < vars.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = point.find(vars[i]);
            if (it == point.end()) throw ComputationError("MPoly::eval: missing value for " + vars[i]);
            t *= it->second.pow(static_cast<unsigned long>(e[i]));
        }
        acc += t;
    }
    return acc;
}

std::vector<MPoly> MPoly::coeffs_in(const std::string& v) const {
    int d = degree_in(v);
    std::vector<MPoly> cs(static_cast<size_t>(d) + 1);
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) {
        cs[0] = *this;
        return cs;
    }
    size_t idx = static_cast<size_t>(it - vars.begin());
    for (const auto& [e, c] : terms) {
        Expo r = e;
        int k = r[idx];
        r[idx] = 0;
        MPoly& dst = cs[static_cast<size_t>(k)];
        if (dst.vars.empty()) dst.vars = vars;
        auto jt = dst.terms.find(r);
        if (jt == dst.terms.end())
            dst.terms[r] = c;
        else
            jt->second += c;
    }
    for (auto& p : cs) {
        if (p.vars.empty()) p.vars = vars;
        for (auto jt = p.terms.begin(); jt != p.terms.end();)
            jt = jt->second.is_zero() ? p.terms.erase(jt) : std::next(jt);
    }
    return cs;
}

MPoly MPoly::assemble_in(const std::string& v, const std::vector<MPoly>& cs) {
    MPoly r;
    MPoly x = MPoly::var(v);
    for (size_t k = cs.size(); k-- > 0;) r = r * x + cs[k];
    return r;
}

MPoly MPoly::div_exact(const MPoly& d) const {
    MPoly q;
    if (divisible_by(d, &q)) return q;
    throw ComputationError("MPoly::div_exact: inexact division");
}

bool MPoly::divisible_by(const MPoly& d, MPoly* quotient) const {
    if (d.is_zero()) throw ComputationError("MPoly division by zero");
    MPoly r = *this, b = d;
    mpoly_unify(r, b);
    MPoly q;
    q.vars = r.vars;
    const Expo& lead_b = b.terms.begin()->first;
    const GRat& lcb = b.terms.begin()->second;
    while (!r.is_zero()) {
        const Expo& lead_r = r.terms.begin()->first;
        Expo e(lead_r.size());
        for (size_t i = 0; i < e.size(); ++i) {
            e[i] = lead_r[i] - lead_b[i];
            if (e[i] < 0) return false;
        }
        GRat f = r.terms.begin()->second / lcb;
        MPoly t;
        t.vars = r.vars;
        t.terms[e] = f;
        q = q + t;
        r = r - t * b;
    }
    if (quotient) *quotient = q;
    return true;
}

UPoly MPoly::to_upoly() const {
    std::string the_var;
    for (size_t i = 0; i < vars.size(); ++i) {
        for (const auto& [e, c] : terms) {
            if (e[i] != 0) {
                if (!the_var.empty() && the_var != vars[i])
                    throw ComputationError("MPoly::to_upoly: more than one variable present");
                the_var = vars[i];
            }
        }
    }
    int d = the_var.empty() ? 0 : degree_in(the_var);
    std::vector<GRat> cs(static_cast<size_t>(d) + 1, GRat(0));
    size_t idx = the_var.empty() ? 0 : static_cast<size_t>(std::find(vars.begin(), vars.end(), the_var) - vars.begin());
    for (const auto& [e, c] : terms) cs[the_var.empty() ? 0 : static_cast<size_t>(e[idx])] = c;
    return UPoly(std::move(cs));
}

MPoly MPoly::from_upoly(const UPoly& p, const std::string& v) {
    MPoly r;
    r.vars = {v};
    for (size_t i = 0; i < p.c.size(); ++i)
        if (!p.c[i].is_zero()) r.terms[{static_cast<int>(i)}] = p.c[i];
    return r;
}

MPoly MPoly::homogenized(const std::string& v, int target) const {
    if (is_zero()) return *this;
    int d = target >= 0 ? target : total_degree();
    MPoly hv = MPoly::var(v);
    MPoly r;
    for (const auto& [e, c] : terms) {
        int t = 0;
        for (int x : e) t += x;
        if (t > d) throw ComputationError("homogenized: target degree too small");
        MPoly m;
        m.vars = vars;
        m.terms[e] = c;
        r = r + m * hv.pow(static_cast<unsigned>(d - t));
    }
    return r;
}

MPoly MPoly::dehomogenized(const std::string& v) const {
    std::map<std::string, MPoly> b;
    b[v] = MPoly::constant(GRat(1));
    return substitute(b).drop_unused_vars();
}

MPoly MPoly::rename_var(const std::string& from, const std::string& to) const {
    std::map<std::string, MPoly> b;
    b[from] = MPoly::var(to);
    return substitute(b).drop_unused_vars();
}

MPoly MPoly::drop_unused_vars() const {
    std::vector<bool> used(vars.size(), false);
    for (const auto& [e, c] : terms)
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) used[i] = true;
    MPoly r;
    for (size_t i = 0; i < vars.size(); ++i)
        if (used[i]) r.vars.push_back(vars[i]);
    for (const auto& [e, c] : terms) {
        Expo ne;
        for (size_t i = 0; i < e.size(); ++i)
            if (used[i]) ne.push_back(e[i]);
        r.terms[ne] = c;
    }
    return r;
}

std::string MPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        bool has_mono = false;
        for (int x : e)
            if (x != 0) has_mono = true;
        GRat k = c;
        if (!first) {
            if (k.im == 0 && k.re < 0) {
                os << " - ";
                k = -k;
            } else {
                os << " + ";
            }
        } else if (k.im == 0 && k.re < 0 && has_mono && k.re == -1) {
            // handled below by the -1 coefficient case
        }
        first = false;
        std::string mono;
        for (size_t i = 0; i < vars.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            if (k.im == 0)
                os << k.re;
            else
                os << "(" << k.str() << ")";
        } else if (k.is_one()) {
            os << mono;
        } else if (k.im == 0 && k.re == -1) {
            os << "-" << mono;
        } else if (k.im == 0) {
            os << k.re << "*" << mono;
        } else {
            os << "(" << k.str() << ")*" << mono;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// gcd via primitive subresultant-style PRS
// ---------------------------------------------------------------------------

namespace {

// Pseudo-remainder of a by b in variable v: lc(b)^(da-db+1) * a = q*b + r.
MPoly pseudo_rem(const MPoly& a, const MPoly& b, const std::string& v) {
    int da = a.degree_in(v), db = b.degree_in(v);
    if (da < db) return a;
    auto bc = b.coeffs_in(v);
    const MPoly& lcb = bc.back();
    std::vector<MPoly> r = a.coeffs_in(v);
    for (int k = da; k >= db; --k) {
        MPoly top = r[static_cast<size_t>(k)];
        for (int i = 0; i < k; ++i) r[static_cast<size_t>(i)] = lcb * r[static_cast<size_t>(i)];
        if (!top.is_zero())
            for (int i = 0; i < db; ++i)
                r[static_cast<size_t>(k - db + i)] =
                    r[static_cast<size_t>(k - db + i)] - top * bc[static_cast<size_t>(i)];
        r.resize(static_cast<size_t>(k));  // leading entry cancels exactly
    }
    return MPoly::assemble_in(v, r);
}

MPoly mpoly_content_in(const MPoly& p, const std::string& v);

MPoly gcd_impl(MPoly a, MPoly b);

MPoly mpoly_content_in(const MPoly& p, const std::string& v) {
    auto cs = p.coeffs_in(v);
    MPoly g;
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : gcd_impl(g, c);
        if (g.is_constant()) break;
    }
    return g.is_zero() ? MPoly::constant(GRat(1)) : g.normalized();
}

std::string pick_main_var(const MPoly& a, const MPoly& b) {
    // Shared variable minimizing the larger degree; keeps PRS short.
    std::string best;
    long best_score = -1;
    for (const auto& v : a.vars) {
        int da = a.degree_in(v), db = b.degree_in(v);
        if (da == 0 || db == 0) continue;
        long score = std::max(da, db);
        if (best_score < 0 || score < best_score) {
            best = v;
            best_score = score;
        }
    }
    return best;
}

MPoly gcd_impl(MPoly a, MPoly b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    if (a.is_constant() || b.is_constant()) return MPoly::constant(GRat(1));
    MPoly A = a, B = b;
    mpoly_unify(A, B);
    std::string v = pick_main_var(A, B);
    if (v.empty()) {
        // No shared variable of positive degree in both: gcd divides both
        // contents, i.e. the gcd of the coefficient gcds.
        return MPoly::constant(GRat(1));
    }
    MPoly ca = mpoly_content_in(A, v), cb = mpoly_content_in(B, v);
    MPoly cg = gcd_impl(ca, cb);
    MPoly pa = A.div_exact(ca), pb = B.div_exact(cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (true) {
        if (pb.is_zero()) break;
        if (pb.degree_in(v) == 0) {
            pa = MPoly::constant(GRat(1));
            return (pa * cg).normalized();
        }
        MPoly r = pseudo_rem(pa, pb, v);
        pa = pb;
        pb = r.is_zero() ? r : r.div_exact(mpoly_content_in(r, v));
    }
    return (pa.div_exact(mpoly_content_in(pa, v)) * cg).normalized();
}

}  // namespace

MPoly mpoly_gcd(const MPoly& a, const MPoly& b) { return gcd_impl(a, b); }

// ---------------------------------------------------------------------------
// resultant via Bareiss on the Sylvester matrix
// ---------------------------------------------------------------------------

MPoly mpoly_resultant(const MPoly& p, const MPoly& q, const std::string& var) {
    if (p.is_zero() || q.is_zero()) throw DegenerateInput("resultant of the zero polynomial");
    int m = p.degree_in(var), n = q.degree_in(var);
    if (m <= 0 || n <= 0) throw DegenerateInput("resultant: both inputs must have positive degree in " + var);
    auto pc = p.coeffs_in(var);
    auto qc = q.coeffs_in(var);
    int N = m + n;
    std::vector<std::vector<MPoly>> M(static_cast<size_t>(N), std::vector<MPoly>(static_cast<size_t>(N)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) M[static_cast<size_t>(r)][static_cast<size_t>(r + m - k)] = pc[static_cast<size_t>(k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            M[static_cast<size_t>(n + r)][static_cast<size_t>(r + n - k)] = qc[static_cast<size_t>(k)];

    // Bareiss fraction-free elimination with column pivoting.
    MPoly denom = MPoly::constant(GRat(1));
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (M[static_cast<size_t>(k)][static_cast<size_t>(k)].is_zero()) {
            int piv = -1;
            for (int r = k + 1; r < N; ++r)
                if (!M[static_cast<size_t>(r)][static_cast<size_t>(k)].is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) return MPoly();  // singular: resultant vanishes
            std::swap(M[static_cast<size_t>(k)], M[static_cast<size_t>(piv)]);
            sign = -sign;
        }
        for (int r = k + 1; r < N; ++r) {
            for (int c2 = k + 1; c2 < N; ++c2) {
                MPoly t = M[static_cast<size_t>(r)][static_cast<size_t>(c2)] * M[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                          M[static_cast<size_t>(r)][static_cast<size_t>(k)] * M[static_cast<size_t>(k)][static_cast<size_t>(c2)];
                M[static_cast<size_t>(r)][static_cast<size_t>(c2)] = t.div_exact(denom);
            }
            M[static_cast<size_t>(r)][static_cast<size_t>(k)] = MPoly();
        }
        denom = M[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    MPoly det = M[static_cast<size_t>(N - 1)][static_cast<size_t>(N - 1)];
    return sign < 0 ? -det : det;
}

// ---------------------------------------------------------------------------

MPoly mpoly_squarefree(const MPoly& p) {
    if (p.is_zero()) throw ZeroInput("squarefree of the zero polynomial");
    if (p.is_constant()) return MPoly::constant(GRat(1));
    MPoly g;
    for (const auto& v : p.vars) {
        MPoly d = p.derivative(v);
        if (d.is_zero()) continue;
        g = g.is_zero() ? mpoly_gcd(p, d) : mpoly_gcd(g, d);
        if (g.is_constant()) break;
    }
    if (g.is_zero() || g.is_constant()) return p.normalized();
    return p.div_exact(g).normalized();
}

std::pair<int, MPoly> mpoly_lowest_degree_form(const MPoly& p) {
    if (p.is_zero()) throw ZeroInput("lowest_degree_form of the zero polynomial");
    int best = -1;
    for (const auto& [e, c] : p.terms) {
        int d = 0;
        for (int x : e) d += x;
        if (best < 0 || d < best) best = d;
    }
    MPoly form;
    form.vars = p.vars;
    for (const auto& [e, c] : p.terms) {
        int d = 0;
        for (int x : e) d += x;
        if (d == best) form.terms[e] = c;
    }
    return {best, form};
}

// ---------------------------------------------------------------------------
// Gaussian-rational roots and linear factors
// ---------------------------------------------------------------------------

namespace {

// Smallest-denominator rational in [lo, hi] (Stern-Brocot / CF based).
Rat simplest_in_interval(const Rat& lo, const Rat& hi) {
    if (lo > hi) throw ComputationError("simplest_in_interval: empty interval");
    if (lo <= 0 && hi >= 0) return Rat(0);
    if (hi < 0) return -simplest_in_interval(-hi, -lo);
    // 0 < lo <= hi
    Int fl = lo.get_num() / lo.get_den();  // floor since lo > 0
    if (Rat(fl) >= lo) return Rat(fl);     // lo integer boundary
    Int fh = hi.get_num() / hi.get_den();
    if (fh > fl) return Rat(fl + 1);
    Rat rl = lo - Rat(fl), rh = hi - Rat(fl);
    // recurse on reciprocals, swapped
    Rat inner = simplest_in_interval(Rat(1) / rh, Rat(1) / rl);
    return Rat(fl) + Rat(1) / inner;
}

}  // namespace

std::vector<std::pair<GRat, int>> upoly_gaussian_roots(const UPoly& p) {
    std::vector<std::pair<GRat, int>> out;
    if (p.degree() < 1) return out;
    auto parts = upoly_squarefree_decomposition(p);
    for (const auto& [f, mult] : parts) {
        UPoly q = upoly_integer_primitive(f);
        // Denominators of Q(i)-root components divide norm(lc).
        Int bound = q.lc().re.get_num() * q.lc().re.get_num() + q.lc().im.get_num() * q.lc().im.get_num();
        if (bound == 0) continue;
        Rat half(1, 4);
        Rat denb = Rat(bound);
        Rat target_w = Rat(1) / (denb * denb * 4);
        auto boxes = isolate_all_roots(q);
        for (CBox b : boxes) {
            b = refine_root_box(q, b, Dyadic::from_rat(target_w, 32, true));
            auto recover = [&](const DyIv& iv) -> std::optional<Rat> {
                Rat lo = iv.lo.to_rat(), hi = iv.hi.to_rat();
                Rat cand = simplest_in_interval(lo, hi);
                if (cand.get_den() > bound) return std::nullopt;
                return cand;
            };
            auto re = recover(b.re), im = recover(b.im);
            if (!re || !im) continue;
            GRat cand(*re, *im);
            if (q.eval(cand).is_zero()) out.push_back({cand, mult});
        }
    }
    return out;
}

namespace {

// Linear factors of a binary (two-variable homogeneous) form over Q(i).
void binary_form_linear_factors(const MPoly& p, const std::string& vx, const std::string& vy,
                                std::vector<std::pair<MPoly, int>>& out, MPoly& cofactor) {
    MPoly rest = p;
    // Factor out powers of vy first.
    MPoly y = MPoly::var(vy), x = MPoly::var(vx);
    MPoly q;
    while (!rest.is_constant() && rest.divisible_by(y, &q)) {
        rest = q;
        out.push_back({y, 1});
    }
    // Dehomogenize: roots u of rest(x, 1) give factors (x - u*... ): for a
    // binary form f(X,Y), a root u of f(t,1) corresponds to the factor X - uY.
    MPoly dh = rest.dehomogenized(vy);
    if (dh.is_constant()) {
        cofactor = cofactor * rest;
        return;
    }
    UPoly up = dh.rename_var(vx, "t").to_upoly();
    auto roots = upoly_gaussian_roots(up);
    for (const auto& [u, mult] : roots) {
        MPoly lin = x - MPoly::constant(u) * y;
        for (int k = 0; k < mult; ++k) {
            MPoly q;
            if (!rest.divisible_by(lin, &q)) throw ComputationError("binary factor division failed");
            rest = q;
            out.push_back({lin.normalized(), 1});
        }
    }
    cofactor = cofactor * rest;
}

}  // namespace

LinearFactors mpoly_linear_factors(const MPoly& p) {
    if (p.is_zero()) throw ZeroInput("linear_factors of the zero polynomial");
    if (!p.is_homogeneous()) throw DegenerateInput("linear_factors requires a homogeneous polynomial");
    LinearFactors lf;
    lf.cofactor = MPoly::constant(p.leading_coeff());
    MPoly rest = p.normalized();
    MPoly work = rest.drop_unused_vars();
    std::vector<std::string> vs = work.vars;
    if (vs.empty()) {
        lf.cofactor = MPoly::constant(p.leading_coeff());
        return lf;
    }
    if (vs.size() == 1) {
        int d = work.total_degree();
        lf.factors.push_back({MPoly::var(vs[0]), d});
        return lf;
    }
    if (vs.size() == 2) {
        std::vector<std::pair<MPoly, int>> fl;
        MPoly cof = MPoly::constant(GRat(1));
        binary_form_linear_factors(work, vs[0], vs[1], fl, cof);
        // consolidate multiplicities
        for (auto& [f, m] : fl) {
            bool found = false;
            for (auto& [g, mg] : lf.factors)
                if (g == f) {
                    mg += m;
                    found = true;
                }
            if (!found) lf.factors.push_back({f, m});
        }
        lf.cofactor = lf.cofactor * cof;
        return lf;
    }
    if (vs.size() != 3) throw DegenerateInput("linear_factors supports at most three variables");

    const std::string &X = vs[0], &Y = vs[1], &Z = vs[2];
    // Coordinate-plane factors first.
    for (const std::string& v : vs) {
        MPoly lin = MPoly::var(v);
        MPoly q;
        while (rest.divisible_by(lin, &q)) {
            rest = q;
            bool found = false;
            for (auto& [g, mg] : lf.factors)
                if (g == lin) {
                    ++mg;
                    found = true;
                }
            if (!found) lf.factors.push_back({lin, 1});
        }
    }
    // Remaining candidates a*X + b*Y + c*Z with a != 0 are detected from the
    // restrictions to {Z=0} and {Y=0}; those with a == 0 from the X-content.
    MPoly content_x;  // gcd of coefficients in X: catches factors without X
    auto cs = rest.coeffs_in(X);
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        content_x = content_x.is_zero() ? c : mpoly_gcd(content_x, c);
        if (content_x.is_constant()) break;
    }
    if (!content_x.is_constant() && !content_x.is_zero()) {
        LinearFactors sub = mpoly_linear_factors(content_x);
        for (const auto& [f, m] : sub.factors) {
            MPoly q;
            for (int k = 0; k < m; ++k)
                if (rest.divisible_by(f, &q)) {
                    rest = q;
                    bool found = false;
                    for (auto& [g, mg] : lf.factors)
                        if (g == f) {
                            ++mg;
                            found = true;
                        }
                    if (!found) lf.factors.push_back({f, 1});
                }
        }
    }
    if (rest.degree_in(X) > 0) {
        std::map<std::string, MPoly> z0{{Z, MPoly::zero()}};
        std::map<std::string, MPoly> y0{{Y, MPoly::zero()}};
        MPoly pz = rest.substitute(z0);
        MPoly py = rest.substitute(y0);
        std::vector<GRat> ucand, vcand;
        if (!pz.is_zero()) {
            MPoly dh = pz.dehomogenized(Y).rename_var(X, "t");
            if (!dh.is_constant())
                for (const auto& [u, m] : upoly_gaussian_roots(dh.to_upoly())) ucand.push_back(u);
        }
        ucand.push_back(GRat(0));
        if (!py.is_zero()) {
            MPoly dh = py.dehomogenized(Z).rename_var(X, "t");
            if (!dh.is_constant())
                for (const auto& [u, m] : upoly_gaussian_roots(dh.to_upoly())) vcand.push_back(u);
        }
        vcand.push_back(GRat(0));
        for (const GRat& u : ucand) {
            for (const GRat& v : vcand) {
                // Candidate X - u*Y - v*Z
                MPoly lin = MPoly::var(X) - MPoly::constant(u) * MPoly::var(Y) -
                            MPoly::constant(v) * MPoly::var(Z);
                MPoly q;
                while (rest.divisible_by(lin, &q)) {
                    rest = q;
                    bool found = false;
                    for (auto& [g, mg] : lf.factors)
                        if (g == lin) {
                            ++mg;
                            found = true;
                        }
                    if (!found) lf.factors.push_back({lin, 1});
                }
            }
        }
    }
    lf.cofactor = lf.cofactor * rest;
    return lf;
}

}  // namespace padyn
