#include <padyn/errors.hpp>
#include <padyn/rootisol.hpp>

#include <deque>

namespace padyn {

namespace {

constexpr unsigned kStartPrec = 64;
constexpr unsigned kMaxPrec = 1u << 20;
constexpr int kMaxDepth = 4096;

CBox point_box(const Dyadic& r, const Dyadic& i) { return CBox(DyIv(r), DyIv(i)); }

// Dyadic approximation of 1/(a+bi), any nonzero quality is acceptable: the
// Krawczyk test is sound for an arbitrary fixed nonzero multiplier.
std::optional<CBox> approx_inverse(const CBox& enclosure, unsigned prec) {
    Dyadic a = enclosure.re.mid(), b = enclosure.im.mid();
    Rat n = a.to_rat() * a.to_rat() + b.to_rat() * b.to_rat();
    if (n == 0) return std::nullopt;
    Rat yre = a.to_rat() / n;
    Rat yim = -b.to_rat() / n;
    return point_box(Dyadic::from_rat(yre, prec, true), Dyadic::from_rat(yim, prec, true));
}

struct WorkBox {
    CBox box;
    int depth = 0;
};

}  // namespace

std::optional<CBox> krawczyk_contract(const UPoly& p, const UPoly& dp, const CBox& box,
                                      unsigned prec) {
    CBox c = point_box(box.re.mid(), box.im.mid());
    CBox pc = p.eval_box(c, 2 * prec);
    CBox dpB = dp.eval_box(box, prec);
    CBox dpc = dp.eval_box(c, prec);
    auto y = approx_inverse(dpc, prec);
    if (!y) return std::nullopt;
    CBox one = point_box(Dyadic(1), Dyadic(0));
    CBox K = c - (*y * pc) + (one - *y * dpB) * (box - c);
    K = K.rounded_out(2 * prec);
    if (K.subset_of_interior(box)) return cbox_intersect(K, box);
    return std::nullopt;
}

CBox refine_root_box(const UPoly& p, CBox box, const Dyadic& target_width) {
    UPoly dp = p.derivative();
    unsigned prec = kStartPrec;
    int stall = 0;
    while (target_width < box.width()) {
        auto k = krawczyk_contract(p, dp, box, prec);
        if (k && k->width() < box.width()) {
            box = *k;
            stall = 0;
        } else {
            // Newly isolated boxes can be at the edge of contraction; inflate
            // slightly so the operator has room, then raise precision.
            auto k2 = krawczyk_contract(p, dp, box.inflated(), prec);
            if (k2 && k2->width() < box.width()) {
                box = *k2;
                stall = 0;
            } else {
                prec *= 2;
                if (++stall > 40 || prec > kMaxPrec)
                    throw ComputationError("refine_root_box: no contraction at max precision");
            }
        }
    }
    return box;
}

namespace {

// Subdivision core shared by the two isolation entry points. Returns certified
// boxes covering every root inside `start` (duplicates possible).
std::vector<CBox> subdivide(const UPoly& p, const CBox& start) {
    UPoly dp = p.derivative();
    std::vector<CBox> found;
    std::deque<WorkBox> queue{{start, 0}};
    while (!queue.empty()) {
        WorkBox wb = queue.front();
        queue.pop_front();
        if (wb.depth > kMaxDepth)
            throw ComputationError("root isolation: subdivision depth exceeded");
        unsigned prec = kStartPrec << std::min(wb.depth / 16, 12);
        if (prec > kMaxPrec) prec = kMaxPrec;
        CBox pe = p.eval_box(wb.box, prec);
        if (!pe.contains_zero()) continue;
        CBox cand = wb.box.inflated();
        if (auto k = krawczyk_contract(p, dp, cand, prec)) {
            found.push_back(*k);
            continue;
        }
        // Quadrisect.
        Dyadic mr = wb.box.re.mid(), mi = wb.box.im.mid();
        DyIv reL(wb.box.re.lo, mr), reR(mr, wb.box.re.hi);
        DyIv imL(wb.box.im.lo, mi), imR(mi, wb.box.im.hi);
        for (const DyIv& r : {reL, reR})
            for (const DyIv& i : {imL, imR}) queue.push_back({CBox(r, i), wb.depth + 1});
    }
    return found;
}

// Merge duplicate certifications of one root; result is pairwise disjoint.
std::vector<CBox> dedup(const UPoly& p, std::vector<CBox> boxes) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < boxes.size() && !changed; ++i) {
            for (size_t j = i + 1; j < boxes.size() && !changed; ++j) {
                if (!boxes[i].intersects(boxes[j])) continue;
                if (same_root(p, boxes[i], boxes[j])) {
                    boxes[i] = cbox_intersect(boxes[i], boxes[j]);
                    boxes.erase(boxes.begin() + static_cast<long>(j));
                } else {
                    boxes[i] = refine_root_box(p, boxes[i], Dyadic(boxes[i].width().m, boxes[i].width().e - 2));
                    boxes[j] = refine_root_box(p, boxes[j], Dyadic(boxes[j].width().m, boxes[j].width().e - 2));
                }
                changed = true;
            }
        }
    }
    return boxes;
}

}  // namespace

bool same_root(const UPoly& p, CBox a, CBox b) {
    Dyadic sep = upoly_separation_bound(p);
    while (a.intersects(b)) {
        if (a.width() < sep && b.width() < sep) return true;
        Dyadic target = a.width() < b.width() ? a.width() : b.width();
        target = Dyadic(target.m, target.e - 2);
        if (target < sep) target = sep.rounded(8, true);
        a = refine_root_box(p, a, target);
        b = refine_root_box(p, b, target);
    }
    return false;
}

std::vector<CBox> isolate_all_roots(const UPoly& p) {
    if (p.degree() < 1) return {};
    Dyadic r = upoly_root_bound(p);
    CBox start(DyIv(-r, r), DyIv(-r, r));
    auto boxes = dedup(p, subdivide(p, start));
    if (static_cast<int>(boxes.size()) != p.degree())
        throw ComputationError("root isolation: found " + std::to_string(boxes.size()) +
                               " roots for degree " + std::to_string(p.degree()));
    return boxes;
}

CBox isolate_unique_root(const UPoly& p, const CBox& seed) {
    if (p.is_zero()) throw ZeroInput("isolate_unique_root: zero polynomial");
    auto boxes = dedup(p, subdivide(p, seed));
    // Keep only roots genuinely inside the seed: refine boundary stragglers.
    std::vector<CBox> inside;
    for (CBox b : boxes) {
        int rounds = 0;
        while (true) {
            if (b.subset_of_interior(seed) || (seed.re.contains(b.re.lo) && seed.re.contains(b.re.hi) &&
                                               seed.im.contains(b.im.lo) && seed.im.contains(b.im.hi))) {
                inside.push_back(b);
                break;
            }
            if (!b.intersects(seed)) break;
            if (++rounds > 64)
                throw AmbiguousRoot("isolate_unique_root: root cannot be separated from the seed boundary");
            b = refine_root_box(p, b, Dyadic(b.width().m, b.width().e - 2));
        }
    }
    if (inside.empty()) throw NoRootInBox("isolate_unique_root: no root in the given box");
    if (inside.size() > 1)
        throw AmbiguousRoot("isolate_unique_root: box holds " + std::to_string(inside.size()) + " roots");
    return inside[0];
}

}  // namespace padyn
