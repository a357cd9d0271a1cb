/** \file
 * vietoris.hpp: membership in the Vietoris subbasic sets [V] and <V>, the
 * neighborhood-box constructions witnessing continuity of varrho, and the
 * randomized saturation checker for the clopen union/intersection boxes.
 */
#ifndef ARROWHYP_VIETORIS_HPP_INCLUDED
#define ARROWHYP_VIETORIS_HPP_INCLUDED

#include <vector>

#include "arrowhyp/random.hpp"

namespace arrowhyp {

enum class SubbasicKind { Lower, Upper };

struct SubbasicSet {
    SubbasicKind kind = SubbasicKind::Lower;
    OpenSetSpec open;
};

/// F in [V]: every component of F lies inside one merged piece of V.
/// A gap between merged pieces always contains a point of the space, so a
/// component spanning two of them would contain a point outside V.
inline bool mem_lower(const ClosedUnion& F, const OpenSetSpec& V) {
    require_same_tag(F.tag, V.tag);
    auto merged = merged_pieces(V);
    for (const auto& comp : F.components) {
        bool covered = false;
        for (const auto& w : merged)
            if (piece_covers_interval(w, comp)) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

/// F in <V>: some component meets some piece.
inline bool mem_upper(const ClosedUnion& F, const OpenSetSpec& V) {
    require_same_tag(F.tag, V.tag);
    for (const auto& comp : F.components)
        for (const auto& w : V.pieces)
            if (piece_nonempty(w) && piece_meets_interval(w, comp)) return true;
    return false;
}

inline bool mem_subbasic(const ClosedUnion& F, const SubbasicSet& S) {
    return S.kind == SubbasicKind::Lower ? mem_lower(F, S.open) : mem_upper(F, S.open);
}

/**
 * A box in the 2m-th power: one basic open factor (possibly the whole
 * space) per coordinate, read as the product intersected with Delta_2m.
 */
struct BoxSpec {
    SpaceTag tag = SpaceTag::Arrow;
    std::vector<OpenPiece> factors;

    bool contains(const DeltaTuple& x) const {
        if (x.tag != tag || x.entries.size() != factors.size()) return false;
        for (size_t i = 0; i < factors.size(); ++i)
            if (!factors[i].contains(x.entries[i])) return false;
        return true;
    }
};

/**
 * Box witnessing continuity of varrho at x for the lower set [V]:
 * for each pair interval [x(2i),x(2i+1)], W_i is the convex hull of the
 * pieces of V meeting it (their union is convex and equals the hull), and
 * factors 2i and 2i+1 are both W_i. Guarantees x in box and
 * box ^ Delta subset of the varrho-preimage of [V].
 */
inline BoxSpec box_for_lower(const DeltaTuple& x, const OpenSetSpec& V) {
    require_same_tag(x.tag, V.tag);
    if (x.entries.size() % 2 != 0) throw OrderViolation("box_for_lower: odd tuple length");
    if (!mem_lower(varrho(x), V)) throw NotInLower();
    BoxSpec box{x.tag, {}};
    box.factors.reserve(x.entries.size());
    for (size_t i = 0; i + 1 < x.entries.size(); i += 2) {
        ClosedInterval pairI{x.entries[i], x.entries[i + 1]};
        std::optional<OpenPiece> hull;
        for (const auto& w : V.pieces) {
            if (!piece_nonempty(w) || !piece_meets_interval(w, pairI)) continue;
            if (!hull) {
                hull = w;
                continue;
            }
            if (hull->lo && (!w.lo || compare(*w.lo, *hull->lo) < 0)) hull->lo = w.lo;
            if (hull->hi && (!w.hi || compare(*w.hi, *hull->hi) > 0)) hull->hi = w.hi;
        }
        // mem_lower passed, so every pair interval meets at least one piece
        box.factors.push_back(*hull);
        box.factors.push_back(*hull);
    }
    return box;
}

/**
 * Box witnessing continuity of varrho at x for the upper set <W>, W a
 * single basic piece. Implements the per-case construction: for rays the
 * factor at 2j (left ray) or 2j+1 (right ray) is W; for a bounded piece,
 * Case 1 (x(2j+1) inside W) sets factor 2j+1 to W and Case 2 (x(2j+1) at
 * or above the upper end) sets factor 2j to the left ray below the upper
 * end and factor 2j+1 to the right ray above the lower end. The
 * Sorgenfrey [c,d[ piece follows the same split with [<-,d[ x [d,->[.
 */
inline BoxSpec box_for_upper(const DeltaTuple& x, const OpenPiece& W) {
    require_same_tag(x.tag, W.tag);
    if (x.entries.size() % 2 != 0) throw OrderViolation("box_for_upper: odd tuple length");
    size_t j = x.entries.size(); // index of the meeting pair, in 2j form
    for (size_t i = 0; i + 1 < x.entries.size(); i += 2) {
        if (piece_meets_interval(W, ClosedInterval{x.entries[i], x.entries[i + 1]})) {
            j = i;
            break;
        }
    }
    if (j == x.entries.size()) throw NotInUpper();
    BoxSpec box{x.tag, std::vector<OpenPiece>(x.entries.size(), whole_space_piece(x.tag))};

    if (x.tag == SpaceTag::Sorgenfrey) {
        // basic [c,d[; meeting forces x(2j+1) >= c
        if (!W.hi || compare(x.entries[j + 1], *W.hi) < 0) {
            box.factors[j + 1] = W; // Case 1: c <= x(2j+1) < d
        } else {
            box.factors[j] = OpenPiece{x.tag, std::nullopt, W.hi};     // [<-,d[
            box.factors[j + 1] = OpenPiece{x.tag, W.hi, std::nullopt}; // [d,->[
        }
        return box;
    }
    if (!W.lo) {
        box.factors[j] = W; // ]<-,b[: the pair's lower end lies in W
    } else if (!W.hi) {
        box.factors[j + 1] = W; // ]a,->[
    } else if (compare(x.entries[j + 1], *W.hi) < 0) {
        box.factors[j + 1] = W; // Case 1: a < x(2j+1) < b
    } else {
        // Case 2: x(2j+1) >= b, and necessarily x(2j) < b
        box.factors[j] = OpenPiece{x.tag, std::nullopt, W.hi};
        box.factors[j + 1] = OpenPiece{x.tag, W.lo, std::nullopt};
    }
    return box;
}

namespace detail {
/// Random point in piece ^ [lb,->[; nullopt when (effectively) empty.
inline std::optional<Point> sample_point_in(Rng& rng, const OpenPiece& w,
                                            const std::optional<Point>& lb,
                                            std::uint64_t max_den) {
    auto admissible = [&](const Point& p) {
        return w.contains(p) && (!lb || compare(p, *lb) >= 0);
    };
    Rat lo_c = w.lo ? w.lo->coord : Rat(0);
    if (lb && lb->coord > lo_c) lo_c = lb->coord;
    const Rat hi_c = w.hi ? w.hi->coord : Rat(1);
    for (int t = 0; t < 48 && lo_c <= hi_c; ++t) {
        auto c = rand_rational_in(rng, lo_c, hi_c, true, true, max_den);
        if (!c) break;
        Point cand;
        if (w.tag == SpaceTag::Sorgenfrey) {
            if (*c >= 1) continue;
            cand = sorgenfrey_point(*c);
        } else {
            int side = static_cast<int>(rand_int(rng, 0, 1));
            if (*c == 0) side = 1;
            if (*c == 1) side = 0;
            cand = arrow_point(*c, side);
        }
        if (admissible(cand)) return cand;
    }
    // deterministic fallbacks for skinny regions
    std::vector<Point> cands;
    if (lb) cands.push_back(*lb);
    if (w.tag == SpaceTag::Arrow) {
        if (lb)
            if (auto s = successor(*lb)) cands.push_back(*s);
        if (w.lo)
            if (auto s = successor(*w.lo)) cands.push_back(*s);
        if (w.hi)
            if (auto p = predecessor(*w.hi)) cands.push_back(*p);
    } else {
        if (w.lo) cands.push_back(*w.lo);
    }
    for (const auto& cand : cands)
        if (admissible(cand)) return cand;
    return std::nullopt;
}
} // namespace detail

/**
 * Random tuple in box ^ Delta: factors are filled left to right, each
 * sample constrained to lie at or above the previous entry. Returns
 * nothing when a chain becomes infeasible (callers retry or fall back to
 * the witness tuple they already hold).
 */
inline std::optional<DeltaTuple> sample_in_box(Rng& rng, const BoxSpec& box,
                                               std::uint64_t max_den = kDefaultMaxDen) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<Point> e;
        e.reserve(box.factors.size());
        std::optional<Point> lb;
        bool ok = true;
        for (const auto& f : box.factors) {
            auto p = detail::sample_point_in(rng, f, lb, max_den);
            if (!p) {
                ok = false;
                break;
            }
            lb = *p;
            e.push_back(std::move(*p));
        }
        if (ok) return DeltaTuple{box.tag, std::move(e)};
    }
    return std::nullopt;
}

/**
 * The two clopen box families whose saturation the theory asserts, plus a
 * deliberately non-saturated single-projection control. UnionPreimage is
 * "some coordinate <= <r,0>", IntersectionPreimage is "every coordinate
 * >= <r,1>", Control is "coordinate j <= <r,0>" for one fixed j >= 1.
 * (Coordinate 0 of a non-decreasing tuple is the minimum of its
 * varrho-image, a class invariant, so a j=0 control would be saturated.)
 */
enum class SaturatedForm { UnionPreimage, IntersectionPreimage, Control };

struct SaturatedBoxSpec {
    SaturatedForm form = SaturatedForm::UnionPreimage;
    Rat cut;           // r in ]0,1[
    size_t m = 1;      // tuples have length 2m
    size_t control_j = 1;
};

inline bool in_saturated_box(const SaturatedBoxSpec& spec, const DeltaTuple& x) {
    const Point lowCut = arrow_point(spec.cut, 0);
    switch (spec.form) {
        case SaturatedForm::UnionPreimage:
            for (const auto& p : x.entries)
                if (point_le(p, lowCut)) return true;
            return false;
        case SaturatedForm::IntersectionPreimage: {
            const Point highCut = arrow_point(spec.cut, 1);
            for (const auto& p : x.entries)
                if (point_lt(p, highCut)) return false;
            return true;
        }
        case SaturatedForm::Control:
            return point_le(x.entries.at(spec.control_j), lowCut);
    }
    return false;
}

namespace detail {
/**
 * A random re-representation of u as a 2m-tuple: the canonical endpoint
 * pairs plus extra pairs spent on degenerate singletons inside components
 * or on splits at interior points (overlap split everywhere, adjacency
 * split at side-0 points of the arrow).
 */
inline DeltaTuple rand_representation(Rng& rng, const ClosedUnion& u, size_t m,
                                      std::uint64_t max_den = kDefaultMaxDen) {
    std::vector<ClosedInterval> pairs(u.components.begin(), u.components.end());
    size_t extra = m - pairs.size();
    while (extra-- > 0) {
        size_t at = static_cast<size_t>(rand_int(rng, 0, static_cast<std::int64_t>(pairs.size()) - 1));
        ClosedInterval& I = pairs[at];
        // a point inside [lo,hi]
        Point p = I.lo;
        if (!(I.lo == I.hi)) {
            auto c = rand_rational_in(rng, I.lo.coord, I.hi.coord, true, true, max_den);
            if (c) {
                if (u.tag == SpaceTag::Sorgenfrey) {
                    Point cand = sorgenfrey_point(*c);
                    if (I.contains(cand)) p = cand;
                } else {
                    int side = static_cast<int>(rand_int(rng, 0, 1));
                    if (*c == 0) side = 1;
                    if (*c == 1) side = 0;
                    Point cand = arrow_point(*c, side);
                    if (I.contains(cand)) p = cand;
                }
            }
        }
        const int mode = static_cast<int>(rand_int(rng, 0, 2));
        if (mode == 0 || I.lo == I.hi || !point_lt(p, I.hi)) {
            pairs.push_back(ClosedInterval{p, p}); // degenerate singleton inside I
        } else if (mode == 1 || u.tag == SpaceTag::Sorgenfrey || p.side == 1) {
            // overlap split [lo,p] ^ [p,hi]
            pairs.push_back(ClosedInterval{p, I.hi});
            I.hi = p;
        } else {
            // adjacency split [lo,<c,0>] ^ [<c,1>,hi]
            pairs.push_back(ClosedInterval{*successor(p), I.hi});
            I.hi = p;
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const ClosedInterval& a, const ClosedInterval& b) {
        int c = compare(a.lo, b.lo);
        return c != 0 ? c < 0 : compare(a.hi, b.hi) < 0;
    });
    std::vector<Point> e;
    e.reserve(2 * m);
    for (auto& I : pairs) {
        e.push_back(std::move(I.lo));
        e.push_back(std::move(I.hi));
    }
    return DeltaTuple{u.tag, std::move(e)};
}
} // namespace detail

struct SaturationWitness {
    DeltaTuple x, y; // equivalent tuples with different membership
};

struct SaturationReport {
    size_t trials = 0;
    size_t violations = 0;
    std::vector<SaturationWitness> witnesses; // capped
};

/**
 * Statistical saturation check: random pairs of equivalent tuples (two
 * re-representations of a random union), counting pairs whose membership
 * in the box differs. The first trials are deterministic adversarial
 * pairs built from padding-vs-padding of wide unions, which expose the
 * control form immediately.
 */
inline SaturationReport saturation_check(const SaturatedBoxSpec& spec, size_t trials,
                                         std::uint64_t seed,
                                         std::uint64_t max_den = kDefaultMaxDen,
                                         size_t witness_cap = 4) {
    if (spec.m == 0 || spec.cut <= 0 || spec.cut >= 1)
        throw OrderViolation("saturation_check: need m >= 1 and cut in ]0,1[");
    Rng rng(seed);
    SaturationReport rep;
    auto record = [&](const DeltaTuple& x, const DeltaTuple& y) {
        ++rep.trials;
        if (in_saturated_box(spec, x) != in_saturated_box(spec, y)) {
            ++rep.violations;
            if (rep.witnesses.size() < witness_cap) rep.witnesses.push_back({x, y});
        }
    };
    if (spec.m >= 2) {
        // whole space as one component: padding at the bottom vs at the top
        ClosedUnion whole{SpaceTag::Arrow,
                          {ClosedInterval{space_min(SpaceTag::Arrow), arrow_max()}}};
        DeltaTuple lowPad = canonical_rep(whole, spec.m); // (min,max,max,...)
        std::vector<Point> e(2 * spec.m, space_min(SpaceTag::Arrow));
        e.back() = arrow_max();
        record(lowPad, DeltaTuple{SpaceTag::Arrow, std::move(e)}); // (min,...,min,max)
    }
    while (rep.trials < trials) {
        ClosedUnion u = rand_union(rng, SpaceTag::Arrow, spec.m, max_den);
        record(detail::rand_representation(rng, u, spec.m, max_den),
               detail::rand_representation(rng, u, spec.m, max_den));
    }
    return rep;
}

} // namespace arrowhyp

#endif
