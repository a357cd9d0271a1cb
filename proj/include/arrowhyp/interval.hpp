/** \file
 * interval.hpp: closed order intervals, clopen spans, and finite unions of
 * basic open sets for the double arrow space and the Sorgenfrey line.
 */
#ifndef ARROWHYP_INTERVAL_HPP_INCLUDED
#define ARROWHYP_INTERVAL_HPP_INCLUDED

#include <algorithm>
#include <optional>
#include <vector>

#include "arrowhyp/point.hpp"

namespace arrowhyp {

/// Closed order interval [lo,hi]; degenerate [a,a] is legal.
struct ClosedInterval {
    Point lo, hi;

    SpaceTag tag() const { return lo.tag; }
    bool operator==(const ClosedInterval& o) const { return lo == o.lo && hi == o.hi; }

    bool contains(const Point& p) const {
        return point_le(lo, p) && point_le(p, hi);
    }
};

inline ClosedInterval mk_interval(Point a, Point b) {
    require_same_tag(a.tag, b.tag);
    if (compare(a, b) > 0) throw OrderViolation("mk_interval: lo > hi");
    return ClosedInterval{std::move(a), std::move(b)};
}

/**
 * Is the arrow interval clopen? Exactly the intervals [<u,1>,<v,0>]
 * (the global min has side 1 and the max side 0, so they fit the pattern).
 */
inline bool is_clopen(const ClosedInterval& I) {
    if (I.tag() != SpaceTag::Arrow)
        throw TagMismatch("is_clopen is an arrow-only notion; Sorgenfrey clopen sets are [c,d[ pieces");
    return I.lo.side == 1 && I.hi.side == 0;
}

/**
 * A clopen span, the common currency of the homeomorphism machinery.
 * Arrow: the clopen interval [<lo,1>,<hi,0>], lo < hi. Sorgenfrey: the
 * half-open [lo,hi[, lo < hi <= 1 (hi may be 1 even though 1 is not a point).
 */
struct ClopenSpan {
    SpaceTag tag = SpaceTag::Arrow;
    Rat lo, hi;

    bool operator==(const ClopenSpan& o) const = default;

    bool contains(const Point& p) const {
        if (p.tag != tag) return false;
        if (tag == SpaceTag::Arrow) {
            if (p.coord < lo || p.coord > hi) return false;
            if (p.coord == lo && p.side == 0) return false;
            if (p.coord == hi && p.side == 1) return false;
            return true;
        }
        return p.coord >= lo && p.coord < hi;
    }

    Point min_point() const {
        return tag == SpaceTag::Arrow ? arrow_point(lo, 1) : sorgenfrey_point(lo);
    }
};

inline ClopenSpan mk_span(SpaceTag tag, Rat lo, Rat hi) {
    if (!(lo < hi) || lo < 0 || hi > 1) throw OrderViolation("bad clopen span");
    return ClopenSpan{tag, std::move(lo), std::move(hi)};
}

inline ClopenSpan whole_space_span(SpaceTag tag) { return ClopenSpan{tag, 0, 1}; }

/// The span as a ClosedInterval; for Sorgenfrey this is not the same set
/// (the span is [lo,hi[), so it is arrow-only.
inline ClosedInterval span_interval(const ClopenSpan& s) {
    if (s.tag != SpaceTag::Arrow) throw TagMismatch("span_interval is arrow-only");
    return ClosedInterval{arrow_point(s.lo, 1), arrow_point(s.hi, 0)};
}

inline ClopenSpan interval_span(const ClosedInterval& I) {
    if (!is_clopen(I)) throw OrderViolation("interval is not clopen");
    return ClopenSpan{SpaceTag::Arrow, I.lo.coord, I.hi.coord};
}

/**
 * One basic open piece. Arrow: the order-open interval ]lo,hi[ where a
 * missing endpoint is a ray end. Sorgenfrey: [lo,hi[ where a missing lo
 * means "from 0" and a missing hi means "to the right end".
 */
struct OpenPiece {
    SpaceTag tag = SpaceTag::Arrow;
    std::optional<Point> lo, hi;

    bool operator==(const OpenPiece& o) const = default;

    bool contains(const Point& p) const {
        if (p.tag != tag) return false;
        if (tag == SpaceTag::Arrow) {
            if (lo && compare(p, *lo) <= 0) return false;
            if (hi && compare(p, *hi) >= 0) return false;
        } else {
            if (lo && compare(p, *lo) < 0) return false;
            if (hi && compare(p, *hi) >= 0) return false;
        }
        return true;
    }

    bool is_whole_space() const {
        if (tag == SpaceTag::Arrow) return !lo && !hi;
        return !hi && (!lo || lo->coord == 0);
    }
};

inline OpenPiece whole_space_piece(SpaceTag tag) { return OpenPiece{tag, std::nullopt, std::nullopt}; }

inline bool piece_nonempty(const OpenPiece& w) {
    if (w.tag == SpaceTag::Sorgenfrey) {
        if (!w.hi) return true; // contains everything from lo on; [c,->[ with c<1
        Rat lo = w.lo ? w.lo->coord : Rat(0);
        return lo < w.hi->coord;
    }
    if (!w.lo && !w.hi) return true;
    if (!w.lo) return point_lt(space_min(w.tag), *w.hi);  // ]<-,a[ nonempty iff a > min
    if (!w.hi) return point_lt(*w.lo, arrow_max());
    return exists_between(*w.lo, *w.hi);
}

/// Does the piece meet the closed interval [u,v]? Exact case analysis.
inline bool piece_meets_interval(const OpenPiece& w, const ClosedInterval& I) {
    require_same_tag(w.tag, I.tag());
    const Point& u = I.lo;
    const Point& v = I.hi;
    if (w.tag == SpaceTag::Sorgenfrey) {
        const Point& lo = (w.lo && compare(*w.lo, u) > 0) ? *w.lo : u;
        if (compare(lo, v) > 0) return false;
        return !w.hi || compare(lo, *w.hi) < 0;
    }
    if (!w.lo || compare(*w.lo, u) < 0) {
        // u itself is above the lower bound
        return !w.hi || compare(u, *w.hi) < 0;
    }
    const Point& a = *w.lo; // a >= u: need a point in ]a, min(v,b)]
    if (compare(a, v) >= 0) return false;
    if (!w.hi || compare(v, *w.hi) < 0) return true; // v works
    return exists_between(a, *w.hi);
}

/// Is the closed interval [u,v] contained in the piece?
inline bool piece_covers_interval(const OpenPiece& w, const ClosedInterval& I) {
    require_same_tag(w.tag, I.tag());
    if (w.tag == SpaceTag::Sorgenfrey) {
        if (w.lo && compare(I.lo, *w.lo) < 0) return false;
    } else {
        if (w.lo && compare(I.lo, *w.lo) <= 0) return false;
    }
    return !w.hi || compare(I.hi, *w.hi) < 0;
}

/**
 * A finite union of basic open pieces; pieces may overlap, the semantics
 * is the union of their point sets.
 */
struct OpenSetSpec {
    SpaceTag tag = SpaceTag::Arrow;
    std::vector<OpenPiece> pieces;
};

inline bool point_in_open(const Point& p, const OpenSetSpec& V) {
    require_same_tag(p.tag, V.tag);
    for (const auto& w : V.pieces)
        if (w.contains(p)) return true;
    return false;
}

namespace detail {
// Sort key treating a missing lower bound as -infinity.
inline bool piece_lo_less(const OpenPiece& a, const OpenPiece& b) {
    if (!a.lo) return static_cast<bool>(b.lo);
    if (!b.lo) return false;
    int c = compare(*a.lo, *b.lo);
    if (c != 0) return c < 0;
    // wider piece first so the sweep keeps the larger hi
    if (!a.hi) return static_cast<bool>(b.hi);
    if (!b.hi) return false;
    return compare(*a.hi, *b.hi) > 0;
}
} // namespace detail

/**
 * Merge the pieces of V into maximal pairwise-disjoint convex open pieces.
 * Arrow pieces ]a,b[ and ]c,d[ merge when c < b (the union is convex even
 * when ]c,b[ is empty, i.e. b = successor(c)); Sorgenfrey pieces [a,b[ and
 * [c,d[ merge when c <= b.
 */
inline std::vector<OpenPiece> merged_pieces(const OpenSetSpec& V) {
    std::vector<OpenPiece> ps;
    for (const auto& w : V.pieces)
        if (piece_nonempty(w)) ps.push_back(w);
    std::sort(ps.begin(), ps.end(), detail::piece_lo_less);
    std::vector<OpenPiece> out;
    for (auto& w : ps) {
        if (!out.empty()) {
            OpenPiece& cur = out.back();
            bool joins = false;
            if (!cur.hi) {
                joins = true;
            } else if (!w.lo) {
                joins = true; // same -inf start, sorted first otherwise
            } else {
                int c = compare(*w.lo, *cur.hi);
                joins = V.tag == SpaceTag::Arrow ? c < 0 : c <= 0;
            }
            if (joins) {
                if (cur.hi && (!w.hi || compare(*w.hi, *cur.hi) > 0)) cur.hi = w.hi;
                continue;
            }
        }
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace arrowhyp

#endif
