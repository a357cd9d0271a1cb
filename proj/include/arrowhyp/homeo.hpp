/** \file
 * homeo.hpp: exactly-represented autohomeomorphisms of the double arrow
 * space and the Sorgenfrey line. A homeomorphism is a finite list of
 * rational-affine pieces on clopen spans, optionally with a lazy tail
 * scheme (an infinite stream of blocks accumulating at a limit point),
 * closed under composition and inversion. Images of closed unions are
 * computed exactly.
 */
#ifndef ARROWHYP_HOMEO_HPP_INCLUDED
#define ARROWHYP_HOMEO_HPP_INCLUDED

#include <any>
#include <functional>
#include <memory>
#include <mutex>
#include <variant>
#include <vector>

#include "arrowhyp/hyperspace.hpp"

namespace arrowhyp {

/**
 * One affine piece: the coordinate map t -> slope*t + offset restricted to
 * a clopen span. Arrow semantics: slope > 0 preserves the side bit,
 * slope < 0 flips it. Sorgenfrey pieces require slope > 0 (the order of S
 * cannot be reversed by a homeomorphism).
 */
struct AffinePiece {
    ClopenSpan source;
    Rat slope;
    Rat offset;

    SpaceTag tag() const { return source.tag; }

    ClopenSpan image() const {
        Rat a = slope * source.lo + offset;
        Rat b = slope * source.hi + offset;
        if (slope < 0) std::swap(a, b);
        return ClopenSpan{source.tag, std::move(a), std::move(b)};
    }

    Point apply(const Point& p) const {
        Rat c = slope * p.coord + offset;
        if (p.tag == SpaceTag::Sorgenfrey) return sorgenfrey_point(std::move(c));
        return arrow_point(std::move(c), slope > 0 ? p.side : 1 - p.side);
    }

    AffinePiece inverted() const {
        return AffinePiece{image(), 1 / slope, -offset / slope};
    }
};

inline AffinePiece identity_piece(const ClopenSpan& s) { return AffinePiece{s, 1, 0}; }

/// The unique increasing affine bijection between two spans.
inline AffinePiece span_to_span(const ClopenSpan& from, const ClopenSpan& to) {
    Rat k = (to.hi - to.lo) / (from.hi - from.lo);
    return AffinePiece{from, k, to.lo - k * from.lo};
}

/// The order-reversing affine involution of an arrow span onto itself.
inline AffinePiece reflection_piece(const ClopenSpan& s) {
    if (s.tag != SpaceTag::Arrow) throw TagMismatch("reflection requires the arrow space");
    return AffinePiece{s, -1, s.lo + s.hi};
}

/**
 * Pieces mapping the span J onto itself with z |-> min(J). Arrow: the two
 * rotation pieces when z has side 1, a reflection of the initial part plus
 * identity when z has side 0 (the flip makes the image of z carry side 1).
 * Sorgenfrey: plain rotation. Returns 1 or 2 pieces covering J.
 */
inline std::vector<AffinePiece> pieces_to_min(const ClopenSpan& J, const Point& z) {
    if (!J.contains(z)) throw OrderViolation("pieces_to_min: point outside span");
    if (z == J.min_point()) return {identity_piece(J)};
    const Rat& l = J.lo;
    const Rat& h = J.hi;
    const Rat& c = z.coord;
    if (J.tag == SpaceTag::Sorgenfrey || z.side == 1) {
        // rotate: [c,h) -> [l, l+h-c), [l,c) -> [l+h-c, h)
        return {AffinePiece{ClopenSpan{J.tag, c, h}, 1, l - c},
                AffinePiece{ClopenSpan{J.tag, l, c}, 1, h - c}};
    }
    // z = <c,0>: reflect [l,c] so the side bit of z flips to 1 at the minimum
    std::vector<AffinePiece> out{reflection_piece(ClopenSpan{J.tag, l, c})};
    if (c < h) out.push_back(identity_piece(ClopenSpan{J.tag, c, h}));
    return out;
}

/**
 * An infinite stream of affine blocks accumulating at `limit` from above.
 * Block m (m >= 1) covers the span between cut(m) and cut(m-1) and maps it
 * onto the span between image_cut(m) and image_cut(m-1); cuts strictly
 * decrease to limit.coord, image cuts to image_limit.coord, and the limit
 * itself maps to image_limit. Blocks are generated on demand, in order,
 * and memoized behind a mutex so evaluation is re-entrant.
 */
class TailScheme {
public:
    struct Block {
        Rat cut;       // t_m
        Rat image_cut; // u_m
        std::vector<AffinePiece> pieces;
    };

    Point limit, image_limit;
    Rat top_cut, image_top_cut; // t_0 and u_0
    std::function<Block(size_t)> gen; // called with m = 1,2,... in order

    // provenance for serialization: the data the scheme was derived from
    std::any origin;
    bool origin_inverted = false;

    TailScheme(Point lim, Point imageLim, Rat t0, Rat u0, std::function<Block(size_t)> g)
        : limit(std::move(lim)), image_limit(std::move(imageLim)),
          top_cut(std::move(t0)), image_top_cut(std::move(u0)), gen(std::move(g)) {
        if (limit.tag == SpaceTag::Arrow && limit.side != 1)
            throw OrderViolation("tail limit must be approachable from above");
        if (image_limit.tag == SpaceTag::Arrow && image_limit.side != 1)
            throw OrderViolation("tail image limit must be approachable from above");
    }

    SpaceTag tag() const { return limit.tag; }

    /// Closed region owned by the tail, limit included: arrow
    /// [limit,<t0,0>], Sorgenfrey [limit.coord, t0[.
    bool region_contains(const Point& p) const {
        if (p.tag != tag() || compare(p, limit) < 0) return false;
        if (tag() == SpaceTag::Arrow)
            return p.coord < top_cut || (p.coord == top_cut && p.side == 0);
        return p.coord < top_cut;
    }

    const Block& block(size_t m) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (blocks_.size() < m) {
            Block b = gen(blocks_.size() + 1);
            const Rat& prev = blocks_.empty() ? top_cut : blocks_.back().cut;
            const Rat& iprev = blocks_.empty() ? image_top_cut : blocks_.back().image_cut;
            if (!(b.cut < prev) || b.cut < limit.coord || !(b.image_cut < iprev) ||
                b.image_cut < image_limit.coord)
                throw PartitionViolation("tail cuts must strictly decrease toward the limit");
            blocks_.push_back(std::move(b));
        }
        return blocks_[m - 1];
    }

    ClopenSpan block_span(size_t m) const {
        return ClopenSpan{tag(), block(m).cut, m == 1 ? top_cut : block(m - 1).cut};
    }

    ClopenSpan image_block_span(size_t m) const {
        return ClopenSpan{tag(), block(m).image_cut, m == 1 ? image_top_cut : block(m - 1).image_cut};
    }

    /// Index of the block containing p; requires p in the region, p != limit.
    size_t block_of(const Point& p) const {
        for (size_t m = 1;; ++m)
            if (block_span(m).contains(p)) return m;
    }

private:
    mutable std::mutex mu_;
    mutable std::vector<Block> blocks_;
};

using TailPtr = std::shared_ptr<const TailScheme>;

/// Tail with source and image roles swapped; blocks invert lazily.
inline TailPtr invert_tail(const TailPtr& t) {
    auto gen = [t](size_t m) {
        const TailScheme::Block& b = t->block(m);
        TailScheme::Block out{b.image_cut, b.cut, {}};
        out.pieces.reserve(b.pieces.size());
        for (const auto& p : b.pieces) out.pieces.push_back(p.inverted());
        return out;
    };
    auto out = std::make_shared<TailScheme>(t->image_limit, t->limit, t->image_top_cut,
                                            t->top_cut, std::move(gen));
    out->origin = t->origin;
    out->origin_inverted = !t->origin_inverted;
    return out;
}

struct PiecewiseHomeo;

struct FiniteNode {
    std::vector<AffinePiece> pieces; // disjoint sources covering the space
};

struct TailedNode {
    std::vector<AffinePiece> pieces; // cover the complement of the tail region
    TailPtr tail;
};

struct ComposeNode; // second after first

using HomeoNode = std::variant<FiniteNode, TailedNode, ComposeNode>;

/// Immutable handle; all operations are pure and values are shareable.
struct PiecewiseHomeo {
    SpaceTag tag = SpaceTag::Arrow;
    std::shared_ptr<const HomeoNode> node;
};

struct ComposeNode {
    PiecewiseHomeo first, second;
};

inline PiecewiseHomeo make_finite(SpaceTag tag, std::vector<AffinePiece> pieces) {
    return PiecewiseHomeo{tag, std::make_shared<HomeoNode>(FiniteNode{std::move(pieces)})};
}

inline PiecewiseHomeo make_tailed(SpaceTag tag, std::vector<AffinePiece> pieces, TailPtr tail) {
    return PiecewiseHomeo{tag, std::make_shared<HomeoNode>(TailedNode{std::move(pieces), std::move(tail)})};
}

inline PiecewiseHomeo identity_homeo(SpaceTag tag) {
    return make_finite(tag, {identity_piece(whole_space_span(tag))});
}

inline PiecewiseHomeo compose(const PiecewiseHomeo& h1, const PiecewiseHomeo& h2) {
    require_same_tag(h1.tag, h2.tag);
    return PiecewiseHomeo{h1.tag, std::make_shared<HomeoNode>(ComposeNode{h1, h2})};
}

inline PiecewiseHomeo inverse(const PiecewiseHomeo& h) {
    return std::visit(
        [&](const auto& n) -> PiecewiseHomeo {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FiniteNode>) {
                std::vector<AffinePiece> inv;
                inv.reserve(n.pieces.size());
                for (const auto& p : n.pieces) inv.push_back(p.inverted());
                return make_finite(h.tag, std::move(inv));
            } else if constexpr (std::is_same_v<T, TailedNode>) {
                std::vector<AffinePiece> inv;
                inv.reserve(n.pieces.size());
                for (const auto& p : n.pieces) inv.push_back(p.inverted());
                return make_tailed(h.tag, std::move(inv), invert_tail(n.tail));
            } else {
                return compose(inverse(n.second), inverse(n.first));
            }
        },
        *h.node);
}

namespace detail {
inline Point eval_tail(const TailScheme& t, const Point& p) {
    if (p == t.limit) return t.image_limit;
    const TailScheme::Block& b = t.block(t.block_of(p));
    for (const auto& piece : b.pieces)
        if (piece.source.contains(p)) return piece.apply(p);
    throw PartitionViolation("tail block does not cover its span");
}
} // namespace detail

inline Point eval(const PiecewiseHomeo& h, const Point& p) {
    require_same_tag(h.tag, p.tag);
    return std::visit(
        [&](const auto& n) -> Point {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FiniteNode>) {
                for (const auto& piece : n.pieces)
                    if (piece.source.contains(p)) return piece.apply(p);
                throw PartitionViolation("no piece matches point " + format_point(p));
            } else if constexpr (std::is_same_v<T, TailedNode>) {
                if (n.tail->region_contains(p)) return detail::eval_tail(*n.tail, p);
                for (const auto& piece : n.pieces)
                    if (piece.source.contains(p)) return piece.apply(p);
                throw PartitionViolation("no piece matches point " + format_point(p));
            } else {
                return eval(n.second, eval(n.first, p));
            }
        },
        *h.node);
}

/**
 * z |-> min(J) inside the clopen span J, identity outside. The workhorse
 * of sequence normalization.
 */
inline PiecewiseHomeo point_to_min(const ClopenSpan& J, const Point& z) {
    std::vector<AffinePiece> pieces = pieces_to_min(J, z);
    if (J.lo > 0) pieces.push_back(identity_piece(ClopenSpan{J.tag, 0, J.lo}));
    if (J.hi < 1) pieces.push_back(identity_piece(ClopenSpan{J.tag, J.hi, 1}));
    return make_finite(J.tag, std::move(pieces));
}

inline PiecewiseHomeo point_to_min(const ClosedInterval& J, const Point& z) {
    return point_to_min(interval_span(J), z);
}

// ---------------------------------------------------------------------------
// Exact images of closed unions.

namespace detail {

/**
 * A fragment/image part: [lo,hi] when hi is set, otherwise the half-open
 * [lo, hi_open[ (Sorgenfrey only; such parts must be absorbed by an
 * adjacent part for the final result to be a union of closed intervals).
 */
struct Part {
    Point lo;
    std::optional<Point> hi;
    Rat hi_open;
};

/// [u,v] ^ source-span of an affine piece, mapped through the piece.
inline void append_fragment_image(std::vector<Part>& parts, const AffinePiece& piece,
                                  const ClosedInterval& comp) {
    const ClopenSpan& s = piece.source;
    if (s.tag == SpaceTag::Arrow) {
        ClosedInterval spanI = span_interval(s);
        if (compare(comp.lo, spanI.hi) > 0 || compare(comp.hi, spanI.lo) < 0) return;
        Point lo = point_max(comp.lo, spanI.lo);
        Point hi = point_min(comp.hi, spanI.hi);
        Point a = piece.apply(lo), b = piece.apply(hi);
        if (piece.slope < 0) std::swap(a, b);
        parts.push_back(Part{std::move(a), std::move(b), 0});
        return;
    }
    // Sorgenfrey: fragment [max(u,l), v] if v < h else [max(u,l), h[
    Rat lo_c = comp.lo.coord < s.lo ? s.lo : comp.lo.coord;
    if (lo_c > comp.hi.coord || lo_c >= s.hi) return;
    Point lo = sorgenfrey_point(lo_c);
    if (comp.hi.coord < s.hi) {
        parts.push_back(Part{piece.apply(lo), piece.apply(comp.hi), 0});
    } else {
        parts.push_back(Part{piece.apply(lo), std::nullopt, piece.slope * s.hi + piece.offset});
    }
}

/// Image of comp ^ tail-region through the tail scheme.
inline void append_tail_image(std::vector<Part>& parts, const TailScheme& t,
                              const ClosedInterval& comp) {
    const SpaceTag tag = t.tag();
    if (compare(comp.hi, t.limit) < 0) return;
    const Point lo = point_max(comp.lo, t.limit);

    // closed upper end of the fragment within the region, when it has one;
    // a Sorgenfrey component sticking out past top_cut leaves it unset
    std::optional<Point> hi;
    if (tag == SpaceTag::Arrow) {
        hi = point_min(comp.hi, arrow_point(t.top_cut, 0));
        if (compare(lo, *hi) > 0) return;
    } else {
        if (lo.coord >= t.top_cut) return;
        if (comp.hi.coord < t.top_cut) hi = comp.hi;
    }

    const bool from_limit = lo == t.limit;
    if (from_limit && hi && *hi == t.limit) {
        parts.push_back(Part{t.image_limit, t.image_limit, 0});
        return;
    }

    // the fragment passed down to block pieces; their span intersection
    // clips it, including the half-open Sorgenfrey case
    const ClosedInterval frag{lo, hi ? *hi : comp.hi};
    const size_t mtop = hi ? t.block_of(*hi) : 1; // topmost block touched

    if (from_limit) {
        // blocks strictly below mtop plus the limit map onto the image
        // region below image_cut(mtop), closed at the image limit
        const Rat& u = t.block(mtop).image_cut;
        if (tag == SpaceTag::Arrow)
            parts.push_back(Part{t.image_limit, arrow_point(u, 0), 0});
        else
            parts.push_back(Part{t.image_limit, std::nullopt, u});
        for (const auto& piece : t.block(mtop).pieces) append_fragment_image(parts, piece, frag);
        return;
    }

    const size_t mbot = t.block_of(lo); // deepest block touched
    for (size_t m = mtop; m <= mbot; ++m)
        for (const auto& piece : t.block(m).pieces) append_fragment_image(parts, piece, frag);
}

inline ClosedUnion merge_parts(SpaceTag tag, std::vector<Part> parts) {
    if (parts.empty()) throw PartitionViolation("image produced no parts");
    if (tag == SpaceTag::Arrow) {
        std::vector<ClosedInterval> raw;
        raw.reserve(parts.size());
        for (auto& p : parts) raw.push_back(ClosedInterval{std::move(p.lo), std::move(*p.hi)});
        return canonicalize(std::move(raw));
    }
    std::sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) {
        return a.lo.coord < b.lo.coord;
    });
    std::vector<Part> merged;
    auto upper = [](const Part& p) -> const Rat& { return p.hi ? p.hi->coord : p.hi_open; };
    for (auto& p : parts) {
        if (!merged.empty()) {
            Part& cur = merged.back();
            const Rat& cu = upper(cur);
            // [a,b[ u [b,c] and [a,b] u [b,c] both join; a gap never does
            if (p.lo.coord <= cu) {
                if (upper(p) > cu || (upper(p) == cu && p.hi)) {
                    cur.hi = std::move(p.hi);
                    cur.hi_open = std::move(p.hi_open);
                }
                continue;
            }
        }
        merged.push_back(std::move(p));
    }
    std::vector<ClosedInterval> raw;
    raw.reserve(merged.size());
    for (auto& p : merged) {
        if (!p.hi)
            throw DomainError("image is not a finite union of closed intervals");
        raw.push_back(ClosedInterval{std::move(p.lo), std::move(*p.hi)});
    }
    return canonicalize(std::move(raw));
}

} // namespace detail

/// Exact image of a canonical union: the induced hyperspace map.
inline ClosedUnion image_closed_union(const PiecewiseHomeo& h, const ClosedUnion& F) {
    require_same_tag(h.tag, F.tag);
    return std::visit(
        [&](const auto& n) -> ClosedUnion {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ComposeNode>) {
                return image_closed_union(n.second, image_closed_union(n.first, F));
            } else {
                std::vector<detail::Part> parts;
                for (const auto& comp : F.components) {
                    for (const auto& piece : n.pieces)
                        detail::append_fragment_image(parts, piece, comp);
                    if constexpr (std::is_same_v<T, TailedNode>)
                        detail::append_tail_image(parts, *n.tail, comp);
                }
                return detail::merge_parts(h.tag, std::move(parts));
            }
        },
        *h.node);
}

} // namespace arrowhyp

#endif
