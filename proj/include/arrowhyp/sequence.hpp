/** \file
 * sequence.hpp: effectively-presented nontrivial convergent sequences
 * (finite exceptional part plus a geometric tail with a computable
 * convergence modulus), the successive-maxima enumeration, and the
 * builder mapping any such sequence onto the canonical sequence and onto
 * any other sequence of the same space.
 */
#ifndef ARROWHYP_SEQUENCE_HPP_INCLUDED
#define ARROWHYP_SEQUENCE_HPP_INCLUDED

#include <deque>

#include "arrowhyp/homeo.hpp"

namespace arrowhyp {

/**
 * Closed-form geometric tail: term n (n >= 1) has coordinate
 * base + scale * ratio^n, with 0 < ratio < 1 and scale != 0. The terms
 * are strictly monotone toward base: from above when scale > 0, from
 * below when scale < 0 (arrow only). The arrow side bit is constant.
 */
struct TailGen {
    Rat base, scale, ratio;
    int side = 0;
};

inline Rat tail_coord(const TailGen& g, size_t n) {
    Rat r = g.scale;
    for (size_t i = 0; i < n; ++i) r *= g.ratio;
    return g.base + r;
}

inline Point tail_term(SpaceTag tag, const TailGen& g, size_t n) {
    Rat c = tail_coord(g, n);
    return tag == SpaceTag::Arrow ? arrow_point(std::move(c), g.side) : sorgenfrey_point(std::move(c));
}

/// Smallest n with |scale| * ratio^n < eps: beyond it all terms lie in the
/// eps-cut of the limit.
inline size_t convergence_modulus(const TailGen& g, const Rat& eps) {
    if (eps <= 0) throw OrderViolation("modulus needs eps > 0");
    Rat r = abs(g.scale);
    size_t n = 0;
    while (r >= eps) {
        r *= g.ratio;
        ++n;
    }
    return n;
}

/// Is p a tail term? Decidable: scan until the tail passes p's distance.
inline std::optional<size_t> tail_index_of(SpaceTag tag, const TailGen& g, const Point& p) {
    if (tag == SpaceTag::Arrow && p.side != g.side) return std::nullopt;
    Rat dist = abs(p.coord - g.base);
    if (dist == 0) return std::nullopt;
    Rat r = g.scale * g.ratio;
    for (size_t n = 1; abs(r) >= dist; ++n, r *= g.ratio)
        if (g.base + r == p.coord) return n;
    return std::nullopt;
}

/**
 * S = {limit} u exceptional u {tail terms}: a nontrivial convergent
 * sequence. Every rational eps-cut around the limit excludes only the
 * exceptional part and the first modulus(eps) tail terms.
 */
struct ConvergentSeq {
    SpaceTag tag = SpaceTag::Arrow;
    Point limit;
    std::vector<Point> exceptional;
    TailGen tail;
};

inline void validate_seq(const ConvergentSeq& S) {
    const TailGen& g = S.tail;
    if (g.ratio <= 0 || g.ratio >= 1) throw InvalidSequence("tail ratio must lie in ]0,1[");
    if (g.scale == 0) throw InvalidSequence("tail scale must be nonzero");
    require_same_tag(S.limit.tag, S.tag);
    if (g.base != S.limit.coord)
        throw InvalidSequence("tail must accumulate at the limit coordinate");
    if (S.tag == SpaceTag::Sorgenfrey) {
        if (g.scale < 0)
            throw InvalidSequence("Sorgenfrey convergence is one-sided from above");
    } else {
        // <c,1> is approachable only from above, <c,0> only from below
        if (S.limit.side == 1 && g.scale < 0)
            throw InvalidSequence("tail below <c,1> cannot converge to it");
        if (S.limit.side == 0 && g.scale > 0)
            throw InvalidSequence("tail above <c,0> cannot converge to it");
    }
    (void)tail_term(S.tag, g, 1); // first term is extremal; throws if outside the space
    for (size_t i = 0; i < S.exceptional.size(); ++i) {
        const Point& e = S.exceptional[i];
        require_same_tag(e.tag, S.tag);
        if (e == S.limit) throw InvalidSequence("exceptional term equals the limit");
        if (tail_index_of(S.tag, g, e)) throw InvalidSequence("exceptional term duplicates a tail term");
        for (size_t j = i + 1; j < S.exceptional.size(); ++j)
            if (e == S.exceptional[j]) throw InvalidSequence("duplicate exceptional term");
    }
}

/// P = {<0,1>} u {<1/2^n,1>}: the canonical sequence of the arrow.
inline ConvergentSeq canonical_seq_arrow() {
    return ConvergentSeq{SpaceTag::Arrow, space_min(SpaceTag::Arrow), {}, TailGen{0, 1, Rat(1, 2), 1}};
}

/// Q = {0} u {1/2^n}: the canonical sequence of the Sorgenfrey line.
inline ConvergentSeq canonical_seq_sorgenfrey() {
    return ConvergentSeq{SpaceTag::Sorgenfrey, space_min(SpaceTag::Sorgenfrey), {}, TailGen{0, 1, Rat(1, 2), 0}};
}

/// Does p belong to S \ {limit}?
inline bool is_seq_term(const ConvergentSeq& S, const Point& p) {
    for (const auto& e : S.exceptional)
        if (e == p) return true;
    return tail_index_of(S.tag, S.tail, p).has_value();
}

/// Enumerate the first n terms, exceptional part first, then the tail.
inline std::vector<Point> seq_terms(const ConvergentSeq& S, size_t n) {
    std::vector<Point> out;
    out.reserve(n);
    for (size_t i = 0; i < S.exceptional.size() && out.size() < n; ++i)
        out.push_back(S.exceptional[i]);
    for (size_t k = 1; out.size() < n; ++k) out.push_back(tail_term(S.tag, S.tail, k));
    return out;
}

/**
 * Stream of successive maxima z_1 > z_2 > ... of the term set. Requires
 * every term strictly above the limit (a sequence normalized so its limit
 * is the minimum); then the maximum of the unemitted exceptionals and the
 * first unemitted tail term dominates all later tail terms.
 */
class MaximaStream {
public:
    explicit MaximaStream(const ConvergentSeq& S) : tag_(S.tag), tail_(S.tail) {
        if (S.tail.scale < 0)
            throw InvalidSequence("successive maxima need a tail decreasing from above");
        exc_ = S.exceptional;
        for (const auto& e : exc_)
            if (compare(e, S.limit) <= 0)
                throw InvalidSequence("successive maxima need all terms above the limit");
        std::sort(exc_.begin(), exc_.end(),
                  [](const Point& a, const Point& b) { return point_lt(b, a); });
    }

    Point next() {
        Point t = tail_term(tag_, tail_, next_tail_);
        if (ei_ < exc_.size() && point_lt(t, exc_[ei_])) return exc_[ei_++];
        ++next_tail_;
        return t;
    }

private:
    SpaceTag tag_;
    TailGen tail_;
    std::vector<Point> exc_;
    size_t ei_ = 0;
    size_t next_tail_ = 1;
};

/// First n successive maxima, for callers that want a list.
inline std::vector<Point> successive_maxima(const ConvergentSeq& S, size_t n) {
    validate_seq(S);
    MaximaStream stream(S);
    std::vector<Point> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(stream.next());
    return out;
}

namespace detail {

/// Push S through a finitely-piecewise homeo f with f(limit) = min.
/// Early tail terms that fall outside the piece adjacent to the limit
/// become exceptional; the rest stay a geometric tail.
inline ConvergentSeq transform_seq(const PiecewiseHomeo& f, const ConvergentSeq& S) {
    const auto* node = std::get_if<FiniteNode>(f.node.get());
    if (!node) throw InvalidSequence("normalization must be finitely piecewise");
    ConvergentSeq out{S.tag, eval(f, S.limit), {}, S.tail};
    for (const auto& e : S.exceptional) out.exceptional.push_back(eval(f, e));
    // the piece whose source contains the limit also owns a one-sided
    // neighborhood on the approach side
    const AffinePiece* home = nullptr;
    for (const auto& p : node->pieces)
        if (p.source.contains(S.limit)) home = &p;
    if (!home) throw PartitionViolation("normalization does not cover the limit");
    size_t n = 1;
    while (!home->source.contains(tail_term(S.tag, S.tail, n))) {
        out.exceptional.push_back(eval(f, tail_term(S.tag, S.tail, n)));
        ++n;
    }
    // reindex the remaining tail through the affine map
    Rat shift = S.tail.scale;
    for (size_t i = 0; i + 1 < n; ++i) shift *= S.tail.ratio;
    out.tail.base = home->slope * S.tail.base + home->offset;
    out.tail.scale = home->slope * shift;
    out.tail.side = S.tag == SpaceTag::Arrow ? (home->slope > 0 ? S.tail.side : 1 - S.tail.side)
                                             : 0;
    return out;
}

} // namespace detail

/**
 * Lazy block scheme mapping a normalized sequence (limit at the minimum)
 * onto the canonical sequence: the m-th largest term z_m goes into the
 * m-th canonical block, landing on the block minimum.
 */
inline TailPtr make_canonical_tail(const ConvergentSeq& normalized) {
    auto stream = std::make_shared<MaximaStream>(normalized);
    auto zcur = std::make_shared<Point>(stream->next());
    auto tprev = std::make_shared<Rat>(1);
    const SpaceTag tag = normalized.tag;

    auto gen = [stream, zcur, tprev, tag](size_t m) -> TailScheme::Block {
        const Point z = *zcur;     // z_m, the sole term in this block
        const Point znext = stream->next();
        Rat cut;
        if (tag == SpaceTag::Sorgenfrey) {
            cut = z.coord; // z_m is then the minimum of its block
        } else if (znext.side == 0) {
            cut = znext.coord; // <c,0> sits exactly at the cut boundary
        } else {
            cut = (znext.coord + z.coord) / 2;
        }
        const ClopenSpan source{tag, cut, *tprev};
        Rat image_hi = 1;
        for (size_t i = 1; i < m; ++i) image_hi /= 2;
        const ClopenSpan target{tag, image_hi / 2, image_hi};

        TailScheme::Block b;
        b.cut = cut;
        b.image_cut = target.lo;
        // move z_m to the block minimum, then rescale onto the canonical
        // block; z_m lands on the target minimum <1/2^m,1> / 1/2^m
        b.pieces = pieces_to_min(source, z);
        const AffinePiece rescale = span_to_span(source, target);
        for (auto& p : b.pieces) {
            p.offset = rescale.slope * p.offset + rescale.offset;
            p.slope = rescale.slope * p.slope;
        }
        *zcur = znext;
        *tprev = cut;
        return b;
    };

    auto tail = std::make_shared<TailScheme>(
        space_min(tag), space_min(tag), Rat(1), Rat(1), std::move(gen));
    tail->origin = normalized;
    return tail;
}

/**
 * The recursive construction mapping S onto the canonical sequence:
 * normalize the limit to the minimum, then send successive maxima into
 * the canonical blocks. Returns normalization composed with the
 * lazy-tailed block map.
 */
inline PiecewiseHomeo build_to_canonical(const ConvergentSeq& S) {
    validate_seq(S);
    PiecewiseHomeo f = S.limit == space_min(S.tag)
                           ? identity_homeo(S.tag)
                           : point_to_min(whole_space_span(S.tag), S.limit);
    ConvergentSeq normalized = detail::transform_seq(f, S);
    return compose(f, make_tailed(S.tag, {}, make_canonical_tail(normalized)));
}

/// h with h''(S) = T: through the canonical sequence of the space.
inline PiecewiseHomeo build_seq_homeo(const ConvergentSeq& S, const ConvergentSeq& T) {
    require_same_tag(S.tag, T.tag);
    return compose(build_to_canonical(S), inverse(build_to_canonical(T)));
}

struct SeqMapReport {
    size_t mapped = 0;
    bool limit_ok = false;
    std::vector<Point> misses; // images of S-terms missing from T
};

/// Desk-scale witness that h maps S onto T: the limit and the first n
/// terms, term images decided by T's generator and membership test.
inline SeqMapReport verify_seq_map(const PiecewiseHomeo& h, const ConvergentSeq& S,
                                   const ConvergentSeq& T, size_t n) {
    if (n == 0) throw OrderViolation("verify_seq_map needs n >= 1");
    SeqMapReport rep;
    rep.limit_ok = eval(h, S.limit) == T.limit;
    std::vector<Point> images;
    for (const auto& term : seq_terms(S, n)) {
        Point y = eval(h, term);
        bool dup = false;
        for (const auto& seen : images) dup = dup || seen == y;
        if (!dup && is_seq_term(T, y)) {
            ++rep.mapped;
            images.push_back(std::move(y));
        } else {
            rep.misses.push_back(std::move(y));
        }
    }
    return rep;
}

} // namespace arrowhyp

#endif
