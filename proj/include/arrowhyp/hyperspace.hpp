/** \file
 * hyperspace.hpp: canonical finite unions of closed intervals (elements of
 * C_m), non-decreasing tuples (elements of Delta_m), the maps varrho and
 * rho, and the decision procedures for the induced equivalences.
 */
#ifndef ARROWHYP_HYPERSPACE_HPP_INCLUDED
#define ARROWHYP_HYPERSPACE_HPP_INCLUDED

#include <algorithm>
#include <vector>

#include "arrowhyp/interval.hpp"

namespace arrowhyp {

/**
 * Canonical union of closed intervals: components sorted with strictly
 * increasing lo, pairwise non-mergeable (a gap between consecutive
 * components that is not bridged by arrow adjacency). Structural equality
 * of two canonical unions coincides with equality of point sets.
 */
struct ClosedUnion {
    SpaceTag tag = SpaceTag::Arrow;
    std::vector<ClosedInterval> components;

    bool operator==(const ClosedUnion& o) const {
        return tag == o.tag && components == o.components;
    }

    bool contains(const Point& p) const {
        for (const auto& c : components)
            if (c.contains(p)) return true;
        return false;
    }

    const Point& min() const { return components.front().lo; }
    const Point& max() const { return components.back().hi; }
};

/**
 * Sort-and-sweep normal form. Two intervals merge when they overlap
 * (J.lo <= I.hi) or are arrow-adjacent (J.lo = successor(I.hi)); the
 * result is the unique canonical union with the same point membership.
 */
inline ClosedUnion canonicalize(std::vector<ClosedInterval> raw) {
    if (raw.empty()) throw EmptyInput("canonicalize: empty interval list");
    const SpaceTag tag = raw.front().tag();
    for (const auto& I : raw) require_same_tag(I.tag(), tag);
    std::sort(raw.begin(), raw.end(), [](const ClosedInterval& a, const ClosedInterval& b) {
        int c = compare(a.lo, b.lo);
        return c != 0 ? c < 0 : compare(a.hi, b.hi) < 0;
    });
    ClosedUnion out{tag, {}};
    for (auto& I : raw) {
        if (!out.components.empty()) {
            ClosedInterval& cur = out.components.back();
            bool joins = compare(I.lo, cur.hi) <= 0;
            if (!joins) {
                auto s = successor(cur.hi);
                joins = s && *s == I.lo;
            }
            if (joins) {
                if (compare(I.hi, cur.hi) > 0) cur.hi = std::move(I.hi);
                continue;
            }
        }
        out.components.push_back(std::move(I));
    }
    return out;
}

/// Non-decreasing tuple, an element of Delta_len(X).
struct DeltaTuple {
    SpaceTag tag = SpaceTag::Arrow;
    std::vector<Point> entries;

    bool operator==(const DeltaTuple& o) const { return tag == o.tag && entries == o.entries; }
};

inline DeltaTuple mk_tuple(SpaceTag tag, std::vector<Point> entries) {
    if (entries.empty()) throw EmptyInput("tuple must be nonempty");
    for (const auto& p : entries) require_same_tag(p.tag, tag);
    for (size_t i = 0; i + 1 < entries.size(); ++i)
        if (compare(entries[i], entries[i + 1]) > 0)
            throw OrderViolation("tuple entries must be non-decreasing");
    return DeltaTuple{tag, std::move(entries)};
}

/// varrho: the union of the consecutive-pair intervals of a 2m-tuple.
inline ClosedUnion varrho(const DeltaTuple& x) {
    if (x.entries.size() % 2 != 0) throw OrderViolation("varrho needs a tuple of even length");
    std::vector<ClosedInterval> raw;
    raw.reserve(x.entries.size() / 2);
    for (size_t i = 0; i + 1 < x.entries.size(); i += 2)
        raw.push_back(ClosedInterval{x.entries[i], x.entries[i + 1]});
    return canonicalize(std::move(raw));
}

inline bool equiv_approx(const DeltaTuple& x, const DeltaTuple& y) {
    require_same_tag(x.tag, y.tag);
    if (x.entries.size() != y.entries.size())
        throw OrderViolation("equiv_approx: tuple lengths differ");
    return varrho(x) == varrho(y);
}

/**
 * Canonical representative of a class of varrho-preimages: the endpoint
 * list of u padded with repetitions of the last hi up to length 2m.
 */
inline DeltaTuple canonical_rep(const ClosedUnion& u, size_t m) {
    const size_t k = u.components.size();
    if (k > m) throw OrderViolation("canonical_rep: union has more than m components");
    std::vector<Point> e;
    e.reserve(2 * m);
    for (const auto& c : u.components) {
        e.push_back(c.lo);
        e.push_back(c.hi);
    }
    while (e.size() < 2 * m) e.push_back(u.components.back().hi);
    return DeltaTuple{u.tag, std::move(e)};
}

/// Canonical element of F_m: sorted, deduplicated, nonempty.
struct FiniteSet {
    SpaceTag tag = SpaceTag::Arrow;
    std::vector<Point> elements;

    bool operator==(const FiniteSet& o) const { return tag == o.tag && elements == o.elements; }
};

/// rho: underlying set of a tuple, as a sorted deduplicated list.
inline FiniteSet rho_fin(const DeltaTuple& x) {
    FiniteSet s{x.tag, x.entries};
    s.elements.erase(std::unique(s.elements.begin(), s.elements.end()), s.elements.end());
    return s;
}

inline bool equiv_sim(const DeltaTuple& x, const DeltaTuple& y) {
    require_same_tag(x.tag, y.tag);
    if (x.entries.size() != y.entries.size())
        throw OrderViolation("equiv_sim: tuple lengths differ");
    return rho_fin(x) == rho_fin(y);
}

/// F_2 ~ C_1: {a,b} <-> [min,max].
inline ClosedUnion set_to_interval(const FiniteSet& s) {
    if (s.elements.empty() || s.elements.size() > 2)
        throw OrderViolation("bridge requires a set of size 1 or 2");
    return ClosedUnion{s.tag, {ClosedInterval{s.elements.front(), s.elements.back()}}};
}

inline FiniteSet interval_to_set(const ClosedUnion& u) {
    if (u.components.size() != 1)
        throw OrderViolation("bridge requires a single-component union");
    const ClosedInterval& I = u.components.front();
    FiniteSet s{u.tag, {I.lo}};
    if (!(I.hi == I.lo)) s.elements.push_back(I.hi);
    return s;
}

} // namespace arrowhyp

#endif
