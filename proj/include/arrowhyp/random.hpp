/** \file
 * random.hpp: seedable generators for rationals, points, tuples and
 * interval lists with bounded denominators. Every generator takes the
 * engine explicitly so property tests are reproducible.
 */
#ifndef ARROWHYP_RANDOM_HPP_INCLUDED
#define ARROWHYP_RANDOM_HPP_INCLUDED

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "arrowhyp/hyperspace.hpp"

namespace arrowhyp {

using Rng = std::mt19937_64;

constexpr std::uint64_t kDefaultMaxDen = 1024; // 2^10

inline std::int64_t rand_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Int floor_rat(const Rat& r) {
    Int q, rem;
    divide_qr(numerator(r), denominator(r), q, rem);
    if (rem != 0 && r < 0) --q;
    return q;
}

inline Int ceil_rat(const Rat& r) {
    Int q, rem;
    divide_qr(numerator(r), denominator(r), q, rem);
    if (rem != 0 && r > 0) ++q;
    return q;
}

/**
 * Random rational in [lo,hi] with denominator <= max_den, or nothing if no
 * such rational exists for any tried denominator. Endpoint inclusion is
 * controlled by the two flags.
 */
inline std::optional<Rat> rand_rational_in(Rng& rng, const Rat& lo, const Rat& hi,
                                           bool incl_lo, bool incl_hi,
                                           std::uint64_t max_den = kDefaultMaxDen) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        // bias towards larger denominators, where the range is least likely empty
        std::uint64_t den = attempt < 8 ? static_cast<std::uint64_t>(rand_int(rng, 1, static_cast<std::int64_t>(max_den)))
                                        : max_den;
        Int nlo = ceil_rat(lo * den);
        Int nhi = floor_rat(hi * den);
        if (!incl_lo && Rat(nlo, den) == lo) ++nlo;
        if (!incl_hi && Rat(nhi, den) == hi) --nhi;
        if (nlo > nhi) continue;
        // span fits in int64 for our [0,1] use; guard anyway
        Int width = nhi - nlo;
        if (width > std::numeric_limits<std::int64_t>::max()) width = std::numeric_limits<std::int64_t>::max();
        Int num = nlo + rand_int(rng, 0, static_cast<std::int64_t>(width));
        return Rat(num, Int(den));
    }
    return std::nullopt;
}

inline Rat rand_unit_rational(Rng& rng, std::uint64_t max_den = kDefaultMaxDen) {
    auto r = rand_rational_in(rng, 0, 1, true, true, max_den);
    return *r; // [0,1] with den>=1 is never empty
}

inline Point rand_point(Rng& rng, SpaceTag tag, std::uint64_t max_den = kDefaultMaxDen) {
    Rat c = rand_unit_rational(rng, max_den);
    if (tag == SpaceTag::Sorgenfrey) {
        if (c == 1) c = 0;
        return sorgenfrey_point(std::move(c));
    }
    int side = static_cast<int>(rand_int(rng, 0, 1));
    if (c == 0) side = 1;
    if (c == 1) side = 0;
    return arrow_point(std::move(c), side);
}

inline DeltaTuple rand_tuple(Rng& rng, SpaceTag tag, size_t len,
                             std::uint64_t max_den = kDefaultMaxDen) {
    std::vector<Point> e;
    e.reserve(len);
    for (size_t i = 0; i < len; ++i) e.push_back(rand_point(rng, tag, max_den));
    std::sort(e.begin(), e.end(), [](const Point& a, const Point& b) { return point_lt(a, b); });
    return DeltaTuple{tag, std::move(e)};
}

inline std::vector<ClosedInterval> rand_interval_list(Rng& rng, SpaceTag tag, size_t count,
                                                      std::uint64_t max_den = kDefaultMaxDen) {
    std::vector<ClosedInterval> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        Point a = rand_point(rng, tag, max_den);
        Point b = rand_point(rng, tag, max_den);
        if (point_lt(b, a)) std::swap(a, b);
        out.push_back(ClosedInterval{std::move(a), std::move(b)});
    }
    return out;
}

/// Random canonical union with at most m components.
inline ClosedUnion rand_union(Rng& rng, SpaceTag tag, size_t m,
                              std::uint64_t max_den = kDefaultMaxDen) {
    return varrho(rand_tuple(rng, tag, 2 * m, max_den));
}

} // namespace arrowhyp

#endif
