/** \file
 * point.hpp: exact points of the double arrow space and the Sorgenfrey line.
 *
 * The double arrow space A is (]0,1]x{0}) u ([0,1[x{1}) with the
 * lexicographic order; its minimum is <0,1> and its maximum <1,0>, and
 * <a,1> is the immediate successor of <a,0>. The Sorgenfrey line S is
 * [0,1[ with the usual order of the rationals. All coordinates are exact
 * arbitrary-precision rationals; there is no floating point anywhere.
 */
#ifndef ARROWHYP_POINT_HPP_INCLUDED
#define ARROWHYP_POINT_HPP_INCLUDED

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "arrowhyp/errors.hpp"

namespace arrowhyp {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

enum class SpaceTag { Arrow, Sorgenfrey };

inline const char* tag_name(SpaceTag t) {
    return t == SpaceTag::Arrow ? "arrow" : "sorgenfrey";
}

inline void require_same_tag(SpaceTag a, SpaceTag b) {
    if (a != b) throw TagMismatch();
}

/// "p/q" or "p"; exact, sign allowed on the numerator.
inline Rat parse_rational(const std::string& s) {
    auto bad = [&] { throw ParseError("bad rational: '" + s + "'"); };
    if (s.empty()) bad();
    std::string num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
        if (num.empty() || den.empty()) bad();
    }
    auto digits_ok = [](const std::string& t, bool sign) {
        size_t i = (sign && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!digits_ok(num, true) || !digits_ok(den, false)) bad();
    Int d(den);
    if (d == 0) bad();
    return Rat(Int(num), d);
}

inline std::string format_rational(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

/**
 * A point of A (coord in [0,1] plus a side bit) or of S (coord in [0,1[,
 * side fixed to 0). Valid arrow points satisfy side=0 => coord>0 and
 * side=1 => coord<1.
 */
struct Point {
    SpaceTag tag = SpaceTag::Arrow;
    Rat coord;
    int side = 0;

    bool operator==(const Point& o) const {
        return tag == o.tag && coord == o.coord && (tag != SpaceTag::Arrow || side == o.side);
    }
};

inline Point arrow_point(Rat coord, int side) {
    if (side != 0 && side != 1) throw InvalidPoint("arrow side must be 0 or 1");
    if (coord < 0 || coord > 1) throw InvalidPoint("arrow coord out of [0,1]");
    if (side == 0 && coord == 0) throw InvalidPoint("<0,0> is not a point of the double arrow");
    if (side == 1 && coord == 1) throw InvalidPoint("<1,1> is not a point of the double arrow");
    return Point{SpaceTag::Arrow, std::move(coord), side};
}

inline Point sorgenfrey_point(Rat coord) {
    if (coord < 0 || coord >= 1) throw InvalidPoint("sorgenfrey coord out of [0,1[");
    return Point{SpaceTag::Sorgenfrey, std::move(coord), 0};
}

inline Point space_min(SpaceTag t) {
    return t == SpaceTag::Arrow ? arrow_point(0, 1) : sorgenfrey_point(0);
}

/// Only the arrow has a maximum; S = [0,1[ does not.
inline Point arrow_max() { return arrow_point(1, 0); }

/// Total order: lexicographic on (coord, side) for the arrow, coord order for S.
inline int compare(const Point& p, const Point& q) {
    require_same_tag(p.tag, q.tag);
    if (p.coord != q.coord) return p.coord < q.coord ? -1 : 1;
    if (p.tag == SpaceTag::Arrow && p.side != q.side) return p.side < q.side ? -1 : 1;
    return 0;
}

inline bool point_lt(const Point& p, const Point& q) { return compare(p, q) < 0; }
inline bool point_le(const Point& p, const Point& q) { return compare(p, q) <= 0; }

inline const Point& point_min(const Point& p, const Point& q) { return point_le(p, q) ? p : q; }
inline const Point& point_max(const Point& p, const Point& q) { return point_le(p, q) ? q : p; }

/// <a,0> -> <a,1>; absent for <a,1>, for the maximum, and everywhere in S.
inline std::optional<Point> successor(const Point& p) {
    if (p.tag != SpaceTag::Arrow || p.side != 0 || p.coord == 1) return std::nullopt;
    return arrow_point(p.coord, 1);
}

/// <a,1> -> <a,0>; absent for <a,0>, for the minimum, and everywhere in S.
inline std::optional<Point> predecessor(const Point& p) {
    if (p.tag != SpaceTag::Arrow || p.side != 1 || p.coord == 0) return std::nullopt;
    return arrow_point(p.coord, 0);
}

/// Is the open order interval ]p,q[ nonempty? Requires p,q comparable.
inline bool exists_between(const Point& p, const Point& q) {
    if (compare(p, q) >= 0) return false;
    if (p.tag == SpaceTag::Arrow) {
        auto s = successor(p);
        return !(s && *s == q);
    }
    return true; // rationals are dense
}

/// Some point strictly between p and q; requires exists_between(p,q).
inline Point pick_between(const Point& p, const Point& q) {
    if (!exists_between(p, q)) throw OrderViolation("no point strictly between");
    if (p.tag == SpaceTag::Sorgenfrey) return sorgenfrey_point((p.coord + q.coord) / 2);
    if (auto s = successor(p); s && point_lt(*s, q)) return *s;
    // here p has no successor below q, so the coords differ
    return arrow_point((p.coord + q.coord) / 2, 1);
}

/// Textual form: arrow "p/q|b", sorgenfrey "p/q".
inline std::string format_point(const Point& p) {
    std::string s = format_rational(p.coord);
    if (p.tag == SpaceTag::Arrow) s += "|" + std::to_string(p.side);
    return s;
}

inline Point parse_point(SpaceTag tag, const std::string& s) {
    if (tag == SpaceTag::Sorgenfrey) {
        try {
            return sorgenfrey_point(parse_rational(s));
        } catch (const InvalidPoint& e) {
            throw ParseError(e.what());
        }
    }
    auto bar = s.rfind('|');
    if (bar == std::string::npos) throw ParseError("arrow point needs '|side': '" + s + "'");
    const std::string sideStr = s.substr(bar + 1);
    if (sideStr != "0" && sideStr != "1") throw ParseError("arrow side must be 0 or 1: '" + s + "'");
    try {
        return arrow_point(parse_rational(s.substr(0, bar)), sideStr == "1" ? 1 : 0);
    } catch (const InvalidPoint& e) {
        throw ParseError(e.what());
    }
}

} // namespace arrowhyp

#endif
