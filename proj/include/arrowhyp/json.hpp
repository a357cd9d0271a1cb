/** \file
 * json.hpp: JSON encodings for every value the CLI consumes or emits.
 * Rationals are always "p/q" strings; side bits are 0/1; no floats.
 */
#ifndef ARROWHYP_JSON_HPP_INCLUDED
#define ARROWHYP_JSON_HPP_INCLUDED

#include <json.hpp>

#include "arrowhyp/sequence.hpp"
#include "arrowhyp/vietoris.hpp"

namespace arrowhyp {

using Json = nlohmann::json;

inline SpaceTag parse_tag(const std::string& s) {
    if (s == "arrow") return SpaceTag::Arrow;
    if (s == "sorgenfrey") return SpaceTag::Sorgenfrey;
    throw ParseError("unknown space tag: '" + s + "'");
}

// -- points, intervals, unions, tuples, sets --------------------------------

inline Json encode_point(const Point& p) { return format_point(p); }

inline Point decode_point(SpaceTag tag, const Json& j) {
    if (!j.is_string()) throw ParseError("point must be a string");
    return parse_point(tag, j.get<std::string>());
}

inline Json encode_union(const ClosedUnion& u) {
    Json comps = Json::array();
    for (const auto& c : u.components)
        comps.push_back(Json::array({format_point(c.lo), format_point(c.hi)}));
    return Json{{"tag", tag_name(u.tag)}, {"components", comps}};
}

inline std::vector<ClosedInterval> decode_interval_list(SpaceTag tag, const Json& j) {
    if (!j.is_array()) throw ParseError("interval list must be an array");
    std::vector<ClosedInterval> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw ParseError("interval must be a [lo,hi] pair");
        out.push_back(mk_interval(decode_point(tag, e[0]), decode_point(tag, e[1])));
    }
    return out;
}

inline ClosedUnion decode_union(const Json& j) {
    SpaceTag tag = parse_tag(j.at("tag").get<std::string>());
    auto comps = decode_interval_list(tag, j.at("components"));
    if (comps.empty()) throw EmptyInput("union must have at least one component");
    ClosedUnion u = canonicalize(comps);
    if (u.components != comps) throw ParseError("union is not in canonical form");
    return u;
}

inline Json encode_tuple(const DeltaTuple& x) {
    Json e = Json::array();
    for (const auto& p : x.entries) e.push_back(format_point(p));
    return Json{{"tag", tag_name(x.tag)}, {"entries", e}};
}

inline DeltaTuple decode_tuple(const Json& j) {
    SpaceTag tag = parse_tag(j.at("tag").get<std::string>());
    std::vector<Point> entries;
    for (const auto& e : j.at("entries")) entries.push_back(decode_point(tag, e));
    return mk_tuple(tag, std::move(entries));
}

inline Json encode_finite_set(const FiniteSet& s) {
    Json e = Json::array();
    for (const auto& p : s.elements) e.push_back(format_point(p));
    return Json{{"tag", tag_name(s.tag)}, {"elements", e}};
}

inline FiniteSet decode_finite_set(const Json& j) {
    SpaceTag tag = parse_tag(j.at("tag").get<std::string>());
    std::vector<Point> elems;
    for (const auto& e : j.at("elements")) elems.push_back(decode_point(tag, e));
    if (elems.empty()) throw EmptyInput("finite set must be nonempty");
    for (size_t i = 0; i + 1 < elems.size(); ++i)
        if (compare(elems[i], elems[i + 1]) >= 0)
            throw ParseError("finite set must be strictly increasing");
    return FiniteSet{tag, std::move(elems)};
}

// -- open pieces and open sets ----------------------------------------------
// Textual forms: arrow "(a,b)", "(-inf,b)", "(a,+inf)"; Sorgenfrey "[c,d)",
// "[c,+inf)" (a missing lower bound prints as "0").

inline std::string format_piece(const OpenPiece& w) {
    if (w.tag == SpaceTag::Arrow)
        return "(" + (w.lo ? format_point(*w.lo) : "-inf") + "," +
               (w.hi ? format_point(*w.hi) : "+inf") + ")";
    return "[" + (w.lo ? format_point(*w.lo) : "0") + "," +
           (w.hi ? format_point(*w.hi) : "+inf") + ")";
}

inline OpenPiece parse_piece(SpaceTag tag, const std::string& s) {
    if (s.size() < 3) throw ParseError("bad open piece: '" + s + "'");
    const char open = s.front();
    const char close = s.back();
    if (tag == SpaceTag::Arrow && (open != '(' || close != ')'))
        throw ParseError("arrow pieces look like '(a,b)': '" + s + "'");
    if (tag == SpaceTag::Sorgenfrey && (open != '[' || close != ')'))
        throw ParseError("sorgenfrey pieces look like '[c,d)': '" + s + "'");
    const std::string body = s.substr(1, s.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string::npos) throw ParseError("open piece needs two endpoints: '" + s + "'");
    const std::string los = body.substr(0, comma);
    const std::string his = body.substr(comma + 1);
    OpenPiece w{tag, std::nullopt, std::nullopt};
    if (los != "-inf") w.lo = parse_point(tag, los);
    if (his != "+inf") w.hi = parse_point(tag, his);
    if (!piece_nonempty(w)) throw ParseError("empty open piece: '" + s + "'");
    return w;
}

inline Json encode_open_set(const OpenSetSpec& V) {
    Json ps = Json::array();
    for (const auto& w : V.pieces) ps.push_back(format_piece(w));
    return Json{{"tag", tag_name(V.tag)}, {"pieces", ps}};
}

inline OpenSetSpec decode_open_set(const Json& j) {
    OpenSetSpec V{parse_tag(j.at("tag").get<std::string>()), {}};
    for (const auto& e : j.at("pieces")) V.pieces.push_back(parse_piece(V.tag, e.get<std::string>()));
    if (V.pieces.empty()) throw EmptyInput("open set must have at least one piece");
    return V;
}

inline Json encode_box(const BoxSpec& b) {
    Json fs = Json::array();
    for (const auto& f : b.factors) fs.push_back(format_piece(f));
    return Json{{"tag", tag_name(b.tag)}, {"factors", fs}};
}

// -- sequences ---------------------------------------------------------------

inline Json encode_seq(const ConvergentSeq& S) {
    Json exc = Json::array();
    for (const auto& e : S.exceptional) exc.push_back(format_point(e));
    Json tail{{"base", format_rational(S.tail.base)},
              {"scale", format_rational(S.tail.scale)},
              {"ratio", format_rational(S.tail.ratio)}};
    if (S.tag == SpaceTag::Arrow) tail["side"] = S.tail.side;
    return Json{{"tag", tag_name(S.tag)},
                {"limit", format_point(S.limit)},
                {"exceptional", exc},
                {"tail", tail}};
}

inline ConvergentSeq decode_seq(const Json& j) {
    ConvergentSeq S;
    S.tag = parse_tag(j.at("tag").get<std::string>());
    S.limit = decode_point(S.tag, j.at("limit"));
    if (auto it = j.find("exceptional"); it != j.end())
        for (const auto& e : *it) S.exceptional.push_back(decode_point(S.tag, e));
    const Json& t = j.at("tail");
    S.tail.base = parse_rational(t.at("base").get<std::string>());
    S.tail.scale = parse_rational(t.at("scale").get<std::string>());
    S.tail.ratio = parse_rational(t.at("ratio").get<std::string>());
    S.tail.side = t.value("side", 0);
    validate_seq(S);
    return S;
}

// -- homeomorphisms ----------------------------------------------------------

inline Json encode_span(const ClopenSpan& s) {
    return Json{{"lo", format_rational(s.lo)}, {"hi", format_rational(s.hi)}};
}

inline ClopenSpan decode_span(SpaceTag tag, const Json& j) {
    return mk_span(tag, parse_rational(j.at("lo").get<std::string>()),
                   parse_rational(j.at("hi").get<std::string>()));
}

inline Json encode_piece(const AffinePiece& p) {
    return Json{{"source", encode_span(p.source)},
                {"slope", format_rational(p.slope)},
                {"offset", format_rational(p.offset)}};
}

inline AffinePiece decode_piece(SpaceTag tag, const Json& j) {
    AffinePiece p{decode_span(tag, j.at("source")),
                  parse_rational(j.at("slope").get<std::string>()),
                  parse_rational(j.at("offset").get<std::string>())};
    if (p.slope == 0) throw ParseError("piece slope must be nonzero");
    if (tag == SpaceTag::Sorgenfrey && p.slope < 0)
        throw ParseError("sorgenfrey pieces must be increasing");
    ClopenSpan img = p.image();
    if (img.lo < 0 || img.hi > 1) throw ParseError("piece image leaves the space");
    return p;
}

inline Json encode_homeo(const PiecewiseHomeo& h) {
    return std::visit(
        [&](const auto& n) -> Json {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FiniteNode>) {
                Json ps = Json::array();
                for (const auto& p : n.pieces) ps.push_back(encode_piece(p));
                return Json{{"tag", tag_name(h.tag)}, {"kind", "finite"}, {"pieces", ps}};
            } else if constexpr (std::is_same_v<T, TailedNode>) {
                Json ps = Json::array();
                for (const auto& p : n.pieces) ps.push_back(encode_piece(p));
                const auto* seq = std::any_cast<ConvergentSeq>(&n.tail->origin);
                if (!seq) throw DomainError("tail scheme has no serializable origin");
                Json tail{{"family", "to-canonical"},
                          {"cut_rule", "midpoint-or-coordinate"},
                          {"limit", format_point(n.tail->limit)},
                          {"image_limit", format_point(n.tail->image_limit)},
                          {"seq", encode_seq(*seq)},
                          {"inverted", n.tail->origin_inverted}};
                return Json{{"tag", tag_name(h.tag)}, {"kind", "tailed"},
                            {"pieces", ps}, {"tail", tail}};
            } else {
                return Json{{"tag", tag_name(h.tag)},
                            {"kind", "compose"},
                            {"first", encode_homeo(n.first)},
                            {"second", encode_homeo(n.second)}};
            }
        },
        *h.node);
}

inline PiecewiseHomeo decode_homeo(const Json& j) {
    SpaceTag tag = parse_tag(j.at("tag").get<std::string>());
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "compose") {
        PiecewiseHomeo first = decode_homeo(j.at("first"));
        PiecewiseHomeo second = decode_homeo(j.at("second"));
        return compose(first, second);
    }
    std::vector<AffinePiece> pieces;
    for (const auto& e : j.at("pieces")) pieces.push_back(decode_piece(tag, e));
    if (kind == "finite") return make_finite(tag, std::move(pieces));
    if (kind != "tailed") throw ParseError("unknown homeo kind: '" + kind + "'");
    const Json& t = j.at("tail");
    if (t.at("family").get<std::string>() != "to-canonical")
        throw ParseError("unknown tail family");
    TailPtr tail = make_canonical_tail(decode_seq(t.at("seq")));
    if (t.value("inverted", false)) tail = invert_tail(tail);
    return make_tailed(tag, std::move(pieces), std::move(tail));
}

// -- reports -----------------------------------------------------------------

inline Json encode_saturation_report(const SaturationReport& r) {
    Json ws = Json::array();
    for (const auto& w : r.witnesses)
        ws.push_back(Json{{"x", encode_tuple(w.x)}, {"y", encode_tuple(w.y)}});
    return Json{{"trials", r.trials}, {"violations", r.violations}, {"witnesses", ws}};
}

inline Json encode_seq_map_report(const SeqMapReport& r) {
    Json ms = Json::array();
    for (const auto& p : r.misses) ms.push_back(format_point(p));
    return Json{{"mapped", r.mapped}, {"limit_ok", r.limit_ok}, {"misses", ms}};
}

} // namespace arrowhyp

#endif
