#include "chatelet2/serialize.hpp"

namespace chatelet2 {

using nlohmann::json;

json poly_to_json(const Poly& p) {
    json arr = json::array();
    for (int i = 0; i <= p.deg(); ++i) arr.push_back(p.ctx().to_hex(p.coeff(i)));
    return arr;
}

Poly poly_from_json(const FieldCtx& ctx, const json& j) {
    if (!j.is_array()) throw PreconditionViolated("poly: expected an array");
    std::vector<FieldElem> c;
    c.reserve(j.size());
    for (const auto& e : j) c.push_back(ctx.from_hex(e.get<std::string>()));
    return Poly(ctx, std::move(c));
}

json rational_to_json(const RationalFn& r) {
    return json{{"num", poly_to_json(r.num())}, {"den", poly_to_json(r.den())}};
}

RationalFn rational_from_json(const FieldCtx& ctx, const json& j) {
    return RationalFn(poly_from_json(ctx, j.at("num")), poly_from_json(ctx, j.at("den")));
}

json place_to_json(const Place& v) {
    if (v.is_infinite()) return json{{"kind", "infinite"}};
    return json{{"kind", "finite"}, {"prime", poly_to_json(v.prime())}};
}

Place place_from_json(const FieldCtx& ctx, const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "infinite") return Place::infinite(ctx);
    if (kind == "finite") return Place::finite(poly_from_json(ctx, j.at("prime")));
    throw PreconditionViolated("place: unknown kind \"" + kind + "\"");
}

json series_to_json(const LaurentSeries& s) {
    const FieldCtx& E = s.field()->res_ctx();
    json coeffs = json::array();
    for (const FieldElem& c : s.coeffs()) coeffs.push_back(E.to_hex(c));
    return json{{"place", place_to_json(s.field()->place())},
                {"lead", s.lead()},
                {"coeffs", coeffs},
                {"prec", s.prec()}};
}

LaurentSeries series_from_json(const FieldCtx& ctx, const json& j) {
    LocalFieldPtr lf = LocalField::get(place_from_json(ctx, j.at("place")));
    const FieldCtx& E = lf->res_ctx();
    std::vector<FieldElem> c;
    for (const auto& e : j.at("coeffs")) c.push_back(E.from_hex(e.get<std::string>()));
    return LaurentSeries(lf, j.at("lead").get<long>(), std::move(c),
                         j.at("prec").get<long>());
}

json instance_to_json(const ChateletInstance& inst) {
    return json{{"m", inst.ctx.degree()},
                {"modulus", bits_to_hex(inst.ctx.modulus(), inst.ctx.degree() + 1)},
                {"gamma", inst.ctx.to_hex(inst.gamma)},
                {"n", inst.n},
                {"p", "infinite"},
                {"a", poly_to_json(inst.a)},
                {"b", poly_to_json(inst.b)}};
}

ChateletInstance instance_from_json(const json& j) {
    int m = j.at("m").get<int>();
    if (m < 1 || m > FieldCtx::kMaxDegree)
        throw PreconditionViolated("instance: m out of range");
    FieldCtx ctx(m, bits_from_hex(j.at("modulus").get<std::string>(), m + 1));
    FieldElem gamma = ctx.from_hex(j.at("gamma").get<std::string>());
    if (j.at("n").get<uint64_t>() != ctx.unit_order())
        throw PreconditionViolated("instance: n does not equal 2^m - 1");
    if (j.at("p").get<std::string>() != "infinite")
        throw PreconditionViolated("instance: the distinguished place must be infinite");
    return build_instance(ctx, gamma, poly_from_json(ctx, j.at("a")),
                          poly_from_json(ctx, j.at("b")));
}

json search_to_json(const GlobalSearch& s) {
    json entries = json::array();
    for (const SearchEntry& e : s.excluded)
        entries.push_back(json{{"x", rational_to_json(e.x0)},
                               {"place", place_to_json(e.place)},
                               {"valuation", e.val}});
    return json{{"height", s.height},
                {"points_found", s.points_found},
                {"excluding_places", entries}};
}

GlobalSearch search_from_json(const FieldCtx& ctx, const json& j) {
    GlobalSearch s;
    s.height = j.at("height").get<int>();
    s.points_found = j.at("points_found").get<uint64_t>();
    for (const auto& e : j.at("excluding_places"))
        s.excluded.push_back(SearchEntry{rational_from_json(ctx, e.at("x")),
                                         place_from_json(ctx, e.at("place")),
                                         e.at("valuation").get<long>()});
    return s;
}

namespace {

std::string invariant_to_string(InvariantValue v) {
    return v == InvariantValue::half ? "1/2" : "0";
}

InvariantValue invariant_from_string(const std::string& s) {
    if (s == "1/2") return InvariantValue::half;
    if (s == "0") return InvariantValue::zero;
    throw PreconditionViolated("invariant: expected \"0\" or \"1/2\", got \"" + s + "\"");
}

}  // namespace

json certificate_to_json(const Certificate& cert) {
    json reports = json::array();
    for (const PlaceReport& r : cert.reports)
        reports.push_back(json{{"place", place_to_json(r.place)},
                               {"invariant", invariant_to_string(r.invariant)},
                               {"samples", r.samples},
                               {"witness", json{{"x", series_to_json(r.witness.x)},
                                                {"y", series_to_json(r.witness.y)},
                                                {"z", series_to_json(r.witness.z)}}}});
    return json{{"instance", instance_to_json(cert.instance)},
                {"degree_bound", cert.degree_bound},
                {"precision", cert.precision},
                {"seed", cert.seed},
                {"reports", reports},
                {"invariant_sum", invariant_to_string(cert.invariant_sum)},
                {"global_search", search_to_json(cert.global_search)}};
}

Certificate certificate_from_json(const json& j) {
    ChateletInstance inst = instance_from_json(j.at("instance"));
    const FieldCtx& ctx = inst.ctx;
    Certificate cert{inst,
                     j.at("degree_bound").get<int>(),
                     j.at("precision").get<long>(),
                     j.at("seed").get<uint64_t>(),
                     0,
                     {},
                     invariant_from_string(j.at("invariant_sum").get<std::string>()),
                     search_from_json(ctx, j.at("global_search"))};
    for (const auto& r : j.at("reports")) {
        const auto& w = r.at("witness");
        cert.reports.push_back(
            PlaceReport{place_from_json(ctx, r.at("place")),
                        LocalPoint{series_from_json(ctx, w.at("x")),
                                   series_from_json(ctx, w.at("y")),
                                   series_from_json(ctx, w.at("z"))},
                        r.at("samples").get<int>(),
                        invariant_from_string(r.at("invariant").get<std::string>()),
                        true});
    }
    if (!cert.reports.empty()) cert.samples_per_place = cert.reports.front().samples;
    return cert;
}

}  // namespace chatelet2
