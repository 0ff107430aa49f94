#ifndef CHATELET2_SERIALIZE_HPP
#define CHATELET2_SERIALIZE_HPP

#include <json.hpp>

#include "chatelet2/brauer.hpp"

namespace chatelet2 {

// JSON conventions: field elements are lowercase hex with the low nibble
// first; polynomials are coefficient arrays, constant term first; keys are
// emitted in sorted order, so equal values serialize to identical bytes.

nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const FieldCtx& ctx, const nlohmann::json& j);

nlohmann::json rational_to_json(const RationalFn& r);
RationalFn rational_from_json(const FieldCtx& ctx, const nlohmann::json& j);

nlohmann::json place_to_json(const Place& v);
Place place_from_json(const FieldCtx& ctx, const nlohmann::json& j);

nlohmann::json series_to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const FieldCtx& ctx, const nlohmann::json& j);

nlohmann::json instance_to_json(const ChateletInstance& inst);
// Re-runs every construction check; malformed data or violated constraints
// throw (ConstructionError, PreconditionViolated, or json exceptions).
ChateletInstance instance_from_json(const nlohmann::json& j);

nlohmann::json search_to_json(const GlobalSearch& s);
GlobalSearch search_from_json(const FieldCtx& ctx, const nlohmann::json& j);

nlohmann::json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace chatelet2

#endif
