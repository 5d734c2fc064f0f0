#pragma once
/**
 * @file json_io.hpp
 * @brief Schema-stable JSON emit/parse for every report type, plus a CSV
 *        flattening. All numbers travel as decimal strings, so nothing is
 *        squeezed through a 64-bit hole. parse(emit(x)) = x for each schema.
 *
 * Emission uses nlohmann::ordered_json with a fixed insertion order per
 * schema; serializing the same value twice gives identical bytes.
 */
#include <string>
#include <vector>

#include <json.hpp>

#include "ecs/correlate.hpp"
#include "ecs/hesse.hpp"
#include "ecs/minimal.hpp"
#include "ecs/stable.hpp"
#include "ecs/tate.hpp"
#include "ecs/torsion.hpp"
#include "ecs/twist.hpp"
#include "ecs/weierstrass.hpp"

namespace ecs {

using Json = nlohmann::ordered_json;

// Decimal-string scalar helpers. Parsers accept a JSON string ("-12",
// "3/4") or an integral JSON number; anything else raises
// std::invalid_argument naming `field`.
Json json_int(const BigInt& v);
Json json_rat(const BigRational& v);
BigInt int_from_json(const Json& v, const std::string& field);
BigRational rat_from_json(const Json& v, const std::string& field);
long long_from_json(const Json& v, const std::string& field);
unsigned unsigned_from_json(const Json& v, const std::string& field);

// Curve: {"a": [a1, a2, a3, a4, a6]}, five integer strings.
Json curve_to_json(const WeierstrassModel& e);
WeierstrassModel curve_from_json(const Json& j);

// Point: {"x": ..., "y": ...} or {"infinity": true}.
Json point_to_json(const CurvePoint& p);
CurvePoint point_from_json(const Json& j);

// Coordinate change: {"u", "r", "s", "t"}, rational strings.
Json model_map_to_json(const ModelMap& m);
ModelMap model_map_from_json(const Json& j);

// Kodaira symbols round-trip through their display form ("I0", "I5*", ...).
std::string kodaira_to_string(const KodairaType& k);
KodairaType kodaira_from_string(const std::string& s);
ReductionClass reduction_class_from_string(const std::string& s);
StableStatus stable_status_from_string(const std::string& s);

// Valuations may be the +infinity sentinel, spelled "inf".
Json valuation_to_json(long v);
long valuation_from_json(const Json& v, const std::string& field);

Json local_reduction_to_json(const LocalReduction& r);
LocalReduction local_reduction_from_json(const Json& j);

Json global_reduction_to_json(const GlobalReduction& g);
GlobalReduction global_reduction_from_json(const Json& j);

Json stable_report_to_json(const StableReport& r);
StableReport stable_report_from_json(const Json& j);

Json torsion_group_to_json(const TorsionGroup& g);
TorsionGroup torsion_group_from_json(const Json& j);

Json threshold_to_json(const ThresholdVerdict& v);
ThresholdVerdict threshold_from_json(const Json& j);

Json kummer_point_to_json(const KummerPoint& k);
KummerPoint kummer_point_from_json(const Json& j);

Json twist_entry_to_json(const TwistScanEntry& e);
TwistScanEntry twist_entry_from_json(const Json& j);

// Q(w) scalar: {"a": ..., "b": ...} meaning a + b w.
Json eisenstein_to_json(const Eisenstein& z);
Eisenstein eisenstein_from_json(const Json& j);

Json plane_point_to_json(const PlanePoint& p);
PlanePoint plane_point_from_json(const Json& j);

// Sparse polynomial: {"variables": n, "terms": [{"exponents": [...],
// "coefficient": c}, ...]} in graded-lex term order.
Json poly_to_json(const MultiPoly<BigRational>& p);
MultiPoly<BigRational> poly_from_json(const Json& j);

Json correlation_report_to_json(const CorrelationReport& r);
CorrelationReport correlation_report_from_json(const Json& j);

// Dataset: {"fibers": {"t": [[coords...], ...], ...}}, keys ascending.
Json fibered_point_set_to_json(const FiberedPointSet& ps);
FiberedPointSet fibered_point_set_from_json(const Json& j);

// CSV flattening: header "path,value", then one row per scalar leaf, paths
// in document order ("report/entries/0/t"). RFC 4180 quoting.
std::string csv_from_json(const Json& j);

}  // namespace ecs
