#pragma once

// JSON (de)serialization for every value the CLI reads or writes. Rationals
// travel as strings "p/q", words as strings with caret exponents, clopen
// sets as cylinder/cone literals or boolean expression objects.

#include <json.hpp>

#include <string>

#include "tarski/cp.hpp"
#include "tarski/measure.hpp"
#include "tarski/paradox.hpp"
#include "tarski/partition.hpp"
#include "tarski/tsg.hpp"

namespace tarski {

using Json = nlohmann::ordered_json;

struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kSchemaVersion = "tarski/1";

Json group_to_json(const GroupSpec& spec);
GroupSpec group_from_json(const Json& j);

Json model_to_json(const ActionModel& m);
ModelRef model_from_json(const Json& j);

// {"cyl":[...]} | {"depth":d,"cones":[...],"points":[...]} |
// {"op":"union"|"intersect"|"complement"|"minus","args":[...]} | {"all":true}
Json clopen_to_json(const ClopenSet& s);
ClopenSet clopen_from_json(const ModelRef& m, const Json& j);

Json rational_to_json(const mpq_class& q);
mpq_class rational_from_json(const Json& j);

Json paradox_cert_to_json(const ParadoxCert& cert);
ParadoxCert paradox_cert_from_json(const Json& j);

Json tsg_element_to_json(const TsgElement& x);
TsgElement tsg_element_from_json(const ModelRef& m, const Json& j);

Json equidecomp_cert_to_json(const ModelRef& m, const EquidecompCert& cert);
EquidecompCert equidecomp_cert_from_json(const ModelRef& m, const Json& j);

Json lp_instance_to_json(const LPInstance& inst);
Json measure_table_to_json(const MeasureTable& mt, const LPInstance& inst);
MeasureTable measure_table_from_json(const LPInstance& inst, const Json& j);
Json farkas_to_json(const FarkasCert& fc);
FarkasCert farkas_from_json(const Json& j);

Json simple_function_to_json(const SimpleFunction& f);
SimpleFunction simple_function_from_json(const ModelRef& m, const Json& j);
Json cp_element_to_json(const CPElement& x);
CPElement cp_element_from_json(const ModelRef& m, const Json& j);

Json partition_cert_to_json(const GroupSpec& spec, const Partition3Cert& cert);
Partition3Cert partition_cert_from_json(const GroupSpec& spec, const Json& j);

// FNV-1a over raw bytes, hex encoded; used for the reproducibility stamp.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace tarski
