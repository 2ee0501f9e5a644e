#pragma once

#include <string>

#include "json.hpp"

#include "olk/duality.hpp"
#include "olk/level.hpp"
#include "olk/modular.hpp"
#include "olk/orlicz.hpp"
#include "olk/pathology.hpp"
#include "olk/step_function.hpp"
#include "olk/suite.hpp"

namespace olk {

using json = nlohmann::json;

// JSON schemas for everything the CLI reads or prints.  Payload numbers
// are double precision on the wire; dyadic-lattice instances round-trip
// exactly.  Keys are emitted in sorted order (nlohmann's default map),
// so a fixed input yields byte-identical output.

json to_json(const StepFunction& f); // {"breaks": [...], "values": [...]}
StepFunction step_from_json(const json& j);
StepFunction load_step(const std::string& path);

json to_json(const Weight& w); // same shape as a step function
Weight weight_from_json(const json& j);
Weight load_weight(const std::string& path);

json to_json(const LevelInterval& iv);
json to_json(const LevelDecomposition& dec);
json to_json(const LevelCrosscheck& c);

json to_json(const NormResult& r);
json to_json(const OrliczNormResult& r);
json to_json(const PResult& r);
json to_json(const FundamentalResult& r);

json to_json(const Delta2Report& r);
json to_json(const OrderReport& r);

json to_json(const HolderReport& r);
json to_json(const DualNormCertificate& c);
json to_json(const AttainmentReport& r);
json to_json(const ExtensionGapReport& r);

json to_json(const BlockDivergence& d);
json to_json(const PathologyFamily& fam);
json to_json(const FamilyReport& r);
json to_json(const LinfReport& r);
json to_json(const ComparisonReport& r);
json to_json(const EmbeddingReport& r);

json to_json(const CheckResult& c);
json to_json(const SuiteReport& r);

} // namespace olk
