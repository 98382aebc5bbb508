#pragma once

#include <string>

#include <json.hpp>

#include "qcorr/bounds.hpp"
#include "qcorr/discord.hpp"
#include "qcorr/states.hpp"
#include "qcorr/witness.hpp"

namespace qcorr {

using json = nlohmann::json;

// Complex matrices are flat row-major lists of [re, im] pairs.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& entries, int rows, int cols);

// {label, d_A, d_B, entries}
json to_json(const BipartiteState& state);
// Validates the document and the state invariants; throws InvalidArgument.
BipartiteState state_from_json(const json& doc);

json to_json(const Witness& w);
json to_json(const EntanglementResult& r);
json to_json(const GeneralizedRobustnessResult& r);
json to_json(const MeasurementBasis& b);
json to_json(const DiscordResult& r);
json to_json(const BoundReport& r);
json to_json(const SweepResult& r);
json to_json(const TablesReport& r);

// Scalar-only sweep table, one row per grid point, header first.
std::string sweep_csv(const SweepResult& r);

}  // namespace qcorr
