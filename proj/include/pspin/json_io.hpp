#ifndef PSPIN_JSON_IO_HPP
#define PSPIN_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "pspin/finite_n.hpp"
#include "pspin/hopflax.hpp"
#include "pspin/mixture.hpp"
#include "pspin/parisi.hpp"
#include "pspin/rs_at.hpp"
#include "pspin/scan.hpp"

namespace pspin {

using json = nlohmann::ordered_json;

// MixtureSpec <-> {"terms": [[p, coeff], ...]}
json to_json(const MixtureSpec& spec);
MixtureSpec mixture_from_json(const json& j);

// Accepts the shorthand names ("sk", "sk+p4c20", "pure-p4", "pure-p4c2"),
// inline JSON, or a path to a JSON file.
MixtureSpec parse_spec_string(const std::string& text);

// RSBMeasure <-> {"atoms": [[q, w], ...]}
json to_json(const RSBMeasure& measure);
RSBMeasure measure_from_json(const json& j);

json to_json(const ATReport& rep);
json to_json(const BoundReport& rep);
json to_json(const GapReport& rep);
json to_json(const MCEstimate& est);
json to_json(const CounterexampleResult& res);
json to_json(const PhaseCell& cell);

}  // namespace pspin

#endif
