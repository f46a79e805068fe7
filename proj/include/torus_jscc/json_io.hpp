#pragma once

#include <json.hpp>

#include "torus_jscc/codec.hpp"
#include "torus_jscc/layers.hpp"
#include "torus_jscc/lattice.hpp"

namespace torus_jscc {

using json = nlohmann::json;

json to_json(const LatticeBasis& basis);
json to_json(const TorusSpec& torus);
json to_json(const CurveSpec& curve);
json to_json(const LayerCodebook& codebook);
json to_json(const SchemeCode& scheme);

LatticeBasis basis_from_json(const json& j);
/// Accepts c within 1e-9 of unit norm and renormalises it.
TorusSpec torus_from_json(const json& j);
/// Derived fields (length, spacing, bounds) are recomputed from c and u.
CurveSpec curve_from_json(const json& j);
LayerCodebook codebook_from_json(const json& j);
SchemeCode scheme_from_json(const json& j);

}  // namespace torus_jscc
