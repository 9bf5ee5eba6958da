#pragma once

#include <string>

#include "sgq/model.hpp"

namespace sgq {

// Versioned JSON checkpoint:
//   {"format_version": 1,
//    "dims": {"k":..., "l":..., "d":..., "hidden":...},
//    "weights": {"alpha":..., "beta":..., "gamma":...},
//    "tensors": {name: {"shape": [r, c], "data": [...]}}}
// Doubles are written with round-trip precision so save/load is bit-exact.
void save_model(const VgaePlusModel& model, const std::string& path);
VgaePlusModel load_model(const std::string& path);

}  // namespace sgq
