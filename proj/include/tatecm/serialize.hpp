#pragma once

#include <json.hpp>

#include "tatecm/freecomplex.hpp"

namespace tatecm {

/// Ring, ideal, window, twists, labels and differential entries as polynomial strings.
nlohmann::json complex_to_json(const ChainComplex& C);

/// Inverse of complex_to_json. Checks shapes (FormatError) but not d^2 = 0 or grading, so
/// that damaged files can still be inspected.
ChainComplex complex_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const PolyMatrix& M);

/// Triples [position, internal degree, rank] in increasing order.
nlohmann::json betti_to_json(const std::map<int, std::vector<int>>& betti);

}  // namespace tatecm
