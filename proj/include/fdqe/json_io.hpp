#ifndef FDQE_JSON_IO_HPP
#define FDQE_JSON_IO_HPP

#include "fdqe/numeric.hpp"
#include "fdqe/qe.hpp"

#include <json.hpp>

namespace fdqe {

nlohmann::json to_json(const BlockSizes& algebra);

/// {"algebra": [...], "blocks": [...]}; each block is a row-major matrix
/// of [re, im] entry pairs.
nlohmann::json to_json(const Element& x, const BlockSizes& algebra);
Element element_from_json(const nlohmann::json& j, BlockSizes* algebra_out = nullptr);

/// {"source": [...], "target": [...], "entries": [[...], ...]}. Reading
/// accepts non-canonical size orders and permutes into canonical form.
nlohmann::json to_json(const MultiplicityMatrix& e);
MultiplicityMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const PredicateReport& report);

}  // namespace fdqe

#endif
