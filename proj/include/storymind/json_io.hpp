#pragma once

#include <nlohmann/json.hpp>

#include "storymind/queries.hpp"
#include "storymind/reasoner.hpp"

namespace storymind {

// Atoms use the predicate notation of the logic form: map(s,i), occurs(a,i), holds(f,i),
// holds(status(m,k),i), holds(active_goal(g),i), intend(x,i).
nlohmann::json model_to_json(const DomainSpec& d, const Model& m);
nlohmann::json result_to_json(const SolveResult& r);
nlohmann::json explanation_to_json(const Explanation& e);
nlohmann::json query_to_json(const Query& q, const Answer& a);

}  // namespace storymind
