#include "storymind/json_io.hpp"

namespace storymind {

using nlohmann::json;

namespace {

std::string atom(const std::string& pred, const std::string& x, int i) {
    return pred + "(" + x + "," + std::to_string(i) + ")";
}

}  // namespace

json model_to_json(const DomainSpec& d, const Model& m) {
    json j;
    j["mapping"] = json::array();
    for (const auto& [s, i] : m.mapping) j["mapping"].push_back("map(" + std::to_string(s) + "," + std::to_string(i) + ")");

    j["occurs"] = json::array();
    for (const auto& o : m.occurrences) {
        for (int a : o.actions) j["occurs"].push_back(atom("occurs", d.action(a).term.str(), o.step));
        for (const auto& mm : o.mental) j["occurs"].push_back(atom("occurs", mm.term().str(), o.step));
    }

    j["holds"] = json::array();
    for (std::size_t i = 0; i < m.trajectory.size(); ++i) {
        const State& s = m.trajectory[i];
        for (int f = 0; f < d.fluent_count(); ++f)
            if (s[f]) j["holds"].push_back(atom("holds", d.fluent(f).term.str(), static_cast<int>(i)));
        if (i < m.intent_history.size())
            for (const auto& [agent, snap] : m.intent_history[i]) {
                if (snap.goal) j["holds"].push_back(atom("holds", "active_goal(" + snap.goal->str() + ")", static_cast<int>(i)));
                for (const auto& [t, k] : snap.activities)
                    j["holds"].push_back(atom("holds", "status(" + t.str() + "," + std::to_string(k) + ")", static_cast<int>(i)));
            }
    }

    j["intend"] = json::array();
    for (std::size_t i = 0; i < m.intent_history.size(); ++i)
        for (const auto& [agent, snap] : m.intent_history[i])
            for (const auto& [t, k] : snap.sequences) j["intend"].push_back(atom("intend", t.str(), static_cast<int>(i)));

    j["abduced"] = json::array();
    for (int s : m.abduced) j["abduced"].push_back(atom("occurs", "interference", s));
    j["max_step"] = m.max_step();
    return j;
}

json explanation_to_json(const Explanation& e) {
    json j;
    j["waiter"] = json::array();
    for (std::size_t k = 0; k < e.waiter.size(); ++k) j["waiter"].push_back(e.waiter_term(k).str());
    j["cook"] = json::array();
    for (std::size_t k = 0; k < e.cook.size(); ++k) j["cook"].push_back(e.cook_term(k).str());
    j["interferences"] = json::array();
    for (const auto& [s, acts] : e.interferences) {
        json x{{"step", s}, {"actions", json::array()}};
        for (const auto& a : acts) x["actions"].push_back(a.str());
        j["interferences"].push_back(x);
    }
    j["label"] = e.label;
    j["models"] = e.models;
    return j;
}

json result_to_json(const SolveResult& r) {
    json j;
    j["horizon"] = r.horizon;
    j["timed_out"] = r.timed_out;
    if (!r.reason.empty()) j["reason"] = r.reason;
    j["models"] = json::array();
    for (const auto& m : r.models) j["models"].push_back(model_to_json(*r.domain, m));
    j["explanations"] = json::array();
    if (!r.models.empty())
        for (const auto& e : explain(r)) j["explanations"].push_back(explanation_to_json(e));
    return j;
}

json query_to_json(const Query& q, const Answer& a) {
    json j;
    j["query"] = q.str();
    j["form"] = to_string(q.form);
    if (a.verdict) j["verdict"] = to_string(*a.verdict);
    else j["values"] = a.values;
    j["answer"] = a.str();
    j["definite"] = a.definite();
    return j;
}

}  // namespace storymind
