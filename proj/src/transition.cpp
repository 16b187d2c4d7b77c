#include "storymind/transition.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace storymind {

std::string to_string(MentalKind k) {
    switch (k) {
        case MentalKind::select: return "select";
        case MentalKind::abandon: return "abandon";
        case MentalKind::start: return "start";
        case MentalKind::stop: return "stop";
        case MentalKind::replan: return "replan";
    }
    return "?";
}

Term MentalAction::term() const { return Term(to_string(kind), {Term(agent), target}); }

bool Occurrence::has(int action) const {
    return std::binary_search(actions.begin(), actions.end(), action);
}

namespace {

struct Outcome {
    std::vector<State> states;
    std::string error;
};

Outcome compute(const DomainSpec& d, const State& s, const Occurrence& occ) {
    Outcome out;
    bool intf = occ.interference(d);
    // Fixed literals plus one choice group per interfered action.
    std::map<int, bool> fixed;
    std::vector<std::vector<Lit>> groups;
    auto put = [&](Lit l) -> bool {
        auto [it, inserted] = fixed.emplace(l.fluent, l.value);
        return inserted || it->second == l.value;
    };
    for (int id : occ.actions) {
        if (id < 0 || id >= d.action_count()) {
            out.error = "unknown action id";
            return out;
        }
        const auto& a = d.action(id);
        bool interfered = intf && a.interferable;
        if (interfered ? !a.interference_precondition.eval(s) : !a.precondition.eval(s)) {
            out.error = "inexecutable action " + a.term.str();
            return out;
        }
        const auto& effects = interfered ? a.interference_effects : a.effects;
        for (const auto& e : effects)
            if (e.condition.eval(s) && !put(e.lit)) {
                out.error = "contradictory effects on " + d.fluent(e.lit.fluent).term.str();
                return out;
            }
        if (interfered) {
            std::vector<Lit> g;
            for (const auto& e : a.interference_choice)
                if (e.condition.eval(s)) g.push_back(e.lit);
            if (g.empty()) {
                out.error = "empty choice range for " + a.term.str();
                return out;
            }
            groups.push_back(std::move(g));
        }
    }

    State base = s;
    for (auto [f, v] : fixed) base.set(f, v);
    // Cartesian product over the choice groups.
    std::set<State> results;
    std::vector<std::size_t> pick(groups.size(), 0);
    while (true) {
        State next = base;
        std::map<int, bool> chosen;
        bool ok = true;
        for (std::size_t g = 0; g < groups.size() && ok; ++g) {
            Lit l = groups[g][pick[g]];
            auto fx = fixed.find(l.fluent);
            if (fx != fixed.end() && fx->second != l.value) ok = false;
            auto [it, ins] = chosen.emplace(l.fluent, l.value);
            if (!ins && it->second != l.value) ok = false;
            next.set(l.fluent, l.value);
        }
        if (ok) {
            d.close(next);
            results.insert(std::move(next));
        }
        std::size_t g = 0;
        while (g < groups.size() && ++pick[g] == groups[g].size()) pick[g++] = 0;
        if (g == groups.size()) break;
    }
    if (results.empty()) out.error = "no consistent choice of non-deterministic effects";
    out.states.assign(results.begin(), results.end());
    return out;
}

}  // namespace

std::vector<State> successor_states(const DomainSpec& domain, const State& state, const Occurrence& occ) {
    Outcome o = compute(domain, state, occ);
    if (!o.error.empty()) throw TransitionError(o.error);
    return o.states;
}

std::vector<State> try_successor_states(const DomainSpec& domain, const State& state, const Occurrence& occ) {
    Outcome o = compute(domain, state, occ);
    if (!o.error.empty()) return {};
    return o.states;
}

std::vector<Violation> check_occurrence(const DomainSpec& domain, const State& state, const Occurrence& occ) {
    std::vector<Violation> out;
    bool intf = occ.interference(domain);
    std::map<std::string, int> mental_count;
    for (const auto& m : occ.mental) ++mental_count[m.agent];
    for (const auto& [agent, n] : mental_count)
        if (n > 1) out.push_back({Violation::Code::two_mental, agent + " performs " + std::to_string(n) + " mental actions"});
    for (int id : occ.actions) {
        if (id < 0 || id >= domain.action_count()) {
            out.push_back({Violation::Code::unknown_action, "unknown action id " + std::to_string(id)});
            continue;
        }
        const auto& a = domain.action(id);
        bool ok = intf && a.interferable ? executable_with_interference(domain, state, id)
                                         : executable(domain, state, id);
        if (!ok) out.push_back({Violation::Code::inexecutable, a.term.str() + " is not executable"});
        if (!a.agent.empty() && mental_count.count(a.agent))
            out.push_back({Violation::Code::mental_and_physical,
                           a.agent + " acts physically (" + a.term.str() + ") during a mental action"});
    }
    return out;
}

bool project(const std::vector<State>& trajectory, int fluent, int step) {
    if (step < 0 || step >= static_cast<int>(trajectory.size()))
        throw std::out_of_range("step " + std::to_string(step) + " outside trajectory");
    return trajectory[step][fluent];
}

bool project(const DomainSpec& domain, const std::vector<State>& trajectory, const Term& fluent, int step) {
    return project(trajectory, domain.fluent_id_or_throw(fluent), step);
}

}  // namespace storymind
