#include "storymind/intentions.hpp"

#include <algorithm>

namespace storymind {

std::vector<Term> SequenceSpec::flatten() const {
    std::vector<Term> out;
    for (const auto& c : components) {
        if (const Term* t = std::get_if<Term>(&c)) {
            out.push_back(*t);
        } else {
            auto sub = std::get<SequencePtr>(c)->flatten();
            out.insert(out.end(), sub.begin(), sub.end());
        }
    }
    return out;
}

std::vector<Term> ActivitySpec::flatten() const {
    std::vector<Term> out;
    for (const auto& c : components) {
        if (const Term* t = std::get_if<Term>(&c)) {
            out.push_back(*t);
        } else {
            auto sub = std::get<ActivityPtr>(c)->flatten();
            out.insert(out.end(), sub.begin(), sub.end());
        }
    }
    return out;
}

int ActivitySpec::activity_count() const {
    int n = 1;
    for (const auto& c : components)
        if (const auto* a = std::get_if<ActivityPtr>(&c)) n += (*a)->activity_count();
    return n;
}

int ActivitySpec::depth() const {
    int d = 0;
    for (const auto& c : components)
        if (const auto* a = std::get_if<ActivityPtr>(&c)) d = std::max(d, (*a)->depth());
    return d + 1;
}

// ---------------------------------------------------------------------------

void SimpleIntentState::adopt(const std::string& agent, SequencePtr seq, int step) {
    SequenceProgress p;
    p.flat = std::make_shared<const std::vector<Term>>(seq->flatten());
    p.sequence = std::move(seq);
    p.since = step;
    agents[agent].push_back(std::move(p));
}

bool SimpleIntentState::intends(const std::string& agent, const Term& name) const {
    auto it = agents.find(agent);
    if (it == agents.end()) return false;
    for (const auto& p : it->second)
        if (!p.done() && p.sequence->name == name) return true;
    return false;
}

std::vector<Term> SimpleIntentState::active(const std::string& agent) const {
    std::vector<Term> out;
    auto it = agents.find(agent);
    if (it == agents.end()) return out;
    for (const auto& p : it->second)
        if (!p.done()) out.push_back(p.sequence->name);
    return out;
}

std::vector<Term> simple_pending(const SimpleIntentState& sis, const std::string& agent) {
    std::vector<Term> out;
    auto it = sis.agents.find(agent);
    if (it == sis.agents.end()) return out;
    for (const auto& p : it->second)
        if (!p.done()) out.push_back(p.next());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Term> simple_next(const DomainSpec& domain, const State& state, const SimpleIntentState& sis,
                              const std::string& agent, bool interference) {
    std::vector<Term> out;
    for (const Term& a : simple_pending(sis, agent)) {
        auto id = domain.action_id(a);
        if (!id) continue;
        bool ok = interference && domain.action(*id).interferable
                      ? executable_with_interference(domain, state, *id)
                      : executable(domain, state, *id);
        if (ok) out.push_back(a);
    }
    return out;
}

SimpleIntentState simple_advance(const SimpleIntentState& sis, const DomainSpec& domain, const Occurrence& occ) {
    SimpleIntentState next = sis;
    for (auto& [agent, progs] : next.agents)
        for (auto& p : progs) {
            if (p.done()) continue;
            auto id = domain.action_id(p.next());
            if (id && occ.has(*id)) ++p.index;
        }
    return next;
}

// ---------------------------------------------------------------------------

int AgentMind::status(const Term& activity) const {
    for (const auto& f : stack)
        if (f.activity->name == activity) return f.k;
    return -1;
}

std::vector<Term> AgentMind::in_progress() const {
    std::vector<Term> out;
    for (const auto& f : stack) out.push_back(f.activity->name);
    return out;
}

namespace {

std::string state_key(const State& s) {
    const auto& w = s.words();
    return std::string(reinterpret_cast<const char*>(w.data()), w.size() * sizeof(w[0]));
}

}  // namespace

bool FutilityChecker::reachable(const State& state, int goal, const std::vector<char>& allowed) {
    const int n = domain_.fluent_count();
    RelaxedSet r(n);
    for (int f = 0; f < n; ++f) r.add({f, state[f]});
    if (r.has({goal, true})) return true;
    const auto& derived = domain_.derived_order();
    std::vector<Formula> negs;
    negs.reserve(derived.size());
    for (int f : derived) negs.push_back(domain_.fluent(f).definition.negate());
    for (bool changed = true; changed;) {
        changed = false;
        for (int a = 0; a < domain_.action_count(); ++a) {
            if (!allowed[a]) continue;
            const auto& act = domain_.action(a);
            if (act.precondition.eval(r))
                for (const auto& e : act.effects)
                    if (e.condition.eval(r)) changed |= r.add(e.lit);
            // an interfered execution is always possible in principle
            if (act.interferable && act.interference_precondition.eval(r)) {
                for (const auto& e : act.interference_effects)
                    if (e.condition.eval(r)) changed |= r.add(e.lit);
                for (const auto& e : act.interference_choice)
                    if (e.condition.eval(r)) changed |= r.add(e.lit);
            }
        }
        for (std::size_t i = 0; i < derived.size(); ++i) {
            int f = derived[i];
            if (domain_.fluent(f).definition.eval(r)) changed |= r.add({f, true});
            if (negs[i].eval(r)) changed |= r.add({f, false});
        }
        if (r.has({goal, true})) return true;
    }
    return false;
}

bool FutilityChecker::activity_futile(const State& state, const std::string& agent, const ActivitySpec& activity) {
    auto goal = domain_.fluent_id(activity.goal);
    if (!goal) return false;
    std::string akey = agent + "|" + activity.name.str();
    auto it = allowed_cache_.find(akey);
    if (it == allowed_cache_.end()) {
        std::vector<char> allowed(domain_.action_count(), 0);
        for (int a = 0; a < domain_.action_count(); ++a) {
            const auto& act = domain_.action(a);
            if (act.kind == ActionKind::physical && act.agent != agent) allowed[a] = 1;
        }
        for (const Term& t : activity.flatten())
            if (auto id = domain_.action_id(t)) allowed[*id] = 1;
        it = allowed_cache_.emplace(akey, std::move(allowed)).first;
    }
    std::string key = akey + "|" + state_key(state);
    auto r = result_cache_.find(key);
    if (r != result_cache_.end()) return r->second;
    bool futile = !reachable(state, *goal, it->second);
    result_cache_.emplace(std::move(key), futile);
    return futile;
}

bool FutilityChecker::goal_hopeless(const State& state, const Term& goal) {
    auto g = domain_.fluent_id(goal);
    if (!g) return true;
    std::string key = "*|" + goal.str() + "|" + state_key(state);
    auto r = result_cache_.find(key);
    if (r != result_cache_.end()) return r->second;
    std::vector<char> allowed(domain_.action_count(), 0);
    for (int a = 0; a < domain_.action_count(); ++a)
        allowed[a] = domain_.action(a).kind == ActionKind::physical;
    bool hopeless = !reachable(state, *g, allowed);
    result_cache_.emplace(std::move(key), hopeless);
    return hopeless;
}

namespace {

bool holds(const DomainSpec& d, const State& s, const Term& fluent) {
    auto id = d.fluent_id(fluent);
    return id && s[*id];
}

Decision mental(MentalKind k, const std::string& agent, Term target) {
    Decision d;
    d.kind = Decision::Kind::mental;
    d.mental = MentalAction{k, agent, std::move(target)};
    return d;
}

}  // namespace

Decision decide(const DomainSpec& domain, const State& state, const std::string& agent, const AgentMind& mind,
                FutilityChecker& futility) {
    using Phase = AgentMind::Phase;
    switch (mind.phase) {
        case Phase::idle:
            return {};
        case Phase::selected:
            return {Decision::Kind::start_needed, std::nullopt, std::nullopt};
        case Phase::stalled:
            if (holds(domain, state, *mind.goal)) return {};
            if (futility.goal_hopeless(state, *mind.goal)) return mental(MentalKind::abandon, agent, *mind.goal);
            return mental(MentalKind::replan, agent, *mind.goal);
        case Phase::replanned:
            return {Decision::Kind::wait, std::nullopt, std::nullopt};
        case Phase::running:
            break;
    }

    const ActivitySpec& top = *mind.stack.front().activity;
    if (holds(domain, state, top.goal)) return mental(MentalKind::stop, agent, top.name);
    if (futility.activity_futile(state, agent, top)) return mental(MentalKind::stop, agent, top.name);
    for (std::size_t j = 1; j < mind.stack.size(); ++j) {
        const auto& a = *mind.stack[j].activity;
        if (holds(domain, state, a.goal)) return mental(MentalKind::stop, agent, a.name);
    }
    const Frame& deepest = mind.stack.back();
    const ActivitySpec& cur = *deepest.activity;
    if (deepest.k >= static_cast<int>(cur.length())) return mental(MentalKind::stop, agent, cur.name);
    const auto& comp = cur.components[deepest.k];
    if (const auto* sub = std::get_if<ActivityPtr>(&comp)) return mental(MentalKind::start, agent, (*sub)->name);
    const Term& action = std::get<Term>(comp);
    auto id = domain.action_id(action);
    if (id && domain.action(*id).agent == agent) {
        Decision d;
        d.kind = Decision::Kind::physical;
        d.physical = action;
        return d;
    }
    return {Decision::Kind::wait, std::nullopt, std::nullopt};
}

std::optional<Term> goal_next_action(const DomainSpec& domain, const State& state, const std::string& agent,
                                     const AgentMind& mind, FutilityChecker& futility) {
    Decision d = decide(domain, state, agent, mind, futility);
    if (d.kind == Decision::Kind::mental) return d.mental->term();
    if (d.kind == Decision::Kind::physical) return d.physical;
    return std::nullopt;
}

GoalStatus classify_goal(const DomainSpec& domain, const State& state, const std::string& agent,
                         const AgentMind& mind, FutilityChecker& futility) {
    if (!mind.goal) return GoalStatus::in_progress;
    if (holds(domain, state, *mind.goal)) return GoalStatus::achieved;
    if (!mind.stack.empty()) {
        if (futility.activity_futile(state, agent, *mind.stack.front().activity)) return GoalStatus::futile;
    } else if (futility.goal_hopeless(state, *mind.goal)) {
        return GoalStatus::futile;
    }
    return GoalStatus::in_progress;
}

AgentMind goal_advance(const AgentMind& mind, const DomainSpec& domain, const State& state,
                       const std::string& agent, const Occurrence& occ, ActivityPtr chosen) {
    using Phase = AgentMind::Phase;
    AgentMind next = mind;
    const MentalAction* m = nullptr;
    for (const auto& x : occ.mental)
        if (x.agent == agent) {
            if (m) throw IntentionError(agent + " performs two mental actions at once");
            m = &x;
        }

    if (!m) {
        if ((mind.phase == Phase::stalled || mind.phase == Phase::replanned) && holds(domain, state, *mind.goal)) {
            next.goal.reset();
            next.phase = Phase::idle;
            return next;
        }
        if (next.stack.empty()) return next;
        Frame& f = next.stack.back();
        if (f.k < static_cast<int>(f.activity->length())) {
            if (const Term* a = std::get_if<Term>(&f.activity->components[f.k])) {
                auto id = domain.action_id(*a);
                if (id && occ.has(*id)) ++f.k;
            }
        }
        return next;
    }

    switch (m->kind) {
        case MentalKind::select:
            if (mind.goal) throw IntentionError(agent + " already has an active goal");
            next.goal = m->target;
            next.phase = Phase::selected;
            next.stack.clear();
            return next;
        case MentalKind::abandon:
            if (!mind.goal || *mind.goal != m->target) throw IntentionError("abandoning an inactive goal");
            next.goal.reset();
            next.stack.clear();
            next.phase = Phase::idle;
            return next;
        case MentalKind::replan:
            if (!mind.goal || *mind.goal != m->target) throw IntentionError("replanning an inactive goal");
            next.phase = Phase::replanned;
            return next;
        case MentalKind::start: {
            if (next.stack.empty()) {
                if (!chosen || chosen->name != m->target) throw IntentionError("unknown activity to start");
                next.stack.push_back({std::move(chosen), 0});
                next.phase = Phase::running;
                return next;
            }
            Frame& f = next.stack.back();
            if (f.k >= static_cast<int>(f.activity->length())) throw IntentionError("start past the end of a plan");
            const auto* sub = std::get_if<ActivityPtr>(&f.activity->components[f.k]);
            if (!sub || (*sub)->name != m->target) throw IntentionError("start of an activity that is not next");
            next.stack.push_back({*sub, 0});
            return next;
        }
        case MentalKind::stop: {
            std::size_t j = 0;
            while (j < next.stack.size() && next.stack[j].activity->name != m->target) ++j;
            if (j == next.stack.size()) throw IntentionError("stop of an activity not in progress");
            next.stack.resize(j);
            if (j > 0) {
                ++next.stack.back().k;
            } else if (holds(domain, state, *mind.goal)) {
                next.goal.reset();
                next.phase = Phase::idle;
            } else {
                next.phase = Phase::stalled;
            }
            return next;
        }
    }
    return next;
}

}  // namespace storymind
