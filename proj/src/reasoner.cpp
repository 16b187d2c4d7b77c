#include "storymind/reasoner.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace storymind {

TiMode parse_ti_mode(const std::string& tag) {
    if (tag == "mixed") return TiMode::mixed;
    if (tag == "new-only" || tag == "new_only") return TiMode::new_only;
    throw std::invalid_argument("unknown theory configuration: " + tag);
}

std::string to_string(TiMode m) { return m == TiMode::mixed ? "mixed" : "new-only"; }

int Model::max_step() const {
    for (int i = static_cast<int>(occurrences.size()) - 1; i >= 0; --i)
        if (!occurrences[i].empty()) return i;
    return -1;
}

bool Model::occurs(const DomainSpec& d, const Term& action, int step) const {
    if (step < 0 || step >= horizon()) return false;
    const auto& occ = occurrences[step];
    if (auto id = d.action_id(action)) return occ.has(*id);
    for (const auto& m : occ.mental)
        if (m.term() == action) return true;
    return false;
}

std::vector<int> Model::steps_of(const DomainSpec& d, const Term& action) const {
    std::vector<int> out;
    for (int i = 0; i < horizon(); ++i)
        if (occurs(d, action, i)) out.push_back(i);
    return out;
}

std::optional<int> Model::intended_from(const Term& name) const {
    for (std::size_t i = 0; i < intent_history.size(); ++i)
        for (const auto& [agent, snap] : intent_history[i]) {
            for (const auto& [t, k] : snap.sequences)
                if (t == name) return static_cast<int>(i);
            for (const auto& [t, k] : snap.activities)
                if (t == name) return static_cast<int>(i);
        }
    return std::nullopt;
}

int default_max_steps(const Story& story, const Config& config) {
    int customers = 0;
    for (const auto& e : story.entities) customers += e.sort == "customer";
    int per_customer = 0;
    if (customers > 0) {
        auto act = customer_activity("c", "r", "w", "f", config.customer_structure);
        // Plan, brackets of every activity, the waiter's eleven actions, the cook.
        per_customer = static_cast<int>(act->flatten().size()) + 2 * act->activity_count() + 11 + 1;
        if (config.ti_mode == TiMode::new_only) per_customer += 4;
    }
    return story.step_count() + customers * per_customer + 4;
}

std::vector<TimelineMapping> enumerate_mappings(const Story& story, int max_steps) {
    std::set<int> steps_set;
    for (const auto& o : story.observations) steps_set.insert(o.story_step);
    std::vector<int> steps(steps_set.begin(), steps_set.end());
    std::vector<TimelineMapping> out;
    TimelineMapping cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t k, int from) {
        if (k == steps.size()) {
            out.push_back(cur);
            return;
        }
        int remaining = static_cast<int>(steps.size() - k);
        for (int i = from; i + remaining <= max_steps; ++i) {
            cur[steps[k]] = i;
            rec(k + 1, i + 1);
        }
        cur.erase(steps[k]);
    };
    rec(0, 0);
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct StoryStep {
    int story_step = 0;
    std::vector<int> true_actions;
    std::vector<int> false_actions;
    std::vector<Lit> fluents;
    bool interference_true = false;
    bool interference_false = false;
};

struct Context {
    std::shared_ptr<DomainSpec> domain;
    Config cfg;
    int H = 0;
    std::vector<StoryStep> steps;
    std::vector<std::string> goal_agents;  // sorted; all goal-driven agents
    std::set<std::string> selecting_customers;
    std::map<std::string, std::vector<ActivityPtr>> customer_acts;
    std::map<std::string, std::vector<SequencePtr>> waiter_seqs;   // by customer
    std::map<std::string, std::vector<ActivityPtr>> waiter_acts;   // by customer
    std::map<std::string, SequencePtr> cook_seqs;                  // by food
    std::map<std::string, ActivityPtr> cook_acts;                  // by food
    std::optional<std::string> waiter, cook;
    Clock::time_point deadline = Clock::time_point::max();
};

// One executed step; nodes share their history through parent links.
struct Link {
    std::shared_ptr<const Link> parent;
    State before;
    Occurrence occ;
    IntentSnapshot snap;
};

struct Node {
    int step = 0;
    State state;
    SimpleIntentState simple;
    std::map<std::string, AgentMind> minds;
    TimelineMapping mapping;
    std::size_t next_obs = 0;
    std::shared_ptr<const Link> trace;
    std::vector<int> intf_steps;
    std::vector<Lit> flips;
    int unintended = 0;
};

struct Stats {
    long nodes = 0;
    long goal_conflicts = 0;
    bool timed_out = false;
};

IntentSnapshot snapshot(const SimpleIntentState& sis, const std::map<std::string, AgentMind>& minds) {
    IntentSnapshot snap;
    for (const auto& [agent, progs] : sis.agents)
        for (const auto& p : progs)
            if (!p.done()) snap[agent].sequences.emplace_back(p.sequence->name, static_cast<int>(p.index));
    for (const auto& [agent, mind] : minds) {
        if (!mind.goal && mind.stack.empty()) continue;
        auto& s = snap[agent];
        s.goal = mind.goal;
        for (const auto& f : mind.stack) s.activities.emplace_back(f.activity->name, f.k);
    }
    return snap;
}

// `tail` is the intent snapshot at the node's own step, when known.
Model finish(const Context& ctx, const Node& n, const IntentSnapshot* tail) {
    Model m;
    m.mapping = n.mapping;
    std::vector<const Link*> chain;
    for (const Link* l = n.trace.get(); l; l = l->parent.get()) chain.push_back(l);
    std::reverse(chain.begin(), chain.end());
    for (const Link* l : chain) {
        m.trajectory.push_back(l->before);
        m.occurrences.push_back(l->occ);
        m.intent_history.push_back(l->snap);
    }
    m.trajectory.push_back(n.state);
    IntentSnapshot last_snap = tail ? *tail : (chain.empty() ? IntentSnapshot{} : chain.back()->snap);
    const State& last = n.state;
    while (static_cast<int>(m.trajectory.size()) < ctx.H + 1) m.trajectory.push_back(last);
    while (static_cast<int>(m.intent_history.size()) < ctx.H + 1) m.intent_history.push_back(last_snap);
    while (static_cast<int>(m.occurrences.size()) < ctx.H) {
        Occurrence o;
        o.step = static_cast<int>(m.occurrences.size());
        m.occurrences.push_back(std::move(o));
    }
    m.abduced = n.intf_steps;
    m.initial_flips = n.flips;
    m.unintended = n.unintended;
    return m;
}

// Calls fn for every index vector of the cartesian product of `sizes`.
void product(const std::vector<std::size_t>& sizes, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    for (auto s : sizes)
        if (s == 0) return;
    std::vector<std::size_t> idx(sizes.size(), 0);
    while (true) {
        fn(idx);
        std::size_t k = 0;
        while (k < sizes.size() && ++idx[k] == sizes[k]) idx[k++] = 0;
        if (k == sizes.size()) return;
    }
}

bool is_enter_by(const DomainSpec& d, int action, std::string& customer) {
    const auto& t = d.action(action).term;
    if (t.functor != "enter" || t.arity() != 2) return false;
    customer = t.args[0].functor;
    return true;
}

class Expander {
public:
    Expander(const Context& ctx, Stats& stats) : ctx_(ctx), d_(*ctx.domain), stats_(stats), futility_(d_) {}

    // Expands one node: children are appended, finished models emitted.
    void expand(const Node& node, std::vector<Node>& children, std::vector<Model>& out) {
        ++stats_.nodes;
        if ((stats_.nodes & 255) == 0 && Clock::now() > ctx_.deadline) stats_.timed_out = true;
        if (stats_.timed_out) return;

        const int i = node.step;
        if (i >= ctx_.H) {
            if (node.next_obs == ctx_.steps.size()) out.push_back(finish(ctx_, node, nullptr));
            return;
        }
        const State& S = node.state;

        // Triggered selections and adoptions.
        std::map<std::string, Term> selects;
        bool conflict = false;
        auto trigger_select = [&](const std::string& agent, Term goal) {
            const auto& mind = node.minds.at(agent);
            if (mind.goal && *mind.goal == goal) return;
            if (mind.goal || selects.count(agent)) {
                conflict = true;
                return;
            }
            selects.emplace(agent, std::move(goal));
        };
        if (i == 0)
            for (const auto& c : ctx_.selecting_customers) trigger_select(c, T("satiated_and_out", c));

        std::vector<std::string> entered;
        if (i > 0)
            for (int a : node.trace->occ.actions) {
                std::string c;
                if (is_enter_by(d_, a, c)) entered.push_back(c);
            }

        std::vector<const std::vector<SequencePtr>*> seq_groups;
        SimpleIntentState sis = node.simple;
        if (ctx_.waiter) {
            for (const auto& c : entered) {
                if (ctx_.cfg.ti_mode == TiMode::mixed) {
                    auto it = ctx_.waiter_seqs.find(c);
                    if (it != ctx_.waiter_seqs.end()) seq_groups.push_back(&it->second);
                } else {
                    trigger_select(*ctx_.waiter, T("served_and_billed", c));
                }
            }
        }
        if (ctx_.cook && ctx_.waiter) {
            for (const auto& f : d_.foods()) {
                auto rq = d_.fluent_id(T("requested", *ctx_.cook, f, *ctx_.waiter));
                if (!rq || !S[*rq]) continue;
                if (ctx_.cfg.ti_mode == TiMode::mixed) {
                    const auto& seq = ctx_.cook_seqs.at(f);
                    if (!sis.intends(*ctx_.cook, seq->name)) sis.adopt(*ctx_.cook, seq, i);
                } else {
                    trigger_select(*ctx_.cook, T("food_ready", f));
                }
            }
        }
        if (conflict) {
            ++stats_.goal_conflicts;
            return;
        }

        std::vector<std::size_t> sizes;
        for (auto* g : seq_groups) sizes.push_back(g->size());
        product(sizes, [&](const std::vector<std::size_t>& pick) {
            SimpleIntentState adopted = sis;
            for (std::size_t g = 0; g < pick.size(); ++g) adopted.adopt(*ctx_.waiter, (*seq_groups[g])[pick[g]], i);
            with_intentions(node, adopted, selects, children, out);
        });
    }

private:
    void with_intentions(const Node& node, const SimpleIntentState& sis, const std::map<std::string, Term>& selects,
                         std::vector<Node>& children, std::vector<Model>& out) {
        const State& S = node.state;
        // Decisions of goal-driven agents.
        std::map<std::string, Decision> decisions;
        std::vector<std::string> starters;
        std::vector<const std::vector<ActivityPtr>*> start_options;
        std::vector<std::vector<ActivityPtr>> owned_options;
        owned_options.reserve(ctx_.goal_agents.size());
        for (const auto& agent : ctx_.goal_agents) {
            auto sel = selects.find(agent);
            if (sel != selects.end()) {
                Decision d;
                d.kind = Decision::Kind::mental;
                d.mental = MentalAction{MentalKind::select, agent, sel->second};
                decisions[agent] = d;
                continue;
            }
            const AgentMind& mind = node.minds.at(agent);
            Decision d = decide(d_, S, agent, mind, futility_);
            if (d.kind == Decision::Kind::start_needed) {
                const std::vector<ActivityPtr>* opts = start_candidates(agent, *mind.goal, owned_options);
                if (!opts || opts->empty()) continue;
                starters.push_back(agent);
                start_options.push_back(opts);
            }
            decisions[agent] = d;
        }

        std::vector<std::size_t> sizes;
        for (auto* o : start_options) sizes.push_back(o->size());
        product(sizes, [&](const std::vector<std::size_t>& pick) {
            std::map<std::string, ActivityPtr> chosen;
            for (std::size_t k = 0; k < pick.size(); ++k) chosen[starters[k]] = (*start_options[k])[pick[k]];
            bool can_map = node.next_obs < ctx_.steps.size();
            for (int map_here = can_map ? 1 : 0; map_here >= 0; --map_here)
                for (int intf = 0; intf <= 1; ++intf) {
                    if (intf && static_cast<int>(node.intf_steps.size()) >= ctx_.cfg.max_interferences) continue;
                    attempt(node, sis, decisions, chosen, map_here == 1, intf == 1, children, out);
                }
        });
    }

    const std::vector<ActivityPtr>* start_candidates(const std::string& agent, const Term& goal,
                                                     std::vector<std::vector<ActivityPtr>>& owned) {
        if (goal.functor == "satiated_and_out") {
            auto it = ctx_.customer_acts.find(agent);
            return it == ctx_.customer_acts.end() ? nullptr : &it->second;
        }
        if (goal.functor == "served_and_billed") {
            auto it = ctx_.waiter_acts.find(goal.args[0].functor);
            return it == ctx_.waiter_acts.end() ? nullptr : &it->second;
        }
        if (goal.functor == "food_ready") {
            auto it = ctx_.cook_acts.find(goal.args[0].functor);
            if (it == ctx_.cook_acts.end()) return nullptr;
            owned.push_back({it->second});
            return &owned.back();
        }
        return nullptr;
    }

    bool exec_in_mode(int a, bool intf) const {
        const auto& act = d_.action(a);
        if (intf && act.interferable) return act.interference_precondition.eval(cur_state_);
        return act.precondition.eval(cur_state_);
    }

    void attempt(const Node& node, const SimpleIntentState& sis, const std::map<std::string, Decision>& decisions,
                 const std::map<std::string, ActivityPtr>& chosen, bool map_here, bool intf,
                 std::vector<Node>& children, std::vector<Model>& out) {
        const int i = node.step;
        const State& S = node.state;
        cur_state_ = S;
        const StoryStep* obs = map_here ? &ctx_.steps[node.next_obs] : nullptr;

        std::set<int> physical;
        std::set<std::string> busy;
        if (obs) {
            for (Lit l : obs->fluents)
                if (S[l.fluent] != l.value) return;
            if (obs->interference_true && !intf) return;
            if (obs->interference_false && intf) return;
            for (int a : obs->true_actions) {
                if (a == d_.interference_id()) continue;
                if (!exec_in_mode(a, intf)) return;
                physical.insert(a);
                if (!d_.action(a).agent.empty()) busy.insert(d_.action(a).agent);
            }
        }

        int unintended = 0;
        const bool budget_left = static_cast<int>(node.intf_steps.size()) < ctx_.cfg.max_interferences;
        auto intend = [&](const Term& t) -> bool {
            auto id = d_.action_id(t);
            if (!id) return true;
            const auto& act = d_.action(*id);
            if (busy.count(act.agent)) {
                return true;
            }
            if (exec_in_mode(*id, intf)) {
                physical.insert(*id);
            } else if (intf && act.precondition.eval(S)) {
                return false;  // executable, yet cannot co-occur with the interference
            } else if (!intf && budget_left && act.interferable && act.interference_precondition.eval(S)) {
                return false;  // only an interference lets it happen: abduce it now, not later
            }
            return true;
        };

        std::vector<MentalAction> mental;
        for (const auto& [agent, d] : decisions) {
            if (d.kind == Decision::Kind::mental) {
                if (busy.count(agent)) return;
                mental.push_back(*d.mental);
            } else if (d.kind == Decision::Kind::start_needed) {
                if (busy.count(agent)) return;
                mental.push_back({MentalKind::start, agent, chosen.at(agent)->name});
            } else if (d.kind == Decision::Kind::physical) {
                if (!intend(*d.physical)) return;
            }
        }
        for (const auto& [agent, progs] : sis.agents) {
            (void)progs;
            for (const Term& t : simple_pending(sis, agent))
                if (!intend(t)) return;
        }
        // Observed actions of actors with intentions, which they did not intend right now.
        if (obs)
            for (int a : obs->true_actions) {
                const std::string& ag = d_.action(a).agent;
                bool has_mind = node.minds.count(ag) > 0 || sis.agents.count(ag) > 0;
                if (!has_mind) continue;
                bool meant = false;
                auto dec = decisions.find(ag);
                if (dec != decisions.end() && dec->second.kind == Decision::Kind::physical)
                    meant = d_.action_id(*dec->second.physical) == a;
                for (const Term& t : simple_pending(sis, ag)) meant |= d_.action_id(t) == a;
                if (!meant) ++unintended;
            }

        if (intf) {
            bool any = false;
            for (int a : physical) any |= d_.action(a).interferable;
            if (!any) return;
            physical.insert(d_.interference_id());
        }
        if (obs)
            for (int a : obs->false_actions)
                if (physical.count(a)) return;

        Occurrence occ;
        occ.step = i;
        occ.actions.assign(physical.begin(), physical.end());
        std::sort(mental.begin(), mental.end());
        occ.mental = std::move(mental);

        std::size_t next_obs = node.next_obs + (map_here ? 1 : 0);
        IntentSnapshot snap = snapshot(sis, node.minds);

        if (occ.empty()) {
            // Nothing happens now, so nothing ever will: the run ends here.
            if (next_obs != ctx_.steps.size()) return;
            Node end = node;
            if (map_here) end.mapping[obs->story_step] = i;
            end.unintended += unintended;
            out.push_back(finish(ctx_, end, &snap));
            return;
        }

        if (!check_occurrence(d_, S, occ).empty()) return;
        std::vector<State> succ = try_successor_states(d_, S, occ);
        if (succ.empty()) return;

        // Mental updates do not depend on which successor is chosen.
        std::map<std::string, AgentMind> minds;
        try {
            for (const auto& [agent, mind] : node.minds) {
                auto ch = chosen.find(agent);
                minds[agent] = goal_advance(mind, d_, S, agent, occ, ch == chosen.end() ? nullptr : ch->second);
            }
        } catch (const IntentionError&) {
            return;
        }
        SimpleIntentState sis_next = simple_advance(sis, d_, occ);
        auto link = std::make_shared<Link>(Link{node.trace, S, std::move(occ), std::move(snap)});

        for (auto& s : succ) {
            Node child;
            child.step = i + 1;
            child.state = std::move(s);
            child.simple = sis_next;
            child.minds = minds;
            child.mapping = node.mapping;
            if (map_here) child.mapping[obs->story_step] = i;
            child.next_obs = next_obs;
            child.trace = link;
            child.intf_steps = node.intf_steps;
            if (intf) child.intf_steps.push_back(i);
            child.flips = node.flips;
            child.unintended = node.unintended + unintended;
            children.push_back(std::move(child));
        }
    }

    const Context& ctx_;
    const DomainSpec& d_;
    Stats& stats_;
    FutilityChecker futility_;
    State cur_state_;
};

Context make_context(const Story& story, const Config& cfg) {
    auto diags = validate_story(story);
    if (!diags.empty()) throw std::invalid_argument("invalid story: " + diags.front().message);
    Context ctx;
    ctx.cfg = cfg;
    ctx.domain = std::make_shared<DomainSpec>(build_restaurant_domain(story.entities));
    const DomainSpec& d = *ctx.domain;
    ctx.H = cfg.max_steps > 0 ? cfg.max_steps : default_max_steps(story, cfg);
    if (story.step_count() > ctx.H) throw std::invalid_argument("max_steps is shorter than the story");
    if (cfg.timeout_seconds > 0)
        ctx.deadline = Clock::now() + std::chrono::microseconds(static_cast<long long>(cfg.timeout_seconds * 1e6));
    ctx.waiter = d.waiter();
    ctx.cook = d.cook();

    std::map<int, StoryStep> by_step;
    for (const auto& o : story.observations) {
        auto& st = by_step[o.story_step];
        st.story_step = o.story_step;
        if (o.kind == ObsKind::fluent) {
            st.fluents.push_back({d.fluent_id_or_throw(o.subject), o.value});
            continue;
        }
        int a = *d.action_id(o.subject);
        if (a == d.interference_id()) {
            (o.value ? st.interference_true : st.interference_false) = true;
            if (o.value) st.true_actions.push_back(a);
        } else {
            (o.value ? st.true_actions : st.false_actions).push_back(a);
        }
    }
    for (auto& [s, st] : by_step) ctx.steps.push_back(std::move(st));

    // A customer acts on their own goal only if the story mentions them.
    std::set<std::string> mentioned;
    std::function<void(const Term&)> scan = [&](const Term& t) {
        if (t.args.empty()) mentioned.insert(t.functor);
        for (const auto& a : t.args) scan(a);
    };
    for (const auto& o : story.observations) scan(o.subject);

    for (const auto& c : d.customers()) {
        if (!mentioned.count(c)) continue;
        ctx.selecting_customers.insert(c);
        ctx.goal_agents.push_back(c);
        std::set<std::string> rs, fs;
        for (const auto& o : story.observations) {
            if (o.kind != ObsKind::action || !o.value || o.subject.args.empty() || o.subject.args[0].functor != c)
                continue;
            if (o.subject.functor == "enter") rs.insert(o.subject.args[1].functor);
            if (o.subject.functor == "order") fs.insert(o.subject.args[1].functor);
        }
        if (fs.empty())
            for (const auto& o : story.observations)
                if (o.kind == ObsKind::action && o.value && o.subject.functor == "eat" &&
                    o.subject.args[0].functor == c)
                    fs.insert(o.subject.args[1].functor);
        if (rs.empty()) rs.insert(d.restaurants().begin(), d.restaurants().end());
        if (fs.empty()) fs.insert(d.foods().begin(), d.foods().end());
        if (!ctx.waiter) continue;
        for (const auto& r : rs)
            for (const auto& f : fs)
                ctx.customer_acts[c].push_back(
                    customer_activity(c, r, *ctx.waiter, f, cfg.customer_structure, d.bill_of(c)));
    }

    StaffCandidates staff = candidate_staff_sequences(story, d);
    for (const auto& p : staff.waiter) {
        if (cfg.ti_mode == TiMode::mixed)
            ctx.waiter_seqs[p.customer].push_back(waiter_sequence(p));
        else
            ctx.waiter_acts[p.customer].push_back(waiter_activity(p));
    }
    for (const auto& p : staff.cook) {
        ctx.cook_seqs[p.food] = cook_sequence(p);
        ctx.cook_acts[p.food] = cook_activity(p);
    }
    if (cfg.ti_mode == TiMode::new_only) {
        if (ctx.waiter) ctx.goal_agents.push_back(*ctx.waiter);
        if (ctx.cook) ctx.goal_agents.push_back(*ctx.cook);
    }
    std::sort(ctx.goal_agents.begin(), ctx.goal_agents.end());
    return ctx;
}

Node root(const Context& ctx, const std::vector<Lit>& flips) {
    Node n;
    n.state = ctx.domain->initial_state();
    for (Lit l : flips) n.state.set(l.fluent, l.value);
    ctx.domain->close(n.state);
    n.flips = flips;
    for (const auto& a : ctx.goal_agents) n.minds[a];
    return n;
}

void dfs(const Context& ctx, Node start, Stats& stats, std::vector<Model>& out) {
    Expander ex(ctx, stats);
    std::vector<Node> stack;
    stack.push_back(std::move(start));
    std::vector<Node> children;
    while (!stack.empty() && !stats.timed_out) {
        Node n = std::move(stack.back());
        stack.pop_back();
        children.clear();
        ex.expand(n, children, out);
        for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
    }
}

// Frontier split across threads; each thread runs its own depth-first search.
void parallel_search(const Context& ctx, Node start, int threads, Stats& stats, std::vector<Model>& out) {
    std::vector<Node> frontier{std::move(start)};
    {
        Expander ex(ctx, stats);
        const std::size_t target = static_cast<std::size_t>(threads) * 8;
        for (int round = 0; round < 64 && !frontier.empty() && frontier.size() < target; ++round) {
            std::vector<Node> next;
            for (const auto& n : frontier) ex.expand(n, next, out);
            frontier = std::move(next);
            if (stats.timed_out) return;
        }
    }
    std::vector<std::vector<Model>> per(frontier.size());
    std::vector<Stats> st(frontier.size());
    std::atomic<bool> stop{false};
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long k = 0; k < static_cast<long>(frontier.size()); ++k) {
        if (stop.load()) continue;
        dfs(ctx, std::move(frontier[k]), st[k], per[k]);
        if (st[k].timed_out) stop = true;
    }
    for (std::size_t k = 0; k < frontier.size(); ++k) {
        stats.nodes += st[k].nodes;
        stats.goal_conflicts += st[k].goal_conflicts;
        stats.timed_out |= st[k].timed_out;
        for (auto& m : per[k]) out.push_back(std::move(m));
    }
}

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

SolveResult run(const Story& story, const Config& cfg, bool parallel) {
    Context ctx = make_context(story, cfg);
    const DomainSpec& d = *ctx.domain;

    // Defaults may be overridden only for fluents the story observes.
    std::vector<int> candidates;
    for (const auto& st : ctx.steps)
        for (Lit l : st.fluents)
            if (d.fluent(l.fluent).inertial) candidates.push_back(l.fluent);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.size() > 12) throw std::invalid_argument("too many observed fluents");

    State init = d.initial_state();
    std::vector<unsigned> masks;
    for (unsigned m = 0; m < (1u << candidates.size()); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });

    Stats stats;
    std::vector<Model> models;
    // A reading without interference makes every interfered reading non-minimal,
    // so the cheap search runs first.
    std::vector<int> budgets{0};
    if (cfg.max_interferences > 0) budgets.push_back(cfg.max_interferences);
    for (int budget : budgets) {
        Context bctx = ctx;
        bctx.cfg.max_interferences = budget;
        std::vector<unsigned> productive;
        for (unsigned mask : masks) {
            bool dominated = false;
            for (unsigned p : productive) dominated |= (p & mask) == p;
            if (dominated) continue;
            std::vector<Lit> flips;
            for (std::size_t k = 0; k < candidates.size(); ++k)
                if (mask & (1u << k)) flips.push_back({candidates[k], !init[candidates[k]]});
            std::vector<Model> found;
            if (parallel && cfg.threads > 1)
                parallel_search(bctx, root(bctx, flips), cfg.threads, stats, found);
            else
                dfs(bctx, root(bctx, flips), stats, found);
            if (!found.empty()) productive.push_back(mask);
            for (auto& m : found) models.push_back(std::move(m));
            if (stats.timed_out) break;
        }
        if (!models.empty() || stats.timed_out) break;
    }

    // Readings where observed actions agree with what the actors intended come first.
    if (!models.empty()) {
        int least = models.front().unintended;
        for (const auto& m : models) least = std::min(least, m.unintended);
        std::erase_if(models, [&](const Model& m) { return m.unintended > least; });
    }

    // Abductive minimality over interference steps.
    std::vector<char> keep(models.size(), 1);
    for (std::size_t a = 0; a < models.size(); ++a)
        for (std::size_t b = 0; b < models.size() && keep[a]; ++b)
            if (models[b].abduced.size() < models[a].abduced.size() && subset(models[b].abduced, models[a].abduced))
                keep[a] = 0;
    std::vector<Model> minimal;
    for (std::size_t a = 0; a < models.size(); ++a)
        if (keep[a]) minimal.push_back(std::move(models[a]));

    // Canonical order; models equal in occurrences and trajectory are merged.
    std::vector<std::pair<std::string, std::size_t>> keyed;
    for (std::size_t k = 0; k < minimal.size(); ++k) keyed.emplace_back(canonical_key(d, minimal[k]), k);
    std::sort(keyed.begin(), keyed.end());
    SolveResult res;
    std::set<std::string> bodies;
    for (const auto& [key, k] : keyed) {
        // the smallest key wins for each body
        if (!bodies.insert(key.substr(key.find('\n') + 1)).second) continue;
        res.models.push_back(std::move(minimal[k]));
    }
    res.domain = ctx.domain;
    res.horizon = ctx.H;
    res.timed_out = stats.timed_out;
    res.nodes = stats.nodes;
    if (res.models.empty()) {
        if (stats.timed_out)
            res.reason = "search timed out";
        else if (stats.goal_conflicts > 0)
            res.reason = "an agent would need two active top-level goals at once";
        else
            res.reason = "no reading satisfies all observations within " + std::to_string(ctx.H) + " steps";
    }
    return res;
}

}  // namespace

SolveResult solve(const Story& story, const Config& config) { return run(story, config, true); }

SolveResult solve_serial(const Story& story, const Config& config) { return run(story, config, false); }

std::string canonical_key(const DomainSpec& d, const Model& m) {
    // First line: mapping (ignored for de-duplication); the rest identifies the model.
    std::ostringstream k;
    for (const auto& [s, i] : m.mapping) k << s << ':' << i << ' ';
    k << '\n';
    for (const auto& o : m.occurrences) {
        if (o.empty()) continue;
        k << o.step << '[';
        for (int a : o.actions) k << d.action(a).term.str() << ' ';
        for (const auto& mm : o.mental) k << mm.term().str() << ' ';
        k << "]\n";
    }
    k << "flips";
    for (Lit l : m.initial_flips) k << ' ' << l.fluent << (l.value ? '+' : '-');
    k << "\nstates";
    for (const auto& s : m.trajectory)
        for (auto w : s.words()) k << ' ' << std::hex << w << std::dec;
    return k.str();
}

Term Explanation::waiter_term(std::size_t i) const {
    const auto& p = waiter[i];
    return T("w_seq", p.waiter, p.customer, p.understood_food, p.served_food, p.bill);
}

Term Explanation::cook_term(std::size_t i) const {
    const auto& p = cook[i];
    return T("ck_seq", p.cook, p.food, p.waiter);
}

namespace {

std::string label_for(const DomainSpec& d, const std::vector<std::pair<int, std::vector<Term>>>& intfs) {
    if (intfs.empty()) return "no interference: things went as planned";
    std::vector<std::string> parts;
    for (const auto& [step, acts] : intfs) {
        for (const auto& a : acts) {
            if (a.functor == "order") {
                parts.push_back("misheard order: the waitress took down a different dish");
            } else if (a.functor == "request") {
                parts.push_back("garbled request: the cook heard a different dish from the waitress");
            } else if (a.functor == "prepare") {
                parts.push_back("wrong preparation: the cook got the request right but made another dish");
            } else if (a.functor == "pick_up") {
                auto sort = d.sort_of(a.args[1].functor);
                parts.push_back(sort && *sort == "bill" ? "wrong pick-up: the waitress grabbed another bill"
                                                        : "wrong pick-up: the waitress carried another dish out of the kitchen");
            }
        }
    }
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
    return out;
}

}  // namespace

std::vector<Explanation> explain(const SolveResult& result) {
    const DomainSpec& d = *result.domain;
    std::map<std::string, Explanation> groups;
    for (std::size_t mi = 0; mi < result.models.size(); ++mi) {
        const Model& m = result.models[mi];
        std::set<WaiterParams> ws;
        std::set<CookParams> cs;
        for (const auto& snap : m.intent_history)
            for (const auto& [agent, s] : snap) {
                std::vector<Term> names;
                for (const auto& [t, k] : s.sequences) names.push_back(t);
                for (const auto& [t, k] : s.activities) names.push_back(t);
                for (const auto& t : names) {
                    if ((t.functor == "w_seq" || t.functor == "w_act") && t.arity() == 5)
                        ws.insert({t.args[0].functor, t.args[1].functor, t.args[2].functor, t.args[3].functor,
                                   t.args[4].functor, d.cook().value_or("ck")});
                    if ((t.functor == "ck_seq" || t.functor == "ck_act") && t.arity() == 3)
                        cs.insert({t.args[0].functor, t.args[1].functor, t.args[2].functor});
                }
            }
        Explanation e;
        e.waiter.assign(ws.begin(), ws.end());
        e.cook.assign(cs.begin(), cs.end());
        for (int step : m.abduced) {
            std::vector<Term> acts;
            for (int a : m.occurrences[step].actions)
                if (d.action(a).interferable) acts.push_back(d.action(a).term);
            e.interferences.emplace_back(step, std::move(acts));
        }
        std::ostringstream key;
        for (std::size_t k = 0; k < e.waiter.size(); ++k) key << e.waiter_term(k).str() << ';';
        for (std::size_t k = 0; k < e.cook.size(); ++k) key << e.cook_term(k).str() << ';';
        // Classes ignore when the interference happened; the first model is the witness.
        for (const auto& [s, acts] : e.interferences) {
            key << '|';
            for (const auto& a : acts) key << a.str() << ',';
        }
        auto [it, inserted] = groups.emplace(key.str(), std::move(e));
        if (inserted) it->second.label = label_for(d, it->second.interferences);
        it->second.models.push_back(mi);
    }
    std::vector<Explanation> out;
    for (auto& [k, e] : groups) out.push_back(std::move(e));
    return out;
}

int probe_span(int n, bool goal_driven) {
    DomainSpec d = build_restaurant_domain(
        {{"c", "customer"}, {"r", "restaurant"}, {"f", "food"}, {"w", "waitress"}, {"ck", "cook"}});
    State s = d.initial_state();
    s.set(d.fluent_id_or_throw(T("inside", "c", "r")), true);
    s.set(d.fluent_id_or_throw(T("at", "c", "t")), true);
    s.set(d.fluent_id_or_throw(T("seated", "c")), true);
    d.close(s);
    ActivityPtr act = probe_activity("c", n);
    FutilityChecker fut(d);
    int first = -1, last = -1;
    const int limit = 4 * n + 8;

    auto step = [&](int i, const Occurrence& occ) {
        if (occ.empty()) return;
        if (first < 0) first = i;
        last = i;
        s = successor_states(d, s, occ).front();
    };

    if (goal_driven) {
        AgentMind mind;
        mind.goal = act->goal;
        mind.phase = AgentMind::Phase::selected;
        for (int i = 0; i < limit && mind.phase != AgentMind::Phase::stalled && mind.phase != AgentMind::Phase::idle;
             ++i) {
            Decision dec = decide(d, s, "c", mind, fut);
            Occurrence occ;
            occ.step = i;
            if (dec.kind == Decision::Kind::start_needed) occ.mental.push_back({MentalKind::start, "c", act->name});
            if (dec.kind == Decision::Kind::mental) occ.mental.push_back(*dec.mental);
            if (dec.kind == Decision::Kind::physical) {
                auto id = d.action_id(*dec.physical);
                if (id && executable(d, s, *id)) occ.actions.push_back(*id);
            }
            State before = s;
            step(i, occ);
            mind = goal_advance(mind, d, before, "c", occ, act);
        }
    } else {
        auto seq = std::make_shared<SequenceSpec>();
        seq->name = act->name;
        for (const auto& c : act->components) seq->components.emplace_back(std::get<Term>(c));
        SimpleIntentState sis;
        sis.adopt("c", seq, 0);
        for (int i = 0; i < limit && !sis.active("c").empty(); ++i) {
            Occurrence occ;
            occ.step = i;
            for (const Term& t : simple_next(d, s, sis, "c")) occ.actions.push_back(*d.action_id(t));
            std::sort(occ.actions.begin(), occ.actions.end());
            step(i, occ);
            sis = simple_advance(sis, d, occ);
        }
    }
    return first < 0 ? 0 : last - first + 1;
}

}  // namespace storymind
