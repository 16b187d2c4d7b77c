#include "brute_force.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace storymind::oracle {

namespace {

struct Obs {
    std::vector<int> yes, no;
    std::vector<Lit> fluents;
    bool intf_yes = false, intf_no = false;
};

struct Setup {
    std::shared_ptr<DomainSpec> d;
    Config cfg;
    int H = 0;
    std::vector<Obs> obs;  // by story step order
    std::vector<int> story_steps;
    std::vector<std::string> goal_agents;
    std::vector<std::string> selecting;
    std::map<std::string, std::vector<ActivityPtr>> cust_acts;
    std::map<std::string, std::vector<SequencePtr>> w_seqs;
    std::map<std::string, std::vector<ActivityPtr>> w_acts;
    std::map<std::string, SequencePtr> ck_seqs;
    std::map<std::string, ActivityPtr> ck_acts;
    std::optional<std::string> waiter, cook;
};

Setup make_setup(const Story& story, const Config& cfg) {
    Setup s;
    s.cfg = cfg;
    s.H = cfg.max_steps;
    if (s.H <= 0) throw std::invalid_argument("oracle needs an explicit max_steps");
    s.d = std::make_shared<DomainSpec>(build_restaurant_domain(story.entities));
    const DomainSpec& d = *s.d;
    s.waiter = d.waiter();
    s.cook = d.cook();

    std::map<int, Obs> by;
    for (const auto& o : story.observations) {
        Obs& b = by[o.story_step];
        if (o.kind == ObsKind::fluent) {
            b.fluents.push_back({d.fluent_id_or_throw(o.subject), o.value});
        } else {
            int a = *d.action_id(o.subject);
            if (a == d.interference_id())
                (o.value ? b.intf_yes : b.intf_no) = true;
            else
                (o.value ? b.yes : b.no).push_back(a);
        }
    }
    for (auto& [k, b] : by) {
        s.story_steps.push_back(k);
        s.obs.push_back(b);
    }

    std::set<std::string> names;
    std::function<void(const Term&)> scan = [&](const Term& t) {
        if (t.args.empty()) names.insert(t.functor);
        for (const auto& a : t.args) scan(a);
    };
    for (const auto& o : story.observations) scan(o.subject);

    for (const auto& c : d.customers()) {
        if (!names.count(c)) continue;
        s.selecting.push_back(c);
        s.goal_agents.push_back(c);
        std::set<std::string> rs, fs, eaten;
        for (const auto& o : story.observations) {
            if (o.kind != ObsKind::action || !o.value || o.subject.args.empty()) continue;
            if (o.subject.args[0].functor != c) continue;
            if (o.subject.functor == "enter") rs.insert(o.subject.args[1].functor);
            if (o.subject.functor == "order") fs.insert(o.subject.args[1].functor);
            if (o.subject.functor == "eat") eaten.insert(o.subject.args[1].functor);
        }
        if (fs.empty()) fs = eaten;
        if (rs.empty()) rs.insert(d.restaurants().begin(), d.restaurants().end());
        if (fs.empty()) fs.insert(d.foods().begin(), d.foods().end());
        if (!s.waiter) continue;
        for (const auto& r : rs)
            for (const auto& f : fs)
                s.cust_acts[c].push_back(customer_activity(c, r, *s.waiter, f, cfg.customer_structure, d.bill_of(c)));
    }
    auto staff = candidate_staff_sequences(story, d);
    for (const auto& p : staff.waiter) {
        s.w_seqs[p.customer].push_back(waiter_sequence(p));
        s.w_acts[p.customer].push_back(waiter_activity(p));
    }
    for (const auto& p : staff.cook) {
        s.ck_seqs[p.food] = cook_sequence(p);
        s.ck_acts[p.food] = cook_activity(p);
    }
    if (cfg.ti_mode == TiMode::new_only) {
        if (s.waiter) s.goal_agents.push_back(*s.waiter);
        if (s.cook) s.goal_agents.push_back(*s.cook);
    }
    std::sort(s.goal_agents.begin(), s.goal_agents.end());
    return s;
}

// A full choice of the things the solver discovers lazily.
struct Plan {
    std::map<int, int> at;  // reasoning step -> index into Setup::obs
    std::vector<int> mapping;
    std::set<int> intf;
    std::vector<Lit> flips;
    int budget = 0;
};

struct Run {
    int step = 0;
    State state;
    SimpleIntentState sis;
    std::map<std::string, AgentMind> minds;
    std::vector<State> traj;
    std::vector<Occurrence> occs;
    int unintended = 0;
    int intf_used = 0;
};

struct Found {
    Model model;
    std::string key;
};

class Sim {
public:
    Sim(const Setup& s, const Plan& p, std::vector<Found>& out) : s_(s), d_(*s.d), p_(p), out_(out), fut_(d_) {}

    void go(Run r) {
        const int i = r.step;
        if (i >= s_.H) {
            accept(r);
            return;
        }
        const State& S = r.state;
        std::map<std::string, Term> selects;
        bool bad = false;
        auto want_goal = [&](const std::string& ag, const Term& g) {
            const auto& mind = r.minds.at(ag);
            if (mind.goal && *mind.goal == g) return;
            if (mind.goal || selects.count(ag)) bad = true;
            else selects.emplace(ag, g);
        };
        if (i == 0)
            for (const auto& c : s_.selecting) want_goal(c, T("satiated_and_out", c));

        std::vector<std::string> came_in;
        if (i > 0)
            for (int a : r.occs.back().actions) {
                const Term& t = d_.action(a).term;
                if (t.functor == "enter") came_in.push_back(t.args[0].functor);
            }
        SimpleIntentState sis = r.sis;
        std::vector<const std::vector<SequencePtr>*> groups;
        if (s_.waiter)
            for (const auto& c : came_in) {
                if (s_.cfg.ti_mode == TiMode::mixed) {
                    auto it = s_.w_seqs.find(c);
                    if (it != s_.w_seqs.end()) groups.push_back(&it->second);
                } else {
                    want_goal(*s_.waiter, T("served_and_billed", c));
                }
            }
        if (s_.waiter && s_.cook)
            for (const auto& f : d_.foods()) {
                auto rq = d_.fluent_id(T("requested", *s_.cook, f, *s_.waiter));
                if (!rq || !S[*rq]) continue;
                if (s_.cfg.ti_mode == TiMode::mixed) {
                    auto seq = s_.ck_seqs.at(f);
                    if (!sis.intends(*s_.cook, seq->name)) sis.adopt(*s_.cook, seq, i);
                } else {
                    want_goal(*s_.cook, T("food_ready", f));
                }
            }
        if (bad) return;
        choose_seqs(r, sis, groups, 0, selects);
    }

private:
    void choose_seqs(const Run& r, const SimpleIntentState& sis, const std::vector<const std::vector<SequencePtr>*>& g,
                     std::size_t k, const std::map<std::string, Term>& selects) {
        if (k == g.size()) {
            decisions(r, sis, selects);
            return;
        }
        for (const auto& seq : *g[k]) {
            SimpleIntentState next = sis;
            next.adopt(*s_.waiter, seq, r.step);
            choose_seqs(r, next, g, k + 1, selects);
        }
    }

    const std::vector<ActivityPtr>* options(const Term& goal) {
        const std::map<std::string, std::vector<ActivityPtr>>* table = nullptr;
        if (goal.functor == "satiated_and_out") {
            auto it = s_.cust_acts.find(goal.args[0].functor);
            return it == s_.cust_acts.end() ? nullptr : &it->second;
        }
        if (goal.functor == "served_and_billed") table = &s_.w_acts;
        if (goal.functor == "food_ready") {
            auto it = s_.ck_acts.find(goal.args[0].functor);
            if (it == s_.ck_acts.end()) return nullptr;
            single_.push_back({it->second});
            return &single_.back();
        }
        if (!table) return nullptr;
        auto it = table->find(goal.args[0].functor);
        return it == table->end() ? nullptr : &it->second;
    }

    void decisions(const Run& r, const SimpleIntentState& sis, const std::map<std::string, Term>& selects) {
        std::map<std::string, Decision> dec;
        std::vector<std::string> starters;
        std::vector<const std::vector<ActivityPtr>*> opts;
        for (const auto& ag : s_.goal_agents) {
            auto sel = selects.find(ag);
            if (sel != selects.end()) {
                Decision x;
                x.kind = Decision::Kind::mental;
                x.mental = MentalAction{MentalKind::select, ag, sel->second};
                dec[ag] = x;
                continue;
            }
            const AgentMind& mind = r.minds.at(ag);
            Decision x = decide(d_, r.state, ag, mind, fut_);
            if (x.kind == Decision::Kind::start_needed) {
                auto* o = options(*mind.goal);
                if (!o || o->empty()) continue;
                starters.push_back(ag);
                opts.push_back(o);
            }
            dec[ag] = x;
        }
        std::map<std::string, ActivityPtr> chosen;
        std::function<void(std::size_t)> pick = [&](std::size_t k) {
            if (k == starters.size()) {
                step(r, sis, dec, chosen);
                return;
            }
            for (const auto& a : *opts[k]) {
                chosen[starters[k]] = a;
                pick(k + 1);
            }
            chosen.erase(starters[k]);
        };
        pick(0);
    }

    bool runs(int a, bool intf, const State& S) const {
        const auto& act = d_.action(a);
        if (intf && act.interferable) return act.interference_precondition.eval(S);
        return act.precondition.eval(S);
    }

    void step(const Run& r, const SimpleIntentState& sis, const std::map<std::string, Decision>& dec,
              const std::map<std::string, ActivityPtr>& chosen) {
        const int i = r.step;
        const State& S = r.state;
        const bool intf = p_.intf.count(i) > 0;
        auto at = p_.at.find(i);
        const Obs* ob = at == p_.at.end() ? nullptr : &s_.obs[at->second];
        const bool budget_left = r.intf_used < p_.budget;

        std::set<std::string> busy;
        if (ob)
            for (int a : ob->yes) busy.insert(d_.action(a).agent);

        // Intended physical actions, per agent.
        std::vector<std::pair<std::string, int>> intended;
        for (const auto& [ag, x] : dec)
            if (x.kind == Decision::Kind::physical)
                if (auto id = d_.action_id(*x.physical)) intended.emplace_back(ag, *id);
        for (const auto& [ag, progs] : sis.agents) {
            (void)progs;
            for (const Term& t : simple_pending(sis, ag))
                if (auto id = d_.action_id(t)) intended.emplace_back(ag, *id);
        }

        // Candidate universe: observed actions plus anything someone intends.
        std::vector<int> universe;
        if (ob) universe = ob->yes;
        for (const auto& [ag, a] : intended) universe.push_back(a);
        std::sort(universe.begin(), universe.end());
        universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
        if (universe.size() > 16) throw std::runtime_error("oracle universe too large");

        // Mental part is fixed by the decisions.
        std::vector<MentalAction> mental;
        for (const auto& [ag, x] : dec) {
            if (x.kind == Decision::Kind::mental) mental.push_back(*x.mental);
            if (x.kind == Decision::Kind::start_needed)
                mental.push_back({MentalKind::start, ag, chosen.at(ag)->name});
        }
        for (const auto& m : mental)
            if (busy.count(m.agent)) return;
        std::sort(mental.begin(), mental.end());

        for (unsigned mask = 0; mask < (1u << universe.size()); ++mask) {
            std::set<int> P;
            for (std::size_t k = 0; k < universe.size(); ++k)
                if (mask & (1u << k)) P.insert(universe[k]);
            if (!admissible(S, ob, intf, budget_left, busy, intended, P)) continue;
            int unintended = 0;
            if (ob)
                for (int a : ob->yes) {
                    const std::string& ag = d_.action(a).agent;
                    if (!r.minds.count(ag) && !sis.agents.count(ag)) continue;
                    bool meant = false;
                    for (const auto& [who, b] : intended) meant |= who == ag && b == a;
                    unintended += !meant;
                }
            Occurrence occ;
            occ.step = i;
            occ.actions.assign(P.begin(), P.end());
            if (intf) {
                occ.actions.push_back(d_.interference_id());
                std::sort(occ.actions.begin(), occ.actions.end());
            }
            occ.mental = mental;
            if (occ.empty()) {
                // the run stops here; nothing may remain to be mapped or interfered
                if (!p_.mapping.empty() && p_.mapping.back() > i) continue;
                if (!p_.intf.empty() && *p_.intf.rbegin() > i) continue;
                Run end = r;
                end.unintended += unintended;
                accept(end);
                continue;
            }
            if (!check_occurrence(d_, S, occ).empty()) continue;
            auto succ = try_successor_states(d_, S, occ);
            if (succ.empty()) continue;
            std::map<std::string, AgentMind> minds;
            try {
                for (const auto& [ag, mind] : r.minds) {
                    auto c = chosen.find(ag);
                    minds[ag] = goal_advance(mind, d_, S, ag, occ, c == chosen.end() ? nullptr : c->second);
                }
            } catch (const IntentionError&) {
                continue;
            }
            SimpleIntentState nsis = simple_advance(sis, d_, occ);
            for (auto& ns : succ) {
                Run n = r;
                n.step = i + 1;
                n.traj.push_back(S);
                n.occs.push_back(occ);
                n.state = ns;
                n.sis = nsis;
                n.minds = minds;
                n.unintended += unintended;
                n.intf_used += intf;
                go(std::move(n));
            }
        }
    }

    bool admissible(const State& S, const Obs* ob, bool intf, bool budget_left, const std::set<std::string>& busy,
                    const std::vector<std::pair<std::string, int>>& intended, const std::set<int>& P) const {
        if (ob) {
            for (Lit l : ob->fluents)
                if (S[l.fluent] != l.value) return false;
            if (ob->intf_yes && !intf) return false;
            if (ob->intf_no && intf) return false;
            for (int a : ob->yes)
                if (!P.count(a) || !runs(a, intf, S)) return false;
            for (int a : ob->no)
                if (P.count(a)) return false;
        }
        for (const auto& [ag, a] : intended) {
            if (busy.count(ag)) continue;
            const auto& act = d_.action(a);
            if (runs(a, intf, S)) {
                if (!P.count(a)) return false;  // no procrastination
            } else if (intf && act.precondition.eval(S)) {
                return false;
            } else if (!intf && budget_left && act.interferable && act.interference_precondition.eval(S)) {
                return false;
            }
        }
        for (int a : P) {
            bool observed = ob && std::count(ob->yes.begin(), ob->yes.end(), a);
            bool meant = false;
            for (const auto& [ag, b] : intended) meant |= b == a && !busy.count(ag) && runs(a, intf, S);
            if (!observed && !meant) return false;  // the reader invents nothing
        }
        if (intf) {
            bool any = false;
            for (int a : P) any |= d_.action(a).interferable;
            if (!any) return false;
        }
        return true;
    }

    void accept(const Run& r) {
        Model m;
        for (std::size_t k = 0; k < p_.mapping.size(); ++k) m.mapping[s_.story_steps[k]] = p_.mapping[k];
        m.trajectory = r.traj;
        m.trajectory.push_back(r.state);
        while (static_cast<int>(m.trajectory.size()) < s_.H + 1) m.trajectory.push_back(r.state);
        m.occurrences = r.occs;
        while (static_cast<int>(m.occurrences.size()) < s_.H) {
            Occurrence o;
            o.step = static_cast<int>(m.occurrences.size());
            m.occurrences.push_back(o);
        }
        m.abduced.assign(p_.intf.begin(), p_.intf.end());
        m.initial_flips = p_.flips;
        m.unintended = r.unintended;
        std::string key = canonical_key(d_, m);
        out_.push_back({std::move(m), std::move(key)});
    }

    const Setup& s_;
    const DomainSpec& d_;
    const Plan& p_;
    std::vector<Found>& out_;
    FutilityChecker fut_;
    std::deque<std::vector<ActivityPtr>> single_;  // stable addresses
};

void all_increasing(int n, int H, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    int from = cur.empty() ? 0 : cur.back() + 1;
    for (int x = from; x < H; ++x) {
        cur.push_back(x);
        all_increasing(n, H, cur, out);
        cur.pop_back();
    }
}

void subsets_upto(int H, int k, int from, std::set<int>& cur, std::vector<std::set<int>>& out) {
    out.push_back(cur);
    if (k == 0) return;
    for (int x = from; x < H; ++x) {
        cur.insert(x);
        subsets_upto(H, k - 1, x + 1, cur, out);
        cur.erase(x);
    }
}

std::vector<Found> search(const Setup& s, int budget, const std::vector<Lit>& flips) {
    std::vector<Found> out;
    std::vector<std::vector<int>> maps;
    std::vector<int> cur;
    all_increasing(static_cast<int>(s.obs.size()), s.H, cur, maps);
    std::vector<std::set<int>> intfs;
    std::set<int> c;
    subsets_upto(s.H, budget, 0, c, intfs);
    State init = s.d->initial_state();
    for (Lit l : flips) init.set(l.fluent, l.value);
    s.d->close(init);
    for (const auto& mp : maps)
        for (const auto& is : intfs) {
            Plan p;
            p.mapping = mp;
            for (std::size_t k = 0; k < mp.size(); ++k) p.at[mp[k]] = static_cast<int>(k);
            p.intf = is;
            p.flips = flips;
            p.budget = budget;
            Sim sim(s, p, out);
            Run r;
            r.state = init;
            for (const auto& a : s.goal_agents) r.minds[a];
            sim.go(r);
        }
    return out;
}

}  // namespace

std::set<std::string> enumerate_models(const Story& story, const Config& config) {
    Setup s = make_setup(story, config);
    const DomainSpec& d = *s.d;

    std::vector<int> observed;
    for (const auto& o : s.obs)
        for (Lit l : o.fluents)
            if (d.fluent(l.fluent).inertial) observed.push_back(l.fluent);
    std::sort(observed.begin(), observed.end());
    observed.erase(std::unique(observed.begin(), observed.end()), observed.end());
    State init = d.initial_state();

    std::vector<Found> models;
    std::vector<int> budgets{0};
    if (config.max_interferences > 0) budgets.push_back(config.max_interferences);
    for (int budget : budgets) {
        // flips count only if no strictly smaller set of flips already explains the story
        std::vector<unsigned> productive;
        std::vector<std::pair<unsigned, std::vector<Found>>> per_mask;
        for (unsigned mask = 0; mask < (1u << observed.size()); ++mask) {
            std::vector<Lit> flips;
            for (std::size_t k = 0; k < observed.size(); ++k)
                if (mask & (1u << k)) flips.push_back({observed[k], !init[observed[k]]});
            auto found = search(s, budget, flips);
            if (!found.empty()) per_mask.emplace_back(mask, std::move(found));
        }
        for (auto& [mask, found] : per_mask) {
            bool dominated = false;
            for (auto& [other, f2] : per_mask) dominated |= other != mask && (other & mask) == other;
            if (!dominated)
                for (auto& f : found) models.push_back(std::move(f));
        }
        if (!models.empty()) break;
    }
    if (models.empty()) return {};

    int least = models.front().model.unintended;
    for (const auto& f : models) least = std::min(least, f.model.unintended);
    std::erase_if(models, [&](const Found& f) { return f.model.unintended > least; });

    std::vector<Found> minimal;
    for (const auto& a : models) {
        bool beaten = false;
        for (const auto& b : models)
            beaten |= b.model.abduced.size() < a.model.abduced.size() &&
                      std::includes(a.model.abduced.begin(), a.model.abduced.end(), b.model.abduced.begin(),
                                    b.model.abduced.end());
        if (!beaten) minimal.push_back(a);
    }

    // keep the first mapping per distinct body, as the solver does
    std::map<std::string, std::string> by_body;
    for (const auto& f : minimal) {
        std::string body = f.key.substr(f.key.find('\n') + 1);
        auto it = by_body.find(body);
        if (it == by_body.end() || f.key < it->second) by_body[body] = f.key;
    }
    std::set<std::string> keys;
    for (const auto& [b, k] : by_body) keys.insert(k);
    return keys;
}

std::set<std::string> keys_of(const SolveResult& result) {
    std::set<std::string> keys;
    for (const auto& m : result.models) keys.insert(canonical_key(*result.domain, m));
    return keys;
}

}  // namespace storymind::oracle
