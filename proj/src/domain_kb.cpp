#include "storymind/domain_kb.hpp"

#include <algorithm>

namespace storymind {

namespace {

const std::vector<std::string> kLocations = {"entrance", "t", "kitchen", "counter"};

}  // namespace

std::optional<std::string> DomainSpec::sort_of(std::string_view entity) const {
    auto it = entity_sort_.find(std::string(entity));
    if (it == entity_sort_.end()) return std::nullopt;
    return it->second;
}

bool DomainSpec::is_subsort(const std::string& sub, const std::string& super) const {
    std::string s = sub;
    while (true) {
        if (s == super) return true;
        auto it = parent_sort_.find(s);
        if (it == parent_sort_.end()) return false;
        s = it->second;
    }
}

const std::vector<std::string>& DomainSpec::members(const std::string& sort) const {
    static const std::vector<std::string> none;
    auto it = members_.find(sort);
    return it == members_.end() ? none : it->second;
}

bool DomainSpec::other_food(const std::string& f1, const std::string& f) const {
    const auto& fs = foods();
    return f1 != f && std::find(fs.begin(), fs.end(), f1) != fs.end() &&
           std::find(fs.begin(), fs.end(), f) != fs.end();
}

std::optional<std::string> DomainSpec::waiter() const {
    const auto& w = members("waitress");
    if (w.empty()) return std::nullopt;
    return w.front();
}

std::optional<std::string> DomainSpec::cook() const {
    const auto& c = members("cook");
    if (c.empty()) return std::nullopt;
    return c.front();
}

std::string DomainSpec::bill_of(const std::string& customer) const {
    auto it = customer_bill_.find(customer);
    if (it == customer_bill_.end()) throw DomainError("not a customer: " + customer);
    return it->second;
}

std::optional<std::string> DomainSpec::owner_of(const std::string& bill) const {
    auto it = bill_owner_.find(bill);
    if (it == bill_owner_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> DomainSpec::fluent_id(const Term& t) const {
    auto it = fluent_index_.find(t.str());
    if (it == fluent_index_.end()) return std::nullopt;
    return it->second;
}

int DomainSpec::fluent_id_or_throw(const Term& t) const {
    auto id = fluent_id(t);
    if (!id) throw DomainError("unknown fluent " + t.str());
    return *id;
}

std::optional<int> DomainSpec::action_id(const Term& t) const {
    auto it = action_index_.find(t.str());
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
}

Formula DomainSpec::holds(const Term& fluent, bool value) const {
    return Formula::atom({fluent_id_or_throw(fluent), value});
}

void DomainSpec::close(State& s) const {
    for (int f : derived_) s.set(f, fluents_[f].definition.eval(s));
}

State DomainSpec::initial_state() const {
    State s(fluents_.size());
    for (Lit l : defaults_) s.set(l.fluent, l.value);
    close(s);
    return s;
}

std::vector<Lit> initial_defaults(const DomainSpec& domain) { return domain.defaults_; }

bool executable(const DomainSpec& domain, const State& state, int action) {
    return domain.action(action).precondition.eval(state);
}

bool executable(const DomainSpec& domain, const State& state, const Term& action) {
    auto id = domain.action_id(action);
    return id && executable(domain, state, *id);
}

bool executable_with_interference(const DomainSpec& domain, const State& state, int action) {
    const auto& a = domain.action(action);
    return a.interferable && a.interference_precondition.eval(state);
}

// Grounds the KB. Each helper below corresponds to one family of axioms.
class DomainBuilder {
public:
    explicit DomainBuilder(DomainSpec& d) : d_(d) {}

    void entities(const std::vector<EntityDecl>& decls) {
        d_.parent_sort_ = {{"customer", "person"}, {"waitress", "person"}, {"cook", "person"},
                           {"people", "person"},   {"food", "thing"},      {"bill", "thing"},
                           {"menu", "thing"}};
        for (const auto& e : decls) {
            std::string sort = e.sort == "waiter" ? "waitress" : e.sort;
            if (d_.entity_sort_.count(e.name)) {
                if (e.name == "b" && sort == "bill") continue;
                throw DomainError("entity declared twice: " + e.name);
            }
            if (std::find(kLocations.begin(), kLocations.end(), e.name) != kLocations.end() || e.name == "m")
                throw DomainError("entity name is reserved: " + e.name);
            add_entity(e.name, sort);
        }
        if (d_.members("customer").empty()) throw DomainError("no customer declared");
        if (d_.members("restaurant").empty()) throw DomainError("no restaurant declared");
        if (d_.members("waitress").size() > 1)
            throw DomainError("more than one waiter per story is unsupported");
        if (d_.members("cook").size() > 1) throw DomainError("more than one cook per story is unsupported");
        for (const auto& l : kLocations) add_entity(l, "location");
        add_entity("m", "menu");
        // One bill symbol per customer: the first customer's is `b`.
        const auto customers = d_.members("customer");
        for (std::size_t i = 0; i < customers.size(); ++i) {
            std::string b = i == 0 ? "b" : "b_" + customers[i];
            if (!d_.entity_sort_.count(b)) add_entity(b, "bill");
            if (d_.entity_sort_.at(b) != "bill") throw DomainError("bill name clash: " + b);
            d_.bill_owner_[b] = customers[i];
            d_.customer_bill_[customers[i]] = b;
        }
    }

    void signature() {
        auto F = [&](std::string n, std::vector<std::string> s, bool inertial = true) {
            d_.fluent_symbols_.push_back({std::move(n), std::move(s), inertial});
        };
        F("open", {"restaurant"});
        F("available", {"food"});
        F("inside", {"person", "restaurant"});
        F("at", {"person", "location"});
        F("on", {"thing", "location"});
        F("holding", {"person", "thing"});
        F("seated", {"customer"});
        F("satiated", {"customer"});
        F("greeted", {"waitress", "customer"});
        F("informed", {"waitress", "food", "customer"});
        F("requested", {"cook", "food", "waitress"});
        F("bill_generated", {"bill", "customer"});
        F("paid", {"bill"});
        F("served", {"customer"});
        F("order_transmitted", {"customer"}, false);
        F("ready_to_eat", {"customer"}, false);
        F("done_with_payment", {"customer"}, false);
        F("satiated_and_out", {"customer"}, false);
        F("served_and_billed", {"customer"}, false);
        F("food_ready", {"food"}, false);

        auto A = [&](std::string n, std::vector<std::string> s, ActionKind k = ActionKind::physical) {
            d_.action_symbols_.push_back({std::move(n), std::move(s), k});
        };
        A("enter", {"customer", "restaurant"});
        A("leave", {"customer"});
        A("greet", {"waitress", "customer"});
        A("lead_to", {"waitress", "customer", "location"});
        A("sit", {"customer"});
        A("stand_up", {"customer"});
        A("move", {"person", "location", "location"});
        A("pick_up", {"person", "thing", "location"});
        A("put", {"person", "thing", "location"});
        A("order", {"customer", "food", "waitress"});
        A("request", {"waitress", "food", "cook"});
        A("request", {"customer", "bill", "waitress"});
        A("prepare", {"cook", "food", "waitress"});
        A("eat", {"customer", "food"});
        A("pay", {"person", "bill"});
        A("close", {"person", "restaurant"});
        A("interference", {}, ActionKind::exogenous);
        A("select", {"person", "goal"}, ActionKind::mental);
        A("abandon", {"person", "goal"}, ActionKind::mental);
        A("start", {"person", "activity"}, ActionKind::mental);
        A("stop", {"person", "activity"}, ActionKind::mental);
        A("replan", {"person", "goal"}, ActionKind::mental);
    }

    void axioms() {
        using K = Axiom::Kind;
        auto X = [&](K k, std::string h, std::vector<std::string> b) {
            d_.axioms_.push_back({k, std::move(h), std::move(b)});
        };
        X(K::dynamic_effect, "inside(C,R), at(C,entrance)", {"enter(C,R)"});
        X(K::executability, "impossible(enter(C,R))", {"-open(R) | inside(C,_)"});
        X(K::dynamic_effect, "-inside(C,R), -at(C,entrance)", {"leave(C)"});
        X(K::executability, "impossible(leave(C))", {"-at(C,entrance) | seated(C)"});
        X(K::dynamic_effect, "greeted(W,C)", {"greet(W,C)"});
        X(K::executability, "impossible(greet(W,C))", {"-at(C,entrance)"});
        X(K::dynamic_effect, "at(C,L), at(W,L)", {"lead_to(W,C,L)"});
        X(K::executability, "impossible(lead_to(W,C,L))", {"-greeted(W,C) | -at(C,entrance)"});
        X(K::dynamic_effect, "seated(C)", {"sit(C)"});
        X(K::executability, "impossible(sit(C))", {"-at(C,t) | seated(C)"});
        X(K::dynamic_effect, "-seated(C)", {"stand_up(C)"});
        X(K::dynamic_effect, "at(P,L2), -at(P,L1)", {"move(P,L1,L2)"});
        X(K::executability, "impossible(move(P,L1,L2))", {"-at(P,L1) | seated(P)"});
        X(K::executability, "impossible(move(W,L,kitchen))", {"waitress(W)", "-informed(W,_,_)"});
        X(K::executability, "impossible(move(W,L,counter))", {"waitress(W)", "-on(_,counter) for bills"});
        X(K::dynamic_effect, "holding(P,T), -on(T,L)", {"pick_up(P,T,L)", "-interference"});
        X(K::executability, "impossible(pick_up(P,T,L))", {"-at(P,L) | -on(T,L)"});
        X(K::dynamic_effect, "on(T,L), -holding(P,T)", {"put(P,T,L)"});
        X(K::executability, "impossible(put(P,T,L))", {"-holding(P,T)"});
        X(K::executability, "impossible(put(P,T,L))", {"-at(P,L)"});
        X(K::dynamic_effect, "served(C)", {"put(W,F,t)", "waitress(W)", "food(F)", "at(C,t)"});
        X(K::dynamic_effect, "informed(W,F,C)", {"order(C,F,W)", "-interference"});
        X(K::executability, "impossible(order(C,F,W))", {"-seated(C) | -at(W,t)"});
        X(K::dynamic_effect, "requested(Ck,F,W)", {"request(W,F,Ck)", "-interference"});
        X(K::executability, "impossible(request(W,F,Ck))", {"-at(W,kitchen) | -informed(W,F,_)"});
        X(K::dynamic_effect, "on(F,kitchen), -requested(Ck,F,W)", {"prepare(Ck,F,W)", "-interference"});
        X(K::executability, "impossible(prepare(Ck,F,W))", {"-requested(Ck,F,W) | -available(F) | -open(_)"});
        X(K::dynamic_effect, "bill_generated(B,C), on(B,counter)", {"request(C,B,W)"});
        X(K::executability, "impossible(request(C,B,W))", {"-seated(C) | -at(W,t) | paid(B)"});
        X(K::dynamic_effect, "satiated(C), -on(F,t)", {"eat(C,F)"});
        X(K::executability, "impossible(eat(C,F))", {"-seated(C) | -on(F,t)"});
        X(K::dynamic_effect, "paid(B)", {"pay(P,B)"});
        X(K::dynamic_effect, "bill_generated(B,C), on(B,counter)", {"pay(P,B)", "owner(B,C)", "-bill_generated(B,C)"});
        X(K::executability, "impossible(pay(P,B))", {"paid(B) | bill_generated(B,_) & -on(B,t)"});
        X(K::dynamic_effect, "-open(R)", {"close(P,R)"});
        X(K::nondet_effect, "1{informed(W,F1,C) : other_food(F1,F)}1", {"order(C,F,W)", "interference"});
        X(K::nondet_effect, "1{requested(Ck,F1,W) : other_food(F1,F)}1", {"request(W,F,Ck)", "interference"});
        X(K::nondet_effect, "1{on(F1,kitchen) : other_food(F1,F)}1", {"prepare(Ck,F,W)", "interference"});
        X(K::nondet_effect, "1{-on(T1,L) : same_sort(T1,T), on(T1,L)}1", {"pick_up(P,T,L)", "interference"});
        X(K::static_effect, "order_transmitted(C)", {"informed(_,_,C)"});
        X(K::static_effect, "ready_to_eat(C)", {"seated(C)", "order_transmitted(C)"});
        X(K::static_effect, "done_with_payment(C)", {"paid(B)", "owner(B,C)"});
        X(K::static_effect, "satiated_and_out(C)", {"satiated(C)", "-inside(C,_)"});
        X(K::static_effect, "served_and_billed(C)", {"served(C)", "on(_,t) for bills | done_with_payment(C)"});
        X(K::static_effect, "food_ready(F)", {"on(F,kitchen)"});
        X(K::default_value, "open(R)", {"not -open(R)"});
        X(K::default_value, "available(F)", {"not -available(F)"});
        X(K::default_value, "on(m,t)", {});
        X(K::default_value, "at(W,entrance), inside(W,R)", {"waitress(W)"});
        X(K::default_value, "at(Ck,kitchen), inside(Ck,R)", {"cook(Ck)"});
    }

    void fluents() {
        const auto& P = d_.members("person");
        const auto& R = d_.members("restaurant");
        const auto& C = d_.members("customer");
        const auto& F = d_.members("food");
        const auto& B = d_.members("bill");
        const auto& W = d_.members("waitress");
        const auto& CK = d_.members("cook");
        const auto& TH = d_.members("thing");
        for (const auto& r : R) inertial(T("open", r));
        for (const auto& f : F) inertial(T("available", f));
        for (const auto& p : P)
            for (const auto& r : R) inertial(T("inside", p, r));
        for (const auto& p : P)
            for (const auto& l : kLocations) inertial(T("at", p, l));
        for (const auto& x : TH)
            for (const auto& l : kLocations) inertial(T("on", x, l));
        for (const auto& p : P)
            for (const auto& x : TH) inertial(T("holding", p, x));
        for (const auto& c : C) {
            inertial(T("seated", c));
            inertial(T("satiated", c));
            inertial(T("served", c));
        }
        for (const auto& w : W)
            for (const auto& c : C) {
                inertial(T("greeted", w, c));
                for (const auto& f : F) inertial(T("informed", w, f, c));
            }
        for (const auto& ck : CK)
            for (const auto& f : F)
                for (const auto& w : W) inertial(T("requested", ck, f, w));
        for (const auto& b : B) {
            inertial(T("paid", b));
            for (const auto& c : C) inertial(T("bill_generated", b, c));
        }

        // Derived fluents, each defined only in terms of earlier ones.
        for (const auto& c : C) {
            std::vector<Formula> inf;
            for (const auto& w : W)
                for (const auto& f : F) inf.push_back(h(T("informed", w, f, c)));
            derived(T("order_transmitted", c), Formula::any(std::move(inf)));
            derived(T("ready_to_eat", c), Formula::all({h(T("seated", c)), h(T("order_transmitted", c))}));
            derived(T("done_with_payment", c), h(T("paid", d_.customer_bill_.at(c))));
            std::vector<Formula> out{h(T("satiated", c))};
            for (const auto& r : R) out.push_back(h(T("inside", c, r), false));
            derived(T("satiated_and_out", c), Formula::all(std::move(out)));
            std::vector<Formula> billed;
            for (const auto& b : B) billed.push_back(h(T("on", b, "t")));
            billed.push_back(h(T("done_with_payment", c)));
            derived(T("served_and_billed", c), Formula::all({h(T("served", c)), Formula::any(std::move(billed))}));
        }
        for (const auto& f : F) derived(T("food_ready", f), h(T("on", f, "kitchen")));
    }

    void defaults() {
        auto D = [&](const Term& t, bool v) { d_.defaults_.push_back({id(t), v}); };
        for (const auto& r : d_.members("restaurant")) D(T("open", r), true);
        for (const auto& f : d_.members("food")) D(T("available", f), true);
        D(T("on", "m", "t"), true);
        for (const auto& w : d_.members("waitress")) {
            D(T("at", w, "entrance"), true);
            for (const auto& r : d_.members("restaurant")) D(T("inside", w, r), true);
        }
        for (const auto& ck : d_.members("cook")) {
            D(T("at", ck, "kitchen"), true);
            for (const auto& r : d_.members("restaurant")) D(T("inside", ck, r), true);
        }
    }

    void actions() {
        const auto& P = d_.members("person");
        const auto& R = d_.members("restaurant");
        const auto& C = d_.members("customer");
        const auto& F = d_.members("food");
        const auto& B = d_.members("bill");
        const auto& W = d_.members("waitress");
        const auto& CK = d_.members("cook");
        const auto& TH = d_.members("thing");

        for (const auto& c : C) {
            std::vector<Formula> not_inside;
            for (const auto& r : R) not_inside.push_back(h(T("inside", c, r), false));
            for (const auto& r : R) {
                auto& a = act(T("enter", c, r), c);
                a.precondition = Formula::all({h(T("open", r)), Formula::all(not_inside)});
                eff(a, T("inside", c, r), true);
                set_location(a, c, "entrance");
            }
            std::vector<Formula> inside;
            for (const auto& r : R) inside.push_back(h(T("inside", c, r)));
            auto& leave = act(T("leave", c), c);
            leave.precondition = Formula::all(
                {Formula::any(inside), h(T("at", c, "entrance")), h(T("seated", c), false)});
            for (const auto& r : R) eff(leave, T("inside", c, r), false);
            for (const auto& l : kLocations) eff(leave, T("at", c, l), false);

            auto& sit = act(T("sit", c), c);
            sit.precondition = Formula::all({h(T("at", c, "t")), h(T("seated", c), false)});
            eff(sit, T("seated", c), true);

            auto& stand = act(T("stand_up", c), c);
            stand.precondition = h(T("seated", c));
            eff(stand, T("seated", c), false);

            for (const auto& f : F) {
                auto& eat = act(T("eat", c, f), c);
                eat.precondition = Formula::all({h(T("seated", c)), h(T("on", f, "t"))});
                eff(eat, T("satiated", c), true);
                eff(eat, T("on", f, "t"), false);
            }
        }

        for (const auto& w : W)
            for (const auto& c : C) {
                auto& greet = act(T("greet", w, c), w);
                greet.precondition = h(T("at", c, "entrance"));
                eff(greet, T("greeted", w, c), true);
                for (const auto& l : kLocations) {
                    if (l == "entrance") continue;
                    auto& lead = act(T("lead_to", w, c, l), w);
                    lead.precondition = Formula::all({h(T("greeted", w, c)), h(T("at", c, "entrance"))});
                    set_location(lead, c, l);
                    set_location(lead, w, l);
                }
                for (const auto& f : F) {
                    auto& order = act(T("order", c, f, w), c);
                    order.precondition = Formula::all({h(T("seated", c)), h(T("at", w, "t"))});
                    eff(order, T("informed", w, f, c), true);
                    order.interferable = true;
                    order.interference_precondition = order.precondition;
                    for (const auto& f1 : F)
                        if (f1 != f) order.interference_choice.push_back({Formula(), lit(T("informed", w, f1, c), true)});
                }
                for (const auto& b : B) {
                    auto& req = act(T("request", c, b, w), c);
                    req.precondition = Formula::all({h(T("seated", c)), h(T("at", w, "t")), h(T("paid", b), false),
                                                     h(T("bill_generated", b, c), false)});
                    eff(req, T("bill_generated", b, c), true);
                    eff(req, T("on", b, "counter"), true);
                }
            }

        for (const auto& w : W)
            for (const auto& ck : CK)
                for (const auto& f : F) {
                    std::vector<Formula> informed;
                    for (const auto& c : C) informed.push_back(h(T("informed", w, f, c)));
                    auto& req = act(T("request", w, f, ck), w);
                    req.precondition = Formula::all({h(T("at", w, "kitchen")), Formula::any(informed)});
                    eff(req, T("requested", ck, f, w), true);
                    req.interferable = true;
                    req.interference_precondition = req.precondition;
                    for (const auto& f1 : F)
                        if (f1 != f) req.interference_choice.push_back({Formula(), lit(T("requested", ck, f1, w), true)});

                    std::vector<Formula> open;
                    for (const auto& r : R) open.push_back(h(T("open", r)));
                    auto& prep = act(T("prepare", ck, f, w), ck);
                    prep.precondition = Formula::all({h(T("requested", ck, f, w)), h(T("available", f)),
                                                      h(T("at", ck, "kitchen")), Formula::any(open)});
                    eff(prep, T("on", f, "kitchen"), true);
                    eff(prep, T("requested", ck, f, w), false);
                    prep.interferable = true;
                    prep.interference_precondition = prep.precondition;
                    prep.interference_effects.push_back({Formula(), lit(T("requested", ck, f, w), false)});
                    for (const auto& f1 : F)
                        if (f1 != f)  // a wrong dish still has to be in stock
                            prep.interference_choice.push_back({h(T("available", f1)), lit(T("on", f1, "kitchen"), true)});
                }

        for (const auto& p : P) {
            bool is_waiter = d_.entity_sort_.at(p) == "waitress";
            bool is_customer = d_.entity_sort_.at(p) == "customer";
            for (const auto& l1 : kLocations)
                for (const auto& l2 : kLocations) {
                    if (l1 == l2) continue;
                    auto& mv = act(T("move", p, l1, l2), p);
                    std::vector<Formula> pre{h(T("at", p, l1))};
                    if (is_customer) pre.push_back(h(T("seated", p), false));
                    if (is_waiter && l2 == "kitchen") {
                        std::vector<Formula> inf;
                        for (const auto& f : F)
                            for (const auto& c : C) inf.push_back(h(T("informed", p, f, c)));
                        pre.push_back(Formula::any(inf));
                    }
                    if (is_waiter && l2 == "counter") {
                        std::vector<Formula> bills;
                        for (const auto& b : B) bills.push_back(h(T("on", b, "counter")));
                        pre.push_back(Formula::any(bills));
                    }
                    mv.precondition = Formula::all(std::move(pre));
                    eff(mv, T("at", p, l2), true);
                    eff(mv, T("at", p, l1), false);
                }
            for (const auto& x : TH)
                for (const auto& l : kLocations) {
                    auto& pick = act(T("pick_up", p, x, l), p);
                    pick.precondition = Formula::all(
                        {h(T("at", p, l)), h(T("on", x, l)), h(T("holding", p, x), false)});
                    eff(pick, T("holding", p, x), true);
                    eff(pick, T("on", x, l), false);
                    // Under interference the agent ends up holding x while some
                    // other item of the same sort disappears from l.
                    const std::string& xs = d_.entity_sort_.at(x);
                    std::vector<Formula> others;
                    for (const auto& y : d_.members(xs)) {
                        if (y == x) continue;
                        others.push_back(h(T("on", y, l)));
                        pick.interference_choice.push_back({h(T("on", y, l)), lit(T("on", y, l), false)});
                    }
                    if (!others.empty()) {
                        pick.interferable = true;
                        pick.interference_precondition = Formula::all(
                            {h(T("at", p, l)), h(T("holding", p, x), false), Formula::any(others)});
                        pick.interference_effects.push_back({Formula(), lit(T("holding", p, x), true)});
                    }

                    auto& put = act(T("put", p, x, l), p);
                    put.precondition = Formula::all({h(T("holding", p, x)), h(T("at", p, l))});
                    eff(put, T("on", x, l), true);
                    eff(put, T("holding", p, x), false);
                    if (is_waiter && l == "t" && d_.entity_sort_.at(x) == "food")
                        for (const auto& c : C)
                            put.effects.push_back({h(T("at", c, "t")), lit(T("served", c), true)});
                }
            for (const auto& b : B) {
                auto& pay = act(T("pay", p, b), p);
                std::vector<Formula> pre{h(T("paid", b), false)};
                for (const auto& c : C)
                    pre.push_back(Formula::any({h(T("bill_generated", b, c), false), h(T("on", b, "t"))}));
                pay.precondition = Formula::all(std::move(pre));
                eff(pay, T("paid", b), true);
                if (auto owner = d_.owner_of(b)) {
                    Formula fresh = h(T("bill_generated", b, *owner), false);
                    pay.effects.push_back({fresh, lit(T("bill_generated", b, *owner), true)});
                    pay.effects.push_back({fresh, lit(T("on", b, "counter"), true)});
                }
            }
            for (const auto& r : R) {
                auto& close = act(T("close", p, r), p);
                close.precondition = h(T("open", r));
                eff(close, T("open", r), false);
            }
        }

        auto& intf = act(T("interference"), "");
        intf.kind = ActionKind::exogenous;
        d_.interference_ = static_cast<int>(d_.actions_.size()) - 1;
    }

private:
    void add_entity(const std::string& name, const std::string& sort) {
        d_.entity_sort_[name] = sort;
        for (std::string s = sort;;) {
            d_.members_[s].push_back(name);
            auto it = d_.parent_sort_.find(s);
            if (it == d_.parent_sort_.end()) break;
            s = it->second;
        }
    }

    int id(const Term& t) const { return d_.fluent_id_or_throw(t); }
    Lit lit(const Term& t, bool v) const { return {id(t), v}; }
    Formula h(const Term& t, bool v = true) const { return Formula::atom(lit(t, v)); }

    void inertial(Term t) {
        d_.fluent_index_[t.str()] = static_cast<int>(d_.fluents_.size());
        d_.fluents_.push_back({std::move(t), true, {}});
    }

    void derived(Term t, Formula def) {
        int i = static_cast<int>(d_.fluents_.size());
        d_.fluent_index_[t.str()] = i;
        d_.fluents_.push_back({std::move(t), false, std::move(def)});
        d_.derived_.push_back(i);
    }

    GroundAction& act(Term t, const std::string& agent) {
        d_.action_index_[t.str()] = static_cast<int>(d_.actions_.size());
        GroundAction a;
        a.term = std::move(t);
        a.agent = agent;
        d_.actions_.push_back(std::move(a));
        return d_.actions_.back();
    }

    void eff(GroundAction& a, const Term& f, bool v) { a.effects.push_back({Formula(), lit(f, v)}); }

    // Moves the person to l, clearing every other location.
    void set_location(GroundAction& a, const std::string& p, const std::string& l) {
        for (const auto& other : kLocations) eff(a, T("at", p, other), other == l);
    }

    DomainSpec& d_;
};

DomainSpec build_restaurant_domain(const std::vector<EntityDecl>& entities) {
    DomainSpec d;
    DomainBuilder b(d);
    b.entities(entities);
    b.signature();
    b.axioms();
    b.fluents();
    b.defaults();
    b.actions();
    return d;
}

}  // namespace storymind
