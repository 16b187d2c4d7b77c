#include "storymind/activities.hpp"

#include <stdexcept>

namespace storymind {

CustomerStructure parse_structure(const std::string& tag) {
    if (tag == "s-flat" || tag == "s_flat" || tag == "sflat") return CustomerStructure::s_flat;
    if (tag == "s1" || tag == "s-1") return CustomerStructure::s1;
    if (tag == "s2" || tag == "s-2") return CustomerStructure::s2;
    throw std::invalid_argument("unknown activity structure: " + tag);
}

std::string to_string(CustomerStructure s) {
    switch (s) {
        case CustomerStructure::s_flat: return "s-flat";
        case CustomerStructure::s1: return "s1";
        case CustomerStructure::s2: return "s2";
    }
    return "?";
}

namespace {

using AComp = std::variant<Term, ActivityPtr>;

ActivityPtr activity(Term name, Term goal, std::vector<AComp> comps) {
    auto a = std::make_shared<ActivitySpec>();
    a->name = std::move(name);
    a->goal = std::move(goal);
    a->components = std::move(comps);
    return a;
}

}  // namespace

ActivityPtr customer_activity(const std::string& c, const std::string& r, const std::string& w,
                              const std::string& f, CustomerStructure structure, const std::string& bill) {
    Term enter = T("enter", c, r), lead = T("lead_to", w, c, "t"), sit = T("sit", c);
    Term pick = T("pick_up", c, "m", "t"), put = T("put", c, "m", "t"), order = T("order", c, f, w);
    Term eat = T("eat", c, f), request = T("request", c, bill, w), pay = T("pay", c, bill);
    Term stand = T("stand_up", c), move = T("move", c, "t", "entrance"), leave = T("leave", c);
    Term name = T("c_act", c, r, w, f);
    Term goal = T("satiated_and_out", c);

    switch (structure) {
        case CustomerStructure::s_flat:
            return activity(name, goal, {enter, lead, sit, pick, put, order, eat, request, pay, stand, move, leave});
        case CustomerStructure::s1: {
            auto p = activity(T("c_subact_p", c, w), T("done_with_payment", c), {request, pay});
            return activity(name, goal, {enter, lead, sit, pick, put, order, eat, p, stand, move, leave});
        }
        case CustomerStructure::s2: {
            auto o = activity(T("c_subact_o", c, f, w), T("order_transmitted", c), {pick, put, order});
            auto rr = activity(T("c_subact_r", c, r, w, f), T("ready_to_eat", c), {enter, lead, sit, o});
            auto p = activity(T("c_subact_p", c, w), T("done_with_payment", c), {request, pay});
            return activity(name, goal, {rr, eat, p, stand, move, leave});
        }
    }
    throw std::invalid_argument("unknown activity structure");
}

namespace {

std::vector<Term> waiter_actions(const WaiterParams& p) {
    const auto& W = p.waiter;
    return {T("greet", W, p.customer),           T("lead_to", W, p.customer, "t"),
            T("move", W, "t", "kitchen"),        T("request", W, p.understood_food, p.cook),
            T("pick_up", W, p.served_food, "kitchen"), T("move", W, "kitchen", "t"),
            T("put", W, p.served_food, "t"),     T("move", W, "t", "counter"),
            T("pick_up", W, p.bill, "counter"),  T("move", W, "counter", "t"),
            T("put", W, p.bill, "t")};
}

}  // namespace

SequencePtr waiter_sequence(const WaiterParams& p) {
    auto s = std::make_shared<SequenceSpec>();
    s->name = T("w_seq", p.waiter, p.customer, p.understood_food, p.served_food, p.bill);
    for (auto& a : waiter_actions(p)) s->components.emplace_back(std::move(a));
    return s;
}

SequencePtr cook_sequence(const CookParams& p) {
    auto s = std::make_shared<SequenceSpec>();
    s->name = T("ck_seq", p.cook, p.food, p.waiter);
    s->components.emplace_back(T("prepare", p.cook, p.food, p.waiter));
    return s;
}

ActivityPtr waiter_activity(const WaiterParams& p) {
    std::vector<AComp> comps;
    for (auto& a : waiter_actions(p)) comps.emplace_back(std::move(a));
    return activity(T("w_act", p.waiter, p.customer, p.understood_food, p.served_food, p.bill),
                    T("served_and_billed", p.customer), std::move(comps));
}

ActivityPtr cook_activity(const CookParams& p) {
    return activity(T("ck_act", p.cook, p.food, p.waiter), T("food_ready", p.food),
                    {T("prepare", p.cook, p.food, p.waiter)});
}

StaffCandidates candidate_staff_sequences(const Story& story, const DomainSpec& domain) {
    StaffCandidates out;
    auto w = domain.waiter();
    auto ck = domain.cook();
    if (w) {
        for (const auto& c : domain.customers())
            for (const auto& f1 : domain.foods())
                for (const auto& f2 : domain.foods())
                    for (const auto& b : domain.bills())
                        out.waiter.push_back({*w, c, f1, f2, b, ck.value_or("ck")});
    }
    if (ck && w)
        for (const auto& f : domain.foods()) out.cook.push_back({*ck, f, *w});
    (void)story;
    return out;
}

StaffCandidates candidate_staff_sequences(const Story& story) {
    return candidate_staff_sequences(story, build_restaurant_domain(story.entities));
}

ActivityPtr probe_activity(const std::string& c, int n) {
    std::vector<AComp> comps;
    for (int i = 0; i < n; ++i)
        comps.emplace_back(i % 2 == 0 ? T("pick_up", c, "m", "t") : T("put", c, "m", "t"));
    return activity(T("probe", c, std::to_string(n)), T("probe_done", c), std::move(comps));
}

}  // namespace storymind
