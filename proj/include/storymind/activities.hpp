#pragma once

#include <string>
#include <vector>

#include "storymind/domain_kb.hpp"
#include "storymind/intentions.hpp"
#include "storymind/logicform.hpp"

namespace storymind {

enum class CustomerStructure { s_flat, s1, s2 };

CustomerStructure parse_structure(const std::string& tag);  // "s-flat", "s1", "s2"
std::string to_string(CustomerStructure s);

struct WaiterParams {
    std::string waiter, customer, understood_food, served_food, bill;
    std::string cook = "ck";  // addressee of the kitchen request

    friend auto operator<=>(const WaiterParams&, const WaiterParams&) = default;
};

struct CookParams {
    std::string cook, food, waiter;

    friend auto operator<=>(const CookParams&, const CookParams&) = default;
};

// c_act(C,R,W,F) with goal satiated_and_out(C). `bill` defaults to `b`.
ActivityPtr customer_activity(const std::string& c, const std::string& r, const std::string& w,
                              const std::string& f, CustomerStructure structure, const std::string& bill = "b");

// w_seq(W,C,F1,F2,B): the waiter's eleven actions.
SequencePtr waiter_sequence(const WaiterParams& p);
// ck_seq(Ck,F,W) = [prepare(Ck,F,W)].
SequencePtr cook_sequence(const CookParams& p);

// Goal-driven wrappers used when staff follow the goal-driven theory too:
// w_act(W,C,F1,F2,B) with goal served_and_billed(C), ck_act(Ck,F,W) with goal food_ready(F).
ActivityPtr waiter_activity(const WaiterParams& p);
ActivityPtr cook_activity(const CookParams& p);

struct StaffCandidates {
    std::vector<WaiterParams> waiter;
    std::vector<CookParams> cook;
};

// F1 and F2 range over the story's foods and B over its bills; one waiter family per customer.
StaffCandidates candidate_staff_sequences(const Story& story);
StaffCandidates candidate_staff_sequences(const Story& story, const DomainSpec& domain);

// Flat activity of n always-executable customer actions (menu pick-ups and put-downs at the table).
ActivityPtr probe_activity(const std::string& c, int n);

}  // namespace storymind
