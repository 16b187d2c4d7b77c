#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "storymind/formula.hpp"
#include "storymind/logicform.hpp"
#include "storymind/state.hpp"
#include "storymind/term.hpp"

namespace storymind {

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FluentSymbol {
    std::string name;
    std::vector<std::string> arg_sorts;
    bool inertial = true;
};

enum class ActionKind { physical, mental, exogenous };

struct ActionSymbol {
    std::string name;
    std::vector<std::string> arg_sorts;
    ActionKind kind = ActionKind::physical;
};

// Schema-level statement of one KB rule, kept for inspection and linting.
struct Axiom {
    enum class Kind { dynamic_effect, static_effect, executability, nondet_effect, default_value };
    Kind kind;
    std::string head;
    std::vector<std::string> body;
};

struct Effect {
    Formula condition;  // evaluated in the state before the step
    Lit lit;
};

struct GroundFluent {
    Term term;
    bool inertial = true;
    Formula definition;  // derived fluents only
};

struct GroundAction {
    Term term;
    std::string agent;  // empty for exogenous actions
    ActionKind kind = ActionKind::physical;
    Formula precondition;
    std::vector<Effect> effects;

    // Behaviour when `interference` happens at the same step.
    bool interferable = false;
    Formula interference_precondition;
    std::vector<Effect> interference_effects;
    std::vector<Effect> interference_choice;  // exactly one applicable alternative fires
};

class DomainSpec {
public:
    // Sorts and entities.
    std::optional<std::string> sort_of(std::string_view entity) const;
    bool is_subsort(const std::string& sub, const std::string& super) const;
    const std::vector<std::string>& members(const std::string& sort) const;
    bool other_food(const std::string& f1, const std::string& f) const;

    const std::vector<std::string>& customers() const { return members("customer"); }
    const std::vector<std::string>& foods() const { return members("food"); }
    const std::vector<std::string>& bills() const { return members("bill"); }
    const std::vector<std::string>& restaurants() const { return members("restaurant"); }
    const std::vector<std::string>& persons() const { return members("person"); }
    std::optional<std::string> waiter() const;
    std::optional<std::string> cook() const;
    std::string bill_of(const std::string& customer) const;
    std::optional<std::string> owner_of(const std::string& bill) const;

    // Signature.
    const std::vector<FluentSymbol>& fluent_symbols() const { return fluent_symbols_; }
    const std::vector<ActionSymbol>& action_symbols() const { return action_symbols_; }
    const std::vector<Axiom>& axioms() const { return axioms_; }

    // Grounding.
    int fluent_count() const { return static_cast<int>(fluents_.size()); }
    const GroundFluent& fluent(int id) const { return fluents_[id]; }
    std::optional<int> fluent_id(const Term& t) const;
    int fluent_id_or_throw(const Term& t) const;
    const std::vector<int>& derived_order() const { return derived_; }

    int action_count() const { return static_cast<int>(actions_.size()); }
    const GroundAction& action(int id) const { return actions_[id]; }
    std::optional<int> action_id(const Term& t) const;
    int interference_id() const { return interference_; }

    Formula holds(const Term& fluent, bool value = true) const;

    // Recomputes derived fluents in place.
    void close(State& s) const;
    State initial_state() const;

private:
    friend DomainSpec build_restaurant_domain(const std::vector<EntityDecl>&);
    friend class DomainBuilder;

    std::map<std::string, std::string> entity_sort_;
    std::map<std::string, std::vector<std::string>> members_;
    std::map<std::string, std::string> parent_sort_;
    std::map<std::string, std::string> bill_owner_;  // bill -> customer
    std::map<std::string, std::string> customer_bill_;

    std::vector<FluentSymbol> fluent_symbols_;
    std::vector<ActionSymbol> action_symbols_;
    std::vector<Axiom> axioms_;

    std::vector<GroundFluent> fluents_;
    std::unordered_map<std::string, int> fluent_index_;
    std::vector<int> derived_;
    std::vector<Lit> defaults_;

    std::vector<GroundAction> actions_;
    std::unordered_map<std::string, int> action_index_;
    int interference_ = -1;

    friend std::vector<Lit> initial_defaults(const DomainSpec&);
};

// Grounds the restaurant KB over the declared entities plus the fixed locations
// {entrance, t, kitchen, counter}, the menu m and the bill b.
DomainSpec build_restaurant_domain(const std::vector<EntityDecl>& entities);

// Initial literals over inertial fluents; everything unlisted starts false.
std::vector<Lit> initial_defaults(const DomainSpec& domain);

bool executable(const DomainSpec& domain, const State& state, int action);
bool executable(const DomainSpec& domain, const State& state, const Term& action);
bool executable_with_interference(const DomainSpec& domain, const State& state, int action);

}  // namespace storymind
