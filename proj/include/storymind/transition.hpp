#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "storymind/domain_kb.hpp"
#include "storymind/state.hpp"
#include "storymind/term.hpp"

namespace storymind {

class TransitionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class MentalKind { select, abandon, start, stop, replan };

struct MentalAction {
    MentalKind kind;
    std::string agent;
    Term target;  // goal fluent or activity name

    // select(nicole, g), start(nicole, m), ...
    Term term() const;
    friend auto operator<=>(const MentalAction&, const MentalAction&) = default;
};

std::string to_string(MentalKind k);

// Everything that happens at one reasoning step.
struct Occurrence {
    std::vector<int> actions;  // ground domain actions, sorted, may include interference
    std::vector<MentalAction> mental;
    int step = 0;

    bool empty() const { return actions.empty() && mental.empty(); }
    bool has(int action) const;
    bool interference(const DomainSpec& d) const { return has(d.interference_id()); }
};

struct Violation {
    enum class Code { inexecutable, mental_and_physical, two_mental, unknown_action };
    Code code;
    std::string message;
};

// All successors; throws TransitionError if an action is inexecutable or the
// direct effects contradict each other.
std::vector<State> successor_states(const DomainSpec& domain, const State& state, const Occurrence& occ);

// Same as above but returns nothing instead of throwing.
std::vector<State> try_successor_states(const DomainSpec& domain, const State& state, const Occurrence& occ);

std::vector<Violation> check_occurrence(const DomainSpec& domain, const State& state, const Occurrence& occ);

bool project(const std::vector<State>& trajectory, int fluent, int step);
bool project(const DomainSpec& domain, const std::vector<State>& trajectory, const Term& fluent, int step);

}  // namespace storymind
