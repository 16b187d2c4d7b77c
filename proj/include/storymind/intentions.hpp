#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "storymind/domain_kb.hpp"
#include "storymind/state.hpp"
#include "storymind/term.hpp"
#include "storymind/transition.hpp"

namespace storymind {

struct SequenceSpec;
struct ActivitySpec;
using SequencePtr = std::shared_ptr<const SequenceSpec>;
using ActivityPtr = std::shared_ptr<const ActivitySpec>;

struct SequenceSpec {
    Term name;
    std::vector<std::variant<Term, SequencePtr>> components;

    std::size_t length() const { return components.size(); }
    std::vector<Term> flatten() const;
};

struct ActivitySpec {
    Term name;
    Term goal;
    std::vector<std::variant<Term, ActivityPtr>> components;

    std::size_t length() const { return components.size(); }
    std::vector<Term> flatten() const;
    // This activity plus all nested ones.
    int activity_count() const;
    int depth() const;
};

// ---- Simple theory: intended sequences executed as soon as possible. ----

struct SequenceProgress {
    SequencePtr sequence;
    std::shared_ptr<const std::vector<Term>> flat;  // shared: search nodes copy progress a lot
    std::size_t index = 0;                          // next unexecuted position
    int since = 0;                                  // step the intention was adopted

    bool done() const { return index >= flat->size(); }
    const Term& next() const { return (*flat)[index]; }
};

struct SimpleIntentState {
    std::map<std::string, std::vector<SequenceProgress>> agents;

    void adopt(const std::string& agent, SequencePtr seq, int step);
    bool intends(const std::string& agent, const Term& name) const;
    // Names of unfinished sequences.
    std::vector<Term> active(const std::string& agent) const;
};

// Next action of every unfinished sequence whose action is executable now.
// With `interference` set, interferable actions count as executable when their
// interference precondition holds.
std::vector<Term> simple_next(const DomainSpec& domain, const State& state, const SimpleIntentState& sis,
                              const std::string& agent, bool interference = false);

// Pending next actions regardless of executability.
std::vector<Term> simple_pending(const SimpleIntentState& sis, const std::string& agent);

SimpleIntentState simple_advance(const SimpleIntentState& sis, const DomainSpec& domain, const Occurrence& occ);

// ---- Goal-driven theory: activities with goals and mental actions. ----

struct Frame {
    ActivityPtr activity;
    int k = 0;  // current component
};

struct AgentMind {
    enum class Phase { idle, selected, running, stalled, replanned };

    std::optional<Term> goal;  // the single active top-level goal
    std::vector<Frame> stack;  // in-progress chain, outermost first
    Phase phase = Phase::idle;

    // -1 unless the activity is in progress; then its current component.
    int status(const Term& activity) const;
    std::vector<Term> in_progress() const;
};

struct GoalIntentState {
    std::map<std::string, AgentMind> agents;
};

enum class GoalStatus { in_progress, achieved, futile };

// Delete-relaxed reachability of goals; results are memoised per state.
class FutilityChecker {
public:
    explicit FutilityChecker(const DomainSpec& domain) : domain_(domain) {}

    // The activity can no longer reach its goal: the agent may only use actions
    // of the activity's own plan, every other agent may do anything.
    bool activity_futile(const State& state, const std::string& agent, const ActivitySpec& activity);
    // No agent behaviour at all can reach the goal.
    bool goal_hopeless(const State& state, const Term& goal);

private:
    bool reachable(const State& state, int goal, const std::vector<char>& allowed);

    const DomainSpec& domain_;
    std::unordered_map<std::string, std::vector<char>> allowed_cache_;
    std::unordered_map<std::string, bool> result_cache_;
};

struct Decision {
    enum class Kind { none, mental, physical, wait, start_needed };
    Kind kind = Kind::none;
    std::optional<MentalAction> mental;
    std::optional<Term> physical;
};

Decision decide(const DomainSpec& domain, const State& state, const std::string& agent, const AgentMind& mind,
                FutilityChecker& futility);

// The next intended action (mental or physical) of the agent, if any.
std::optional<Term> goal_next_action(const DomainSpec& domain, const State& state, const std::string& agent,
                                     const AgentMind& mind, FutilityChecker& futility);

GoalStatus classify_goal(const DomainSpec& domain, const State& state, const std::string& agent,
                         const AgentMind& mind, FutilityChecker& futility);

class IntentionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Applies the agent's part of `occ` (taken at a step whose state is `state`).
// `chosen` supplies the activity for a top-level start. Throws IntentionError when
// the occurrence is inconsistent with the agent's mental state.
AgentMind goal_advance(const AgentMind& mind, const DomainSpec& domain, const State& state,
                       const std::string& agent, const Occurrence& occ, ActivityPtr chosen = nullptr);

}  // namespace storymind
