#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "storymind/activities.hpp"
#include "storymind/domain_kb.hpp"
#include "storymind/intentions.hpp"
#include "storymind/logicform.hpp"
#include "storymind/transition.hpp"

namespace storymind {

enum class TiMode {
    mixed,     // customers goal-driven, staff follow intended sequences
    new_only,  // every agent goal-driven
};

TiMode parse_ti_mode(const std::string& tag);  // "mixed", "new-only"
std::string to_string(TiMode m);

struct Config {
    TiMode ti_mode = TiMode::mixed;
    CustomerStructure customer_structure = CustomerStructure::s2;
    int max_steps = 0;  // 0: derived from the story
    int max_interferences = 2;
    int threads = 1;             // >1 explores root branches with OpenMP
    double timeout_seconds = 0;  // 0: none
};

// story step -> reasoning step
using TimelineMapping = std::map<int, int>;

struct AgentSnapshot {
    std::vector<std::pair<Term, int>> sequences;  // intended sequence, progress index
    std::optional<Term> goal;
    std::vector<std::pair<Term, int>> activities;  // in-progress chain with status
};

using IntentSnapshot = std::map<std::string, AgentSnapshot>;

struct Model {
    TimelineMapping mapping;
    std::vector<State> trajectory;         // states 0..H
    std::vector<Occurrence> occurrences;   // steps 0..H-1
    std::vector<IntentSnapshot> intent_history;  // 0..H
    std::vector<int> abduced;              // steps with interference
    std::vector<Lit> initial_flips;        // defaults overridden at step 0
    int unintended = 0;                    // observed actions their actor did not intend then

    int horizon() const { return static_cast<int>(occurrences.size()); }
    // Last step with any occurrence, -1 if none.
    int max_step() const;
    bool occurs(const DomainSpec& d, const Term& action, int step) const;
    std::vector<int> steps_of(const DomainSpec& d, const Term& action) const;
    // First step at which `name` is an intended sequence or in-progress activity of someone.
    std::optional<int> intended_from(const Term& name) const;
};

struct SolveResult {
    std::shared_ptr<const DomainSpec> domain;
    std::vector<Model> models;
    int horizon = 0;
    bool timed_out = false;
    std::string reason;  // hint when there are no models
    long nodes = 0;      // search nodes expanded
};

int default_max_steps(const Story& story, const Config& config);

SolveResult solve(const Story& story, const Config& config);
// Plain depth-first search on one thread; the parallel path must agree with it.
SolveResult solve_serial(const Story& story, const Config& config);

std::vector<TimelineMapping> enumerate_mappings(const Story& story, int max_steps);

struct Explanation {
    std::vector<WaiterParams> waiter;
    std::vector<CookParams> cook;
    std::vector<std::pair<int, std::vector<Term>>> interferences;  // step, interfered actions
    std::string label;
    std::vector<std::size_t> models;  // indices into the model list

    Term waiter_term(std::size_t i) const;
    Term cook_term(std::size_t i) const;
};

std::vector<Explanation> explain(const SolveResult& result);

// Canonical text of a model, used for ordering and de-duplication.
std::string canonical_key(const DomainSpec& d, const Model& m);

// Span (first to last reasoning step with an occurrence) of running a single
// activity for customer `c`, seated at the table, under either theory.
int probe_span(int n, bool goal_driven);

}  // namespace storymind
