#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "storymind/term.hpp"

namespace storymind {

class DomainSpec;

struct EntityDecl {
    std::string name;
    std::string sort;

    friend auto operator<=>(const EntityDecl&, const EntityDecl&) = default;
};

enum class ObsKind { fluent, action };

// st_obs(F, V, S) or st_hpd(A, V, S).
struct Observation {
    ObsKind kind = ObsKind::action;
    Term subject;
    bool value = true;
    int story_step = 0;

    Term fact() const;
    friend bool operator==(const Observation&, const Observation&) = default;
};

bool operator<(const Observation& a, const Observation& b);

struct Story {
    std::vector<EntityDecl> entities;
    std::vector<Observation> observations;
    std::optional<std::string> id;

    // Highest story step carrying any observation, or -1 when there is none.
    int last_step() const;
    // Number of distinct story steps that carry observations.
    int step_count() const;
    std::vector<std::string> of_sort(std::string_view sort) const;
    std::optional<std::string> sort_of(std::string_view name) const;
};

// Set equality on entities and observations; order and id are ignored.
bool same_content(const Story& a, const Story& b);

struct Diagnostic {
    enum class Code { syntax, unknown_predicate, unknown_sort, duplicate_entity, non_ground,
                      bad_value, bad_step, undeclared_entity, unknown_symbol, arity, sort_mismatch,
                      unsupported };
    Code code;
    std::string message;
    int line = 0;
};

std::string to_string(Diagnostic::Code c);

// The sorts accepted in entity declarations; `waiter` is read as `waitress`.
const std::vector<std::string>& declarable_sorts();

// Throws ParseError on syntax errors, unknown predicates or sorts, non-ground
// observation terms, and malformed values or steps.
Story parse_story(std::string_view source);

// Canonical text: entities by (sort, name), then observations by (step, kind, term).
std::string serialize_story(const Story& story);

std::vector<Diagnostic> validate_story(const Story& story, const DomainSpec& domain);
// Builds the restaurant domain from the story's own entities and validates against it.
std::vector<Diagnostic> validate_story(const Story& story);

}  // namespace storymind
