#pragma once

#include <vector>

#include "storymind/state.hpp"

namespace storymind {

struct Lit {
    int fluent = -1;
    bool value = true;

    Lit negated() const { return {fluent, !value}; }
    friend auto operator<=>(const Lit&, const Lit&) = default;
};

// Literals reachable in a delete-relaxed exploration; both polarities may be reachable.
struct RelaxedSet {
    State pos;
    State neg;

    explicit RelaxedSet(std::size_t n = 0) : pos(n), neg(n) {}
    bool has(Lit l) const { return l.value ? pos[l.fluent] : neg[l.fluent]; }
    bool add(Lit l) {
        if (has(l)) return false;
        (l.value ? pos : neg).set(l.fluent, true);
        return true;
    }
};

// Negation-normal-form condition over fluent literals.
class Formula {
public:
    enum class Kind { top, bottom, lit, all, any };

    Formula() = default;  // true
    static Formula truth() { return Formula(); }
    static Formula falsity();
    static Formula atom(Lit l);
    static Formula all(std::vector<Formula> parts);
    static Formula any(std::vector<Formula> parts);

    Kind kind() const { return kind_; }
    Lit lit() const { return lit_; }
    const std::vector<Formula>& parts() const { return parts_; }

    Formula negate() const;
    bool eval(const State& s) const;
    bool eval(const RelaxedSet& r) const;
    void collect(std::vector<int>& fluents) const;

private:
    Kind kind_ = Kind::top;
    Lit lit_{};
    std::vector<Formula> parts_;
};

}  // namespace storymind
