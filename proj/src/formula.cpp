#include "storymind/formula.hpp"

namespace storymind {

Formula Formula::falsity() {
    Formula f;
    f.kind_ = Kind::bottom;
    return f;
}

Formula Formula::atom(Lit l) {
    Formula f;
    f.kind_ = Kind::lit;
    f.lit_ = l;
    return f;
}

// Flattens trivial parts so grounded conditions stay small.
Formula Formula::all(std::vector<Formula> parts) {
    Formula f;
    f.kind_ = Kind::all;
    for (auto& p : parts) {
        if (p.kind_ == Kind::top) continue;
        if (p.kind_ == Kind::bottom) return falsity();
        if (p.kind_ == Kind::all) {
            for (auto& q : p.parts_) f.parts_.push_back(std::move(q));
        } else {
            f.parts_.push_back(std::move(p));
        }
    }
    if (f.parts_.empty()) return truth();
    if (f.parts_.size() == 1) return std::move(f.parts_[0]);
    return f;
}

Formula Formula::any(std::vector<Formula> parts) {
    Formula f;
    f.kind_ = Kind::any;
    for (auto& p : parts) {
        if (p.kind_ == Kind::bottom) continue;
        if (p.kind_ == Kind::top) return truth();
        if (p.kind_ == Kind::any) {
            for (auto& q : p.parts_) f.parts_.push_back(std::move(q));
        } else {
            f.parts_.push_back(std::move(p));
        }
    }
    if (f.parts_.empty()) return falsity();
    if (f.parts_.size() == 1) return std::move(f.parts_[0]);
    return f;
}

Formula Formula::negate() const {
    switch (kind_) {
        case Kind::top: return falsity();
        case Kind::bottom: return truth();
        case Kind::lit: return atom(lit_.negated());
        case Kind::all:
        case Kind::any: {
            std::vector<Formula> ps;
            ps.reserve(parts_.size());
            for (const auto& p : parts_) ps.push_back(p.negate());
            return kind_ == Kind::all ? any(std::move(ps)) : all(std::move(ps));
        }
    }
    return truth();
}

bool Formula::eval(const State& s) const {
    switch (kind_) {
        case Kind::top: return true;
        case Kind::bottom: return false;
        case Kind::lit: return s[lit_.fluent] == lit_.value;
        case Kind::all:
            for (const auto& p : parts_)
                if (!p.eval(s)) return false;
            return true;
        case Kind::any:
            for (const auto& p : parts_)
                if (p.eval(s)) return true;
            return false;
    }
    return false;
}

bool Formula::eval(const RelaxedSet& r) const {
    switch (kind_) {
        case Kind::top: return true;
        case Kind::bottom: return false;
        case Kind::lit: return r.has(lit_);
        case Kind::all:
            for (const auto& p : parts_)
                if (!p.eval(r)) return false;
            return true;
        case Kind::any:
            for (const auto& p : parts_)
                if (p.eval(r)) return true;
            return false;
    }
    return false;
}

void Formula::collect(std::vector<int>& fluents) const {
    if (kind_ == Kind::lit) fluents.push_back(lit_.fluent);
    for (const auto& p : parts_) p.collect(fluents);
}

}  // namespace storymind
