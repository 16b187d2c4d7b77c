#include "storymind/logicform.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "storymind/domain_kb.hpp"

namespace storymind {

Term Observation::fact() const {
    return Term(kind == ObsKind::action ? "st_hpd" : "st_obs",
                {subject, Term(value ? "true" : "false"), Term(std::to_string(story_step))});
}

bool operator<(const Observation& a, const Observation& b) {
    if (a.story_step != b.story_step) return a.story_step < b.story_step;
    if (a.kind != b.kind) return a.kind == ObsKind::fluent;
    if (a.subject != b.subject) return a.subject < b.subject;
    return a.value < b.value;
}

int Story::last_step() const {
    int m = -1;
    for (const auto& o : observations) m = std::max(m, o.story_step);
    return m;
}

int Story::step_count() const {
    std::set<int> s;
    for (const auto& o : observations) s.insert(o.story_step);
    return static_cast<int>(s.size());
}

std::vector<std::string> Story::of_sort(std::string_view sort) const {
    std::vector<std::string> out;
    for (const auto& e : entities)
        if (e.sort == sort) out.push_back(e.name);
    return out;
}

std::optional<std::string> Story::sort_of(std::string_view name) const {
    for (const auto& e : entities)
        if (e.name == name) return e.sort;
    return std::nullopt;
}

bool same_content(const Story& a, const Story& b) {
    std::set<EntityDecl> ea(a.entities.begin(), a.entities.end());
    std::set<EntityDecl> eb(b.entities.begin(), b.entities.end());
    if (ea != eb) return false;
    std::vector<Observation> oa = a.observations, ob = b.observations;
    std::sort(oa.begin(), oa.end());
    std::sort(ob.begin(), ob.end());
    oa.erase(std::unique(oa.begin(), oa.end()), oa.end());
    ob.erase(std::unique(ob.begin(), ob.end()), ob.end());
    return oa == ob;
}

std::string to_string(Diagnostic::Code c) {
    switch (c) {
        case Diagnostic::Code::syntax: return "syntax";
        case Diagnostic::Code::unknown_predicate: return "unknown-predicate";
        case Diagnostic::Code::unknown_sort: return "unknown-sort";
        case Diagnostic::Code::duplicate_entity: return "duplicate-entity";
        case Diagnostic::Code::non_ground: return "non-ground";
        case Diagnostic::Code::bad_value: return "bad-value";
        case Diagnostic::Code::bad_step: return "bad-step";
        case Diagnostic::Code::undeclared_entity: return "undeclared-entity";
        case Diagnostic::Code::unknown_symbol: return "unknown-symbol";
        case Diagnostic::Code::arity: return "arity";
        case Diagnostic::Code::sort_mismatch: return "sort-mismatch";
        case Diagnostic::Code::unsupported: return "unsupported";
    }
    return "?";
}

const std::vector<std::string>& declarable_sorts() {
    static const std::vector<std::string> sorts = {"customer", "restaurant", "food", "waitress",
                                                   "cook",     "people",     "bill"};
    return sorts;
}

namespace {

bool is_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + i, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Story parse_story(std::string_view source) {
    Story story;
    std::set<std::string> names;
    for (const auto& f : parse_facts(source)) {
        const Term& t = f.term;
        if (t.functor == "st_hpd" || t.functor == "st_obs") {
            if (t.arity() != 3) throw ParseError(t.functor + " expects 3 arguments", f.line, f.column);
            Observation o;
            o.kind = t.functor == "st_hpd" ? ObsKind::action : ObsKind::fluent;
            o.subject = t.args[0];
            if (!o.subject.is_ground())
                throw ParseError("observation term is not ground: " + o.subject.str(), f.line, f.column);
            const Term& v = t.args[1];
            if (v.str() != "true" && v.str() != "false")
                throw ParseError("value must be true or false, got " + v.str(), f.line, f.column);
            o.value = v.functor == "true";
            const Term& s = t.args[2];
            if (!s.args.empty() || !is_integer(s.functor))
                throw ParseError("story step must be an integer, got " + s.str(), f.line, f.column);
            o.story_step = std::stoi(s.functor);
            if (o.story_step < 0) throw ParseError("negative story step", f.line, f.column);
            story.observations.push_back(std::move(o));
            continue;
        }
        std::string sort = t.functor == "waiter" ? "waitress" : t.functor;
        const auto& sorts = declarable_sorts();
        if (std::find(sorts.begin(), sorts.end(), sort) == sorts.end())
            throw ParseError("unknown predicate or sort: " + t.functor, f.line, f.column);
        if (t.arity() != 1 || !t.args[0].args.empty() || !t.args[0].is_ground())
            throw ParseError("entity declaration expects one constant", f.line, f.column);
        const std::string& name = t.args[0].functor;
        if (!names.insert(name).second)
            throw ParseError("entity declared twice: " + name, f.line, f.column);
        story.entities.push_back({name, sort});
    }
    return story;
}

std::string serialize_story(const Story& story) {
    std::vector<EntityDecl> ents = story.entities;
    std::sort(ents.begin(), ents.end(), [](const EntityDecl& a, const EntityDecl& b) {
        return std::tie(a.sort, a.name) < std::tie(b.sort, b.name);
    });
    std::vector<Observation> obs = story.observations;
    std::sort(obs.begin(), obs.end());
    std::ostringstream out;
    for (const auto& e : ents) out << e.sort << '(' << e.name << ").\n";
    for (const auto& o : obs) out << o.fact().str() << ".\n";
    return out.str();
}

namespace {

void check_args(const Term& t, const std::vector<std::string>& arg_sorts, const DomainSpec& domain,
                std::vector<Diagnostic>& out) {
    for (std::size_t i = 0; i < arg_sorts.size(); ++i) {
        const Term& a = t.args[i];
        if (!a.args.empty()) {
            out.push_back({Diagnostic::Code::sort_mismatch,
                           t.str() + ": argument " + std::to_string(i + 1) + " is not a constant"});
            continue;
        }
        auto sort = domain.sort_of(a.functor);
        if (!sort) {
            out.push_back({Diagnostic::Code::undeclared_entity, t.str() + ": undeclared entity " + a.functor});
        } else if (!domain.is_subsort(*sort, arg_sorts[i])) {
            out.push_back({Diagnostic::Code::sort_mismatch, t.str() + ": argument " + std::to_string(i + 1) +
                                                                " has sort " + *sort + ", expected " +
                                                                arg_sorts[i]});
        }
    }
}

}  // namespace

std::vector<Diagnostic> validate_story(const Story& story, const DomainSpec& domain) {
    std::vector<Diagnostic> out;
    std::set<std::string> seen;
    for (const auto& e : story.entities) {
        if (!seen.insert(e.name).second)
            out.push_back({Diagnostic::Code::duplicate_entity, "entity declared twice: " + e.name});
        const auto& sorts = declarable_sorts();
        if (std::find(sorts.begin(), sorts.end(), e.sort) == sorts.end())
            out.push_back({Diagnostic::Code::unknown_sort, "unknown sort " + e.sort + " for " + e.name});
    }
    for (const auto& o : story.observations) {
        if (o.story_step < 0) out.push_back({Diagnostic::Code::bad_step, "negative story step"});
        if (!o.subject.is_ground()) {
            out.push_back({Diagnostic::Code::non_ground, o.subject.str() + " is not ground"});
            continue;
        }
        std::vector<const std::vector<std::string>*> candidates;
        bool name_known = false;
        bool mental = false;
        auto consider = [&](const auto& sym) {
            if (sym.name != o.subject.functor) return;
            name_known = true;
            if (sym.arg_sorts.size() == o.subject.arity()) candidates.push_back(&sym.arg_sorts);
        };
        if (o.kind == ObsKind::action) {
            for (const auto& sym : domain.action_symbols()) {
                if (sym.kind == ActionKind::mental && sym.name == o.subject.functor) mental = true;
                if (sym.kind != ActionKind::mental) consider(sym);
            }
        } else {
            for (const auto& sym : domain.fluent_symbols()) consider(sym);
        }
        if (mental) {
            out.push_back({Diagnostic::Code::unsupported, "mental actions cannot be observed: " + o.subject.str()});
            continue;
        }
        if (!name_known) {
            out.push_back({Diagnostic::Code::unknown_symbol,
                           std::string(o.kind == ObsKind::action ? "unknown action " : "unknown fluent ") +
                               o.subject.functor});
            continue;
        }
        if (candidates.empty()) {
            out.push_back({Diagnostic::Code::arity, o.subject.str() + ": wrong number of arguments"});
            continue;
        }
        // Overloaded symbols (request) are fine if any signature fits.
        std::vector<Diagnostic> best;
        bool ok = false;
        for (const auto* sig : candidates) {
            std::vector<Diagnostic> d;
            check_args(o.subject, *sig, domain, d);
            if (d.empty()) {
                ok = true;
                break;
            }
            if (best.empty() || d.size() < best.size()) best = std::move(d);
        }
        if (!ok) out.insert(out.end(), best.begin(), best.end());
    }
    return out;
}

std::vector<Diagnostic> validate_story(const Story& story) {
    if (story.entities.empty() && story.observations.empty()) return {};
    // the domain can't even be built with a name declared twice
    std::vector<Diagnostic> dups;
    std::set<std::string> seen;
    for (const auto& e : story.entities)
        if (!seen.insert(e.name).second)
            dups.push_back({Diagnostic::Code::duplicate_entity, "entity declared twice: " + e.name});
    if (!dups.empty()) return dups;
    try {
        DomainSpec domain = build_restaurant_domain(story.entities);
        return validate_story(story, domain);
    } catch (const DomainError& e) {
        return {{Diagnostic::Code::unsupported, e.what()}};
    }
}

}  // namespace storymind
