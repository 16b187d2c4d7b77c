#include "storymind/queries.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

namespace storymind {

namespace {

const std::vector<std::pair<QueryForm, std::string>>& form_names() {
    static const std::vector<std::pair<QueryForm, std::string>> names{
        {QueryForm::yes_no, "yes_no"}, {QueryForm::when, "when"},         {QueryForm::where, "where"},
        {QueryForm::who, "who"},       {QueryForm::who_whom, "who_whom"}, {QueryForm::what, "what"},
        {QueryForm::goal, "goal"},     {QueryForm::intended, "intended"},
    };
    return names;
}

bool takes_person(QueryForm f) {
    return f == QueryForm::where || f == QueryForm::goal || f == QueryForm::intended;
}

}  // namespace

std::string to_string(QueryForm f) {
    for (const auto& [k, n] : form_names())
        if (k == f) return n;
    return "?";
}

const std::vector<QueryForm>& all_query_forms() {
    static const std::vector<QueryForm> forms = [] {
        std::vector<QueryForm> v;
        for (const auto& [k, n] : form_names()) v.push_back(k);
        return v;
    }();
    return forms;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::unknown: return "unknown";
    }
    return "?";
}

Term Query::term() const {
    Term t("query_" + to_string(form));
    if (takes_person(form)) t.args.push_back(Term(person.value_or("_")));
    if (form == QueryForm::what) t.args.push_back(fluent.value_or(Term("_")));
    t.args.push_back(action);
    return t;
}

Query parse_query(std::string_view text) {
    Term t = parse_term(text);
    const std::string prefix = "query_";
    if (t.functor.rfind(prefix, 0) != 0) throw ParseError("not a query: " + t.functor, 1, 1);
    std::string name = t.functor.substr(prefix.size());
    Query q;
    bool known = false;
    for (const auto& [k, n] : form_names())
        if (n == name) {
            q.form = k;
            known = true;
        }
    if (!known) throw ParseError("unknown query form: " + name, 1, 1);
    std::size_t want = (takes_person(q.form) || q.form == QueryForm::what) ? 2 : 1;
    if (t.arity() != want)
        throw ParseError("query_" + name + " takes " + std::to_string(want) + " argument(s)", 1, 1);
    if (takes_person(q.form)) {
        if (t.args[0].arity() != 0) throw ParseError("expected a person", 1, 1);
        q.person = t.args[0].functor;
    }
    if (q.form == QueryForm::what) q.fluent = t.args[0];
    q.action = t.args.back();
    return q;
}

bool Answer::definite() const {
    if (verdict) return *verdict != Verdict::unknown;
    return values.size() == 1;
}

std::string Answer::str() const {
    if (verdict) return to_string(*verdict);
    if (values.empty()) return "unknown";
    std::string out;
    for (const auto& v : values) out += (out.empty() ? "" : " | ") + v;
    return out;
}

std::vector<Query> generate_queries(const Story& story, const DomainSpec& domain, int n, int m) {
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    std::size_t limit = m < 0 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(m);
    if (m >= 0 && n > m) throw std::invalid_argument("n must not exceed m");

    std::set<Term> explicit_actions;
    for (const auto& o : story.observations)
        if (o.kind == ObsKind::action) explicit_actions.insert(o.subject);

    std::vector<int> actions;
    for (int a = 0; a < domain.action_count(); ++a) {
        const auto& act = domain.action(a);
        if (act.kind == ActionKind::physical && !explicit_actions.count(act.term)) actions.push_back(a);
    }
    std::sort(actions.begin(), actions.end(),
              [&](int x, int y) { return domain.action(x).term < domain.action(y).term; });

    std::vector<Query> out;
    for (QueryForm form : all_query_forms()) {
        std::size_t made = 0;
        for (int a : actions) {
            if (made >= limit) break;
            const auto& act = domain.action(a);
            Query q;
            q.form = form;
            q.action = act.term;
            if (takes_person(form)) q.person = act.agent;
            if (form == QueryForm::what) {
                // the agent's location, the most common thing a reader is asked about
                q.fluent = T("at", act.agent, "L");
            }
            out.push_back(std::move(q));
            ++made;
        }
    }
    return out;
}

namespace {

// Steps at which a matching action occurs, with the matched ground term.
std::vector<std::pair<int, int>> hits(const Query& q, const DomainSpec& d, const Model& m) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < m.horizon(); ++i)
        for (int a : m.occurrences[i].actions) {
            const auto& act = d.action(a);
            if (act.kind == ActionKind::physical && matches(q.action, act.term)) out.emplace_back(i, a);
        }
    return out;
}

std::string whom_of(const DomainSpec& d, const GroundAction& act) {
    for (std::size_t k = 0; k < act.term.args.size(); ++k) {
        const std::string& x = act.term.args[k].functor;
        if (x == act.agent) continue;
        auto s = d.sort_of(x);
        if (s && d.is_subsort(*s, "person")) return x;
    }
    return "";
}

}  // namespace

Answer answer(const Query& q, const DomainSpec& d, const std::vector<Model>& models) {
    if (models.empty()) throw std::invalid_argument("cannot answer without models");
    if (takes_person(q.form) && !q.person) throw std::invalid_argument("query needs a person");
    if (q.form == QueryForm::what && !q.fluent) throw std::invalid_argument("query needs a fluent");

    Answer ans;
    ans.form = q.form;
    if (q.form == QueryForm::yes_no) {
        std::size_t with = 0;
        for (const auto& m : models) with += !hits(q, d, m).empty();
        ans.verdict = with == models.size() ? Verdict::yes : with == 0 ? Verdict::no : Verdict::unknown;
        return ans;
    }

    std::set<std::string> values;
    for (const auto& m : models) {
        for (const auto& [i, a] : hits(q, d, m)) {
            const auto& act = d.action(a);
            const State& s = m.trajectory[i];
            switch (q.form) {
                case QueryForm::when: {
                    std::string v = std::to_string(i);
                    for (const auto& [ss, ri] : m.mapping)
                        if (ri == i) v += "/s" + std::to_string(ss);
                    values.insert(v);
                    break;
                }
                case QueryForm::where: {
                    bool placed = false;
                    for (int f = 0; f < d.fluent_count(); ++f) {
                        const auto& t = d.fluent(f).term;
                        if (t.functor == "at" && t.args[0].functor == *q.person && s[f]) {
                            values.insert(t.args[1].functor);
                            placed = true;
                        }
                    }
                    if (!placed) values.insert("outside");
                    break;
                }
                case QueryForm::who: values.insert(act.agent); break;
                case QueryForm::who_whom: {
                    std::string w = whom_of(d, act);
                    values.insert(w.empty() ? act.agent : act.agent + "->" + w);
                    break;
                }
                case QueryForm::what: {
                    if (q.fluent->is_ground()) {
                        auto f = d.fluent_id(*q.fluent);
                        if (!f) throw std::invalid_argument("unknown fluent " + q.fluent->str());
                        values.insert(s[*f] ? "true" : "false");
                    } else {
                        bool any = false;
                        for (int f = 0; f < d.fluent_count(); ++f)
                            if (s[f] && matches(*q.fluent, d.fluent(f).term)) {
                                values.insert(d.fluent(f).term.str());
                                any = true;
                            }
                        if (!any) values.insert("none");
                    }
                    break;
                }
                case QueryForm::goal: {
                    const auto& snap = m.intent_history[i];
                    auto it = snap.find(*q.person);
                    values.insert(it != snap.end() && it->second.goal ? it->second.goal->str() : "none");
                    break;
                }
                case QueryForm::intended: {
                    const auto& snap = m.intent_history[i];
                    auto it = snap.find(*q.person);
                    bool any = false;
                    if (it != snap.end()) {
                        for (const auto& [t, k] : it->second.activities) {
                            values.insert(t.str());
                            any = true;
                        }
                        for (const auto& [t, k] : it->second.sequences) {
                            values.insert(t.str());
                            any = true;
                        }
                    }
                    if (!any) values.insert("none");
                    break;
                }
                case QueryForm::yes_no: break;
            }
        }
    }
    ans.values.assign(values.begin(), values.end());
    return ans;
}

}  // namespace storymind
