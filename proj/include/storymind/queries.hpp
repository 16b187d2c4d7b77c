#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "storymind/reasoner.hpp"

namespace storymind {

enum class QueryForm { yes_no, when, where, who, who_whom, what, goal, intended };

std::string to_string(QueryForm f);
const std::vector<QueryForm>& all_query_forms();

// The action may contain variables; it then stands for every matching ground action.
struct Query {
    QueryForm form = QueryForm::yes_no;
    Term action;
    std::optional<std::string> person;  // where, goal, intended
    std::optional<Term> fluent;         // what

    Term term() const;  // query_yes_no(A), query_where(P,A), ...
    std::string str() const { return term().str(); }
    friend bool operator==(const Query&, const Query&) = default;
};

// Parses the textual form, e.g. "query_yes_no(pay(nicole,b))". Throws ParseError.
Query parse_query(std::string_view text);

enum class Verdict { yes, no, unknown };
std::string to_string(Verdict v);

struct Answer {
    QueryForm form = QueryForm::yes_no;
    std::optional<Verdict> verdict;   // yes_no only
    std::vector<std::string> values;  // other forms; sorted, unique

    bool definite() const;  // yes/no, or exactly one value
    std::string str() const;
};

// Up to m queries per form over physical actions the story never mentions; at least n when
// that many exist. m < 0 means no upper bound.
std::vector<Query> generate_queries(const Story& story, const DomainSpec& domain, int n, int m);

Answer answer(const Query& q, const DomainSpec& domain, const std::vector<Model>& models);
inline Answer answer(const Query& q, const SolveResult& r) { return answer(q, *r.domain, r.models); }

}  // namespace storymind
