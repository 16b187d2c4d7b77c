#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace storymind {

// A first-order term in fact syntax: `name` or `name(arg, ...)`.
// Identifiers starting with an uppercase letter or `_` are variables.
struct Term {
    std::string functor;
    std::vector<Term> args;

    Term() = default;
    Term(std::string f) : functor(std::move(f)) {}
    Term(std::string f, std::vector<Term> a) : functor(std::move(f)), args(std::move(a)) {}

    bool is_variable() const;
    bool is_ground() const;
    std::size_t arity() const { return args.size(); }
    std::string str() const;

    friend bool operator==(const Term&, const Term&) = default;
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Parses a single term; trailing garbage is an error.
Term parse_term(std::string_view text);

// Unifies a pattern (possibly with variables) against a ground term.
// Bindings are accumulated in `env` (variable name -> value); `_` never binds.
bool match(const Term& pattern, const Term& ground, std::vector<std::pair<std::string, Term>>& env);
bool matches(const Term& pattern, const Term& ground);

// Builds terms without going through the parser.
inline Term T(std::string f) { return Term(std::move(f)); }
template <class... A>
Term T(std::string f, A&&... a) {
    return Term(std::move(f), std::vector<Term>{Term(std::forward<A>(a))...});
}


struct Fact {
    Term term;
    int line = 0;
    int column = 0;
};

// Reads `term.` statements separated by whitespace; `%` starts a line comment.
std::vector<Fact> parse_facts(std::string_view text);

}  // namespace storymind
