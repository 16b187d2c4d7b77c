#include "storymind/term.hpp"

#include <cctype>

namespace storymind {

bool Term::is_variable() const {
    if (!args.empty() || functor.empty()) return false;
    char c = functor.front();
    return c == '_' || std::isupper(static_cast<unsigned char>(c));
}

bool Term::is_ground() const {
    if (is_variable()) return false;
    for (const auto& a : args)
        if (!a.is_ground()) return false;
    return true;
}

std::string Term::str() const {
    if (args.empty()) return functor;
    std::string out = functor;
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i].str();
    }
    out += ')';
    return out;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (auto c = a.functor <=> b.functor; c != 0) return c;
    if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : s_(text) {}

    void skip_space() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '%') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool at_end() {
        skip_space();
        return pos_ >= s_.size();
    }

    char peek() {
        skip_space();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    Term term() {
        skip_space();
        int l = line_, c = col_;
        std::string name;
        while (pos_ < s_.size()) {
            char ch = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
                (ch == '-' && name.empty()))
                name += ch, advance();
            else
                break;
        }
        if (name.empty() || name == "-") throw ParseError("expected identifier", l, c);
        Term t(name);
        if (pos_ < s_.size() && s_[pos_] == '(') {
            advance();
            t.args.push_back(term());
            while (peek() == ',') {
                advance();
                t.args.push_back(term());
            }
            expect(')');
        }
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, line_, col_);
    }

    int line() const { return line_; }
    int column() const { return col_; }

private:
    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

Term parse_term(std::string_view text) {
    Reader r(text);
    Term t = r.term();
    if (!r.at_end()) r.fail("trailing characters after term");
    return t;
}

std::vector<Fact> parse_facts(std::string_view text) {
    Reader r(text);
    std::vector<Fact> out;
    while (!r.at_end()) {
        int l = r.line(), c = r.column();
        Term t = r.term();
        r.expect('.');
        out.push_back({std::move(t), l, c});
    }
    return out;
}

bool match(const Term& pattern, const Term& ground, std::vector<std::pair<std::string, Term>>& env) {
    if (pattern.is_variable()) {
        if (pattern.functor == "_") return true;
        for (const auto& [name, value] : env)
            if (name == pattern.functor) return value == ground;
        env.emplace_back(pattern.functor, ground);
        return true;
    }
    if (pattern.functor != ground.functor || pattern.args.size() != ground.args.size()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i)
        if (!match(pattern.args[i], ground.args[i], env)) return false;
    return true;
}

bool matches(const Term& pattern, const Term& ground) {
    std::vector<std::pair<std::string, Term>> env;
    return match(pattern, ground, env);
}

}  // namespace storymind
