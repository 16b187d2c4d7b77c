#include <doctest.h>

#include <map>
#include <random>

#include "storymind/logicform.hpp"
#include "support/files.hpp"

using namespace storymind;

namespace {

bool has_code(const std::vector<Diagnostic>& ds, Diagnostic::Code c) {
    for (const auto& d : ds)
        if (d.code == c) return true;
    return false;
}

}  // namespace

TEST_CASE("terms parse, print and match") {
    Term t = parse_term("order(nicole, lentil_soup, waitress)");
    CHECK(t.functor == "order");
    CHECK(t.arity() == 3);
    CHECK(t.str() == "order(nicole,lentil_soup,waitress)");
    CHECK(t.is_ground());
    CHECK(parse_term("pay(X,b)").is_ground() == false);
    CHECK(matches(parse_term("pay(X,b)"), parse_term("pay(owner,b)")));
    CHECK_FALSE(matches(parse_term("pay(X,X)"), parse_term("pay(owner,b)")));
    CHECK(matches(parse_term("pay(_,_)"), parse_term("pay(owner,b)")));
    CHECK_THROWS_AS(parse_term("f(a"), ParseError);
    CHECK_THROWS_AS(parse_term("f(a) g"), ParseError);
}

TEST_CASE("a single entity and action parse") {
    Story s = parse_story("customer(nicole). st_hpd(enter(nicole,veg_r),true,0).");
    REQUIRE(s.entities.size() == 1);
    REQUIRE(s.observations.size() == 1);
    CHECK(s.observations[0].kind == ObsKind::action);
    CHECK(s.observations[0].story_step == 0);
    CHECK(s.observations[0].value);
}

TEST_CASE("empty text is an empty story") {
    Story s = parse_story("");
    CHECK(s.entities.empty());
    CHECK(s.observations.empty());
    CHECK(s.last_step() == -1);
    CHECK(serialize_story(s) == "");
}

TEST_CASE("the normal story has five entities and five actions") {
    Story s = testing::story_file("ex1");
    CHECK(s.entities.size() == 5);
    REQUIRE(s.observations.size() == 5);
    for (int k = 0; k < 5; ++k) CHECK(s.observations[k].story_step == k);
    CHECK(validate_story(s).empty());

    std::string text = serialize_story(s);
    int facts = 0;
    for (char c : text) facts += c == '.';
    CHECK(facts == 10);
    CHECK(text.find("st_hpd(enter(nicole,veg_r),true,0).") != std::string::npos);
}

TEST_CASE("parse errors carry a position") {
    try {
        parse_story("customer(nicole).\nst_hpd(enter(nicole,veg_r), true 0).");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_story("frobnicate(x)."), ParseError);
    CHECK_THROWS_AS(parse_story("customer(nicole). st_hpd(enter(X,veg_r),true,0)."), ParseError);
    CHECK_THROWS_AS(parse_story("customer(nicole). st_hpd(leave(nicole),maybe,0)."), ParseError);
}

TEST_CASE("validation reports sort mistakes and unknown names") {
    Story swapped = parse_story(
        "customer(nicole). restaurant(veg_r). food(lentil_soup). waitress(w). cook(k).\n"
        "st_hpd(eat(veg_r,nicole),true,0).");
    CHECK(has_code(validate_story(swapped), Diagnostic::Code::sort_mismatch));

    Story stranger = parse_story(
        "customer(nicole). restaurant(veg_r). food(lentil_soup). waitress(w). cook(k).\n"
        "st_hpd(enter(ghost,veg_r),true,0).");
    CHECK(has_code(validate_story(stranger), Diagnostic::Code::undeclared_entity));

    // duplicates are already caught while parsing
    CHECK_THROWS_AS(parse_story("customer(nicole). customer(nicole). waitress(w)."), ParseError);
    Story twice;
    twice.entities = {{"nicole", "customer"}, {"nicole", "customer"}};
    CHECK(has_code(validate_story(twice), Diagnostic::Code::duplicate_entity));

    Story two_waiters = parse_story("customer(c). restaurant(r). food(f). waitress(a). waitress(b). cook(k).");
    CHECK(has_code(validate_story(two_waiters), Diagnostic::Code::unsupported));
}

TEST_CASE("serialization is canonical") {
    Story a = parse_story("food(f). customer(c). st_hpd(sit(c),true,1). st_hpd(enter(c,r),true,0). restaurant(r).");
    Story b = parse_story("restaurant(r). customer(c). food(f). st_hpd(enter(c,r),true,0). st_hpd(sit(c),true,1).");
    CHECK(serialize_story(a) == serialize_story(b));
    CHECK(same_content(a, b));
}

// Logic-form round-trip over randomly generated stories.
TEST_CASE("property: logic-form round-trip") {
    std::mt19937 rng(7);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const std::vector<std::string> sorts{"customer", "restaurant", "food", "cook", "people", "bill"};
    for (int round = 0; round < 200; ++round) {
        Story s;
        std::map<std::string, std::vector<std::string>> by_sort;
        int n = pick(0, 8);
        for (int k = 0; k < n; ++k) {
            std::string sort = sorts[pick(0, static_cast<int>(sorts.size()) - 1)];
            std::string name = sort.substr(0, 2) + std::to_string(k);
            s.entities.push_back({name, sort});
            by_sort[sort].push_back(name);
        }
        if (pick(0, 1)) s.entities.push_back({"w", "waitress"}), by_sort["waitress"].push_back("w");
        auto any_of = [&](const std::string& sort) -> std::optional<std::string> {
            auto it = by_sort.find(sort);
            if (it == by_sort.end() || it->second.empty()) return std::nullopt;
            return it->second[pick(0, static_cast<int>(it->second.size()) - 1)];
        };
        int m = pick(0, 6);
        for (int k = 0; k < m; ++k) {
            Observation o;
            o.story_step = pick(0, 5);
            o.value = pick(0, 3) != 0;
            auto c = any_of("customer");
            auto r = any_of("restaurant");
            auto f = any_of("food");
            if (c && r && pick(0, 1)) {
                o.kind = ObsKind::action;
                o.subject = T("enter", *c, *r);
            } else if (c && f) {
                o.kind = pick(0, 1) ? ObsKind::action : ObsKind::fluent;
                o.subject = o.kind == ObsKind::action ? T("eat", *c, *f) : T("satiated", *c);
            } else if (r) {
                o.kind = ObsKind::fluent;
                o.subject = T("open", *r);
            } else {
                continue;
            }
            if (std::find(s.observations.begin(), s.observations.end(), o) == s.observations.end())
                s.observations.push_back(o);
        }
        std::string text = serialize_story(s);
        CAPTURE(text);
        Story back = parse_story(text);
        CHECK(same_content(back, s));
        CHECK(serialize_story(back) == text);
    }
}

TEST_CASE("every bundled story validates cleanly") {
    for (const char* name : {"ex1", "ex2", "ex3", "ex4", "ex5", "futile", "wrong_bill"}) {
        CAPTURE(name);
        CHECK(validate_story(testing::story_file(name)).empty());
    }
}
