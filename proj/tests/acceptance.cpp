// One line per acceptance criterion. Exit status is non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/brute_force.hpp"
#include "storymind/corpus.hpp"
#include "storymind/queries.hpp"
#include "support/files.hpp"
#include "support/micro_stories.hpp"

using namespace storymind;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failed sub-checks for one criterion.
struct Check {
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void note(const std::string& s) { notes.push_back(s); }
};

bool report(const std::string& id, const std::string& title, const std::function<void(Check&)>& body) {
    Check c;
    auto t0 = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    bool pass = c.failures.empty();
    std::ostringstream line;
    line << id << ": " << (pass ? "PASS" : "FAIL") << "  " << title;
    line.precision(2);
    line << std::fixed << " [" << seconds_since(t0) << "s]";
    for (const auto& n : c.notes) line << "\n      " << n;
    for (const auto& f : c.failures) line << "\n      failed: " << f;
    std::cout << line.str() << std::endl;
    return pass;
}

Config with(TiMode mode, CustomerStructure st = CustomerStructure::s2) {
    Config c;
    c.ti_mode = mode;
    c.customer_structure = st;
    return c;
}

bool has_mental(const Model& m, MentalKind k, const Term& target, int step) {
    if (step < 0 || step >= m.horizon()) return false;
    for (const auto& x : m.occurrences[step].mental)
        if (x.kind == k && x.target == target) return true;
    return false;
}

int max_step(const SolveResult& r) {
    int best = -1;
    for (const auto& m : r.models) best = std::max(best, m.max_step());
    return best;
}

std::string str(int v) { return std::to_string(v); }

void ac1(Check& c) {
    auto t0 = Clock::now();
    SolveResult r = solve(testing::story_file("ex1"), with(TiMode::mixed));
    double took = seconds_since(t0);
    c.expect(r.models.size() == 1, "expected one model, got " + str(static_cast<int>(r.models.size())));
    if (r.models.empty()) return;
    const Model& m = r.models[0];
    Term c_act = T("c_act", "nicole", "veg_r", "waitress", "lentil_soup");
    Term sub_r = T("c_subact_r", "nicole", "veg_r", "waitress", "lentil_soup");
    Term sub_o = T("c_subact_o", "nicole", "lentil_soup", "waitress");
    Term sub_p = T("c_subact_p", "nicole", "waitress");
    struct Want {
        MentalKind k;
        Term t;
        int step;
    };
    for (const auto& w : {Want{MentalKind::select, T("satiated_and_out", "nicole"), 0}, Want{MentalKind::start, c_act, 1},
                          Want{MentalKind::start, sub_r, 2}, Want{MentalKind::start, sub_o, 7},
                          Want{MentalKind::stop, sub_r, 11}, Want{MentalKind::start, sub_p, 18},
                          Want{MentalKind::stop, sub_p, 25}, Want{MentalKind::stop, c_act, 29}})
        c.expect(has_mental(m, w.k, w.t, w.step), MentalAction{w.k, "nicole", w.t}.term().str() + "@" + str(w.step));
    // nothing else on nicole's mind
    int mental = 0;
    for (const auto& o : m.occurrences)
        for (const auto& x : o.mental) mental += x.agent == "nicole";
    c.expect(mental == 8, "nicole has " + str(mental) + " mental actions, expected 8");
    auto w = m.intended_from(T("w_seq", "waitress", "nicole", "lentil_soup", "lentil_soup", "b"));
    auto k = m.intended_from(T("ck_seq", "cook1", "lentil_soup", "waitress"));
    c.expect(w == 4, "waitress intends from " + (w ? str(*w) : std::string("never")));
    c.expect(k == 13, "cook intends from " + (k ? str(*k) : std::string("never")));
    c.expect(took < 10, "took " + std::to_string(took) + "s");
}

void ac2(Check& c) {
    SolveResult r = solve(testing::story_file("ex2"), with(TiMode::mixed));
    c.expect(!r.models.empty(), "no models");
    const DomainSpec& d = *r.domain;
    Term sub_p = T("c_subact_p", "nicole", "waitress");
    Term c_act = T("c_act", "nicole", "veg_r", "waitress", "lentil_soup");
    for (std::size_t i = 0; i < r.models.size(); ++i) {
        const Model& m = r.models[i];
        std::string at = "model " + str(static_cast<int>(i)) + ": ";
        c.expect(has_mental(m, MentalKind::start, sub_p, 18), at + "start c_subact_p@18");
        c.expect(has_mental(m, MentalKind::stop, sub_p, 19), at + "stop c_subact_p@19");
        c.expect(has_mental(m, MentalKind::stop, c_act, 23), at + "stop c_act@23");
        c.expect(m.steps_of(d, T("pay", "nicole", "b")).empty(), at + "pay(nicole,b) occurs");
    }
    Answer pay = answer(parse_query("query_yes_no(pay(nicole,b))"), r);
    Answer leave = answer(parse_query("query_yes_no(leave(nicole))"), r);
    c.expect(pay.str() == "no", "paying answered " + pay.str());
    c.expect(leave.str() == "yes", "leaving answered " + leave.str());
    c.note(str(static_cast<int>(r.models.size())) + " models; pay -> " + pay.str() + ", leave -> " + leave.str());
}

void ac3(Check& c) {
    SolveResult r = solve(testing::story_file("ex3"), with(TiMode::mixed));
    auto ex = explain(r);
    // (waiter sequence, cook sequence, interfered action)
    using Key = std::tuple<std::string, std::string, std::string>;
    std::set<Key> want{
        {"w_seq(waitress,nicole,lentil_soup,miso_soup,b)", "ck_seq(cook1,miso_soup,waitress)", "request"},
        {"w_seq(waitress,nicole,lentil_soup,miso_soup,b)", "ck_seq(cook1,lentil_soup,waitress)", "prepare"},
        {"w_seq(waitress,nicole,miso_soup,miso_soup,b)", "ck_seq(cook1,miso_soup,waitress)", "order"},
        {"w_seq(waitress,nicole,lentil_soup,miso_soup,b)", "ck_seq(cook1,lentil_soup,waitress)", "pick_up"},
    };
    std::set<Key> got;
    for (const auto& e : ex) {
        if (e.waiter.size() != 1 || e.cook.size() != 1 || e.interferences.size() != 1 ||
            e.interferences[0].second.size() != 1) {
            c.expect(false, "explanation with an unexpected shape: " + e.label);
            continue;
        }
        got.insert({e.waiter_term(0).str(), e.cook_term(0).str(), e.interferences[0].second[0].functor});
    }
    c.expect(ex.size() == 4, str(static_cast<int>(ex.size())) + " explanation classes");
    c.expect(got == want, "class set differs");

    bool witness = false;
    for (const auto& e : ex) {
        if (e.waiter.size() != 1 || e.waiter_term(0).str() != "w_seq(waitress,nicole,miso_soup,miso_soup,b)") continue;
        witness = true;
        c.expect(e.interferences.size() == 1 && e.interferences[0].first == 10 &&
                     e.interferences[0].second == std::vector<Term>{T("order", "nicole", "lentil_soup", "waitress")},
                 "misheard-order interference is not with the order at 10");
        for (auto idx : e.models) {
            const Model& m = r.models[idx];
            c.expect(m.intended_from(e.waiter_term(0)) == 4, "w_seq not intended from 4");
            c.expect(m.intended_from(e.cook_term(0)) == 13, "ck_seq not intended from 13");
        }
    }
    c.expect(witness, "no misheard-order class");
}

void ac4(Check& c) {
    Story ex4 = testing::story_file("ex4");
    SolveResult mixed = solve(ex4, with(TiMode::mixed));
    SolveResult fresh = solve(ex4, with(TiMode::new_only));
    c.expect(!mixed.models.empty() && !fresh.models.empty(), "waiter-serendipity story has no models");
    std::vector<Term> bill{T("move", "waitress", "t", "counter"), T("pick_up", "waitress", "b", "counter"),
                           T("move", "waitress", "counter", "t"), T("put", "waitress", "b", "t")};
    for (const auto& m : fresh.models)
        for (const auto& a : bill) c.expect(m.steps_of(*fresh.domain, a).empty(), "new-only model has " + a.str());
    for (const auto& m : mixed.models)
        for (const auto& a : bill) c.expect(!m.steps_of(*mixed.domain, a).empty(), "mixed model lacks " + a.str());

    Story ex5 = testing::story_file("ex5");
    SolveResult m5 = solve(ex5, with(TiMode::mixed));
    SolveResult f5 = solve(ex5, with(TiMode::new_only));
    c.expect(!m5.models.empty(), "two customers: mixed found no model");
    c.expect(f5.models.empty(), "two customers: new-only found models");
    c.note("two customers: mixed " + str(static_cast<int>(m5.models.size())) + " models, new-only 0 (" + f5.reason +
           ")");
}

void ac5(Check& c) {
    for (int n : {1, 3, 12}) {
        int fresh = probe_span(n, true), old = probe_span(n, false);
        c.expect(fresh == n + 2, "n=" + str(n) + ": goal-driven span " + str(fresh));
        c.expect(old == n, "n=" + str(n) + ": sequence span " + str(old));
        c.note("n=" + str(n) + ": goal-driven " + str(fresh) + ", sequence " + str(old));
    }
}

// Mean wall time of `reps` interleaved runs per config.
std::vector<double> mean_times(const Story& s, const std::vector<Config>& configs, int reps) {
    std::vector<double> total(configs.size(), 0);
    for (int k = 0; k < reps; ++k)
        for (std::size_t i = 0; i < configs.size(); ++i) {
            auto t0 = Clock::now();
            solve(s, configs[i]);
            total[i] += seconds_since(t0);
        }
    for (auto& t : total) t /= reps;
    return total;
}

void ac6(Check& c) {
    struct Row {
        const char* label;
        const char* file;
        int mixed, fresh;
    };
    const int reps = 20;
    for (Row row : {Row{"normal", "ex1", 29, 33}, Row{"serendipity", "ex2", 23, 27}, Row{"futile", "futile", 8, 9},
                    Row{"wrong dish", "ex3", 16, 20}, Row{"wrong bill", "wrong_bill", 23, 28}}) {
        Story s = testing::story_file(row.file);
        int mm = max_step(solve(s, with(TiMode::mixed)));
        int mf = max_step(solve(s, with(TiMode::new_only)));
        auto t = mean_times(s, {with(TiMode::mixed), with(TiMode::new_only)}, reps);
        std::ostringstream n;
        n.precision(2);
        n << std::fixed << row.label << ": max step " << mm << "/" << mf << " (want " << row.mixed << "/" << row.fresh
          << "), time " << t[0] * 1000 << "ms/" << t[1] * 1000 << "ms";
        c.note(n.str());
        c.expect(mm == row.mixed, std::string(row.label) + ": mixed max step " + str(mm));
        c.expect(mf == row.fresh, std::string(row.label) + ": new-only max step " + str(mf));
        c.expect(t[0] <= t[1], std::string(row.label) + ": mixed slower than new-only");
    }
    Story ex1 = testing::story_file("ex1");
    auto t = mean_times(ex1,
                        {with(TiMode::mixed, CustomerStructure::s_flat), with(TiMode::mixed, CustomerStructure::s1),
                         with(TiMode::mixed, CustomerStructure::s2)},
                        reps);
    std::ostringstream n;
    n.precision(2);
    n << std::fixed << "structures on normal: s-flat " << t[0] * 1000 << "ms, s1 " << t[1] * 1000 << "ms, s2 "
      << t[2] * 1000 << "ms";
    c.note(n.str());
    c.expect(t[0] <= t[1] && t[1] <= t[2], "structure times not ordered s-flat <= s1 <= s2");
}

void ac7(Check& c) {
    std::mt19937 rng(20240611);
    int with_models = 0, agree = 0;
    for (int k = 0; k < 50; ++k) {
        auto theme = k % 5 == 4 ? testing::Theme::diagnosis : testing::Theme::any;
        auto mc = testing::random_micro(rng, 3, 8, theme);
        auto expected = oracle::enumerate_models(mc.story, mc.config);
        Config par = mc.config;
        par.threads = 2;
        bool same = oracle::keys_of(solve_serial(mc.story, mc.config)) == expected &&
                    oracle::keys_of(solve(mc.story, par)) == expected;
        agree += same;
        with_models += !expected.empty();
        c.expect(same, "case " + str(k) + " differs:\n" + mc.text);
    }
    c.note(str(agree) + "/50 agree; " + str(with_models) + " have models");
}

// Runs one group of property test cases from the unit-test binary.
void run_suite(Check& c, const std::string& name, const std::string& filter) {
    std::string cmd = std::string("\"") + STORYMIND_UNIT_TESTS + "\" --no-colors=true -tc=\"" + filter + "\" 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        c.expect(false, name + ": cannot start the unit-test binary");
        return;
    }
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, p)) out.append(buf, got);
    int status = pclose(p);
    auto at = out.find("test cases:");
    int ran = 0;
    if (at != std::string::npos) ran = std::atoi(out.c_str() + at + 11);
    c.expect(status == 0 && ran > 0, name + " (" + str(ran) + " cases ran, exit " + str(status) + ")");
    c.note(name + ": " + str(ran) + " case(s) " + (status == 0 ? "passed" : "FAILED"));
}

void ac8(Check& c) {
    run_suite(c, "inertia", "property: inertia*");
    run_suite(c, "non-procrastination", "property: non-procrastination*");
    run_suite(c, "persistence", "property: persistence*");
    run_suite(c, "gap-freeness", "property: gap-freeness*");
    run_suite(c, "strict-monotone mapping", "property: strict-monotone mapping*");
    run_suite(c, "abductive minimality", "property: abductive minimality*");
    run_suite(c, "query cautious-monotonicity", "property: query cautious-monotonicity*");
    run_suite(c, "logic-form round-trip", "property: logic-form round-trip*");
}

void ac9(Check& c) {
    auto entries = load_corpus(testing::repo_path("data/corpus/restaurant.xml"));
    std::map<std::string, int> by_type;
    for (const auto& e : entries) ++by_type[e.scenario_type];
    c.expect(entries.size() == 40, str(static_cast<int>(entries.size())) + " entries");
    c.expect(by_type["normal"] == 13 && by_type["exception"] == 22 && by_type["variation"] == 5,
             "type counts " + str(by_type["normal"]) + "/" + str(by_type["exception"]) + "/" +
                 str(by_type["variation"]));
    Config cfg;
    cfg.timeout_seconds = 60;
    double slowest = 0;
    std::string slowest_id;
    int solved = 0;
    for (const auto& e : entries) {
        RunResult r = run_entry(e, cfg);
        if (r.seconds > slowest) slowest = r.seconds, slowest_id = e.id;
        bool ok = r.verdict == RunVerdict::models_found && r.seconds < 60;
        solved += ok;
        c.expect(ok, e.id + ": " + to_string(r.verdict) + " after " + std::to_string(r.seconds) + "s " + r.reason);
    }
    std::ostringstream n;
    n.precision(2);
    n << std::fixed << solved << "/" << entries.size() << " solved under defaults; slowest " << slowest_id << " "
      << slowest << "s";
    c.note(n.str());
}

}  // namespace

int main() {
    bool all = true;
    all &= report("AC1", "golden normal scenario schedule", ac1);
    all &= report("AC2", "free meal: no payment, customer leaves", ac2);
    all &= report("AC3", "wrong dish: four explanation classes", ac3);
    all &= report("AC4", "configuration coverage (waiter serendipity, two customers)", ac4);
    all &= report("AC5", "activity span law n+2 vs n", ac5);
    all &= report("AC6", "performance direction and max steps", ac6);
    all &= report("AC7", "oracle equivalence on 50 micro-stories", ac7);
    all &= report("AC8", "property suites", ac8);
    all &= report("AC9", "corpus shape and solvability", ac9);
    return all ? 0 : 1;
}
