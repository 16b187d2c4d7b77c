// Command-line front end: solve stories, ask questions, run the corpus.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "storymind/corpus.hpp"
#include "storymind/json_io.hpp"
#include "storymind/queries.hpp"
#include "storymind/reasoner.hpp"

using namespace storymind;

namespace {

enum Exit { ok = 0, usage = 1, no_models = 2, timeout = 3 };

struct SolveFlags {
    std::string ti = "mixed";
    std::string structure = "s2";
    int max_steps = 0;
    int max_interferences = 2;
    int threads = 1;
    double timeout = 0;

    void attach(CLI::App* app) {
        app->add_option("--ti", ti, "theory configuration: mixed or new-only")->capture_default_str();
        app->add_option("--structure", structure, "customer activity: s-flat, s1 or s2")->capture_default_str();
        app->add_option("--max-steps", max_steps, "reasoning horizon (0 derives it from the story)");
        app->add_option("--max-interferences", max_interferences)->capture_default_str();
        app->add_option("--threads", threads, "search threads")->capture_default_str();
        app->add_option("--timeout", timeout, "seconds, 0 for none");
    }

    Config config() const {
        Config c;
        c.ti_mode = parse_ti_mode(ti);
        c.customer_structure = parse_structure(structure);
        c.max_steps = max_steps;
        c.max_interferences = max_interferences;
        c.threads = threads;
        c.timeout_seconds = timeout;
        return c;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Story load_story(const std::string& path) {
    Story s = parse_story(slurp(path));
    auto diags = validate_story(s);
    if (!diags.empty()) {
        std::ostringstream msg;
        for (const auto& d : diags) msg << path << ":" << d.line << ": " << d.message << "\n";
        throw std::runtime_error(msg.str());
    }
    return s;
}

int solve_exit(const SolveResult& r) {
    if (r.models.empty()) return r.timed_out ? timeout : no_models;
    return ok;
}

void emit(const nlohmann::json& j, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << j.dump(2) << "\n";
    }
}

std::string default_corpus() {
    if (const char* env = std::getenv("STORYMIND_CORPUS")) return env;
    return "data/corpus/restaurant.xml";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"storymind: reads restaurant stories by modelling their characters as intentional agents"};
    app.require_subcommand(1);

    SolveFlags sf;
    std::string story_path, json_out;

    auto* solve_cmd = app.add_subcommand("solve", "enumerate the mental models of a story");
    solve_cmd->add_option("--story", story_path, "logic form file")->required();
    solve_cmd->add_option("--json", json_out, "write JSON here instead of standard output");
    sf.attach(solve_cmd);

    std::vector<std::string> queries;
    bool ask_json = false;
    auto* ask_cmd = app.add_subcommand("ask", "answer questions cautiously over all models");
    ask_cmd->add_option("--story", story_path)->required();
    ask_cmd->add_option("--query", queries, "e.g. query_yes_no(pay(nicole,b))")->required();
    ask_cmd->add_flag("--json", ask_json, "print JSON records");
    sf.attach(ask_cmd);

    int qn = 1, qm = 1;
    bool gen_answer = false;
    auto* gen_cmd = app.add_subcommand("gen-questions", "generate questions about unmentioned actions");
    gen_cmd->add_option("--story", story_path)->required();
    gen_cmd->add_option("--n", qn, "minimum per form")->capture_default_str();
    gen_cmd->add_option("--m", qm, "maximum per form, negative for all")->capture_default_str();
    gen_cmd->add_flag("--answer", gen_answer, "also answer them");
    sf.attach(gen_cmd);

    std::string corpus_path = default_corpus(), csv_out;
    int reps = 10;
    std::vector<std::string> scenarios, bench_modes{"mixed", "new-only"}, structures;
    auto* bench_cmd = app.add_subcommand("bench", "time configurations over corpus entries");
    bench_cmd->add_option("--corpus", corpus_path)->capture_default_str();
    bench_cmd->add_option("--reps", reps)->capture_default_str();
    bench_cmd->add_option("--csv", csv_out, "CSV output file");
    bench_cmd->add_option("--scenario", scenarios, "only entries of these scenario classes");
    bench_cmd->add_option("--modes", bench_modes, "theory configurations to compare");
    bench_cmd->add_option("--structures", structures, "compare customer structures instead (mixed mode)");
    bench_cmd->add_option("--timeout", sf.timeout, "seconds per run");

    bool corpus_json = false;
    auto* run_cmd = app.add_subcommand("corpus-run", "solve every corpus entry");
    run_cmd->add_option("--corpus", corpus_path)->capture_default_str();
    run_cmd->add_flag("--json", corpus_json);
    sf.attach(run_cmd);

    std::string lint_corpus;
    auto* validate_cmd = app.add_subcommand("validate", "lint a story or a corpus file");
    auto* vs = validate_cmd->add_option("--story", story_path);
    auto* vc = validate_cmd->add_option("--corpus", lint_corpus);
    vs->excludes(vc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }

    try {
        if (*solve_cmd) {
            SolveResult r = solve(load_story(story_path), sf.config());
            emit(result_to_json(r), json_out);
            if (!json_out.empty() && json_out != "-")
                std::cerr << r.models.size() << " model(s)" << (r.reason.empty() ? "" : ": " + r.reason) << "\n";
            return solve_exit(r);
        }
        if (*ask_cmd) {
            SolveResult r = solve(load_story(story_path), sf.config());
            if (r.models.empty()) {
                std::cerr << "no models: " << r.reason << "\n";
                return solve_exit(r);
            }
            nlohmann::json all = nlohmann::json::array();
            for (const auto& text : queries) {
                Query q = parse_query(text);
                Answer a = answer(q, r);
                if (ask_json)
                    all.push_back(query_to_json(q, a));
                else
                    std::cout << a.str() << "\n";
            }
            if (ask_json) std::cout << all.dump(2) << "\n";
            return ok;
        }
        if (*gen_cmd) {
            Story s = load_story(story_path);
            auto domain = build_restaurant_domain(s.entities);
            auto qs = generate_queries(s, domain, qn, qm);
            if (!gen_answer) {
                for (const auto& q : qs) std::cout << q.str() << "\n";
                return ok;
            }
            SolveResult r = solve(s, sf.config());
            if (r.models.empty()) return solve_exit(r);
            for (const auto& q : qs) std::cout << q.str() << " -> " << answer(q, r).str() << "\n";
            return ok;
        }
        if (*bench_cmd) {
            auto entries = load_corpus(corpus_path);
            if (!scenarios.empty())
                std::erase_if(entries, [&](const CorpusEntry& e) {
                    return std::find(scenarios.begin(), scenarios.end(), e.scenario) == scenarios.end();
                });
            std::vector<BenchConfig> configs;
            if (!structures.empty()) {
                for (const auto& st : structures) {
                    Config c;
                    c.customer_structure = parse_structure(st);
                    c.timeout_seconds = sf.timeout;
                    configs.push_back({"mixed/" + to_string(c.customer_structure), c});
                }
            } else {
                for (const auto& m : bench_modes) {
                    Config c;
                    c.ti_mode = parse_ti_mode(m);
                    c.timeout_seconds = sf.timeout;
                    configs.push_back({to_string(c.ti_mode), c});
                }
            }
            auto rows = bench(entries, configs, reps);
            if (!csv_out.empty()) {
                std::ofstream f(csv_out);
                write_bench_csv(f, rows);
            }
            write_bench_csv(std::cout, rows);
            return ok;
        }
        if (*run_cmd) {
            auto entries = load_corpus(corpus_path);
            Config cfg = sf.config();
            bool all_good = true;
            nlohmann::json out = nlohmann::json::array();
            for (const auto& e : entries) {
                RunResult r = run_entry(e, cfg);
                bool expected_empty = !e.limitation.empty() && e.limitation == to_string(cfg.ti_mode);
                bool good = expected_empty ? r.verdict == RunVerdict::no_models : r.verdict == RunVerdict::models_found;
                all_good &= good;
                if (corpus_json) {
                    out.push_back({{"id", e.id}, {"verdict", to_string(r.verdict)}, {"models", r.model_count},
                                   {"explanations", r.explanation_count}, {"max_step", r.max_step},
                                   {"seconds", r.seconds}, {"expected", good}});
                } else {
                    std::cout << e.id << " " << to_string(r.verdict) << " models=" << r.model_count
                              << " max_step=" << r.max_step << " time=" << r.seconds << "s"
                              << (good ? "" : "  UNEXPECTED") << (r.reason.empty() ? "" : "  (" + r.reason + ")")
                              << "\n";
                }
            }
            if (corpus_json) std::cout << out.dump(2) << "\n";
            return all_good ? ok : no_models;
        }
        if (*validate_cmd) {
            if (!lint_corpus.empty()) {
                auto entries = load_corpus(lint_corpus);
                std::cout << entries.size() << " entries\n";
                for (const auto& [src, types] : distribution(entries)) {
                    std::cout << src;
                    for (const auto& [t, n] : types) std::cout << " " << t << "=" << n;
                    std::cout << "\n";
                }
                return ok;
            }
            if (story_path.empty()) {
                std::cerr << "validate needs --story or --corpus\n";
                return usage;
            }
            Story s = parse_story(slurp(story_path));
            auto diags = validate_story(s);
            for (const auto& d : diags) std::cout << story_path << ":" << d.line << ": " << d.message << "\n";
            if (diags.empty()) std::cout << "ok\n";
            return diags.empty() ? ok : usage;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return usage;
    }
    return usage;
}
