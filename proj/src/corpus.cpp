#include "storymind/corpus.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

namespace storymind {

namespace pt = boost::property_tree;

const std::vector<std::string>& corpus_sources() {
    static const std::vector<std::string> s{"youtube", "google_books", "gutenberg", "mueller", "hand_crafted"};
    return s;
}

const std::vector<std::string>& scenario_types() {
    static const std::vector<std::string> s{"normal", "exception", "variation"};
    return s;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool truthy(const std::string& s) { return s == "true" || s == "yes" || s == "1"; }

}  // namespace

std::vector<CorpusEntry> parse_corpus(const std::string& xml) {
    if (trim(xml).empty()) return {};
    pt::ptree tree;
    try {
        std::istringstream in(xml);
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw CorpusError(std::string("malformed corpus XML: ") + e.what());
    }
    auto root = tree.get_child_optional("corpus");
    if (!root) throw CorpusError("corpus XML has no <corpus> root");

    std::vector<CorpusEntry> out;
    std::set<std::string> ids;
    std::map<std::string, std::string> forms;
    for (const auto& [tag, node] : *root) {
        if (tag != "story") continue;
        CorpusEntry e;
        e.id = node.get<std::string>("<xmlattr>.id", "");
        if (e.id.empty()) throw CorpusError("story without id");
        if (!ids.insert(e.id).second) throw CorpusError("duplicate story id: " + e.id);
        e.reconstructed = truthy(node.get<std::string>("<xmlattr>.reconstructed", "false"));
        e.limitation = node.get<std::string>("<xmlattr>.limitation", "");
        e.excerpt = trim(node.get<std::string>("excerpt", ""));
        e.source = trim(node.get<std::string>("source", ""));
        e.scenario_type = trim(node.get<std::string>("type", ""));
        e.scenario = trim(node.get<std::string>("scenario", e.scenario_type));
        e.logic_form = node.get<std::string>("logicform", "");
        const auto& srcs = corpus_sources();
        if (std::find(srcs.begin(), srcs.end(), e.source) == srcs.end())
            throw CorpusError(e.id + ": unknown source '" + e.source + "'");
        const auto& types = scenario_types();
        if (std::find(types.begin(), types.end(), e.scenario_type) == types.end())
            throw CorpusError(e.id + ": unknown scenario type '" + e.scenario_type + "'");
        try {
            e.story = parse_story(e.logic_form);
        } catch (const ParseError& err) {
            throw CorpusError(e.id + ": " + err.what());
        }
        e.story.id = e.id;
        auto diags = validate_story(e.story);
        if (!diags.empty()) throw CorpusError(e.id + ": " + diags.front().message);
        std::string form = renaming_invariant_form(e.story);
        auto [it, fresh] = forms.emplace(form, e.id);
        if (!fresh) throw CorpusError(e.id + ": same logic form as " + it->second);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open corpus " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str());
}

std::map<std::string, std::map<std::string, int>> distribution(const std::vector<CorpusEntry>& entries) {
    std::map<std::string, std::map<std::string, int>> d;
    for (const auto& s : corpus_sources())
        for (const auto& t : scenario_types()) d[s][t] = 0;
    for (const auto& e : entries) ++d[e.source][e.scenario_type];
    return d;
}

std::string renaming_invariant_form(const Story& story) {
    std::map<std::string, std::string> rename;
    std::map<std::string, int> per_sort;
    auto name_of = [&](const std::string& x) -> std::string {
        auto it = rename.find(x);
        if (it != rename.end()) return it->second;
        auto sort = story.sort_of(x);
        if (!sort) return x;  // constants of the domain (t, kitchen, b, ...)
        std::string n = *sort + "#" + std::to_string(per_sort[*sort]++);
        rename.emplace(x, n);
        return n;
    };
    std::function<Term(const Term&)> walk = [&](const Term& t) {
        Term r(t.args.empty() ? name_of(t.functor) : t.functor);
        for (const auto& a : t.args) r.args.push_back(walk(a));
        return r;
    };
    auto obs = story.observations;
    std::sort(obs.begin(), obs.end());
    std::ostringstream os;
    for (const auto& o : obs)
        os << (o.kind == ObsKind::action ? "hpd " : "obs ") << walk(o.subject).str() << ' ' << o.value << ' '
           << o.story_step << '\n';
    // entities never mentioned still shape the domain
    std::map<std::string, int> unmentioned;
    for (const auto& e : story.entities)
        if (!rename.count(e.name)) ++unmentioned[e.sort];
    for (const auto& [s, n] : unmentioned) os << "extra " << s << ' ' << n << '\n';
    return os.str();
}

std::string to_string(RunVerdict v) {
    switch (v) {
        case RunVerdict::models_found: return "models-found";
        case RunVerdict::no_models: return "no-models";
        case RunVerdict::timeout: return "timeout";
    }
    return "?";
}

RunResult run_entry(const CorpusEntry& entry, const Config& config) {
    RunResult r;
    r.id = entry.id;
    r.config = config;
    auto t0 = std::chrono::steady_clock::now();
    SolveResult s = solve(entry.story, config);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.model_count = s.models.size();
    for (const auto& m : s.models) r.max_step = std::max(r.max_step, m.max_step());
    if (!s.models.empty()) r.explanation_count = explain(s).size();
    r.verdict = s.timed_out && s.models.empty() ? RunVerdict::timeout
                : s.models.empty()              ? RunVerdict::no_models
                                                : RunVerdict::models_found;
    if (s.timed_out && !s.models.empty()) r.reason = "timed out; partial model set";
    if (s.models.empty()) r.reason = s.reason;
    return r;
}

std::vector<BenchRow> bench(const std::vector<CorpusEntry>& entries, const std::vector<BenchConfig>& configs,
                            int repetitions) {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
    std::vector<BenchRow> rows;
    for (const auto& e : entries) {
        double base = 0;
        for (std::size_t c = 0; c < configs.size(); ++c) {
            BenchRow row;
            row.scenario = e.scenario.empty() ? e.id : e.scenario;
            row.config = configs[c].label;
            double total = 0;
            RunResult last;
            for (int k = 0; k < repetitions; ++k) {
                last = run_entry(e, configs[c].config);
                total += last.seconds;
            }
            row.mean_seconds = total / repetitions;
            row.max_step = last.max_step;
            row.models = last.model_count;
            row.verdict = to_string(last.verdict);
            if (c == 0) base = row.mean_seconds;
            row.increase_percent = base > 0 ? 100.0 * (row.mean_seconds - base) / base : 0.0;
            rows.push_back(row);
        }
    }
    return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << "scenario,config,mean_seconds,max_step,models,verdict,increase_percent\n";
    for (const auto& r : rows)
        os << r.scenario << ',' << r.config << ',' << std::fixed << std::setprecision(6) << r.mean_seconds << ','
           << r.max_step << ',' << r.models << ',' << r.verdict << ',' << std::setprecision(2) << r.increase_percent
           << '\n';
}

}  // namespace storymind
