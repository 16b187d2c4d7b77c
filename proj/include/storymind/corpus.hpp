#pragma once

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "storymind/reasoner.hpp"

namespace storymind {

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CorpusEntry {
    std::string id;
    std::string excerpt;
    std::string source;         // youtube, google_books, gutenberg, mueller, hand_crafted
    std::string scenario_type;  // normal, exception, variation
    std::string scenario;       // finer class used by the benchmark, e.g. "diagnosis-dish"
    std::string logic_form;
    bool reconstructed = false;  // retells a story quoted in the literature
    std::string limitation;      // e.g. "new-only": expected to have no models under that mode
    Story story;
};

const std::vector<std::string>& corpus_sources();
const std::vector<std::string>& scenario_types();

// <corpus><story id=".." reconstructed=".." [limitation=".."]><excerpt/><source/><type/>
// [<scenario/>]<logicform/></story>...</corpus>
std::vector<CorpusEntry> load_corpus(const std::string& path);
std::vector<CorpusEntry> parse_corpus(const std::string& xml);

// source -> type -> count
std::map<std::string, std::map<std::string, int>> distribution(const std::vector<CorpusEntry>& entries);

// Logic form with entities renamed by order of first appearance; equal for stories that
// differ only in names.
std::string renaming_invariant_form(const Story& story);

enum class RunVerdict { models_found, no_models, timeout };
std::string to_string(RunVerdict v);

struct RunResult {
    std::string id;
    Config config;
    std::size_t model_count = 0;
    std::size_t explanation_count = 0;
    int max_step = -1;
    double seconds = 0;
    RunVerdict verdict = RunVerdict::no_models;
    std::string reason;
};

RunResult run_entry(const CorpusEntry& entry, const Config& config);

struct BenchConfig {
    std::string label;
    Config config;
};

struct BenchRow {
    std::string scenario;
    std::string config;
    double mean_seconds = 0;
    int max_step = -1;
    std::size_t models = 0;
    std::string verdict;
    double increase_percent = 0;  // relative to the first config of the same scenario
};

// Runs each entry under each config `repetitions` times, one run at a time.
std::vector<BenchRow> bench(const std::vector<CorpusEntry>& entries, const std::vector<BenchConfig>& configs,
                            int repetitions);
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace storymind
