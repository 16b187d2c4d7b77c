// Serial reference search vs the OpenMP frontier split, on the bundled stories.
// Writes CSV to stdout or --csv.
#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <algorithm>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

#include "storymind/reasoner.hpp"

using namespace storymind;
namespace fs = std::filesystem;

namespace {

double time_once(const std::function<SolveResult()>& run, std::size_t& models) {
    auto t0 = std::chrono::steady_clock::now();
    SolveResult r = run();
    models = r.models.size();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"solver benchmark: serial vs parallel"};
    std::string dir = std::string(STORYMIND_SOURCE_DIR) + "/data/stories";
    std::string csv;
    int reps = 10;
    int threads = std::max(2, omp_get_max_threads());
    std::string ti = "mixed";
    app.add_option("--stories", dir, "directory of .lp stories")->capture_default_str();
    app.add_option("--reps", reps)->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--threads", threads)->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--ti", ti)->capture_default_str();
    app.add_option("--csv", csv, "output file, stdout if omitted");
    CLI11_PARSE(app, argc, argv);

    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".lp") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    std::ofstream file;
    if (!csv.empty()) file.open(csv);
    std::ostream& out = csv.empty() ? std::cout : file;
    out << "story,ti,threads,serial_mean_seconds,parallel_mean_seconds,speedup,models_serial,models_parallel\n";

    for (const auto& f : files) {
        std::ifstream in(f);
        std::stringstream ss;
        ss << in.rdbuf();
        Story s = parse_story(ss.str());
        Config c;
        c.ti_mode = parse_ti_mode(ti);
        Config par = c;
        par.threads = threads;

        double ts = 0, tp = 0;
        std::size_t ms = 0, mp = 0;
        // alternate so drift hits both sides equally
        for (int k = 0; k < reps; ++k) {
            ts += time_once([&] { return solve_serial(s, c); }, ms);
            tp += time_once([&] { return solve(s, par); }, mp);
        }
        ts /= reps;
        tp /= reps;
        out << f.stem().string() << "," << ti << "," << threads << "," << ts << "," << tp << ","
            << (tp > 0 ? ts / tp : 0.0) << "," << ms << "," << mp << "\n";
        if (ms != mp) std::cerr << f.stem().string() << ": model counts differ\n";
    }
    return 0;
}
