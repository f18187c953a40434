// Parallel execution of a (load, seed) grid and deterministic CSV assembly.
#pragma once

#include "meshpon/scenario.hpp"
#include "meshpon/simulation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace meshpon {

struct SweepOptions {
    std::vector<double> loads;          // empty: use the scenario plan
    int seeds = 0;                      // 0: use the scenario plan
    std::optional<SimTime> slot;        // rescale the slot grid before running
    std::optional<DbaPolicy> dba;       // applies to every slice
    std::optional<SimTime> duration;
    bool use_estimator = false;
    bool trace = false;
    int jobs = 0;                       // 0: one worker per hardware thread
};

// Runs ordered by (load, seed); identical inputs give a byte-identical CSV.
struct SweepOutcome {
    std::vector<RunResult> runs;
    std::string summary_csv;
};

SweepOutcome run_sweep(const Scenario& sc, const SweepOptions& opt);

// CSV rows for one run, ordered by class then measurement point. Buckets
// that collected no samples produce no row.
std::string summary_rows(const RunResult& r);

}  // namespace meshpon
