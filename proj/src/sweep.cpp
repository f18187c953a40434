// Worker pool over independent (load, seed) runs; single-threaded merge.
#include "meshpon/sweep.hpp"

#include "meshpon/errors.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace meshpon {

std::string summary_rows(const RunResult& r) {
    std::string out;
    for (TrafficClass cls : {TrafficClass::Urllc, TrafficClass::Normal}) {
        for (MetricPoint point : {MetricPoint::RuDu, MetricPoint::App}) {
            LatencySummary s;
            try {
                s = r.metrics.summarize(cls, point);
            } catch (const EmptyWindow&) {
                continue;
            }
            out += summary_csv_line({r.load, r.slot_us, cls, point, s, r.seed});
            out += '\n';
        }
    }
    return out;
}

SweepOutcome run_sweep(const Scenario& base, const SweepOptions& opt) {
    Scenario sc = base;
    if (opt.slot) apply_slot_override(sc, *opt.slot);
    if (opt.duration) sc.duration = *opt.duration;

    const std::vector<double>& loads = opt.loads.empty() ? sc.sweep.loads : opt.loads;
    int seeds = opt.seeds > 0 ? opt.seeds : sc.sweep.seeds;

    struct Job {
        double load;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (double l : loads) {
        for (int s = 1; s <= seeds; ++s) jobs.push_back({l, static_cast<std::uint64_t>(s)});
    }

    SweepOutcome out;
    out.runs.resize(jobs.size());

    unsigned workers = opt.jobs > 0 ? static_cast<unsigned>(opt.jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            try {
                RunConfig rc;
                rc.load = jobs[i].load;
                rc.seed = jobs[i].seed;
                rc.dba_override = opt.dba;
                rc.use_estimator = opt.use_estimator;
                rc.trace = opt.trace;
                out.runs[i] = run_simulation(sc, rc);
            } catch (...) {
                std::lock_guard<std::mutex> lk(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    out.summary_csv = summary_csv_header();
    out.summary_csv += '\n';
    for (const RunResult& r : out.runs) out.summary_csv += summary_rows(r);
    return out;
}

}  // namespace meshpon
