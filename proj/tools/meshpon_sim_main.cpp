// Command line front end: run load sweeps, compare summaries, validate scenarios.
#include "meshpon/chart.hpp"
#include "meshpon/compare.hpp"
#include "meshpon/errors.hpp"
#include "meshpon/sweep.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace meshpon;
namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
}

std::string timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    localtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
    return buf;
}

std::optional<SimTime> parse_slot(const std::string& text) {
    if (text.size() < 3 || text.substr(text.size() - 2) != "us") return std::nullopt;
    try {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used != text.size() - 2 || v <= 0) return std::nullopt;
        return SimTime::us(v);
    } catch (const std::logic_error&) {
        return std::nullopt;
    }
}

std::optional<DbaPolicy> parse_dba_name(const std::string& text) {
    if (text == "sr") return DbaPolicy::Sr;
    if (text == "codba") return DbaPolicy::CoDba;
    if (text == "codba_cgs") return DbaPolicy::CoDbaCgs;
    return std::nullopt;
}

std::string trace_csv(const RunResult& r) {
    std::string out =
        "id,ru,class,bytes,created_ps,tx_start_ps,at_onu_ps,grant_start_ps,"
        "depart_ps,at_du_ps,ready_ps,dl_depart_ps,app_ps\n";
    char buf[320];
    for (const PacketTrace& t : r.traces) {
        std::string dl = t.dl_depart ? std::to_string(t.dl_depart->ps) : "";
        std::snprintf(buf, sizeof(buf),
                      "%llu,%s,%s,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%s,%lld\n",
                      static_cast<unsigned long long>(t.id), t.ru.c_str(), to_string(t.cls),
                      static_cast<long long>(t.bytes), static_cast<long long>(t.created.ps),
                      static_cast<long long>(t.tx_start.ps), static_cast<long long>(t.at_onu.ps),
                      static_cast<long long>(t.grant_start.ps),
                      static_cast<long long>(t.depart.ps), static_cast<long long>(t.at_du.ps),
                      static_cast<long long>(t.ready.ps), dl.c_str(),
                      static_cast<long long>(t.app.ps));
        out += buf;
    }
    return out;
}

struct RunArgs {
    std::string config;
    std::vector<double> loads;
    std::string slot;
    std::string dba;
    int seeds = 0;
    int jobs = 0;
    bool estimator = false;
    bool trace = false;
    std::string out_dir = "results";
    double duration = 0.0;
};

int cmd_run(const RunArgs& a) {
    Scenario sc = load_scenario(a.config);

    std::vector<std::string> violations = validate_scenario(sc);
    SweepOptions opt;
    opt.loads = a.loads;
    opt.seeds = a.seeds;
    opt.jobs = a.jobs;
    opt.use_estimator = a.estimator;
    opt.trace = a.trace;
    if (a.duration > 0.0) opt.duration = SimTime::sec(a.duration);
    for (double l : a.loads) {
        if (l <= 0.0 || l >= 1.0) {
            violations.push_back("load must lie in (0, 1): " + std::to_string(l));
        }
    }
    if (!a.slot.empty()) {
        opt.slot = parse_slot(a.slot);
        if (!opt.slot) violations.push_back("unparseable slot duration: " + a.slot);
    }
    if (!a.dba.empty()) {
        opt.dba = parse_dba_name(a.dba);
        if (!opt.dba) violations.push_back("unknown dba policy: " + a.dba);
    }
    if (a.seeds < 0) violations.push_back("seeds must be positive, or 0 for the scenario plan");
    if (a.jobs < 0) violations.push_back("jobs must be positive, or 0 for hardware threads");
    if (a.duration < 0.0) violations.push_back("duration must be positive seconds");
    if (!violations.empty()) {
        for (const std::string& v : violations) std::cerr << "violation: " << v << "\n";
        return 2;
    }

    SweepOutcome outcome = run_sweep(sc, opt);

    fs::path dir = fs::path(a.out_dir) / sc.name / timestamp();
    fs::create_directories(dir);
    write_file(dir / "summary.csv", outcome.summary_csv);

    std::vector<SummaryRow> rows = parse_summary_csv(outcome.summary_csv);
    write_file(dir / "fig2.svg", render_latency_bars(rows));
    write_file(dir / "fig3.svg", render_load_lines(rows));

    int dirty = 0;
    for (const RunResult& r : outcome.runs) {
        if (a.trace) {
            char name[96];
            std::snprintf(name, sizeof(name), "trace_load%.6g_seed%llu.csv", r.load,
                          static_cast<unsigned long long>(r.seed));
            write_file(dir / name, trace_csv(r));
        }
        if (!r.audit_clean) {
            ++dirty;
            for (const std::string& note : r.audit_notes) {
                std::cerr << "audit (load " << r.load << ", seed " << r.seed << "): " << note
                          << "\n";
            }
        }
    }

    std::cout << "wrote " << (dir / "summary.csv").string() << " (" << outcome.runs.size()
              << " runs), fig2.svg, fig3.svg\n";
    return dirty == 0 ? 0 : 1;
}

int cmd_compare(const std::string& baseline, const std::string& candidate,
                const std::string& out) {
    std::vector<SummaryRow> a = parse_summary_csv(read_file(baseline));
    std::vector<SummaryRow> b = parse_summary_csv(read_file(candidate));
    std::vector<DeltaRow> deltas = compare_summaries(a, b);
    std::cout << delta_table(deltas);
    write_file(out, delta_csv(deltas));
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_validate(const std::string& config) {
    Scenario sc = load_scenario(config);
    std::vector<std::string> violations = validate_scenario(sc);
    if (violations.empty()) {
        std::cout << "ok: " << sc.name << "\n";
        return 0;
    }
    for (const std::string& v : violations) std::cerr << "violation: " << v << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mesh-PON fronthaul latency simulator"};
    app.require_subcommand(1);

    RunArgs ra;
    CLI::App* run = app.add_subcommand("run", "Sweep loads and write summary plus charts");
    run->add_option("config", ra.config, "Scenario file")->required();
    run->add_option("--loads", ra.loads, "Offered loads in (0,1)")->delimiter(',');
    run->add_option("--slot", ra.slot, "Radio slot duration, e.g. 500us or 250us");
    run->add_option("--dba", ra.dba, "Override every slice policy: sr, codba, codba_cgs");
    run->add_option("--seeds", ra.seeds, "Seeds per load, numbered from 1 (0: scenario plan)");
    run->add_option("--jobs", ra.jobs, "Parallel runs (default: hardware threads)");
    run->add_flag("--cgs-occupancy-estimate", ra.estimator,
                  "Size standing grants from a traffic estimate");
    run->add_flag("--trace", ra.trace, "Write a per-packet timeline per run");
    run->add_option("--out", ra.out_dir, "Results root directory");
    run->add_option("--duration", ra.duration, "Simulated seconds per run");

    std::string baseline, candidate, compare_out = "compare.csv";
    CLI::App* cmp = app.add_subcommand("compare", "Delta table between two summaries");
    cmp->add_option("baseline", baseline, "Baseline summary.csv")->required();
    cmp->add_option("candidate", candidate, "Candidate summary.csv")->required();
    cmp->add_option("--out", compare_out, "Delta CSV path");

    std::string vconfig;
    CLI::App* val = app.add_subcommand("validate", "List scenario violations");
    val->add_option("config", vconfig, "Scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(ra);
        if (cmp->parsed()) return cmd_compare(baseline, candidate, compare_out);
        return cmd_validate(vconfig);
    } catch (const ConfigError& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
