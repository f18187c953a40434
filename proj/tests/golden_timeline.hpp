// Shared golden-timeline replay: scripted packets against frozen timestamps.
#pragma once

#include "meshpon/scenario.hpp"
#include "meshpon/simulation.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace meshpon {

struct GoldenOutcome {
    int checks = 0;
    int failures = 0;
    std::vector<std::string> messages;
};

// Runs the scripted scenario named inside the golden file (path relative to
// the file itself) and compares every recorded timestamp exactly.
inline GoldenOutcome run_golden_timeline(const std::string& golden_path) {
    using nlohmann::json;
    GoldenOutcome out;

    std::filesystem::path path(golden_path);
    std::ifstream in(path);
    if (!in) {
        out.failures = 1;
        out.messages.push_back("cannot read " + golden_path);
        return out;
    }
    json doc = json::parse(in);

    std::filesystem::path sc_path = path.parent_path() / doc.at("scenario").get<std::string>();
    Scenario sc = load_scenario(sc_path.lexically_normal().string());
    sc.duration = SimTime::us(doc.at("duration_ms").get<long long>() * 1000);
    sc.warmup_fraction = 0.0;
    for (const json& p : doc.at("packets")) {
        ManualPacket mp;
        mp.ru = p.at("ru").get<std::string>();
        mp.cls = p.at("class").get<std::string>() == "urllc" ? TrafficClass::Urllc
                                                             : TrafficClass::Normal;
        mp.bytes = p.at("bytes").get<long long>();
        mp.at = SimTime::us(p.at("at_us").get<long long>());
        sc.manual_packets.push_back(mp);
    }

    RunConfig rc;
    rc.trace = true;
    RunResult r = run_simulation(sc, rc);
    if (!r.audit_clean) {
        for (const std::string& n : r.audit_notes) out.messages.push_back("audit: " + n);
        out.failures += static_cast<int>(r.audit_notes.size());
        return out;
    }

    int index = 0;
    for (const json& p : doc.at("packets")) {
        std::string cls_name = p.at("class").get<std::string>();
        TrafficClass want_cls =
            cls_name == "urllc" ? TrafficClass::Urllc : TrafficClass::Normal;
        const PacketTrace* t = nullptr;
        for (const PacketTrace& cand : r.traces) {
            if (cand.ru == p.at("ru").get<std::string>() && cand.cls == want_cls &&
                cand.bytes == p.at("bytes").get<long long>() &&
                cand.created.ps == p.at("at_us").get<long long>() * TICKS_PER_US) {
                t = &cand;
                break;
            }
        }
        if (!t) {
            ++out.failures;
            out.messages.push_back("packet " + std::to_string(index) + ": no trace recorded");
            ++index;
            continue;
        }

        const json& e = p.at("expect");
        auto expect = [&](const char* field, long long got) {
            ++out.checks;
            long long want = e.at(field).get<long long>();
            if (want != got) {
                ++out.failures;
                out.messages.push_back("packet " + std::to_string(index) + " (" + cls_name +
                                       "): " + field + " want " + std::to_string(want) +
                                       " got " + std::to_string(got));
            }
        };
        expect("tx_start_ps", t->tx_start.ps);
        expect("at_onu_ps", t->at_onu.ps);
        expect("grant_start_ps", t->grant_start.ps);
        expect("depart_ps", t->depart.ps);
        expect("at_du_ps", t->at_du.ps);
        expect("ready_ps", t->ready.ps);
        expect("app_ps", t->app.ps);
        if (e.contains("dl_depart_ps")) {
            expect("dl_depart_ps", t->dl_depart ? t->dl_depart->ps : -1);
        } else if (t->dl_depart) {
            ++out.checks;
            ++out.failures;
            out.messages.push_back("packet " + std::to_string(index) +
                                   ": unexpected downlink departure");
        }
        ++index;
    }
    return out;
}

}  // namespace meshpon
