// Scenario files: JSON descriptions of topology, numerology, traffic shape,
// and the sweep plan.
#include "meshpon/scenario.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace meshpon {

namespace {

using nlohmann::json;

SimTime us_time(double us) {
    return SimTime(static_cast<tick_t>(std::llround(us * static_cast<double>(TICKS_PER_US))));
}

NodeKind parse_kind(const std::string& s) {
    if (s == "co_olt") return NodeKind::CoOlt;
    if (s == "mec_olt") return NodeKind::MecOlt;
    if (s == "ru_onu") return NodeKind::RuOnu;
    if (s == "splitter") return NodeKind::Splitter;
    throw ConfigError("unknown node kind '" + s + "'");
}

DbaPolicy parse_dba(const std::string& s) {
    if (s == "sr") return DbaPolicy::Sr;
    if (s == "codba") return DbaPolicy::CoDba;
    if (s == "codba_cgs") return DbaPolicy::CoDbaCgs;
    throw ConfigError("unknown dba policy '" + s + "'");
}

TrafficClass parse_class(const std::string& s) {
    if (s == "urllc") return TrafficClass::Urllc;
    if (s == "normal") return TrafficClass::Normal;
    throw ConfigError("unknown traffic class '" + s + "'");
}

SizeDist parse_size_dist(const json& j) {
    SizeDist d;
    std::string kind = j.at("dist").get<std::string>();
    if (kind == "fixed") {
        d.kind = SizeDist::Kind::Fixed;
        d.fixed_bytes = j.at("bytes").get<std::int64_t>();
    } else if (kind == "exp_clamped") {
        d.kind = SizeDist::Kind::ExpClamped;
        d.mean_bytes = j.at("mean_bytes").get<double>();
        d.min_bytes = j.at("min_bytes").get<std::int64_t>();
        d.max_bytes = j.at("max_bytes").get<std::int64_t>();
    } else {
        throw ConfigError("unknown size distribution '" + kind + "'");
    }
    return d;
}

Scenario parse_json(const json& j) {
    Scenario sc;
    sc.name = j.value("name", std::string("scenario"));

    if (j.contains("sim")) {
        const json& s = j.at("sim");
        sc.duration = SimTime::sec(s.value("duration_s", 10.0));
        sc.warmup_fraction = s.value("warmup_fraction", 0.05);
    }

    if (j.contains("radio")) {
        const json& r = j.at("radio");
        sc.radio.bandwidth_mhz = r.value("bandwidth_mhz", sc.radio.bandwidth_mhz);
        sc.radio.n_prb = r.value("n_prb", sc.radio.n_prb);
        sc.radio.slot_duration = us_time(r.value("slot_us", 500.0));
        sc.radio.symbols_per_slot = r.value("symbols_per_slot", sc.radio.symbols_per_slot);
        sc.radio.n_layers = r.value("n_layers", sc.radio.n_layers);
        sc.radio.iq_bitwidth = r.value("iq_bitwidth", sc.radio.iq_bitwidth);
        sc.radio.cgs_fraction = r.value("cgs_fraction", sc.radio.cgs_fraction);
        sc.radio.header_bytes = r.value("header_bytes", sc.radio.header_bytes);
        sc.radio.user_bits_per_re = r.value("user_bits_per_re", sc.radio.user_bits_per_re);
        sc.radio.ru_proc = us_time(r.value("ru_proc_us", 0.0));
    }

    sc.shape = default_shape();
    if (j.contains("traffic")) {
        const json& t = j.at("traffic");
        sc.shape.urllc_load_fraction = t.value("urllc_load_fraction", 0.10);
        if (t.contains("urllc")) sc.shape.urllc_size = parse_size_dist(t.at("urllc"));
        if (t.contains("normal")) sc.shape.normal_size = parse_size_dist(t.at("normal"));
    }

    if (j.contains("mac")) {
        const json& m = j.at("mac");
        sc.mac_base.guard_time = us_time(m.value("guard_us", 1.0));
        sc.mac_base.burst_overhead_bytes =
            m.value("burst_overhead_bytes", sc.mac_base.burst_overhead_bytes);
        sc.mac_base.poll_bytes = m.value("poll_bytes", sc.mac_base.poll_bytes);
    }

    const json& topo = j.at("topology");
    sc.topology.prop_us_per_km = topo.value("prop_us_per_km", 5.0);
    for (const json& n : topo.at("nodes")) {
        sc.topology.nodes.push_back(
            {n.at("id").get<std::string>(), parse_kind(n.at("kind").get<std::string>())});
    }
    for (const json& s : topo.at("spans")) {
        sc.topology.spans.push_back({s.at("a").get<std::string>(), s.at("b").get<std::string>(),
                                     s.at("km").get<double>()});
    }

    for (const json& s : j.at("slices")) {
        VponSlice v;
        v.id = s.at("id").get<std::string>();
        v.wavelength = s.at("wavelength").get<int>();
        v.olt = s.at("olt").get<std::string>();
        v.members = s.at("members").get<std::vector<std::string>>();
        v.us_rate_bps = s.at("us_gbps").get<double>() * 1e9;
        v.ds_rate_bps = s.at("ds_gbps").get<double>() * 1e9;
        v.frame_period = us_time(s.value("frame_us", 125.0));
        v.dba = parse_dba(s.at("dba").get<std::string>());
        v.dl_phase = us_time(s.value("dl_phase_us", 0.0));
        v.traffic_class = parse_class(s.at("class").get<std::string>());
        sc.topology.slices.push_back(std::move(v));
    }

    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        if (s.contains("loads")) sc.sweep.loads = s.at("loads").get<std::vector<double>>();
        sc.sweep.seeds = s.value("seeds", 3);
    }

    for (const json& m : j.value("manual_packets", json::array())) {
        ManualPacket p;
        p.ru = m.at("ru").get<std::string>();
        p.cls = parse_class(m.at("class").get<std::string>());
        p.bytes = m.at("bytes").get<std::int64_t>();
        p.at = us_time(m.at("t_us").get<double>());
        sc.manual_packets.push_back(std::move(p));
    }

    return sc;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
    }
    try {
        return parse_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario is missing or mistypes a field: ") + e.what());
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    Scenario sc = parse_scenario(buf.str());
    return sc;
}

std::vector<std::string> validate_scenario(const Scenario& sc) {
    std::vector<std::string> bad = validate_topology(sc.topology);

    if (sc.duration <= SimTime::zero()) bad.push_back("duration must be positive");
    if (sc.warmup_fraction < 0.0 || sc.warmup_fraction >= 1.0) {
        bad.push_back("warmup fraction must lie in [0, 1)");
    }

    const RadioConfig& r = sc.radio;
    if (r.n_prb < 1) bad.push_back("n_prb must be at least 1");
    if (r.slot_duration <= SimTime::zero()) bad.push_back("slot duration must be positive");
    if (r.symbols_per_slot < 1) bad.push_back("symbols_per_slot must be at least 1");
    if (r.n_layers < 1) bad.push_back("n_layers must be at least 1");
    if (r.iq_bitwidth < 1) bad.push_back("iq_bitwidth must be at least 1");
    if (r.user_bits_per_re < 1) bad.push_back("user_bits_per_re must be at least 1");
    if (r.header_bytes < 0) bad.push_back("header_bytes must be non-negative");
    if (r.cgs_fraction <= 0.0 || r.cgs_fraction > 1.0) {
        bad.push_back("cgs_fraction must lie in (0, 1]");
    } else if (static_cast<int>(r.cgs_fraction * r.n_prb) < 1) {
        bad.push_back("cgs_fraction reserves less than one PRB");
    }
    if (r.ru_proc < SimTime::zero()) bad.push_back("ru_proc must be non-negative");

    if (sc.mac_base.guard_time < SimTime::zero()) bad.push_back("guard time must be non-negative");
    if (sc.mac_base.burst_overhead_bytes < 0) {
        bad.push_back("burst overhead must be non-negative");
    }
    if (sc.mac_base.poll_bytes < 1) bad.push_back("poll_bytes must be positive");

    if (sc.shape.urllc_load_fraction < 0.0 || sc.shape.urllc_load_fraction > 1.0) {
        bad.push_back("urllc_load_fraction must lie in [0, 1]");
    }
    for (const SizeDist* d : {&sc.shape.urllc_size, &sc.shape.normal_size}) {
        if (d->kind == SizeDist::Kind::Fixed) {
            if (d->fixed_bytes < 1) bad.push_back("fixed packet size must be positive");
        } else {
            if (d->mean_bytes <= 0.0) bad.push_back("mean packet size must be positive");
            if (d->min_bytes < 1 || d->max_bytes < d->min_bytes) {
                bad.push_back("size clamp range must satisfy 1 <= min <= max");
            }
        }
    }

    if (sc.sweep.seeds < 1) bad.push_back("sweep needs at least one seed");
    for (double l : sc.sweep.loads) {
        if (l <= 0.0 || l >= 1.0) {
            bad.push_back("sweep load " + std::to_string(l) + " must lie in (0, 1)");
        }
    }

    for (const ManualPacket& p : sc.manual_packets) {
        if (p.bytes < 1) bad.push_back("manual packet bytes must be positive");
        const OdnNode* node = sc.topology.find_node(p.ru);
        if (node == nullptr || node->kind != NodeKind::RuOnu) {
            bad.push_back("manual packet names unknown RU '" + p.ru + "'");
            continue;
        }
        bool carried = false;
        for (const VponSlice& s : sc.topology.slices) {
            if (s.traffic_class != p.cls) continue;
            for (const std::string& m : s.members) carried = carried || m == p.ru;
        }
        if (!carried) {
            bad.push_back("no slice carries class " + std::string(to_string(p.cls)) +
                          " for RU '" + p.ru + "'");
        }
    }

    if (sc.topology.slices.empty()) bad.push_back("scenario defines no slices");

    return bad;
}

void apply_slot_override(Scenario& sc, SimTime new_slot) {
    if (new_slot <= SimTime::zero()) throw ConfigError("slot override must be positive");
    tick_t old_ps = sc.radio.slot_duration.ps;
    tick_t scaled = sc.radio.symbols_per_slot * new_slot.ps;
    if (scaled % old_ps != 0) {
        throw ConfigError("slot override does not scale to a whole symbol count");
    }
    tick_t symbols = scaled / old_ps;
    if (symbols < 1) throw ConfigError("slot override leaves no symbols in a slot");
    sc.radio.slot_duration = new_slot;
    sc.radio.symbols_per_slot = static_cast<int>(symbols);
}

}  // namespace meshpon
