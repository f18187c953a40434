#include "meshpon/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace meshpon {

namespace {

struct Adjacency {
    // node id -> list of (neighbor id, length km)
    std::unordered_map<std::string, std::vector<std::pair<std::string, double>>> edges;
};

Adjacency build_adjacency(const Topology& topo) {
    Adjacency adj;
    for (const auto& n : topo.nodes) adj.edges[n.id];
    for (const auto& s : topo.spans) {
        adj.edges[s.a].push_back({s.b, s.length_km});
        adj.edges[s.b].push_back({s.a, s.length_km});
    }
    return adj;
}

std::string span_key(const std::string& a, const std::string& b) {
    return a < b ? a + "|" + b : b + "|" + a;
}

// BFS over the tree; returns node sequence a..b, or empty when unreachable.
std::vector<std::string> tree_path(const Adjacency& adj, const std::string& a,
                                   const std::string& b) {
    if (a == b) return {a};
    std::unordered_map<std::string, std::string> parent;
    std::deque<std::string> frontier{a};
    parent[a] = a;
    while (!frontier.empty()) {
        std::string cur = frontier.front();
        frontier.pop_front();
        auto it = adj.edges.find(cur);
        if (it == adj.edges.end()) continue;
        for (const auto& [next, km] : it->second) {
            (void)km;
            if (parent.count(next)) continue;
            parent[next] = cur;
            if (next == b) {
                std::vector<std::string> path{b};
                std::string walk = b;
                while (walk != a) {
                    walk = parent[walk];
                    path.push_back(walk);
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            frontier.push_back(next);
        }
    }
    return {};
}

double edge_km(const Adjacency& adj, const std::string& a, const std::string& b) {
    for (const auto& [next, km] : adj.edges.at(a)) {
        if (next == b) return km;
    }
    return 0.0;
}

bool is_olt_kind(NodeKind k) { return k == NodeKind::CoOlt || k == NodeKind::MecOlt; }

} // namespace

double Topology::path_km(const std::string& a, const std::string& b) const {
    Adjacency adj = build_adjacency(*this);
    if (!adj.edges.count(a) || !adj.edges.count(b)) {
        throw Unreachable("unknown node in path query: " + a + " -> " + b);
    }
    auto path = tree_path(adj, a, b);
    if (path.empty()) throw Unreachable("no fiber path between " + a + " and " + b);
    double km = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) km += edge_km(adj, path[i - 1], path[i]);
    return km;
}

SimTime Topology::path_delay(const std::string& a, const std::string& b) const {
    double us = path_km(a, b) * prop_us_per_km;
    return SimTime(static_cast<tick_t>(std::llround(us * static_cast<double>(TICKS_PER_US))));
}

SimTime Topology::path_delay_in_slice(const std::string& a, const std::string& b,
                                      const VponSlice& slice) const {
    auto in_slice = [&](const std::string& id) {
        if (id == slice.olt) return true;
        return std::find(slice.members.begin(), slice.members.end(), id) != slice.members.end();
    };
    if (!in_slice(a) || !in_slice(b)) {
        throw Unreachable("node outside slice " + slice.id + ": " + a + " -> " + b);
    }
    return path_delay(a, b);
}

std::vector<std::string> Topology::spans_used(const VponSlice& slice) const {
    Adjacency adj = build_adjacency(*this);
    std::set<std::string> keys;
    for (const auto& m : slice.members) {
        auto path = tree_path(adj, slice.olt, m);
        for (std::size_t i = 1; i < path.size(); ++i) {
            keys.insert(span_key(path[i - 1], path[i]));
        }
    }
    return {keys.begin(), keys.end()};
}

const OdnNode* Topology::find_node(const std::string& id) const {
    for (const auto& n : nodes) {
        if (n.id == id) return &n;
    }
    return nullptr;
}

const VponSlice* Topology::find_slice(const std::string& id) const {
    for (const auto& s : slices) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

std::vector<std::string> validate_topology(const Topology& topo) {
    std::vector<std::string> out;
    std::set<std::string> ids;
    for (const auto& n : topo.nodes) {
        if (!ids.insert(n.id).second) out.push_back("duplicate node id: " + n.id);
    }

    for (const auto& s : topo.spans) {
        if (!ids.count(s.a)) out.push_back("span references unknown node: " + s.a);
        if (!ids.count(s.b)) out.push_back("span references unknown node: " + s.b);
        if (s.length_km < 0) {
            std::ostringstream os;
            os << "span " << s.a << "-" << s.b << " has negative length";
            out.push_back(os.str());
        }
    }

    // Tree check: union-find over spans, a join of two already-connected
    // nodes means a cycle.
    {
        std::unordered_map<std::string, std::string> root;
        for (const auto& id : ids) root[id] = id;
        std::function<std::string(const std::string&)> find = [&](const std::string& x) {
            std::string r = x;
            while (root[r] != r) r = root[r];
            root[x] = r;
            return r;
        };
        for (const auto& s : topo.spans) {
            if (!ids.count(s.a) || !ids.count(s.b)) continue;
            auto ra = find(s.a), rb = find(s.b);
            if (ra == rb) {
                out.push_back("span graph has a cycle through " + s.a + "-" + s.b);
            } else {
                root[ra] = rb;
            }
        }
    }

    if (topo.prop_us_per_km <= 0) out.push_back("propagation delay per km must be positive");

    Adjacency adj = build_adjacency(topo);
    std::set<std::string> slice_ids;
    for (const auto& sl : topo.slices) {
        if (!slice_ids.insert(sl.id).second) out.push_back("duplicate slice id: " + sl.id);
        const OdnNode* olt = topo.find_node(sl.olt);
        if (!olt) {
            out.push_back("slice " + sl.id + " names unknown olt: " + sl.olt);
            continue;
        }
        if (!is_olt_kind(olt->kind)) {
            out.push_back("slice " + sl.id + " olt " + sl.olt + " is not an OLT node");
        }
        if (sl.members.empty()) out.push_back("slice " + sl.id + " has no members");
        if (sl.us_rate_bps <= 0 || sl.ds_rate_bps <= 0) {
            out.push_back("slice " + sl.id + " has nonpositive line rate");
        }
        if (sl.frame_period <= SimTime::zero()) {
            out.push_back("slice " + sl.id + " has nonpositive frame period");
        }
        for (const auto& m : sl.members) {
            if (m == sl.olt) {
                out.push_back("slice " + sl.id + " lists its olt among members");
                continue;
            }
            const OdnNode* node = topo.find_node(m);
            if (!node) {
                out.push_back("slice " + sl.id + " names unknown member: " + m);
                continue;
            }
            if (node->kind != NodeKind::RuOnu && node->kind != NodeKind::MecOlt) {
                out.push_back("slice " + sl.id + " member " + m + " cannot act as an ONU");
            }
            if (tree_path(adj, sl.olt, m).empty()) {
                out.push_back("slice " + sl.id + " member " + m + " unreachable from olt " + sl.olt);
            }
        }
    }

    // Wavelength plan: slices that touch a common span need distinct channels.
    for (std::size_t i = 0; i < topo.slices.size(); ++i) {
        for (std::size_t j = i + 1; j < topo.slices.size(); ++j) {
            const auto& a = topo.slices[i];
            const auto& b = topo.slices[j];
            if (a.wavelength != b.wavelength) continue;
            auto sa = topo.spans_used(a);
            auto sb = topo.spans_used(b);
            std::vector<std::string> shared;
            std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                  std::back_inserter(shared));
            if (!shared.empty()) {
                out.push_back("slices " + a.id + " and " + b.id + " share span " + shared.front() +
                              " on wavelength " + std::to_string(a.wavelength));
            }
        }
    }

    return out;
}

} // namespace meshpon
