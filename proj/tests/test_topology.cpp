#include "doctest.h"

#include "meshpon/topology.hpp"

using namespace meshpon;

namespace {

// Eight RU sites and two MEC nodes behind one splitter, CO on a long feeder.
// Distances: RU->MEC-1 10 km, MEC-1->MEC-2 10 km, RU->CO 50 km.
Topology make_reference() {
    Topology t;
    t.nodes.push_back({"co", NodeKind::CoOlt});
    t.nodes.push_back({"s1", NodeKind::Splitter});
    t.nodes.push_back({"mec1", NodeKind::MecOlt});
    t.nodes.push_back({"mec2", NodeKind::MecOlt});
    for (int i = 1; i <= 8; ++i) {
        t.nodes.push_back({"ru" + std::to_string(i), NodeKind::RuOnu});
    }
    t.spans.push_back({"co", "s1", 45.0});
    t.spans.push_back({"s1", "mec1", 5.0});
    t.spans.push_back({"s1", "mec2", 5.0});
    for (int i = 1; i <= 8; ++i) {
        t.spans.push_back({"ru" + std::to_string(i), "s1", 5.0});
    }

    VponSlice edge;
    edge.id = "edge";
    edge.wavelength = 0;
    edge.olt = "mec1";
    for (int i = 1; i <= 8; ++i) edge.members.push_back("ru" + std::to_string(i));
    edge.members.push_back("mec2");
    t.slices.push_back(edge);

    VponSlice co;
    co.id = "co-slice";
    co.wavelength = 1;
    co.olt = "co";
    co.dba = DbaPolicy::CoDba;
    co.traffic_class = TrafficClass::Normal;
    for (int i = 1; i <= 8; ++i) co.members.push_back("ru" + std::to_string(i));
    t.slices.push_back(co);

    return t;
}

} // namespace

TEST_CASE("path delay is length times per-km delay") {
    Topology t;
    t.nodes = {{"a", NodeKind::RuOnu}, {"m", NodeKind::Splitter}, {"b", NodeKind::MecOlt}};
    t.spans = {{"a", "m", 12.0}, {"m", "b", 8.0}};
    CHECK(t.path_km("a", "b") == doctest::Approx(20.0));
    CHECK(t.path_delay("a", "b") == SimTime::us(100));
    CHECK(t.path_delay("a", "a") == SimTime::zero());
}

TEST_CASE("reference distances: edge paths 10 km, CO feeder 50 km") {
    Topology t = make_reference();
    CHECK(t.path_delay("ru1", "mec1") == SimTime::us(50));
    CHECK(t.path_delay("mec1", "mec2") == SimTime::us(50));
    CHECK(t.path_delay("ru1", "co") == SimTime::us(250));
}

TEST_CASE("path delay is symmetric and additive through on-path nodes") {
    Topology t = make_reference();
    CHECK(t.path_delay("ru3", "mec2") == t.path_delay("mec2", "ru3"));
    // s1 lies on the ru3 -> mec2 path.
    CHECK(t.path_delay("ru3", "mec2").ps ==
          t.path_delay("ru3", "s1").ps + t.path_delay("s1", "mec2").ps);
}

TEST_CASE("disconnected nodes are unreachable") {
    Topology t;
    t.nodes = {{"a", NodeKind::RuOnu}, {"b", NodeKind::MecOlt}, {"x", NodeKind::RuOnu}};
    t.spans = {{"a", "b", 1.0}};
    CHECK_THROWS_AS(t.path_delay("a", "x"), Unreachable);
    CHECK_THROWS_AS(t.path_delay("a", "nope"), Unreachable);
}

TEST_CASE("slice-scoped path rejects foreign nodes") {
    Topology t = make_reference();
    const VponSlice& edge = t.slices[0];
    CHECK(t.path_delay_in_slice("ru1", "mec1", edge) == SimTime::us(50));
    CHECK_THROWS_AS(t.path_delay_in_slice("ru1", "co", edge), Unreachable);
}

TEST_CASE("reference topology validates clean") {
    Topology t = make_reference();
    CHECK(validate_topology(t).empty());
}

TEST_CASE("same wavelength on a shared span is a violation") {
    Topology t = make_reference();
    t.slices[1].wavelength = t.slices[0].wavelength;
    auto v = validate_topology(t);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("share span") != std::string::npos);
}

TEST_CASE("olt listed among members is a violation") {
    Topology t = make_reference();
    t.slices[0].members.push_back("mec1");
    auto v = validate_topology(t);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("olt among members") != std::string::npos);
}

TEST_CASE("cycles, unknown references and empty member sets are reported") {
    Topology t = make_reference();
    t.spans.push_back({"ru1", "ru2", 1.0});      // closes a loop
    CHECK(validate_topology(t).size() == 1);

    Topology u = make_reference();
    u.slices[0].members.push_back("ghost");
    CHECK(validate_topology(u).size() == 1);

    Topology w = make_reference();
    w.slices[1].members.clear();
    CHECK(validate_topology(w).size() == 1);
}
