#include "doctest.h"

#include "meshpon/dba.hpp"

#include <cmath>

using namespace meshpon;

namespace {

DbaContext make_ctx(std::int64_t frame_index, const std::vector<std::string>& onus) {
    DbaContext ctx;
    ctx.params = MacParams{};
    ctx.frame_index = frame_index;
    ctx.frame_start = SimTime(frame_index * ctx.params.frame_period.ps);
    ctx.min_start = ctx.frame_start;
    ctx.onus = onus;
    return ctx;
}

}  // namespace

TEST_CASE("status-report policy sizes the grant to the reported backlog") {
    auto ctx = make_ctx(0, {"ru1"});
    OccupancyReports rep{{"ru1", 12500}};
    auto out = sr_dba(rep, ctx);
    REQUIRE(out.map.grants.size() == 1);
    const Grant& g = out.map.grants[0];
    CHECK(g.kind == GrantKind::Residual);
    CHECK(g.start == SimTime::zero());
    // 12550 bytes on the wire at 10 Gb/s take 10.04 us.
    CHECK(g.duration == SimTime(10'040'000));
    CHECK_FALSE(out.map.capacity_exceeded);
}

TEST_CASE("silent ONUs get polls, reporting ONUs do not") {
    auto ctx = make_ctx(0, {"ru1", "ru2", "ru3"});
    OccupancyReports rep{{"ru2", 1000}};
    auto out = sr_dba(rep, ctx);
    REQUIRE(out.map.grants.size() == 3);
    int polls = 0;
    for (const Grant& g : out.map.grants) {
        if (g.kind == GrantKind::Poll) {
            ++polls;
            CHECK(g.onu_id != "ru2");
            CHECK(g.bytes == ctx.params.poll_bytes);
        }
    }
    CHECK(polls == 2);
}

TEST_CASE("oversubscribed backlog is scaled proportionally to fit the frame") {
    auto ctx = make_ctx(0, {"a", "b"});
    OccupancyReports rep{{"a", 120000}, {"b", 60000}};     // 144 us of demand
    auto out = sr_dba(rep, ctx);
    REQUIRE(out.map.grants.size() == 2);
    CHECK(out.spill.empty());
    std::int64_t ga = 0, gb = 0;
    for (const Grant& g : out.map.grants) {
        CHECK(g.start + g.duration <= SimTime::us(125));
        (g.onu_id == "a" ? ga : gb) = g.bytes;
    }
    CHECK(ga > gb);
    CHECK(std::abs(static_cast<double>(ga) / gb - 2.0) < 0.01);
    CHECK(ga < 120000);
}

TEST_CASE("cooperative policy places a grant just after the predicted arrival") {
    auto ctx = make_ctx(0, {"ru1"});
    std::vector<CtiReport> cti{{"ru1", 0, 1250, SimTime::us(100)}};
    auto out = co_dba(cti, {}, ctx);
    REQUIRE(!out.map.grants.empty());
    const Grant& g = out.map.grants[0];
    CHECK(g.kind == GrantKind::Cti);
    CHECK(g.start == SimTime::us(101));
    CHECK(g.duration == SimTime(1'040'000));
}

TEST_CASE("cooperative grants for overlapping predictions serialize with guards") {
    auto ctx = make_ctx(0, {"r1", "r2"});
    std::vector<CtiReport> cti{
        {"r1", 0, 1250, SimTime::us(100)},
        {"r2", 0, 1250, SimTime(100'500'000)},
    };
    auto out = co_dba(cti, {}, ctx);
    REQUIRE(out.map.grants.size() == 2);
    const Grant& a = out.map.grants[0];
    const Grant& b = out.map.grants[1];
    CHECK(a.onu_id == "r1");
    CHECK(b.start >= a.start + a.duration + ctx.params.guard_time);
}

TEST_CASE("no predictions and no ONUs yields an empty grant map") {
    auto ctx = make_ctx(0, {});
    auto out = co_dba({}, {}, ctx);
    CHECK(out.map.grants.empty());
    CHECK(out.spill.empty());
}

TEST_CASE("standing grants recur on the advertised slot grid") {
    // One CGS advertisement, 40824 bytes every 500 us starting at phase 0.
    CgsAdvertisement ad{"ru1", 40824, SimTime::us(500), SimTime::zero()};
    SimTime standing_dur = serialize_time(40824 + 50, 10e9);
    CHECK(standing_dur == SimTime(32'699'200));
    int standing_frames = 0;
    for (std::int64_t f = 0; f < 8; ++f) {
        auto ctx = make_ctx(f, {"ru1"});
        auto out = enhanced_co_dba({}, {ad}, {}, ctx);
        REQUIRE(!out.map.grants.empty());
        const Grant& g = out.map.grants[0];
        if (g.kind == GrantKind::Standing) {
            ++standing_frames;
            CHECK(g.start == ctx.frame_start);
            CHECK(g.duration == standing_dur);
            CHECK(g.bytes == 40824);
        } else {
            CHECK(g.kind == GrantKind::Poll);
        }
    }
    CHECK(standing_frames == 2);       // frames 0 and 4 contain a slot boundary
}

TEST_CASE("standing grants appear even with zero reported traffic") {
    CgsAdvertisement ad{"ru1", 40824, SimTime::us(500), SimTime::zero()};
    auto ctx = make_ctx(4, {"ru1"});
    auto out = enhanced_co_dba({}, {ad}, {}, ctx);
    REQUIRE(out.map.grants.size() == 1);
    CHECK(out.map.grants[0].kind == GrantKind::Standing);
    CHECK(out.map.grants[0].bytes == 40824);
}

TEST_CASE("with no advertisements the enhanced policy matches the cooperative one") {
    std::vector<CtiReport> cti{
        {"r1", 0, 900, SimTime::us(30)},
        {"r2", 0, 4000, SimTime::us(31)},
        {"r1", 1, 2200, SimTime::us(90)},
    };
    OccupancyReports rep{{"r3", 777}};
    auto ca = make_ctx(0, {"r1", "r2", "r3", "r4"});
    auto cb = make_ctx(0, {"r1", "r2", "r3", "r4"});
    auto a = co_dba(cti, rep, ca);
    auto b = enhanced_co_dba(cti, {}, rep, cb);
    REQUIRE(a.map.grants.size() == b.map.grants.size());
    for (std::size_t i = 0; i < a.map.grants.size(); ++i) {
        CHECK(a.map.grants[i].onu_id == b.map.grants[i].onu_id);
        CHECK(a.map.grants[i].start == b.map.grants[i].start);
        CHECK(a.map.grants[i].duration == b.map.grants[i].duration);
        CHECK(a.map.grants[i].kind == b.map.grants[i].kind);
        CHECK(a.map.grants[i].bytes == b.map.grants[i].bytes);
    }
}

TEST_CASE("requests spilled from one frame are retried at the head of the next") {
    auto ctx0 = make_ctx(0, {"a", "b", "c"});
    std::vector<CtiReport> cti;
    for (int i = 0; i < 3; ++i) {
        // Each prediction wants ~60 us of wire time; only two fit per frame.
        cti.push_back({std::string(1, static_cast<char>('a' + i)), 0, 74950, SimTime::zero()});
    }
    auto out0 = co_dba(cti, {}, ctx0);
    CHECK(out0.map.capacity_exceeded);
    REQUIRE(out0.spill.size() == 1);

    auto ctx1 = make_ctx(1, {"a", "b", "c"});
    ctx1.carry = out0.spill;
    auto out1 = co_dba({}, {}, ctx1);
    REQUIRE(!out1.map.grants.empty());
    CHECK(out1.map.grants[0].onu_id == out0.spill[0].onu_id);
    CHECK(out1.map.grants[0].start == SimTime::us(125));
}
