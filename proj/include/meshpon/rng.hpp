// Named deterministic random streams. Each stream is a mersenne twister
// seeded from (run seed, stream name) so adding a stream never perturbs the
// draws of existing ones.
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "meshpon/errors.hpp"

namespace meshpon {

class RngStream {
public:
    RngStream(std::uint64_t run_seed, const std::string& stream_name);

    // Uniform in [0, 1).
    double uniform();

    // Exponential with the given rate (events per unit). Uses inversion on
    // the top 53 bits of a 64-bit draw; u is clamped away from 0 so the
    // result is always finite. std::exponential_distribution is avoided
    // because its output is not pinned across standard library versions.
    double exp_draw(double rate);

    std::uint64_t next_u64() { return m_gen(); }

private:
    std::mt19937_64 m_gen;
};

} // namespace meshpon
