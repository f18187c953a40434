#include "meshpon/rng.hpp"

#include <cmath>

namespace meshpon {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// FNV-1a over the stream name, then mixed with the run seed through a few
// splitmix rounds. Distinct names give uncorrelated seeds in practice.
std::uint64_t derive_seed(std::uint64_t run_seed, const std::string& name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t state = run_seed ^ h;
    std::uint64_t s = splitmix64(state);
    s ^= splitmix64(state);
    return s;
}

} // namespace

RngStream::RngStream(std::uint64_t run_seed, const std::string& stream_name)
    : m_gen(derive_seed(run_seed, stream_name)) {}

double RngStream::uniform() {
    return static_cast<double>(m_gen() >> 11) * 0x1.0p-53;
}

double RngStream::exp_draw(double rate) {
    if (!(rate > 0.0)) throw InvalidRate("exp_draw requires rate > 0");
    // Map to (0, 1]: zero would give log(0).
    double u = 1.0 - uniform();
    return -std::log(u) / rate;
}

} // namespace meshpon
