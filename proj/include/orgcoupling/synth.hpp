#pragma once

#include "orgcoupling/types.hpp"

#include <cstdint>

namespace orgcoupling {

// SplitMix64 (Steele, Lea & Flood's mix function, as published by Vigna).
// Tiny, well known and bit-portable, so a seed reproduces the same history
// on any platform or language.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Bounded draw by modulo; the slight bias is irrelevant for test data.
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    // Uniform in [0, 1) from the top 53 bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

struct SynthSpec {
    std::uint64_t seed = 1;
    int n_services = 3;
    int n_developers = 5;
    int n_commits = 50;
    double cross_contribution_rate = 0.2;  // commit lands on a foreign service
    double both_touch_rate = 0.1;          // commit touches a second service too
    std::int64_t churn_min = 0;
    std::int64_t churn_max = 40;
    UnixTime start_time = 1577836800;      // 2020-01-01T00:00:00Z
    std::int64_t step_seconds = 36000;     // base gap between commits
};

// Deterministic synthetic history: services "svc00".., developers "dev00"..
// each with a home service, strictly increasing timestamps, all changes
// pre-resolved to their service. Throws Error on an invalid spec.
History generate_history(const SynthSpec& spec);

}  // namespace orgcoupling
