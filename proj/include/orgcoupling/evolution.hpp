#pragma once

#include "orgcoupling/coupling.hpp"
#include "orgcoupling/types.hpp"

#include <string>
#include <vector>

namespace orgcoupling {

struct WindowSpec {
    UnixTime start = 0;
    std::int64_t width_seconds = 365LL * 86400;  // consecutive windows, half-open
    int count = 1;
};

struct WindowInterval {
    UnixTime start = 0;
    UnixTime end = 0;  // exclusive
};

struct EvolutionSeries {
    std::vector<std::string> services;      // union across windows, sorted
    std::vector<WindowInterval> windows;
    std::vector<CouplingMatrix> matrices;   // one per window, aligned to services
    bool any_commits = false;               // false = every window was empty
};

// Recomputes teams, ownership and coupling per window from only that
// window's commits, then aligns all matrices to the union service list
// (absent services contribute zero rows and columns).
EvolutionSeries windowed_matrices(const History& history, const WindowSpec& spec);

struct DeltaMatrix {
    std::vector<std::string> services;
    std::vector<std::vector<double>> delta;  // window i+1 minus window i
};

std::vector<DeltaMatrix> series_delta(const EvolutionSeries& series);

std::string series_to_json(const EvolutionSeries& series);

}  // namespace orgcoupling
