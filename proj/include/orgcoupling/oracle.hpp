#pragma once

#include "orgcoupling/types.hpp"

#include <string>

namespace orgcoupling {

// Straight-line recomputation of the pairwise coupling value from raw
// commits: teams, pair sub-sequence, switch count, contribution sums, the
// switch-weighted harmonic mean and the sum over shared developers — all
// re-derived here without touching the pipeline implementation. Property
// tests compare the pipeline against this.
double oracle_oc(const History& history, const std::string& service_a,
                 const std::string& service_b);

}  // namespace orgcoupling
