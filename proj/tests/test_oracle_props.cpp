#include "orgcoupling/oracle.hpp"

#include "orgcoupling/coupling.hpp"
#include "orgcoupling/synth.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace orgcoupling;
using namespace testutil;

namespace {

bool close_rel(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

SynthSpec spec_for(std::uint64_t seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.n_services = 1 + static_cast<int>(seed % 5);
    spec.n_developers = 1 + static_cast<int>((seed * 7) % 10);
    spec.n_commits = 1 + static_cast<int>((seed * 13) % 200);
    spec.cross_contribution_rate = (seed % 11) / 10.0;
    spec.both_touch_rate = (seed % 7) / 10.0;
    spec.churn_min = 0;
    spec.churn_max = 2 + static_cast<int>(seed % 60);
    return spec;
}

}  // namespace

TEST_CASE("oracle on hand-built fixtures") {
    CHECK(oracle_oc(History{}, "svcA", "svcB") == 0.0);

    auto fixture = make_history({
        make_commit("s1", "dev", 100, {{"svcA", 150, 0}}),
        make_commit("s2", "dev", 200, {{"svcA", 150, 0}}),
        make_commit("s3", "dev", 300, {{"svcB", 100, 0}}),
    });
    CHECK(oracle_oc(fixture, "svcA", "svcB") == doctest::Approx(37.5));
}

TEST_CASE("pipeline equals the naive recomputation on seeded histories") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        const History history = generate_history(spec_for(seed));
        if (history.commits.empty() || history.services.size() < 2) continue;
        const auto matrix = coupling_matrix(history);
        for (std::size_t i = 0; i < matrix.size(); ++i) {
            for (std::size_t j = i + 1; j < matrix.size(); ++j) {
                const double expected =
                    oracle_oc(history, matrix.services[i], matrix.services[j]);
                CAPTURE(seed);
                CAPTURE(matrix.services[i]);
                CAPTURE(matrix.services[j]);
                CHECK(close_rel(matrix.values[i][j], expected));
            }
        }
    }
}

TEST_CASE("oracle agrees with per-developer entry points too") {
    for (std::uint64_t seed = 100; seed <= 130; ++seed) {
        const History history = generate_history(spec_for(seed));
        if (history.services.size() < 2) continue;
        auto it = history.services.begin();
        const std::string a = *it++;
        const std::string b = *it;
        double sum = 0.0;
        for (const auto& dc : pair_diagnostics(history, a, b)) sum += dc.oc;
        CHECK(close_rel(sum, oracle_oc(history, a, b)));
    }
}
