#pragma once

#include "orgcoupling/types.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace orgcoupling {

// Which side(s) of a service pair a commit touches.
struct PairTouch {
    bool a = false;
    bool b = false;
    bool both() const { return a && b; }
    bool any() const { return a || b; }
};

// Contribution switches over a developer's commit sequence restricted to one
// service pair. The rule, per position starting from the second commit:
//   * a commit touching both services counts 2 (a logically coupled commit
//     switches in and back);
//   * a commit touching exactly one service counts 1 when the previous
//     commit did not touch that service, else 0;
//   * the first commit never counts.
// This keeps k within [0, 2*(n-1)], so the normalized weight stays in [0,1].
std::int64_t count_switches(const std::vector<PairTouch>& touched_seq);

// k / (2*(n-1)) for n >= 2; a developer with at most one commit cannot
// switch, so the weight is 0. Throws InconsistentCounts when k exceeds the
// structural bound.
double switch_weight(std::int64_t n, std::int64_t k);

struct SwitchSequence {
    std::string developer;
    std::string service_a;
    std::string service_b;
    struct Step {
        std::string sha;
        PairTouch touched;
    };
    std::vector<Step> commits;
    std::int64_t n = 0;
    std::int64_t k = 0;
};

SwitchSequence pair_sequence(const History& history, const std::string& developer,
                             const std::string& service_a, const std::string& service_b);

struct DeveloperCoupling {
    std::string developer;
    std::string service_a;
    std::string service_b;
    std::int64_t contribution_a = 0;  // churn on service_a within the pair sequence
    std::int64_t contribution_b = 0;
    std::int64_t n = 0;
    std::int64_t k = 0;
    double switch_weight = 0.0;
    double oc = 0.0;  // harmonic_mean(contributions) * switch_weight
};

DeveloperCoupling developer_oc(const History& history, const std::string& developer,
                               const std::string& service_a, const std::string& service_b);

// Every developer in both teams of the pair, with their coupling detail.
std::vector<DeveloperCoupling> pair_diagnostics(const History& history,
                                                const std::string& service_a,
                                                const std::string& service_b);

enum class CouplingBand { VeryHigh, High, Loose, VeryLoose };
const char* band_name(CouplingBand band);
CouplingBand classify(double oc);  // boundaries inclusive on the higher band

struct CouplingMatrix {
    std::vector<std::string> services;               // sorted
    std::vector<std::vector<double>> values;         // symmetric, zero diagonal
    std::vector<std::vector<int>> shared_devs;       // p per pair
    std::vector<std::vector<CouplingBand>> bands;

    std::size_t size() const { return services.size(); }
    std::optional<std::size_t> index_of(const std::string& service) const;
    double at(const std::string& service_a, const std::string& service_b) const;
};

// Pairwise coupling over the whole history, or over commits strictly before
// `cutoff` when given. Teams are re-derived from the filtered commits.
CouplingMatrix coupling_matrix(const History& history,
                               std::optional<UnixTime> cutoff = std::nullopt);

void write_matrix_csv(std::ostream& out, const CouplingMatrix& matrix);
std::string matrix_to_json(const CouplingMatrix& matrix);
CouplingMatrix matrix_from_json(const std::string& text);

}  // namespace orgcoupling
