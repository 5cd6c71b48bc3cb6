#include "orgcoupling/coupling.hpp"

#include "orgcoupling/history.hpp"
#include "orgcoupling/ownership.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace orgcoupling {

std::int64_t count_switches(const std::vector<PairTouch>& touched_seq) {
    for (const auto& touched : touched_seq)
        if (!touched.any())
            throw EmptyTouchSet("pair sequence contains a commit touching neither service");
    std::int64_t k = 0;
    for (std::size_t i = 1; i < touched_seq.size(); ++i) {
        const PairTouch cur = touched_seq[i];
        const PairTouch prev = touched_seq[i - 1];
        if (cur.both()) k += 2;
        else if (cur.a && !prev.a) k += 1;
        else if (cur.b && !prev.b) k += 1;
    }
    return k;
}

double switch_weight(std::int64_t n, std::int64_t k) {
    const std::int64_t bound = 2 * std::max<std::int64_t>(n - 1, 0);
    if (k < 0 || k > bound)
        throw InconsistentCounts("switch count " + std::to_string(k) +
                                 " outside [0, " + std::to_string(bound) + "] for n = " +
                                 std::to_string(n));
    if (n <= 1) return 0.0;
    return static_cast<double>(k) / static_cast<double>(2 * (n - 1));
}

namespace {

struct PairStep {
    std::string sha;
    PairTouch touched;
    std::int64_t churn_a = 0;
    std::int64_t churn_b = 0;
};

// Shared fold so the per-operation entry points and the matrix assembly
// produce bit-identical numbers.
DeveloperCoupling fold_pair_steps(const std::string& developer,
                                  const std::string& service_a,
                                  const std::string& service_b,
                                  const std::vector<PairStep>& steps) {
    DeveloperCoupling dc;
    dc.developer = developer;
    dc.service_a = service_a;
    dc.service_b = service_b;
    std::vector<PairTouch> touched;
    touched.reserve(steps.size());
    for (const auto& step : steps) {
        touched.push_back(step.touched);
        dc.contribution_a += step.churn_a;
        dc.contribution_b += step.churn_b;
    }
    dc.n = static_cast<std::int64_t>(steps.size());
    dc.k = count_switches(touched);
    dc.switch_weight = switch_weight(dc.n, dc.k);
    const double ca = static_cast<double>(dc.contribution_a);
    const double cb = static_cast<double>(dc.contribution_b);
    const double harmonic = (ca + cb) > 0.0 ? 2.0 * ca * cb / (ca + cb) : 0.0;
    dc.oc = harmonic * dc.switch_weight;
    return dc;
}

std::vector<PairStep> steps_from_history(const History& history,
                                         const std::string& developer,
                                         const std::string& service_a,
                                         const std::string& service_b) {
    if (service_a == service_b)
        throw Error("coupling pair must name two distinct services");
    std::vector<PairStep> steps;
    for (const auto& commit : history.commits) {
        if (commit.author_canonical != developer) continue;
        PairStep step;
        step.sha = commit.sha;
        for (const auto& change : commit.changes) {
            if (change.service == service_a) {
                step.touched.a = true;
                step.churn_a += change.churn();
            } else if (change.service == service_b) {
                step.touched.b = true;
                step.churn_b += change.churn();
            }
        }
        if (step.touched.any()) steps.push_back(std::move(step));
    }
    return steps;
}

}  // namespace

SwitchSequence pair_sequence(const History& history, const std::string& developer,
                             const std::string& service_a, const std::string& service_b) {
    const auto steps = steps_from_history(history, developer, service_a, service_b);
    SwitchSequence seq;
    seq.developer = developer;
    seq.service_a = service_a;
    seq.service_b = service_b;
    std::vector<PairTouch> touched;
    for (const auto& step : steps) {
        seq.commits.push_back({step.sha, step.touched});
        touched.push_back(step.touched);
    }
    seq.n = static_cast<std::int64_t>(seq.commits.size());
    seq.k = count_switches(touched);
    return seq;
}

DeveloperCoupling developer_oc(const History& history, const std::string& developer,
                               const std::string& service_a, const std::string& service_b) {
    return fold_pair_steps(developer, service_a, service_b,
                           steps_from_history(history, developer, service_a, service_b));
}

std::vector<DeveloperCoupling> pair_diagnostics(const History& history,
                                                const std::string& service_a,
                                                const std::string& service_b) {
    const auto ledger = build_ledger(history);
    std::vector<DeveloperCoupling> diagnostics;
    if (!ledger.has_service(service_a) || !ledger.has_service(service_b))
        return diagnostics;
    const auto team_a = team_members(ledger, service_a);
    const auto team_b = team_members(ledger, service_b);
    for (const auto& developer : team_a) {
        if (!team_b.count(developer)) continue;
        diagnostics.push_back(developer_oc(history, developer, service_a, service_b));
    }
    return diagnostics;
}

const char* band_name(CouplingBand band) {
    switch (band) {
        case CouplingBand::VeryHigh: return "VeryHigh";
        case CouplingBand::High: return "High";
        case CouplingBand::Loose: return "Loose";
        case CouplingBand::VeryLoose: return "VeryLoose";
    }
    return "?";
}

CouplingBand classify(double oc) {
    if (oc < 0.0 || std::isnan(oc))
        throw NegativeValue("coupling value must be non-negative, got " + std::to_string(oc));
    if (oc >= 10000.0) return CouplingBand::VeryHigh;
    if (oc >= 1000.0) return CouplingBand::High;
    if (oc >= 100.0) return CouplingBand::Loose;
    return CouplingBand::VeryLoose;
}

std::optional<std::size_t> CouplingMatrix::index_of(const std::string& service) const {
    const auto it = std::find(services.begin(), services.end(), service);
    if (it == services.end()) return std::nullopt;
    return static_cast<std::size_t>(it - services.begin());
}

double CouplingMatrix::at(const std::string& service_a, const std::string& service_b) const {
    const auto ia = index_of(service_a);
    const auto ib = index_of(service_b);
    if (!ia || !ib) throw UnknownService("service not in matrix: " +
                                         (!ia ? service_a : service_b));
    return values[*ia][*ib];
}

CouplingMatrix coupling_matrix(const History& history, std::optional<UnixTime> cutoff) {
    const History* view = &history;
    History filtered;
    if (cutoff) {
        filtered = filter_by_time(history, std::nullopt, cutoff);
        view = &filtered;
    }
    if (view->commits.empty())
        throw Error("no commits to analyze" +
                    std::string(cutoff ? " before the cutoff" : ""));

    CouplingMatrix matrix;
    matrix.services.assign(view->services.begin(), view->services.end());
    const std::size_t count = matrix.services.size();
    matrix.values.assign(count, std::vector<double>(count, 0.0));
    matrix.shared_devs.assign(count, std::vector<int>(count, 0));
    matrix.bands.assign(count, std::vector<CouplingBand>(count, CouplingBand::VeryLoose));

    // Index each developer's commits once: (per-service churn, touch set).
    struct DevCommit {
        const CommitRecord* commit;
        std::map<std::string, std::int64_t> service_churn;
    };
    std::map<std::string, std::vector<DevCommit>> by_developer;
    for (const auto& commit : view->commits) {
        DevCommit entry;
        entry.commit = &commit;
        bool touches_mapped = false;
        for (const auto& change : commit.changes) {
            if (!change.mapped()) continue;
            entry.service_churn[change.service] += change.churn();
            touches_mapped = true;
        }
        if (touches_mapped)
            by_developer[commit.author_canonical].push_back(std::move(entry));
    }

    const auto ledger = build_ledger(*view);
    std::map<std::string, std::set<std::string>> teams;
    for (const auto& service : matrix.services) teams[service] = team_members(ledger, service);

    for (std::size_t ia = 0; ia < count; ++ia) {
        const auto& service_a = matrix.services[ia];
        for (std::size_t ib = ia + 1; ib < count; ++ib) {
            const auto& service_b = matrix.services[ib];
            double sum = 0.0;
            int shared = 0;
            for (const auto& developer : teams[service_a]) {
                if (!teams[service_b].count(developer)) continue;
                ++shared;
                std::vector<PairStep> steps;
                for (const auto& entry : by_developer[developer]) {
                    PairStep step;
                    step.sha = entry.commit->sha;
                    const auto churn_a = entry.service_churn.find(service_a);
                    const auto churn_b = entry.service_churn.find(service_b);
                    if (churn_a != entry.service_churn.end()) {
                        step.touched.a = true;
                        step.churn_a = churn_a->second;
                    }
                    if (churn_b != entry.service_churn.end()) {
                        step.touched.b = true;
                        step.churn_b = churn_b->second;
                    }
                    if (step.touched.any()) steps.push_back(std::move(step));
                }
                sum += fold_pair_steps(developer, service_a, service_b, steps).oc;
            }
            matrix.values[ia][ib] = matrix.values[ib][ia] = sum;
            matrix.shared_devs[ia][ib] = matrix.shared_devs[ib][ia] = shared;
            const CouplingBand band = classify(sum);
            matrix.bands[ia][ib] = matrix.bands[ib][ia] = band;
        }
    }
    return matrix;
}

void write_matrix_csv(std::ostream& out, const CouplingMatrix& matrix) {
    out << "service";
    for (const auto& service : matrix.services) out << ',' << service;
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << matrix.services[i];
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.2f", matrix.values[i][j]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

std::string matrix_to_json(const CouplingMatrix& matrix) {
    using nlohmann::json;
    json pairs = json::array();
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = i + 1; j < matrix.size(); ++j) {
            pairs.push_back(json{{"a", matrix.services[i]},
                                 {"b", matrix.services[j]},
                                 {"oc", matrix.values[i][j]},
                                 {"band", band_name(matrix.bands[i][j])},
                                 {"shared_developers", matrix.shared_devs[i][j]}});
        }
    }
    return json{{"services", matrix.services}, {"pairs", std::move(pairs)}}.dump(2) + "\n";
}

namespace {

CouplingBand band_from_name(const std::string& name) {
    if (name == "VeryHigh") return CouplingBand::VeryHigh;
    if (name == "High") return CouplingBand::High;
    if (name == "Loose") return CouplingBand::Loose;
    if (name == "VeryLoose") return CouplingBand::VeryLoose;
    throw ParseError("unknown coupling band: " + name);
}

}  // namespace

CouplingMatrix matrix_from_json(const std::string& text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid matrix JSON: ") + e.what());
    }
    CouplingMatrix matrix;
    if (!doc.contains("services") || !doc["services"].is_array())
        throw ParseError("matrix JSON lacks a 'services' array");
    for (const auto& service : doc["services"])
        matrix.services.push_back(service.get<std::string>());
    const std::size_t count = matrix.services.size();
    matrix.values.assign(count, std::vector<double>(count, 0.0));
    matrix.shared_devs.assign(count, std::vector<int>(count, 0));
    matrix.bands.assign(count, std::vector<CouplingBand>(count, CouplingBand::VeryLoose));
    for (const auto& pair : doc.value("pairs", json::array())) {
        const auto ia = matrix.index_of(pair.at("a").get<std::string>());
        const auto ib = matrix.index_of(pair.at("b").get<std::string>());
        if (!ia || !ib) throw ParseError("matrix JSON pair references unknown service");
        const double oc = pair.at("oc").get<double>();
        matrix.values[*ia][*ib] = matrix.values[*ib][*ia] = oc;
        const int shared = pair.value("shared_developers", 0);
        matrix.shared_devs[*ia][*ib] = matrix.shared_devs[*ib][*ia] = shared;
        const CouplingBand band = pair.contains("band")
                                      ? band_from_name(pair["band"].get<std::string>())
                                      : classify(oc);
        matrix.bands[*ia][*ib] = matrix.bands[*ib][*ia] = band;
    }
    return matrix;
}

}  // namespace orgcoupling
