#include "orgcoupling/oracle.hpp"

#include <set>
#include <vector>

namespace orgcoupling {

double oracle_oc(const History& history, const std::string& service_a,
                 const std::string& service_b) {
    // Teams: everyone with at least one commit touching the service.
    std::set<std::string> team_a;
    std::set<std::string> team_b;
    for (const auto& commit : history.commits) {
        for (const auto& change : commit.changes) {
            if (change.service == service_a) team_a.insert(commit.author_canonical);
            if (change.service == service_b) team_b.insert(commit.author_canonical);
        }
    }

    double total = 0.0;
    for (const auto& developer : team_a) {
        if (!team_b.count(developer)) continue;

        struct Step {
            bool touches_a = false;
            bool touches_b = false;
            long long churn_a = 0;
            long long churn_b = 0;
        };
        std::vector<Step> sequence;
        for (const auto& commit : history.commits) {
            if (commit.author_canonical != developer) continue;
            Step step;
            for (const auto& change : commit.changes) {
                if (change.service == service_a) {
                    step.touches_a = true;
                    step.churn_a += change.additions + change.deletions;
                }
                if (change.service == service_b) {
                    step.touches_b = true;
                    step.churn_b += change.additions + change.deletions;
                }
            }
            if (step.touches_a || step.touches_b) sequence.push_back(step);
        }

        long long switches = 0;
        for (std::size_t i = 1; i < sequence.size(); ++i) {
            const Step& cur = sequence[i];
            const Step& prev = sequence[i - 1];
            if (cur.touches_a && cur.touches_b) switches += 2;
            else if (cur.touches_a && !prev.touches_a) switches += 1;
            else if (cur.touches_b && !prev.touches_b) switches += 1;
        }

        const long long n = static_cast<long long>(sequence.size());
        const double weight =
            n >= 2 ? static_cast<double>(switches) / (2.0 * static_cast<double>(n - 1)) : 0.0;

        long long sum_a = 0;
        long long sum_b = 0;
        for (const auto& step : sequence) {
            sum_a += step.churn_a;
            sum_b += step.churn_b;
        }
        const double ca = static_cast<double>(sum_a);
        const double cb = static_cast<double>(sum_b);
        const double harmonic = (ca + cb) > 0.0 ? 2.0 * ca * cb / (ca + cb) : 0.0;
        total += harmonic * weight;
    }
    return total;
}

}  // namespace orgcoupling
