#pragma once

#include "orgcoupling/types.hpp"

#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace orgcoupling {

struct LedgerEntry {
    std::int64_t contribution = 0;  // churn lines credited to (service, developer)
    std::int64_t commit_count = 0;  // commits by the developer touching the service
};

// Per-service, per-developer contribution totals. A developer who touched a
// service only through zero-churn (binary) files still gets an entry: team
// membership is about touching, contribution value about churn.
struct ContributionLedger {
    std::map<std::string, std::map<std::string, LedgerEntry>> per_service;

    bool has_service(const std::string& service) const {
        return per_service.count(service) != 0;
    }
    std::int64_t service_total(const std::string& service) const;
};

ContributionLedger build_ledger(const History& history);

enum class Role { Teamleader, Major, Minor };
const char* role_name(Role role);

struct OwnershipEntry {
    std::string developer;
    std::int64_t contribution = 0;
    double ownership = 0.0;  // fraction of the service's total churn
    Role role = Role::Minor;
};

struct OwnershipProfile {
    std::string service;
    std::int64_t total_contribution = 0;
    std::vector<OwnershipEntry> entries;  // ownership descending, developer tiebreak
};

// Throws UnknownService / ZeroContribution. Every maximal-share developer is
// a Teamleader (ties allowed); other developers holding at least 5% of the
// churn are Major, the rest Minor. The 5% test is exact integer arithmetic.
OwnershipProfile ownership_profile(const ContributionLedger& ledger,
                                   const std::string& service);

std::set<std::string> team_members(const ContributionLedger& ledger,
                                   const std::string& service);

void write_ownership_csv(std::ostream& out, const OwnershipProfile& profile);

// JSON document listing teamleaders and major contributors per service.
std::string ownership_report_json(const std::vector<OwnershipProfile>& profiles);

}  // namespace orgcoupling
