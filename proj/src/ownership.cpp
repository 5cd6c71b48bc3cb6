#include "orgcoupling/ownership.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>

namespace orgcoupling {

std::int64_t ContributionLedger::service_total(const std::string& service) const {
    const auto it = per_service.find(service);
    if (it == per_service.end()) return 0;
    std::int64_t total = 0;
    for (const auto& [developer, entry] : it->second) total += entry.contribution;
    return total;
}

ContributionLedger build_ledger(const History& history) {
    ContributionLedger ledger;
    for (const auto& commit : history.commits) {
        std::set<std::string> touched;
        for (const auto& change : commit.changes) {
            if (!change.mapped()) continue;
            ledger.per_service[change.service][commit.author_canonical].contribution +=
                change.churn();
            touched.insert(change.service);
        }
        for (const auto& service : touched)
            ledger.per_service[service][commit.author_canonical].commit_count += 1;
    }
    return ledger;
}

const char* role_name(Role role) {
    switch (role) {
        case Role::Teamleader: return "Teamleader";
        case Role::Major: return "Major";
        case Role::Minor: return "Minor";
    }
    return "?";
}

OwnershipProfile ownership_profile(const ContributionLedger& ledger,
                                   const std::string& service) {
    const auto it = ledger.per_service.find(service);
    if (it == ledger.per_service.end())
        throw UnknownService("service not present in ledger: " + service);

    OwnershipProfile profile;
    profile.service = service;
    for (const auto& [developer, entry] : it->second)
        profile.total_contribution += entry.contribution;
    if (profile.total_contribution <= 0)
        throw ZeroContribution("service has zero total churn: " + service);

    std::int64_t max_contribution = 0;
    for (const auto& [developer, entry] : it->second)
        max_contribution = std::max(max_contribution, entry.contribution);

    for (const auto& [developer, entry] : it->second) {
        OwnershipEntry row;
        row.developer = developer;
        row.contribution = entry.contribution;
        row.ownership = static_cast<double>(entry.contribution) /
                        static_cast<double>(profile.total_contribution);
        if (entry.contribution == max_contribution) row.role = Role::Teamleader;
        else if (entry.contribution * 20 >= profile.total_contribution) row.role = Role::Major;
        else row.role = Role::Minor;
        profile.entries.push_back(std::move(row));
    }
    std::sort(profile.entries.begin(), profile.entries.end(),
              [](const OwnershipEntry& a, const OwnershipEntry& b) {
                  if (a.contribution != b.contribution) return a.contribution > b.contribution;
                  return a.developer < b.developer;
              });
    return profile;
}

std::set<std::string> team_members(const ContributionLedger& ledger,
                                   const std::string& service) {
    const auto it = ledger.per_service.find(service);
    if (it == ledger.per_service.end())
        throw UnknownService("service not present in ledger: " + service);
    std::set<std::string> team;
    for (const auto& [developer, entry] : it->second) team.insert(developer);
    return team;
}

void write_ownership_csv(std::ostream& out, const OwnershipProfile& profile) {
    out << "developer,contribution,ownership,role\n";
    char buf[32];
    for (const auto& entry : profile.entries) {
        std::snprintf(buf, sizeof(buf), "%.6f", entry.ownership);
        out << entry.developer << ',' << entry.contribution << ',' << buf << ','
            << role_name(entry.role) << '\n';
    }
}

std::string ownership_report_json(const std::vector<OwnershipProfile>& profiles) {
    using nlohmann::json;
    json services = json::array();
    for (const auto& profile : profiles) {
        json leaders = json::array();
        json majors = json::array();
        std::size_t minors = 0;
        for (const auto& entry : profile.entries) {
            const json row{{"developer", entry.developer},
                           {"contribution", entry.contribution},
                           {"ownership", entry.ownership}};
            if (entry.role == Role::Teamleader) leaders.push_back(row);
            else if (entry.role == Role::Major) majors.push_back(row);
            else ++minors;
        }
        services.push_back(json{{"service", profile.service},
                                {"total_contribution", profile.total_contribution},
                                {"teamleaders", std::move(leaders)},
                                {"major_contributors", std::move(majors)},
                                {"minor_count", minors},
                                {"team_size", profile.entries.size()}});
    }
    return json{{"services", std::move(services)}}.dump(2) + "\n";
}

}  // namespace orgcoupling
