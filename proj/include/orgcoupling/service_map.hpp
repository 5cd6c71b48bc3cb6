#pragma once

#include "orgcoupling/types.hpp"

#include <istream>
#include <string>
#include <vector>

namespace orgcoupling {

struct ServiceRule {
    std::string service;
    std::string repo_pattern;  // glob over the repository slug
    std::string path_pattern;  // glob over the repo-relative file path
};

enum class UnmappedPolicy { Ignore, Error };

struct ServiceMap {
    std::vector<ServiceRule> rules;  // first match wins
    UnmappedPolicy unmapped_policy = UnmappedPolicy::Ignore;
};

// Text format, one directive per line ('#' starts a comment):
//   unmapped_policy ignore|error
//   rule <service> <repo-glob> <path-glob>
ServiceMap parse_service_map(std::istream& in, const std::string& source_name);
ServiceMap load_service_map(const std::string& path);

// First rule (declaration order) whose patterns match both slug and path.
// Returns kUnmappedService when nothing matches and the policy is Ignore,
// throws UnmappedFile when the policy is Error.
std::string resolve_service(const std::string& repo, const std::string& path,
                            const ServiceMap& map);

}  // namespace orgcoupling
