#include "orgcoupling/service_map.hpp"

#include "orgcoupling/glob.hpp"

#include <fstream>
#include <sstream>

namespace orgcoupling {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

}  // namespace

ServiceMap parse_service_map(std::istream& in, const std::string& source_name) {
    ServiceMap map;
    std::string line;
    std::size_t lineno = 0;
    const auto fail = [&](const std::string& what) {
        throw ParseError(source_name + ":" + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "unmapped_policy") {
            if (tokens.size() != 2) fail("unmapped_policy takes one value");
            if (tokens[1] == "ignore") map.unmapped_policy = UnmappedPolicy::Ignore;
            else if (tokens[1] == "error") map.unmapped_policy = UnmappedPolicy::Error;
            else fail("unmapped_policy must be 'ignore' or 'error'");
        } else if (tokens[0] == "rule") {
            if (tokens.size() != 4) fail("expected 'rule <service> <repo-glob> <path-glob>'");
            if (tokens[1] == kUnmappedService)
                fail("'" + std::string(kUnmappedService) + "' is a reserved service name");
            map.rules.push_back({tokens[1], tokens[2], tokens[3]});
        } else {
            fail("unknown directive '" + tokens[0] + "'");
        }
    }
    if (map.rules.empty())
        throw ParseError(source_name + ": service map declares no rules");
    return map;
}

ServiceMap load_service_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open service map: " + path);
    return parse_service_map(in, path);
}

std::string resolve_service(const std::string& repo, const std::string& path,
                            const ServiceMap& map) {
    for (const auto& rule : map.rules) {
        if (glob_match(rule.repo_pattern, repo) && glob_match(rule.path_pattern, path))
            return rule.service;
    }
    if (map.unmapped_policy == UnmappedPolicy::Error)
        throw UnmappedFile("no service rule matches " + repo + ":" + path);
    return kUnmappedService;
}

}  // namespace orgcoupling
