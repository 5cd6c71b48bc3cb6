#include "orgcoupling/identity.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace orgcoupling {

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::string canonicalize_identity(const std::string& author_email,
                                  const std::string& author_name,
                                  const AliasMap& aliases) {
    if (!author_email.empty()) {
        const std::string email = lowercase(author_email);
        const auto alias = aliases.find(email);
        if (alias != aliases.end()) return alias->second;
        return email.substr(0, email.find('@'));
    }
    if (!author_name.empty()) return lowercase(author_name);
    throw EmptyIdentity("commit has neither an author email nor an author name");
}

AliasMap parse_aliases(std::istream& in, const std::string& source_name) {
    AliasMap aliases;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(source_name + ":" + std::to_string(lineno) +
                             ": expected 'raw-email = canonical-id'");
        const std::string raw = lowercase(trim(line.substr(0, eq)));
        const std::string canonical = trim(line.substr(eq + 1));
        if (raw.empty() || canonical.empty())
            throw ParseError(source_name + ":" + std::to_string(lineno) +
                             ": empty side in alias rule");
        aliases[raw] = canonical;
    }
    return aliases;
}

AliasMap load_alias_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open alias file: " + path);
    return parse_aliases(in, path);
}

}  // namespace orgcoupling
