#pragma once

#include "orgcoupling/types.hpp"

#include <istream>
#include <map>
#include <string>

namespace orgcoupling {

// Raw lowercased email -> canonical identity.
using AliasMap = std::map<std::string, std::string>;

// Canonical identity of a commit author. Alias lookup first (keyed by the
// lowercased full email), then the lowercased local part of the email, then
// the lowercased display name. Throws EmptyIdentity when all inputs are empty.
std::string canonicalize_identity(const std::string& author_email,
                                  const std::string& author_name,
                                  const AliasMap& aliases);

// Alias file: lines of "raw-email = canonical-id", '#' starts a comment.
AliasMap parse_aliases(std::istream& in, const std::string& source_name);
AliasMap load_alias_file(const std::string& path);

}  // namespace orgcoupling
