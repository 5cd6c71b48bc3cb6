#include "orgcoupling/glob.hpp"

#include <string>
#include <vector>

namespace orgcoupling {

namespace {

std::vector<std::string_view> split_segments(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t slash = s.find('/', start);
        if (slash == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, slash - start));
        start = slash + 1;
    }
}

// Classic iterative wildcard match with single-star backtracking.
bool segment_match(std::string_view pat, std::string_view txt) {
    std::size_t p = 0, t = 0;
    std::size_t star = std::string_view::npos, mark = 0;
    while (t < txt.size()) {
        if (p < pat.size() && (pat[p] == '?' || pat[p] == txt[t])) {
            ++p;
            ++t;
        } else if (p < pat.size() && pat[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pat.size() && pat[p] == '*') ++p;
    return p == pat.size();
}

bool match_segments(const std::vector<std::string_view>& pat, std::size_t pi,
                    const std::vector<std::string_view>& txt, std::size_t ti) {
    if (pi == pat.size()) return ti == txt.size();
    if (pat[pi] == "**") {
        for (std::size_t skip = ti; skip <= txt.size(); ++skip) {
            if (match_segments(pat, pi + 1, txt, skip)) return true;
        }
        return false;
    }
    if (ti == txt.size()) return false;
    return segment_match(pat[pi], txt[ti]) && match_segments(pat, pi + 1, txt, ti + 1);
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view text) {
    const auto pat = split_segments(pattern);
    const auto txt = split_segments(text);
    return match_segments(pat, 0, txt, 0);
}

}  // namespace orgcoupling
