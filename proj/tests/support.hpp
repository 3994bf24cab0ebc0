// SPDX-License-Identifier: MIT
// Golden-file helpers shared by the unit suites and the acceptance binary.
#pragma once
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace slc::testing {

inline std::string data_path(const std::string& rel) { return std::string(SLC_DATA_DIR) + "/" + rel; }

inline std::string read_file(const std::string& rel) {
    std::ifstream in(data_path(rel), std::ios::binary);
    if (!in) throw std::runtime_error("missing " + rel);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Non-empty lines that are not '#' comments.
inline std::vector<std::string> golden_lines(const std::string& rel) {
    std::vector<std::string> out;
    std::istringstream in(read_file(rel));
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

inline std::vector<std::string> split(const std::string& s, char sep = ' ') {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

// "a=1 b=2" tokens into a map; tokens without '=' are skipped.
inline std::map<std::string, std::string> kv(const std::vector<std::string>& toks) {
    std::map<std::string, std::string> m;
    for (const auto& t : toks)
        if (auto eq = t.find('='); eq != std::string::npos) m[t.substr(0, eq)] = t.substr(eq + 1);
    return m;
}

}  // namespace slc::testing
