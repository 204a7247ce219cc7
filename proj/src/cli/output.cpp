#include "amm_lab/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace amm_lab::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

constexpr const char* kTool = "amm-lab";

}  // namespace

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string spec_comment(const std::string& command, const SpecEntries& entries) {
    std::string line = std::string("# ") + kTool + " " + command;
    for (const auto& [k, v] : entries) {
        if (v.find_first_of(" \t") != std::string::npos) {
            throw std::invalid_argument("spec value for '" + k + "' contains whitespace");
        }
        line += " " + k + "=" + v;
    }
    return line;
}

std::pair<std::string, SpecEntries> parse_spec_comment(const std::string& line) {
    std::istringstream in(line);
    std::string hash, tool, command;
    if (!(in >> hash >> tool >> command) || hash != "#" || tool != kTool) {
        throw std::invalid_argument("not an amm-lab spec line");
    }
    SpecEntries entries;
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("malformed spec entry '" + tok + "'");
        }
        entries.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
    return {command, entries};
}

SpecEntries read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    SpecEntries entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key=value");
        }
        std::string key = trim(t.substr(0, eq));
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        if (key.empty()) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
        }
        entries.emplace_back(key, trim(t.substr(eq + 1)));
    }
    return entries;
}

}  // namespace amm_lab::cli
