#include "turbofan/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "turbofan/errors.hpp"

namespace turbofan {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    std::string t = strip(s);
    if (t.empty()) throw ConfigError("expected a number, got empty field");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw ConfigError("not a number: '" + s + "'");
    return v;
}

long long parse_int(const std::string& s) {
    std::string t = strip(s);
    if (t.empty()) throw ConfigError("expected an integer, got empty field");
    char* end = nullptr;
    long long v = std::strtoll(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size())
        throw ConfigError("not an integer: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == delim) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::size_t Table::col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw ConfigError("missing column: " + name);
}

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    Table t;
    std::string line;
    while (std::getline(in, line)) {
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        std::vector<std::string> cells = split(s, ',');
        for (std::string& c : cells) c = strip(c);
        if (t.header.empty()) {
            t.header = std::move(cells);
        } else {
            if (cells.size() != t.header.size())
                throw ConfigError(path + ": row with " +
                                  std::to_string(cells.size()) +
                                  " fields, expected " +
                                  std::to_string(t.header.size()));
            t.rows.push_back(std::move(cells));
        }
    }
    if (t.header.empty()) throw ConfigError(path + ": no header row");
    return t;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failure on " + path);
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failure on " + path);
}

} // namespace turbofan
