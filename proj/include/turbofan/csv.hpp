#pragma once

#include <string>
#include <vector>

namespace turbofan {

// Shortest exact decimal form of a double (%.17g); parses back bit-identical.
std::string g17(double v);

// strtod with full-string validation; throws ConfigError on junk.
double parse_double(const std::string& s);
long long parse_int(const std::string& s);

std::vector<std::string> split(const std::string& line, char delim);
std::string strip(const std::string& s);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::size_t col(const std::string& name) const; // throws ConfigError
};

// Reads a comma-separated file with one header row. Blank lines and lines
// starting with '#' are skipped. Throws IoError if unreadable, ConfigError on
// ragged rows.
Table read_table(const std::string& path);

// Slurps a whole file; throws IoError.
std::string read_file(const std::string& path);

// Writes content atomically enough for our purposes; throws IoError.
void write_file(const std::string& path, const std::string& content);

} // namespace turbofan
