#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvb::util {

/// Error carrying a file/line context for input problems.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& file, long line, const std::string& what)
        : std::runtime_error(file + (line >= 0 ? ":" + std::to_string(line) : "") + ": " + what) {}
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct CsvTable {
    std::string path;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;               // -1 if missing
    int require_column(const std::string& name) const;       // throws InputError
};

/// Reads a comma-separated file with a mandatory header row. No quoting
/// support; fields are trimmed of surrounding whitespace. Empty lines and
/// lines starting with '#' are skipped.
CsvTable read_csv(const std::string& path);

double parse_double(const std::string& s, const std::string& file, long line);
long parse_long(const std::string& s, const std::string& file, long line);

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);
std::string lower(std::string s);

/// FNV-1a over bytes; used for config hashes and fixture checksums.
std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 0xcbf29ce484222325ull);
std::uint64_t fnv1a(const std::string& s, std::uint64_t seed = 0xcbf29ce484222325ull);
std::string hex64(std::uint64_t v);

/// Writes content to path atomically (temp file in the same directory,
/// then rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// Deterministic formatting used by all CSV emitters: shortest round-trip
/// representation capped at the given precision.
std::string fmt_double(double v, int precision = 10);

std::optional<std::string> getenv_str(const char* name);

} // namespace pvb::util
