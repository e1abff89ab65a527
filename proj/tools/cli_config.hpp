#pragma once

// Helpers shared by the command-line front end: the flat key=value config
// file and the lenient number formats accepted on the command line.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zid::cli {

// Bad flags, bad values, bad combinations: exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// `key = value` per line; `#` starts a comment; blank lines ignored. Keys
// are option names without the leading dashes. Order is preserved.
std::vector<std::pair<std::string, std::string>> read_config(const std::filesystem::path& path);

// Non-negative integer, also written as 1e6, 2.5e3 or 1000000.0. Rejects
// fractions and values beyond 2^64.
std::uint64_t parse_count(std::string_view text);

// "RE" or "RE,IM".
std::complex<double> parse_complex(std::string_view text);

// Comma-separated counts, e.g. "1e4,1e5,1e6".
std::vector<std::uint64_t> parse_count_list(std::string_view text);

}  // namespace zid::cli
