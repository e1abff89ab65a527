#include "cli_config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>

namespace zid::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_real(std::string_view text, std::string_view what)
{
    const std::string s = trim(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        throw UsageError("invalid " + std::string(what) + " '" + std::string(text) + "'");
    return v;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path.string());
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw UsageError(path.string() + ":" + std::to_string(number) + ": expected key=value");
        std::string key = trim(std::string_view(body).substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(0, 1);
        if (key.empty())
            throw UsageError(path.string() + ":" + std::to_string(number) + ": empty key");
        entries.emplace_back(std::move(key), trim(std::string_view(body).substr(eq + 1)));
    }
    return entries;
}

std::uint64_t parse_count(std::string_view text)
{
    const std::string s = trim(text);
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) {
        errno = 0;
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
        if (errno == ERANGE) throw UsageError("count out of range '" + s + "'");
        return v;
    }
    const double v = parse_real(s, "count");
    if (v < 0 || v != std::floor(v) || v >= 18446744073709551616.0)
        throw UsageError("count must be a non-negative integer, got '" + s + "'");
    return static_cast<std::uint64_t>(v);
}

std::complex<double> parse_complex(std::string_view text)
{
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) return {parse_real(text, "complex value"), 0.0};
    return {parse_real(text.substr(0, comma), "real part"),
            parse_real(text.substr(comma + 1), "imaginary part")};
}

std::vector<std::uint64_t> parse_count_list(std::string_view text)
{
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        out.push_back(parse_count(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace zid::cli
