#include "zid/scans.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>

#include "zid/errors.hpp"

namespace zid {

void ScanTracker::observe(std::uint64_t x, double value, bool violation)
{
    if (!started) {
        started = true;
        report.min_value = value;
        report.argmin = x;
    } else if (value < report.min_value) {
        report.min_value = value;
        report.argmin = x;
    }
    if (violation && !report.first_violation) report.first_violation = x;
    const int sign = (value > 0) - (value < 0);
    if (sign != 0) {
        if (last_sign != 0 && sign != last_sign) ++report.sign_change_count;
        last_sign = sign;
    }
}

bool operator==(const ScanState& a, const ScanState& b)
{
    auto tracker_eq = [](const ScanTracker& x, const ScanTracker& y) {
        return x.report == y.report && x.last_sign == y.last_sign && x.started == y.started;
    };
    return a.limit == b.limit && a.segment_size == b.segment_size &&
           a.last_completed_segment == b.last_completed_segment && a.polya_sum == b.polya_sum &&
           a.turan_sum.raw_sum() == b.turan_sum.raw_sum() &&
           a.turan_sum.compensation() == b.turan_sum.compensation() &&
           tracker_eq(a.polya, b.polya) && tracker_eq(a.turan, b.turan);
}

// ---------------------------------------------------------------------------
// Checkpoint files

namespace {

constexpr const char* kMagic = "zid-scan-checkpoint";
constexpr int kVersion = 1;

std::string hexfloat(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_hexfloat(const std::string& s)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw DomainError("checkpoint: bad real '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s)
{
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0' || s[0] == '-')
        throw DomainError("checkpoint: bad integer '" + s + "'");
    return v;
}

std::int64_t parse_i64(const std::string& s)
{
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0') throw DomainError("checkpoint: bad integer '" + s + "'");
    return v;
}

void write_tracker(std::ostream& out, const std::string& prefix, const ScanTracker& t)
{
    out << prefix << "_first_violation "
        << (t.report.first_violation ? std::to_string(*t.report.first_violation) : "none") << '\n'
        << prefix << "_min " << hexfloat(t.report.min_value) << '\n'
        << prefix << "_argmin " << t.report.argmin << '\n'
        << prefix << "_sign_changes " << t.report.sign_change_count << '\n'
        << prefix << "_last_sign " << t.last_sign << '\n'
        << prefix << "_started " << (t.started ? 1 : 0) << '\n';
}

ScanTracker read_tracker(const std::map<std::string, std::string>& kv, const std::string& prefix,
                         std::uint64_t limit)
{
    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(prefix + "_" + key);
        if (it == kv.end()) throw DomainError("checkpoint: missing key " + prefix + "_" + key);
        return it->second;
    };
    ScanTracker t;
    t.report.limit = limit;
    const std::string& fv = get("first_violation");
    if (fv != "none") t.report.first_violation = parse_u64(fv);
    t.report.min_value = parse_hexfloat(get("min"));
    t.report.argmin = parse_u64(get("argmin"));
    t.report.sign_change_count = parse_u64(get("sign_changes"));
    t.last_sign = static_cast<int>(parse_i64(get("last_sign")));
    t.started = parse_u64(get("started")) != 0;
    return t;
}

void save_checkpoint(const std::filesystem::path& path, const ScanState& state)
{
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("checkpoint: cannot write " + tmp.string());
        write_checkpoint(out, state);
        if (!out) throw std::runtime_error("checkpoint: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

void write_checkpoint(std::ostream& out, const ScanState& s)
{
    out << kMagic << ' ' << kVersion << '\n'
        << "limit " << s.limit << '\n'
        << "segment_size " << s.segment_size << '\n'
        << "last_completed_segment "
        << (s.last_completed_segment ? std::to_string(*s.last_completed_segment) : "none") << '\n'
        << "P " << s.polya_sum << '\n'
        << "T_sum " << hexfloat(s.turan_sum.raw_sum()) << '\n'
        << "T_comp " << hexfloat(s.turan_sum.compensation()) << '\n';
    write_tracker(out, "polya", s.polya);
    write_tracker(out, "turan", s.turan);
}

ScanState read_checkpoint(std::istream& in)
{
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != kMagic || version != kVersion)
        throw DomainError("checkpoint: unrecognised header");
    std::map<std::string, std::string> kv;
    std::string key, value;
    while (in >> key >> value) kv[key] = value;
    auto get = [&](const std::string& k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end()) throw DomainError("checkpoint: missing key " + k);
        return it->second;
    };

    ScanState s;
    s.limit = parse_u64(get("limit"));
    s.segment_size = parse_u64(get("segment_size"));
    if (const std::string& last = get("last_completed_segment"); last != "none")
        s.last_completed_segment = parse_u64(last);
    s.polya_sum = parse_i64(get("P"));
    s.turan_sum = CompensatedSum(parse_hexfloat(get("T_sum")), parse_hexfloat(get("T_comp")));
    s.polya = read_tracker(kv, "polya", s.limit);
    s.turan = read_tracker(kv, "turan", s.limit);
    return s;
}

// ---------------------------------------------------------------------------
// Scans

ScanResult scan_sums(std::uint64_t limit, const ScanOptions& options)
{
    if (limit < 1) throw DomainError("scan: limit must be >= 1");
    if (limit >= (std::uint64_t{1} << 63)) throw DomainError("scan: limits above 2^63 are rejected");

    ScanState state;
    state.limit = limit;
    state.segment_size = options.sieve.segment_size;
    state.polya.report.limit = limit;
    state.turan.report.limit = limit;

    ScanResult result;
    if (options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
        std::ifstream in(*options.checkpoint);
        ScanState saved = read_checkpoint(in);
        if (saved.limit != limit || saved.segment_size != state.segment_size)
            throw DomainError("scan: checkpoint " + options.checkpoint->string() +
                              " was written for a different limit or segment size");
        state = saved;
    }
    const std::uint64_t first_segment =
        state.last_completed_segment ? *state.last_completed_segment + 1 : 0;
    result.resumed_from_segment = first_segment;

    std::uint64_t processed = 0;
    const std::uint64_t every = std::max<std::uint64_t>(1, options.checkpoint_every);
    for_each_segment(
        1, limit + 1, options.sieve,
        [&](std::uint64_t index, std::uint64_t first_n, std::span<const std::int8_t> signs) {
            for (std::size_t i = 0; i < signs.size(); ++i) {
                const std::uint64_t n = first_n + i;
                const int lambda = signs[i];
                state.polya_sum += lambda;
                state.turan_sum.add(lambda / static_cast<double>(n));
                const double t = state.turan_sum.value();
                state.turan.observe(n, t, t <= 0.0);
                if (n >= 2) {
                    const auto p = static_cast<double>(state.polya_sum);
                    state.polya.observe(n, p, state.polya_sum > 0);
                }
            }
            state.last_completed_segment = index;
            ++processed;
            if (options.checkpoint && processed % every == 0)
                save_checkpoint(*options.checkpoint, state);
            if (options.stop_after_segments && processed >= *options.stop_after_segments) {
                result.complete = index + 1 >= (limit + state.segment_size - 1) / state.segment_size;
                return false;
            }
            return true;
        },
        first_segment);

    if (options.checkpoint) save_checkpoint(*options.checkpoint, state);
    result.polya = state.polya.report;
    result.turan = state.turan.report;
    return result;
}

SignScanReport scan_polya(std::uint64_t limit, const SieveOptions& sieve)
{
    if (limit < 2) throw DomainError("scan_polya: limit must be >= 2");
    ScanOptions options;
    options.sieve = sieve;
    return scan_sums(limit, options).polya;
}

SignScanReport scan_turan(std::uint64_t limit, const SieveOptions& sieve)
{
    if (limit < 1) throw DomainError("scan_turan: limit must be >= 1");
    ScanOptions options;
    options.sieve = sieve;
    return scan_sums(limit, options).turan;
}

void write_liouville_csv(std::ostream& out, std::uint64_t limit, std::uint64_t stride,
                         const SieveOptions& sieve)
{
    if (limit < 1) throw DomainError("csv: limit must be >= 1");
    if (stride < 1) throw DomainError("csv: stride must be >= 1");
    out << "n,lambda,P,T\n";
    std::int64_t p = 0;
    CompensatedSum t;
    char line[128];
    for_each_segment(1, limit + 1, sieve,
                     [&](std::uint64_t, std::uint64_t first_n, std::span<const std::int8_t> signs) {
                         for (std::size_t i = 0; i < signs.size(); ++i) {
                             const std::uint64_t n = first_n + i;
                             p += signs[i];
                             t.add(signs[i] / static_cast<double>(n));
                             if (n % stride == 0) {
                                 std::snprintf(line, sizeof line, "%" PRIu64 ",%d,%" PRId64 ",%.17g\n",
                                               n, static_cast<int>(signs[i]), p, t.value());
                                 out << line;
                             }
                         }
                         return true;
                     });
}

}  // namespace zid
