#pragma once

// Sign scans of the Polya sum P(x) = sum_{n<=x} lambda(n) and the Turan sum
// T(x) = sum_{n<=x} lambda(n)/n, with resumable checkpoints.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "zid/compensated.hpp"
#include "zid/liouville.hpp"

namespace zid {

struct SignScanReport {
    std::uint64_t limit = 0;
    // Polya: smallest x in [2, limit] with P(x) > 0.
    // Turan: smallest n in [1, limit] with T(n) <= 0.
    std::optional<std::uint64_t> first_violation;
    double min_value = 0.0;
    std::uint64_t argmin = 0;  // smallest index attaining min_value
    std::uint64_t sign_change_count = 0;

    friend bool operator==(const SignScanReport&, const SignScanReport&) = default;
};

// Running state of one scan. Zeros never count as a sign change; a change
// is recorded when the sign differs from the last non-zero sign.
struct ScanTracker {
    SignScanReport report;
    int last_sign = 0;
    bool started = false;

    void observe(std::uint64_t x, double value, bool violation);
};

// Complete state of a combined P/T scan, written to checkpoint files.
struct ScanState {
    std::uint64_t limit = 0;
    std::uint64_t segment_size = 0;
    std::optional<std::uint64_t> last_completed_segment;
    std::int64_t polya_sum = 0;
    CompensatedSum turan_sum;
    ScanTracker polya;
    ScanTracker turan;

    friend bool operator==(const ScanState&, const ScanState&);
};

// Plain text, one `key value` pair per line; reals in hex-float.
void write_checkpoint(std::ostream& out, const ScanState& state);
ScanState read_checkpoint(std::istream& in);

struct ScanOptions {
    SieveOptions sieve;
    std::optional<std::filesystem::path> checkpoint;
    std::uint64_t checkpoint_every = 16;  // segments between checkpoint writes
    // Stop after this many newly processed segments (simulates interruption).
    std::optional<std::uint64_t> stop_after_segments;
};

struct ScanResult {
    SignScanReport polya;
    SignScanReport turan;
    bool complete = true;
    std::uint64_t resumed_from_segment = 0;
};

// One pass over [1, limit] computing both reports. If options.checkpoint
// names an existing file that matches (limit, segment size), the scan
// resumes from it; the file is rewritten periodically and at the end.
ScanResult scan_sums(std::uint64_t limit, const ScanOptions& options = {});

SignScanReport scan_polya(std::uint64_t limit, const SieveOptions& sieve = {});
SignScanReport scan_turan(std::uint64_t limit, const SieveOptions& sieve = {});

// CSV rows `n,lambda,P,T` for n in [1, limit] with n % stride == 0.
void write_liouville_csv(std::ostream& out, std::uint64_t limit, std::uint64_t stride,
                         const SieveOptions& sieve = {});

}  // namespace zid
