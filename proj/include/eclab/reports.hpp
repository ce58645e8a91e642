#pragma once

#include <cstdint>
#include <string>

#include "eclab/rtm.hpp"

namespace eclab::reports {

/// One experiment artifact: a human summary line, a JSON document and a
/// CSV table (stable columns, documented in the header row).
struct Artifact {
    std::string summary;
    std::string json;
    std::string csv;
    int exit_code = 0;
};

TuringMachine resolve_machine(const std::string& spec_or_path, int tape_length, bool duplicated);

Artifact compile_report(const TuringMachine& tm,
                        const std::string& matrix_prefix = "");
Artifact spectrum_report(const TuringMachine& tm, double tol);
Artifact collapse_report(int length, const std::string& cls, std::int64_t mc_samples,
                         std::uint64_t seed);
Artifact pspace_report(const TuringMachine& plain, int tape_length, const std::string& input_bits,
                       int trials, std::uint64_t seed);
Artifact gapstats_report(int n, double beta, int seeds, std::uint64_t seed);
Artifact channel_report(int n, int m1, int m2, int m3, int offsets, int adaptive_trials,
                        int queries, std::uint64_t seed);
Artifact verify_report(const std::string& oracle_kind, int n, int runs, std::uint64_t seed);
Artifact distinguish_report(const std::string& backend, int n, std::uint64_t seed);

}  // namespace eclab::reports
