#pragma once

#include "jumpweight/report.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace jw {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kCsvHeader = "equation,n,residual,tolerance,digits,branch,pass";

struct GridPoint {
    std::string A, B, s, t;
};

struct RunConfig {
    std::string command;  // moments | recurrence | verify | asymptotics | heun | sweep
    GridPoint params{"0", "1", "0.5", "1"};
    int nmax = 10;
    std::optional<int> digits;           // empty: auto
    std::optional<std::string> fd_step;  // empty: auto
    std::vector<std::string> equations;  // empty: all
    std::string format = "csv";
    std::string output;  // empty: standard output
    std::uint64_t seed = 0;
    // sweep only
    std::vector<GridPoint> grid;
    std::string sweep_command = "verify";
    int threads = 0;  // 0: hardware concurrency
};

// Exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFail = 2;

// Parse argv into cfg. Returns -1 to proceed, otherwise the exit code
// (help printed, or usage error reported on err).
int parse_args(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out,
               std::ostream& err);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// 60 + slope * nmax
int auto_digits(int nmax, int slope = 12);

// "A,B,s,t;A,B,s,t;..." (whitespace and newlines also separate points)
std::vector<GridPoint> parse_grid(const std::string& text);

// ODE sample points drawn from the seed; deterministic across platforms.
std::vector<double> sample_points(std::uint64_t seed, int n, int count, double s, double R);

bool equation_selected(const std::string& id, const std::vector<std::string>& filter);

}  // namespace jw
