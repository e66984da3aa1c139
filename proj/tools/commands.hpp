#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace hinfty::cli {

struct RunConfig {
    std::string subcommand;
    int n = 2;
    std::vector<int> n_list;
    double t = 0.5;
    bool t_set = false;
    std::vector<double> t_list;
    int K = 0;
    std::string u_grid;
    double u = 0.0;
    bool u_set = false;
    double tol = 0.0;
    std::uint64_t seed = 1;
    std::string out;
    std::string tree;
    std::vector<double> lam;
    int l = 2;
    int m = 0;
    double R = 3.0;
    int count = 0;
};

/// Checks ranges, fills per-subcommand defaults. Throws ConfigError.
void finalize(RunConfig& c);

/// Writes the CSV for c. Throws InvariantError after writing when a checked
/// invariant fails.
void run(const RunConfig& c, std::ostream& out);

/// "a:b:step" or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

} // namespace hinfty::cli
