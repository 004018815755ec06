#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace stri {

inline constexpr const char* kToolVersion = "0.1.0";

// One experiment run, parsed from a `key = value` config file (lists are
// comma-separated, '#' starts a comment).  The canonical serialization is
// hashed into every output artifact for provenance.
struct RunConfig {
    int version = 1;
    std::string experiment;  // moment|strichartz|multilinear|levelset|arcs|kernel|nls|fit

    int d = 2;
    std::vector<double> theta = {1.0, 1.41421356237309515};
    std::vector<std::string> theta_tags;

    double p = 8.0;
    double r = 6.0;
    std::vector<std::int64_t> N_list = {4, 8, 16};
    double t0 = 0.0, t1 = 1.0;
    std::int64_t grid_oversample_x = 4;
    std::int64_t grid_oversample_t = 64;
    std::uint64_t seed = 1;
    int random_seeds = 4;
    std::vector<std::string> families = {"all-ones", "gaussian-random"};
    int workers = 0;
    bool partial = false;  // partially irrational torus exponent table

    // nls
    int k = 1;
    int mu = 1;
    double dt = 1e-3;
    double T = 1.0;
    double amplitude = 0.05;

    // multilinear / levelset
    std::vector<std::int64_t> radii = {16, 4, 2};
    double s = 1.0;
    double delta = 0.0;        // 0 -> module default
    double eps = 0.2;
    double lambda_power = 0.8;  // levelset lambda = N^power

    // fit
    std::vector<std::string> inputs;
    double fit_tolerance = 0.2;

    static RunConfig parse_file(const std::filesystem::path& path);
    static RunConfig parse_text(const std::string& text);

    void validate() const;          // experiment-specific precondition checks
    std::string canonical() const;  // sorted key=value form
    std::uint64_t hash() const;     // FNV-1a 64 of canonical()
    std::string hash_hex() const;
    std::string theta_label() const;  // tags when present, else values
};

}  // namespace stri
