#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "stri/config.hpp"

namespace stri::cli {

// Dispatch one experiment; writes CSV (and for `fit` a text report plus SVG)
// into out_dir.  Returns a process exit status: 0 on success, 1 on invalid
// config, 2 when some sweep cells failed (failures are recorded per cell in
// errors.csv).  Outputs are deterministic functions of (config, seeds).
int run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

struct FitCell {
    int d = 0;
    double p = 0;
    std::string theta_label;
    std::string family;
    double measured = 0;
    double predicted = 0;
    double tolerance = 0;
    bool eps_loss = false;
    std::string verdict;  // PASS | FAIL | REPORT-ONLY
};

// Compare measured slopes in strichartz CSVs against the predicted-exponent
// table; refuses inputs with mixed config hashes.
std::vector<FitCell> fit_report(const std::vector<std::filesystem::path>& inputs,
                                double tolerance, std::ostream& report);

void write_fit_svg(const std::filesystem::path& path, const std::vector<FitCell>& cells,
                   const std::vector<std::filesystem::path>& inputs);

}  // namespace stri::cli
