#pragma once

#include <iosfwd>

#include "unimodal/config.hpp"

namespace unimodal::cli {

// Each command writes its report to `out` (or to files named by cfg.out) and
// returns the process exit code.
int run_kneading(const RunConfig& cfg, std::ostream& out);
int run_bisect(const RunConfig& cfg, std::ostream& out);
int run_complexity(const RunConfig& cfg, std::ostream& out);
int run_nest(const RunConfig& cfg, std::ostream& out);
int run_wild_verify(const RunConfig& cfg, std::ostream& out);
int run_odometer(const RunConfig& cfg, std::ostream& out);

int run(const RunConfig& cfg, std::ostream& out);

}  // namespace unimodal::cli
