#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hjhomog/io.hpp"

namespace hjh {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AcceptanceOptions {
    RunConfig config;
    bool write_artifacts = true;
};

/** Runs the full acceptance suite (one pass/fail line per criterion on `log`)
 *  and returns the per-criterion results. Artifacts and the manifest go to
 *  config.out_dir. */
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& log);

bool all_pass(const std::vector<CriterionResult>& results);

} // namespace hjh
