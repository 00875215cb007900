#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fqlab/gf.hpp"
#include "fqlab/zeta.hpp"

namespace fqlab {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitParse = 2, kExitBudget = 3, kExitIntegrity = 4 };

struct RunConfig {
    std::string command;
    std::vector<std::string> spec_paths;
    unsigned max_ext = 0;  // 0: command default
    unsigned threads = 1;
    std::optional<std::filesystem::path> cache_dir;
    std::string format = "json";
    std::uint64_t seed = 1;
    double tolerance = kDefaultRhTolerance;
    std::uint64_t budget = kDefaultBudget;
    bool audit = false;  // recount cached keys and compare

    /// Throws ParseError on a violated invariant.
    void validate() const;
};

/// Entry point of the `fqlab` tool. Flags may also come from FQLAB_* variables
/// (FQLAB_THREADS, FQLAB_CACHE, FQLAB_FORMAT, FQLAB_SEED, FQLAB_TOLERANCE,
/// FQLAB_BUDGET, FQLAB_MAX_EXT, FQLAB_AUDIT).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fqlab
