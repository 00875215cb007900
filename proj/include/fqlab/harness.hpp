#pragma once

// Orchestration shared by the CLI, the acceptance suite and the Python module:
// counting a spec far enough to pin down P_n, and the built-in random corpus.

#include <string>
#include <vector>

#include "fqlab/counter.hpp"
#include "fqlab/poly.hpp"
#include "fqlab/report.hpp"
#include "fqlab/zeta.hpp"

namespace fqlab {

struct Prediction {
    unsigned d;
    BigInt predicted;
    BigInt counted;
};

struct MiddleAnalysis {
    unsigned b = 0;                  // from the Euler characteristic
    std::vector<BigInt> counts;      // N_1 .. N_max
    MiddlePolynomial poly;
    bool functional_equation = false;
    unsigned inputs_used = 0;        // power sums consumed by the reconstruction
    std::vector<Prediction> predictions;  // every count past inputs_used
    RhReport rh;
};

/// Counts d = 1..max_ext and reconstructs P_n. Newton's identities are used
/// when max_ext >= b_n (unless prefer_fe), otherwise the functional equation.
MiddleAnalysis analyze_middle(const CompleteIntersectionSpec& spec, unsigned max_ext, const CountOptions& options,
                              double tol = kDefaultRhTolerance, bool prefer_fe = false);

std::vector<VerificationReport> zeta_reports(const CompleteIntersectionSpec& spec, const MiddleAnalysis& a,
                                             double tol = kDefaultRhTolerance);

struct CorpusRecipe {
    std::string label;
    unsigned ambient_dim;
    std::vector<unsigned> degrees;
    std::uint32_t p;
    std::uint64_t seed;
    unsigned probe_depth;
};

struct CorpusMember {
    std::string label;
    CompleteIntersectionSpec spec;
};

/// Smooth members small enough that N_{b_n + 1} is countable at desk scale.
std::vector<CorpusRecipe> standard_recipes(std::uint64_t seed = 1);

/// Curves for the genus check: plane cubics over F_5 and F_7, plane quartics
/// over F_5, (2,2) curves over F_3.
std::vector<CorpusRecipe> curve_recipes(std::uint64_t seed = 1);

std::vector<CorpusMember> build_corpus(const std::vector<CorpusRecipe>& recipes, const RandomCiOptions& options = {});

inline constexpr unsigned kGenusChecks = 3;

/// N_1..N_k for the smallest k at which the smallest degree of P_1 consistent
/// with the counts is confirmed by kGenusChecks further power sums. Stops
/// early at max_ext or when the next count exceeds the budget.
std::vector<BigInt> genus_counts(const CompleteIntersectionSpec& curve, const CountOptions& options = {},
                                 unsigned max_ext = 12);

}  // namespace fqlab
