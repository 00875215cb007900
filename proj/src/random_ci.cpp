#include <random>

#include "fqlab/counter.hpp"
#include "fqlab/error.hpp"
#include "fqlab/poly.hpp"

namespace fqlab {

CompleteIntersectionSpec random_ci(unsigned ambient_dim, const std::vector<unsigned>& degrees, std::uint32_t p,
                                   std::uint64_t seed, unsigned probe_depth, const RandomCiOptions& options) {
    if (degrees.empty()) throw MathError("r >= 1 required: no degrees given");
    if (degrees.size() + 1 > ambient_dim) throw MathError("need r <= N - 1 for a positive-dimensional intersection");
    if (!is_prime(p)) throw MathError("p = " + std::to_string(p) + " is not prime");
    std::uint64_t Q = 1;
    for (unsigned m = 1; m <= probe_depth; ++m) {
        if (Q > options.budget / p) throw BudgetError("probe depth exceeds the enumeration budget");
        Q *= p;
        auto reps = representative_count(ambient_dim, Q);
        if (!reps || *reps > options.budget) throw BudgetError("probe depth exceeds the enumeration budget");
    }

    // rng() % p rather than a distribution: the stream must be identical on every platform.
    std::mt19937_64 rng(seed);
    CountOptions probe;
    probe.threads = options.threads;
    probe.budget = options.budget;
    for (unsigned attempt = 0; attempt < options.attempt_cap; ++attempt) {
        std::vector<HomogeneousPoly> polys;
        bool degenerate = false;
        for (unsigned d : degrees) {
            std::vector<Term> terms;
            for (auto& e : monomials(ambient_dim + 1, d)) {
                terms.push_back({static_cast<std::uint32_t>(rng() % p), std::move(e)});
            }
            HomogeneousPoly f(p, ambient_dim + 1, d, std::move(terms));
            degenerate = degenerate || f.is_zero();
            polys.push_back(std::move(f));
        }
        if (degenerate) continue;
        CompleteIntersectionSpec cand(p, ambient_dim, std::move(polys));
        if (smooth_at_points_up_to(cand, probe_depth, probe)) {
            cand.smoothness_verified_up_to = probe_depth;
            return cand;
        }
    }
    throw MathError("no smooth candidate found within " + std::to_string(options.attempt_cap) + " attempts");
}

}  // namespace fqlab
