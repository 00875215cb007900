#pragma once

// Checks of the explicit inequalities behind the point-count estimates.
//
// The uniform constants of the estimates are not computable; every check here
// uses the explicit Betti-sum constant that the argument actually produces:
//
//   | |X(F_q)| - |P^n(F_q)| |  <=  (sum_{i<=n} b_i + n + 1) q^{n/2}
//   | |X \ D (F_q)| - q^n |    <=  B q^{(n+d+1)/2}
//
// with B = sum b_i(X) + sum b_i(D) + (n + d + 2). Square roots of q are
// removed by squaring both sides; everything is exact.

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "fqlab/bigint.hpp"
#include "fqlab/counter.hpp"
#include "fqlab/poly.hpp"
#include "fqlab/report.hpp"

namespace fqlab {

/// count = |X(F_{p^m})|.
VerificationReport check_theorem_a(const CompleteIntersectionSpec& spec, const BigInt& count, unsigned m,
                                   const BigInt& betti_middle);

/// count_closure = |X(F_{p^m})|, count_section = |(X cap {x_h = 0})(F_{p^m})|.
/// Without d_param the probes must have passed and d = -1 is used.
VerificationReport check_theorem_b(const CompleteIntersectionSpec& spec, unsigned hyperplane,
                                   const BigInt& count_closure, const BigInt& count_section, unsigned m,
                                   std::optional<int> d_param, bool probes_passed);

VerificationReport check_katz_betti_bounds(unsigned ambient_dim, unsigned r, unsigned max_degree,
                                           const BigInt& betti_sum);

/// g = 1 + (1/2) d_1...d_n (-n - 2 + sum d_i) for a curve in P^{n+1}.
BigInt genus_formula(const std::vector<unsigned>& degrees);

VerificationReport genus_two_absent(unsigned max_ambient, unsigned max_degree);

/// counts = N_1..; lhs is the smallest degree of P_1 consistent with them.
/// Throws ReconstructionError when none fits.
VerificationReport check_genus_vs_zeta(const CompleteIntersectionSpec& spec, std::span<const BigInt> counts);

/// X^{q+1} + Y^{q+1} - Z^{q+1} over F_{q^2}: point count, genus and the
/// normalized deviation 2g.
std::vector<VerificationReport> check_fermat_family(unsigned q, const CountOptions& options = {});

struct EmpiricalConstant {
    unsigned n = 0;
    double value = 0.0;        // max of deviation / q^{n/2}
    double betti_bound = 0.0;  // smallest Betti-sum constant among the members
    std::size_t members = 0;
};

/// Per dimension, from check_theorem_a reports. Throws MathError on an empty corpus.
std::map<unsigned, EmpiricalConstant> empirical_constant(std::span<const VerificationReport> reports);

/// Smallest q among check_theorem_a reports for which |P^n(F_q)| exceeds the
/// Betti-sum bound, so that X(F_q) is forced to be non-empty.
std::optional<BigInt> positivity_threshold(std::span<const VerificationReport> reports);

}  // namespace fqlab
