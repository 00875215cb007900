#pragma once

#include <cstdint>
#include <vector>

#include "fqlab/bigint.hpp"
#include "fqlab/report.hpp"

namespace fqlab {

// x_i -> zeta^i x_i on X_k = {x_0^{k^n} + ... + x_n^{k^n} = 0} in P^n,
// zeta a primitive k^n-th root of unity.
struct DiagonalEndo {
    DiagonalEndo(unsigned k, unsigned n);

    unsigned k;
    unsigned n;
    /// k^n, the order of zeta.
    std::uint64_t root_order() const;
};

/// Lambda(f_{n,q}) for [x_i] -> [x_i^q] on P^n: 1 + q + ... + q^n.
BigInt lambda_fnq(unsigned n, const BigInt& q);

/// Lambda(id) on a genus-g surface: 2 - 2g.
BigInt lambda_identity_curve(const BigInt& g);

/// |Lambda(f) - Lambda(f_{n,q})| <= (n + 1 + sum_{i<=n} b_i) q^{n/2}, with
/// sum_{i<=n} b_i = b_middle + #{even i < n}.
VerificationReport check_theorem_c_bound(unsigned n, const BigInt& q, const BigInt& b_middle,
                                         const BigInt& lambda_observed);

/// Does f^m have a fixed point on X_k?
bool has_fixed_point_diagonal(unsigned k, unsigned n, std::uint64_t m);

/// Closed form: min over t in [1, n] of k^n / gcd(k^n, t).
std::uint64_t min_period_diagonal(unsigned k, unsigned n);

/// Smallest m >= 1 with a fixed point, by scanning m.
std::uint64_t min_period_diagonal_scan(unsigned k, unsigned n);

/// has_fixed_point_diagonal with the coincidence-class argument in the notes.
VerificationReport diagonal_fixed_point_report(unsigned k, unsigned n, std::uint64_t m);

/// Two reports: n * min_period >= k^n, and closed form == scan.
std::vector<VerificationReport> period_reports(unsigned k, unsigned n);

}  // namespace fqlab
