#pragma once

// Middle-cohomology Frobenius data from point counts.
//
// For a smooth complete intersection X of dimension n over F_q every
// cohomology group except H^n matches projective space, so
//   N_d = T_d + (-1)^n * sum_j alpha_j^d,
//   T_d = sum over even i in [0, 2n], i != n, of q^{(i/2) d},
// and P_n(T) = prod_j (1 - alpha_j T) has degree b_n.

#include <optional>
#include <span>
#include <vector>

#include "fqlab/bigint.hpp"
#include "fqlab/error.hpp"

namespace fqlab {

/// chi = (prod d_i) * [h^n] (1+h)^{N+1} / prod (1 + d_i h), n = N - r >= 0.
BigInt euler_characteristic_ci(unsigned ambient_dim, const std::vector<unsigned>& degrees);

/// b_n of a smooth complete intersection. Throws MathError if negative.
BigInt middle_betti(unsigned ambient_dim, const std::vector<unsigned>& degrees);

/// Number of even i in [0, 2n] other than n; each contributes b_i = 1.
unsigned hyperplane_class_count(unsigned n);

/// sum_i b_i.
BigInt betti_sum(unsigned ambient_dim, const std::vector<unsigned>& degrees);

/// sum_{i <= n} b_i = b_n + #{even i < n}.
BigInt betti_sum_through_middle(unsigned ambient_dim, const std::vector<unsigned>& degrees);

/// T_d above.
BigInt hyperplane_trace(unsigned n, const BigInt& q, unsigned d);

struct MiddleData {
    unsigned n = 0;
    BigInt q;
    std::vector<BigInt> power_sums;  // S_1 .. S_m
    std::optional<BigInt> betti;
};

MiddleData middle_power_sums(std::span<const BigInt> counts, unsigned n, const BigInt& q);

struct MiddlePolynomial {
    std::vector<BigInt> coeffs;  // c_0 = 1, ..., c_b
    BigInt q;
    unsigned n = 0;
    /// Functional-equation sign, when it was used or certified.
    std::optional<int> sign;
    /// Power sums beyond the reconstruction input that were matched exactly.
    unsigned extra_checks = 0;

    unsigned degree() const { return static_cast<unsigned>(coeffs.size() - 1); }
};

class ReconstructionError : public MathError {
  public:
    ReconstructionError(const std::string& what, unsigned index) : MathError(what), index_(index) {}
    /// Offending coefficient or power-sum index (0 when not applicable).
    unsigned index() const noexcept { return index_; }

  private:
    unsigned index_;
};

/// Newton's identities on S_1..S_b. Throws ReconstructionError on a
/// non-integral coefficient.
MiddlePolynomial newton_reconstruct(std::span<const BigInt> power_sums, unsigned b, const BigInt& q, unsigned n);

// Newton on S_1..S_h, h = ceil(b/2), completed by c_{b-j} = eps q^{n(b-2j)/2} c_j
// for eps = +1 and -1. Entries of power_sums past h are checks every accepted
// candidate must reproduce; they also break ties between the two signs.
MiddlePolynomial apply_functional_equation(std::span<const BigInt> power_sums, unsigned b, const BigInt& q,
                                           unsigned n);

/// p_1 .. p_count of the eigenvalues encoded by P.
std::vector<BigInt> eigenvalue_power_sums(const MiddlePolynomial& P, unsigned count);

BigInt predict_count(const MiddlePolynomial& P, unsigned d);

/// Exact reciprocal symmetry sign of P, if any.
std::optional<int> reciprocal_sign(const MiddlePolynomial& P);

struct RhReport {
    bool symmetry = false;
    std::optional<int> sign;
    bool numeric = false;
    double max_relative_deviation = 0.0;
    std::vector<double> root_moduli;  // |alpha_j|, with multiplicity
    bool coefficient_bound = false;
    bool pass = false;
};

inline constexpr double kDefaultRhTolerance = 1e-8;

RhReport verify_rh(const MiddlePolynomial& P, double tol = kDefaultRhTolerance);

// Every b <= max_b (b even when n is odd) that is testable with the given
// power sums and whose functional-equation reconstruction is integral,
// reproduces every further power sum (at least one) and passes the
// root-modulus check.
std::vector<unsigned> consistent_middle_degrees(std::span<const BigInt> power_sums, unsigned n, const BigInt& q,
                                               unsigned max_b, double tol = kDefaultRhTolerance);

// Diagnostic: smallest entry of consistent_middle_degrees.
std::optional<unsigned> infer_middle_degree(std::span<const BigInt> power_sums, unsigned n, const BigInt& q,
                                            unsigned max_b, double tol = kDefaultRhTolerance);

}  // namespace fqlab
