#include "fqlab/zeta.hpp"

#include <cmath>

#include "roots.hpp"

namespace fqlab {

BigInt euler_characteristic_ci(unsigned ambient_dim, const std::vector<unsigned>& degrees) {
    const unsigned r = static_cast<unsigned>(degrees.size());
    if (r < 1 || r > ambient_dim) throw MathError("need 1 <= r <= N");
    const unsigned n = ambient_dim - r;
    // Truncated series in h up to h^n, integer coefficients throughout.
    std::vector<BigInt> series(n + 1, 0);
    for (unsigned k = 0; k <= n; ++k) series[k] = binomial(ambient_dim + 1, k);
    for (unsigned d : degrees) {
        if (d < 1) throw MathError("degrees must be positive");
        // multiply by 1/(1 + d h) = sum (-d)^k h^k
        for (unsigned k = 1; k <= n; ++k) series[k] -= BigInt(d) * series[k - 1];
    }
    BigInt product = 1;
    for (unsigned d : degrees) product *= d;
    return product * series[n];
}

unsigned hyperplane_class_count(unsigned n) { return n % 2 == 1 ? n + 1 : n; }

BigInt middle_betti(unsigned ambient_dim, const std::vector<unsigned>& degrees) {
    const unsigned n = ambient_dim - static_cast<unsigned>(degrees.size());
    const BigInt chi = euler_characteristic_ci(ambient_dim, degrees);
    BigInt b = n % 2 == 1 ? BigInt(n + 1) - chi : chi - BigInt(n);
    if (b < 0) throw MathError("negative middle Betti number " + b.str() + ": input is not a smooth complete intersection");
    return b;
}

BigInt betti_sum(unsigned ambient_dim, const std::vector<unsigned>& degrees) {
    const unsigned n = ambient_dim - static_cast<unsigned>(degrees.size());
    return middle_betti(ambient_dim, degrees) + hyperplane_class_count(n);
}

BigInt betti_sum_through_middle(unsigned ambient_dim, const std::vector<unsigned>& degrees) {
    const unsigned n = ambient_dim - static_cast<unsigned>(degrees.size());
    // even i in [0, n)
    return middle_betti(ambient_dim, degrees) + (n + 1) / 2;
}

BigInt hyperplane_trace(unsigned n, const BigInt& q, unsigned d) {
    BigInt total = 0;
    const BigInt qd = ipow(q, d);
    BigInt term = 1;
    for (unsigned half = 0; half <= n; ++half) {
        if (2 * half != n) total += term;
        term *= qd;
    }
    return total;
}

MiddleData middle_power_sums(std::span<const BigInt> counts, unsigned n, const BigInt& q) {
    MiddleData out;
    out.n = n;
    out.q = q;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        BigInt s = counts[i] - hyperplane_trace(n, q, static_cast<unsigned>(i + 1));
        out.power_sums.push_back(n % 2 == 1 ? BigInt(-s) : s);
    }
    return out;
}

namespace {

// e_1..e_count from power sums; e_0 = 1.
std::vector<BigInt> elementary_from_power_sums(std::span<const BigInt> S, unsigned count) {
    std::vector<BigInt> e(count + 1, 0);
    e[0] = 1;
    for (unsigned k = 1; k <= count; ++k) {
        BigInt acc = 0;
        for (unsigned i = 1; i <= k; ++i) {
            BigInt term = e[k - i] * S[i - 1];
            if (i % 2 == 1) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if (acc % k != 0) {
            throw ReconstructionError("coefficient c_" + std::to_string(k) + " = " + acc.str() + "/" +
                                          std::to_string(k) + " is not an integer",
                                      k);
        }
        e[k] = acc / k;
    }
    return e;
}

// q^{k/2} * c when integral.
std::optional<BigInt> half_power_times(const BigInt& q, unsigned k, const BigInt& c) {
    if (c == 0) return BigInt(0);
    if (k % 2 == 0) return ipow(q, k / 2) * c;
    if (!is_perfect_square(q)) return std::nullopt;
    return ipow(isqrt(q), k) * c;
}

int signum(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// c_hi == eps * q^{k/2} * c_lo, exactly; squares both sides when k is odd.
bool symmetric_pair(const BigInt& c_hi, const BigInt& c_lo, const BigInt& q, unsigned k, int eps) {
    if (k % 2 == 0) return c_hi == BigInt(eps) * ipow(q, k / 2) * c_lo;
    return c_hi * c_hi == ipow(q, k) * c_lo * c_lo && signum(c_hi) == eps * signum(c_lo);
}

}  // namespace

MiddlePolynomial newton_reconstruct(std::span<const BigInt> power_sums, unsigned b, const BigInt& q, unsigned n) {
    if (power_sums.size() < b) {
        throw ReconstructionError("newton_reconstruct needs " + std::to_string(b) + " power sums, got " +
                                      std::to_string(power_sums.size()),
                                  0);
    }
    auto e = elementary_from_power_sums(power_sums, b);
    MiddlePolynomial P;
    P.q = q;
    P.n = n;
    for (unsigned k = 0; k <= b; ++k) P.coeffs.push_back(k % 2 == 0 ? e[k] : BigInt(-e[k]));
    return P;
}

std::vector<BigInt> eigenvalue_power_sums(const MiddlePolynomial& P, unsigned count) {
    const unsigned b = P.degree();
    std::vector<BigInt> e(b + 1);
    for (unsigned k = 0; k <= b; ++k) e[k] = k % 2 == 0 ? P.coeffs[k] : BigInt(-P.coeffs[k]);
    std::vector<BigInt> p(count + 1, 0);
    for (unsigned d = 1; d <= count; ++d) {
        BigInt acc = 0;
        for (unsigned i = 1; i < d && i <= b; ++i) {
            BigInt term = e[i] * p[d - i];
            if (i % 2 == 1) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if (d <= b) {
            BigInt term = BigInt(d) * e[d];
            if (d % 2 == 1) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p[d] = acc;
    }
    return {p.begin() + 1, p.end()};
}

BigInt predict_count(const MiddlePolynomial& P, unsigned d) {
    if (d == 0) throw MathError("extension degree must be positive");
    const BigInt s = eigenvalue_power_sums(P, d).back();
    return hyperplane_trace(P.n, P.q, d) + (P.n % 2 == 1 ? BigInt(-s) : s);
}

MiddlePolynomial apply_functional_equation(std::span<const BigInt> power_sums, unsigned b, const BigInt& q,
                                           unsigned n) {
    const unsigned h = (b + 1) / 2;
    if (power_sums.size() < h) {
        throw ReconstructionError("functional equation needs " + std::to_string(h) + " power sums, got " +
                                      std::to_string(power_sums.size()),
                                  0);
    }
    const MiddlePolynomial low = newton_reconstruct(power_sums, h, q, n);
    const auto checks = power_sums.subspan(h);

    std::vector<MiddlePolynomial> accepted;
    std::string last_failure = "no sign gives integral, self-consistent coefficients";
    for (int eps : {+1, -1}) {
        MiddlePolynomial P;
        P.q = q;
        P.n = n;
        P.sign = eps;
        P.coeffs.assign(b + 1, 0);
        for (unsigned j = 0; j <= h && j <= b; ++j) P.coeffs[j] = low.coeffs[j];
        bool ok = true;
        for (unsigned j = 0; j <= b && ok; ++j) {
            const unsigned hi = b - j;
            if (hi > h) {
                auto v = half_power_times(q, n * (b - 2 * j), P.coeffs[j]);
                if (!v) {
                    ok = false;
                    break;
                }
                P.coeffs[hi] = BigInt(eps) * *v;
            } else if (j <= hi) {
                ok = symmetric_pair(P.coeffs[hi], P.coeffs[j], q, n * (b - 2 * j), eps);
            }
        }
        if (!ok) continue;
        const auto predicted = eigenvalue_power_sums(P, static_cast<unsigned>(power_sums.size()));
        for (std::size_t i = 0; i < checks.size() && ok; ++i) {
            if (predicted[h + i] != checks[i]) {
                ok = false;
                last_failure = "sign " + std::to_string(eps) + " mispredicts S_" + std::to_string(h + i + 1);
            }
        }
        if (!ok) continue;
        P.extra_checks = static_cast<unsigned>(checks.size());
        accepted.push_back(std::move(P));
    }
    if (accepted.empty()) throw ReconstructionError("functional equation: " + last_failure, 0);
    if (accepted.size() > 1 && accepted[0].coeffs != accepted[1].coeffs) {
        throw ReconstructionError("functional equation: both signs fit the data; supply another count", 0);
    }
    return accepted.front();
}

std::optional<int> reciprocal_sign(const MiddlePolynomial& P) {
    const unsigned b = P.degree();
    for (int eps : {+1, -1}) {
        bool ok = true;
        for (unsigned j = 0; j <= b / 2 && ok; ++j) {
            ok = symmetric_pair(P.coeffs[b - j], P.coeffs[j], P.q, P.n * (b - 2 * j), eps);
        }
        if (ok) return eps;
    }
    return std::nullopt;
}

RhReport verify_rh(const MiddlePolynomial& P, double tol) {
    RhReport rep;
    const unsigned b = P.degree();
    rep.sign = reciprocal_sign(P);
    rep.symmetry = rep.sign.has_value();

    rep.coefficient_bound = true;
    for (unsigned j = 0; j <= b; ++j) {
        const BigInt bound = binomial(b, j);
        if (P.coeffs[j] * P.coeffs[j] > bound * bound * ipow(P.q, P.n * j)) rep.coefficient_bound = false;
    }

    // Reversed polynomial x^b P(1/x) is monic with roots alpha_j.
    std::vector<BigInt> monic(P.coeffs.rbegin(), P.coeffs.rend());
    auto scan = detail::scan_root_moduli(monic, ipow(P.q, P.n));
    rep.root_moduli = std::move(scan.moduli);
    rep.max_relative_deviation = scan.max_relative_deviation;
    rep.numeric = rep.root_moduli.size() == b && rep.max_relative_deviation <= tol;

    rep.pass = rep.symmetry && rep.numeric && rep.coefficient_bound;
    return rep;
}

std::vector<unsigned> consistent_middle_degrees(std::span<const BigInt> power_sums, unsigned n, const BigInt& q,
                                               unsigned max_b, double tol) {
    std::vector<unsigned> out;
    for (unsigned b = 0; b <= max_b; ++b) {
        if (n % 2 == 1 && b % 2 == 1) continue;
        const unsigned h = (b + 1) / 2;
        if (power_sums.size() < h + 1) break;
        try {
            auto P = apply_functional_equation(power_sums, b, q, n);
            if (verify_rh(P, tol).pass) out.push_back(b);
        } catch (const MathError&) {
        }
    }
    return out;
}

std::optional<unsigned> infer_middle_degree(std::span<const BigInt> power_sums, unsigned n, const BigInt& q,
                                            unsigned max_b, double tol) {
    const auto c = consistent_middle_degrees(power_sums, n, q, max_b, tol);
    if (c.empty()) return std::nullopt;
    return c.front();
}

}  // namespace fqlab
