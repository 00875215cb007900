#include "fqlab/dynamics.hpp"

#include <numeric>

#include "fqlab/counter.hpp"
#include "fqlab/error.hpp"

namespace fqlab {

DiagonalEndo::DiagonalEndo(unsigned k_, unsigned n_) : k(k_), n(n_) {
    if (k < 2) throw MathError("diagonal endomorphism needs k >= 2");
    if (n < 1) throw MathError("diagonal endomorphism needs n >= 1");
    if (ipow(k, n) > BigInt(1) << 40) throw BudgetError("k^n too large");
}

std::uint64_t DiagonalEndo::root_order() const {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < n; ++i) v *= k;
    return v;
}

BigInt lambda_fnq(unsigned n, const BigInt& q) {
    if (q < 1) throw MathError("q must be a positive integer");
    return count_pn(n, q);
}

BigInt lambda_identity_curve(const BigInt& g) {
    if (g < 0) throw MathError("genus must be non-negative");
    return 2 - 2 * g;
}

VerificationReport check_theorem_c_bound(unsigned n, const BigInt& q, const BigInt& b_middle,
                                         const BigInt& lambda_observed) {
    if (q < 1) throw MathError("q must be a positive integer");
    const BigInt model = lambda_fnq(n, q);
    const BigInt dev = babs(lambda_observed - model);
    const BigInt through_middle = b_middle + (n + 1) / 2;
    const BigInt K = through_middle + (n + 1);
    VerificationReport r;
    if (n % 2 == 0) {
        r = make_report("thm-c", "", Rational(dev), Relation::LessEq, Rational(K * ipow(q, n / 2)));
    } else {
        r = make_report("thm-c", "", Rational(dev * dev), Relation::LessEq, Rational(K * K * ipow(q, n)), true);
    }
    r.inputs = {{"n", std::to_string(n)},
                {"q", q.str()},
                {"lambda_observed", lambda_observed.str()},
                {"lambda_model", model.str()},
                {"betti_middle", b_middle.str()},
                {"constant", K.str()}};
    r.notes.push_back("constant = n + 1 + sum_{i<=n} b_i");
    if (q == 1) {
        r.notes.push_back("q = 1: no constant uniform in the genus exists here (|Lambda(id) - 2| = 2g); "
                          "illustrates the q = 1 failure, not a violation");
    }
    return r;
}

bool has_fixed_point_diagonal(unsigned k, unsigned n, std::uint64_t m) {
    const std::uint64_t order = DiagonalEndo(k, n).root_order();
    if (m < 1) throw MathError("iterate count must be positive");
    const std::uint64_t mr = m % order;
    for (std::uint64_t t = 1; t <= n; ++t) {
        if ((static_cast<unsigned __int128>(t) * mr) % order == 0) return true;
    }
    return false;
}

std::uint64_t min_period_diagonal(unsigned k, unsigned n) {
    const std::uint64_t order = DiagonalEndo(k, n).root_order();
    std::uint64_t best = order;
    for (std::uint64_t t = 1; t <= n; ++t) best = std::min(best, order / std::gcd(order, t));
    return best;
}

std::uint64_t min_period_diagonal_scan(unsigned k, unsigned n) {
    const std::uint64_t order = DiagonalEndo(k, n).root_order();
    for (std::uint64_t m = 1; m <= order; ++m) {
        if (has_fixed_point_diagonal(k, n, m)) return m;
    }
    return order;  // unreachable: m = k^n always has fixed points
}

VerificationReport diagonal_fixed_point_report(unsigned k, unsigned n, std::uint64_t m) {
    const bool fixed = has_fixed_point_diagonal(k, n, m);
    auto r = make_report("dynamics.fixed-point", "", Rational(fixed ? 1 : 0), Relation::Equal, Rational(fixed ? 1 : 0));
    r.inputs = {{"k", std::to_string(k)},
                {"n", std::to_string(n)},
                {"m", std::to_string(m)},
                {"has_fixed_point", fixed ? "true" : "false"}};
    r.notes.push_back("f^m scales x_i by zeta^{im}; fixed points are supported on one class of indices with equal "
                      "zeta^{im}, i.e. k^n | (j-i)m inside the class");
    r.notes.push_back("a class of size 1 misses X_k (x_i^{k^n} = 0 forces x_i = 0); a class of size >= 2 meets it "
                      "(solve x_i^{k^n} = -x_j^{k^n} over C)");
    return r;
}

std::vector<VerificationReport> period_reports(unsigned k, unsigned n) {
    const std::uint64_t closed = min_period_diagonal(k, n);
    const std::uint64_t scanned = min_period_diagonal_scan(k, n);
    const std::uint64_t order = DiagonalEndo(k, n).root_order();
    std::vector<VerificationReport> out;

    auto lower = make_report("dynamics.min-period", "", Rational(BigInt(n) * closed), Relation::GreaterEq,
                             Rational(BigInt(order)));
    lower.inputs = {{"k", std::to_string(k)}, {"n", std::to_string(n)}, {"min_period", std::to_string(closed)}};
    lower.notes.push_back("n * min_period >= k^n, i.e. no fixed point of f^m for m < k^n/n");
    out.push_back(std::move(lower));

    auto agree = make_report("dynamics.period-scan", "", Rational(BigInt(closed)), Relation::Equal,
                             Rational(BigInt(scanned)));
    agree.inputs = {{"k", std::to_string(k)}, {"n", std::to_string(n)}};
    agree.notes.push_back("closed form min_t k^n/gcd(k^n, t) against a linear scan over m");
    out.push_back(std::move(agree));
    return out;
}

}  // namespace fqlab
