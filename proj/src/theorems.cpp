#include "fqlab/theorems.hpp"

#include <algorithm>
#include <functional>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fqlab/error.hpp"
#include "fqlab/zeta.hpp"

namespace fqlab {

namespace {

std::string join_degrees(const std::vector<unsigned>& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

// dev <= K q^{e/2}, squared when e is odd and q is not a square.
VerificationReport sqrt_bound_report(std::string name, std::string fingerprint, const BigInt& dev, const BigInt& K,
                                     const BigInt& q, unsigned e) {
    if (e % 2 == 0) return make_report(std::move(name), std::move(fingerprint), Rational(dev), Relation::LessEq,
                                       Rational(K * ipow(q, e / 2)));
    if (is_perfect_square(q)) return make_report(std::move(name), std::move(fingerprint), Rational(dev),
                                                 Relation::LessEq, Rational(K * ipow(isqrt(q), e)));
    return make_report(std::move(name), std::move(fingerprint), Rational(dev * dev), Relation::LessEq,
                       Rational(K * K * ipow(q, e)), true);
}

}  // namespace

VerificationReport check_theorem_a(const CompleteIntersectionSpec& spec, const BigInt& count, unsigned m,
                                   const BigInt& betti_middle) {
    const unsigned n = spec.dim();
    const BigInt q = ipow(spec.p(), m);
    const BigInt pn = count_pn(n, q);
    const BigInt dev = babs(count - pn);
    const BigInt through_middle = betti_middle + (n + 1) / 2;
    const BigInt K = through_middle + (n + 1);

    auto r = sqrt_bound_report("thm-a", spec.fingerprint(), dev, K, q, n);
    r.inputs = {{"n", std::to_string(n)},
                {"q", q.str()},
                {"m", std::to_string(m)},
                {"count", count.str()},
                {"pn_count", pn.str()},
                {"deviation", dev.str()},
                {"betti_middle", betti_middle.str()},
                {"betti_through_middle", through_middle.str()},
                {"constant", K.str()},
                {"degrees", join_degrees(spec.degrees())}};
    r.notes.push_back("constant = sum_{i<=n} b_i + n + 1 (explicit Betti-sum constant in place of the non-effective uniform one)");
    if (r.squared) r.notes.push_back("sides squared to remove q^{n/2}");
    return r;
}

VerificationReport check_theorem_b(const CompleteIntersectionSpec& spec, unsigned hyperplane,
                                   const BigInt& count_closure, const BigInt& count_section, unsigned m,
                                   std::optional<int> d_param, bool probes_passed) {
    if (!d_param && !probes_passed) {
        throw MathError("smoothness probes failed: the singular-locus dimension d must be supplied");
    }
    const int d = d_param.value_or(-1);
    const int n = static_cast<int>(spec.dim());
    if (d < -1 || d > n) throw MathError("d must lie in [-1, n]");
    const auto section = hyperplane_section(spec, hyperplane);
    const BigInt q = ipow(spec.p(), m);
    const BigInt sum_x = betti_sum(spec.ambient_dim(), spec.degrees());
    const BigInt sum_d = betti_sum(section.ambient_dim(), section.degrees());
    const BigInt B = sum_x + sum_d + (n + d + 2);
    const BigInt affine = count_closure - count_section;
    const BigInt dev = babs(affine - ipow(q, static_cast<unsigned>(n)));
    const unsigned e = static_cast<unsigned>(n + d + 1);

    auto r = sqrt_bound_report("thm-b", spec.fingerprint() + "," + section.fingerprint(), dev, B, q, e);
    r.inputs = {{"n", std::to_string(n)},
                {"q", q.str()},
                {"m", std::to_string(m)},
                {"hyperplane", std::to_string(hyperplane)},
                {"d", std::to_string(d)},
                {"count_closure", count_closure.str()},
                {"count_section", count_section.str()},
                {"count_affine", affine.str()},
                {"deviation", dev.str()},
                {"betti_sum_closure", sum_x.str()},
                {"betti_sum_section", sum_d.str()},
                {"constant", B.str()}};
    r.notes.push_back("constant = sum b_i(X) + sum b_i(D) + (n + d + 2)");
    if (!d_param) r.notes.push_back("d = -1 from passed smoothness probes");
    if (d >= n) r.notes.push_back("vacuous: exponent (n+d+1)/2 dominates any possible deviation");
    return r;
}

VerificationReport check_katz_betti_bounds(unsigned ambient_dim, unsigned r, unsigned max_degree,
                                           const BigInt& betti_sum_value) {
    const BigInt two_r = ipow(2, r);
    const BigInt rd = BigInt(r) * max_degree;
    const Rational nine_bound(9 * two_r * ipow(BigInt(3) + rd, ambient_dim + 1));
    const Rational frac_bound = Rational(65, 48) * Rational(two_r * ipow(BigInt(13) + 4 * rd, ambient_dim + 2));
    const Rational rhs = std::min(nine_bound, frac_bound);
    auto rep = make_report("katz", "", Rational(betti_sum_value), Relation::LessEq, rhs);
    rep.inputs = {{"N", std::to_string(ambient_dim)},
                  {"r", std::to_string(r)},
                  {"d", std::to_string(max_degree)},
                  {"betti_sum", betti_sum_value.str()},
                  {"bound_9", to_string(nine_bound)},
                  {"bound_65_48", to_string(frac_bound)}};
    rep.notes.push_back("rhs = min(9*2^r(3+rd)^{N+1}, (65/48)*2^r(13+4rd)^{N+2}); passing it passes both");
    return rep;
}

BigInt genus_formula(const std::vector<unsigned>& degrees) {
    if (degrees.empty()) throw MathError("a curve needs at least one degree");
    BigInt product = 1;
    long sum = 0;
    for (unsigned d : degrees) {
        if (d < 1) throw MathError("degrees must be positive");
        product *= d;
        sum += d;
    }
    const long n = static_cast<long>(degrees.size());
    const BigInt twice = 2 + product * BigInt(sum - n - 2);
    if (twice % 2 != 0) throw MathError("genus formula is not integral for " + join_degrees(degrees));
    if (twice < 0) throw MathError("genus formula is negative for " + join_degrees(degrees));
    return twice / 2;
}

VerificationReport genus_two_absent(unsigned max_ambient, unsigned max_degree) {
    std::size_t examined = 0;
    std::vector<std::string> hits;
    std::vector<unsigned> tuple;
    std::function<void(unsigned)> rec = [&](unsigned left) {
        if (!tuple.empty()) {
            ++examined;
            if (genus_formula(tuple) == 2) hits.push_back(join_degrees(tuple));
        }
        if (left == 0) return;
        for (unsigned d = 2; d <= max_degree; ++d) {
            tuple.push_back(d);
            rec(left - 1);
            tuple.pop_back();
        }
    };
    // A curve cut out by n equations lives in P^{n+1}.
    if (max_ambient >= 2) rec(max_ambient - 1);
    auto rep = make_report("genus2", "", Rational(static_cast<long>(hits.size())), Relation::Equal, Rational(0));
    rep.inputs = {{"max_ambient", std::to_string(max_ambient)},
                  {"max_degree", std::to_string(max_degree)},
                  {"tuples", std::to_string(examined)}};
    for (const auto& h : hits) rep.notes.push_back("genus 2 at " + h);
    return rep;
}

VerificationReport check_genus_vs_zeta(const CompleteIntersectionSpec& spec, std::span<const BigInt> counts) {
    if (spec.dim() != 1) throw MathError("genus check needs a curve");
    const BigInt q = spec.p();
    const auto data = middle_power_sums(counts, 1, q);
    const auto fits = consistent_middle_degrees(data.power_sums, 1, q, 2 * static_cast<unsigned>(counts.size()));
    if (fits.empty()) {
        throw ReconstructionError("no consistent P_1 of degree <= " + std::to_string(2 * counts.size()) +
                                      " fits the counts",
                                  0);
    }
    const auto b = fits.front();
    const BigInt g = genus_formula(spec.degrees());
    auto rep = make_report("genus-zeta", spec.fingerprint(), Rational(BigInt(b)), Relation::Equal, Rational(2 * g));
    std::string cs;
    for (std::size_t i = 0; i < counts.size(); ++i) cs += (i ? "," : "") + counts[i].str();
    rep.inputs = {{"degrees", join_degrees(spec.degrees())},
                  {"q", q.str()},
                  {"counts", cs},
                  {"checks", std::to_string(counts.size() - (b + 1) / 2)},
                  {"genus", g.str()},
                  {"betti_from_chi", middle_betti(spec.ambient_dim(), spec.degrees()).str()}};
    rep.notes.push_back("lhs = smallest degree of P_1 consistent with the counts; rhs = 2g from the genus formula");
    return rep;
}

std::vector<VerificationReport> check_fermat_family(unsigned q, const CountOptions& options) {
    unsigned p = 0, k = 0;
    for (unsigned c = 2; c <= q; ++c) {
        if (q % c == 0) {
            p = c;
            break;
        }
    }
    if (p == 0 || !is_prime(p)) throw MathError("q must be a prime power");
    for (unsigned v = q; v > 1; v /= p, ++k) {
        if (v % p != 0) throw MathError("q must be a prime power");
    }
    const unsigned deg = q + 1;
    auto mono = [&](unsigned var) {
        std::vector<std::uint32_t> e(3, 0);
        e[var] = deg;
        return e;
    };
    HomogeneousPoly f(p, 3, deg, {{1, mono(0)}, {1, mono(1)}, {p - 1, mono(2)}});
    CompleteIntersectionSpec spec(p, 2, {f});
    const BigInt Q = q;
    const BigInt N = count_projective(spec, 2 * k, options).count;
    const BigInt g = genus_formula({deg});

    std::vector<VerificationReport> out;
    auto common = [&](VerificationReport& r) {
        r.inputs["q"] = std::to_string(q);
        r.inputs["field"] = "F_" + std::to_string(q * q);
        r.inputs["count"] = N.str();
        r.inputs["genus"] = g.str();
    };
    auto count = make_report("fermat.count", spec.fingerprint(), Rational(N), Relation::Equal,
                             Rational(1 + Q * Q * Q));
    count.notes.push_back("|X_q(F_{q^2})| = 1 + q^3");
    common(count);
    out.push_back(std::move(count));

    auto genus = make_report("fermat.genus", spec.fingerprint(), Rational(g), Relation::Equal,
                             Rational(Q * (Q - 1) / 2));
    genus.notes.push_back("genus formula at degree q+1 equals q(q-1)/2");
    common(genus);
    out.push_back(std::move(genus));

    auto ratio = make_report("fermat.ratio", spec.fingerprint(), Rational(babs(N - (1 + Q * Q)), Q),
                             Relation::Equal, Rational(2 * g));
    ratio.notes.push_back("| |X_q(F_{q^2})| - |P^1(F_{q^2})| | / q = 2g");
    common(ratio);
    out.push_back(std::move(ratio));
    return out;
}

std::map<unsigned, EmpiricalConstant> empirical_constant(std::span<const VerificationReport> reports) {
    using Real = boost::multiprecision::cpp_bin_float_50;
    std::map<unsigned, EmpiricalConstant> out;
    for (const auto& r : reports) {
        if (r.name != "thm-a") continue;
        const unsigned n = static_cast<unsigned>(std::stoul(r.inputs.at("n")));
        const Real q(BigInt(r.inputs.at("q")));
        const Real dev(BigInt(r.inputs.at("deviation")));
        const double K = static_cast<double>(BigInt(r.inputs.at("constant")));
        const double value = static_cast<double>(dev / pow(q, Real(n) / 2));
        auto [it, fresh] = out.try_emplace(n, EmpiricalConstant{n, value, K, 0});
        auto& e = it->second;
        e.value = std::max(e.value, value);
        e.betti_bound = std::min(e.betti_bound, K);
        ++e.members;
    }
    if (out.empty()) throw MathError("empirical constant of an empty corpus");
    return out;
}

std::optional<BigInt> positivity_threshold(std::span<const VerificationReport> reports) {
    std::optional<BigInt> best;
    for (const auto& r : reports) {
        if (r.name != "thm-a") continue;
        const unsigned n = static_cast<unsigned>(std::stoul(r.inputs.at("n")));
        const BigInt q(r.inputs.at("q"));
        const BigInt K(r.inputs.at("constant"));
        const BigInt pn = count_pn(n, q);
        if (pn * pn > K * K * ipow(q, n) && (!best || q < *best)) best = q;
    }
    return best;
}

}  // namespace fqlab
