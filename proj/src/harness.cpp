#include "fqlab/harness.hpp"

#include <cmath>
#include <cstdio>

#include "fqlab/error.hpp"
#include "fqlab/theorems.hpp"

namespace fqlab {
namespace {

// x rounded to 7 significant digits, as an exact decimal fraction.
Rational decimal_rational(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    const std::string s = buf;
    const auto epos = s.find('e');
    std::string digits;
    for (char c : s.substr(0, epos)) {
        if (c != '.') digits += c;
    }
    const int exponent = std::stoi(s.substr(epos + 1)) - 6;
    Rational r{BigInt(digits)};
    if (exponent >= 0) return r * Rational(ipow(BigInt(10), static_cast<unsigned>(exponent)));
    return r / Rational(ipow(BigInt(10), static_cast<unsigned>(-exponent)));
}

std::string join(const std::vector<BigInt>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

}  // namespace

MiddleAnalysis analyze_middle(const CompleteIntersectionSpec& spec, unsigned max_ext, const CountOptions& options,
                              double tol, bool prefer_fe) {
    MiddleAnalysis a;
    const unsigned n = spec.dim();
    const BigInt q = spec.p();
    const BigInt b_big = middle_betti(spec.ambient_dim(), spec.degrees());
    if (b_big > 4096) throw BudgetError("middle Betti number " + b_big.str() + " too large to reconstruct");
    a.b = static_cast<unsigned>(b_big);
    const unsigned half = (a.b + 1) / 2;
    a.functional_equation = prefer_fe || max_ext < a.b;
    a.inputs_used = a.functional_equation ? half : a.b;
    if (max_ext < a.inputs_used) {
        throw MathError("b_n = " + std::to_string(a.b) + " needs at least " + std::to_string(a.inputs_used) +
                        " counts, got " + std::to_string(max_ext));
    }

    a.counts = count_series(spec, max_ext, options);
    const auto data = middle_power_sums(a.counts, n, q);
    if (a.functional_equation) {
        a.poly = apply_functional_equation(data.power_sums, a.b, q, n);
    } else {
        a.poly = newton_reconstruct(std::span(data.power_sums).first(a.b), a.b, q, n);
    }
    for (unsigned d = a.inputs_used + 1; d <= max_ext; ++d) {
        a.predictions.push_back({d, predict_count(a.poly, d), a.counts[d - 1]});
    }
    a.rh = verify_rh(a.poly, tol);
    return a;
}

std::vector<VerificationReport> zeta_reports(const CompleteIntersectionSpec& spec, const MiddleAnalysis& a,
                                             double tol) {
    const std::string fp = spec.fingerprint();
    std::map<std::string, std::string> base = {{"n", std::to_string(spec.dim())},
                                               {"q", std::to_string(spec.p())},
                                               {"b_n", std::to_string(a.b)},
                                               {"counts", join(a.counts)},
                                               {"P", join(a.poly.coeffs)},
                                               {"method", a.functional_equation ? "functional-equation" : "newton"},
                                               {"inputs_used", std::to_string(a.inputs_used)}};
    std::vector<VerificationReport> out;

    auto sym = make_report("zeta.symmetry", fp, Rational(a.rh.symmetry ? 1 : 0), Relation::Equal, Rational(1));
    sym.inputs = base;
    sym.inputs["sign"] = a.rh.sign ? std::to_string(*a.rh.sign) : "none";
    sym.notes.push_back("c_{b-j} = eps q^{n(b-2j)/2} c_j for some eps in {+1,-1}; squared when the exponent is odd");
    out.push_back(std::move(sym));

    auto num = make_report("zeta.rh-numeric", fp, decimal_rational(a.rh.max_relative_deviation), Relation::LessEq,
                           decimal_rational(tol));
    num.inputs = base;
    num.inputs["max_relative_deviation"] = sci(a.rh.max_relative_deviation);
    num.notes.push_back("max over roots of | |1/rho| - q^{n/2} | / q^{n/2}, to 7 significant digits");
    out.push_back(std::move(num));

    auto coef = make_report("zeta.coefficient-bound", fp, Rational(a.rh.coefficient_bound ? 1 : 0), Relation::Equal,
                            Rational(1));
    coef.inputs = base;
    coef.notes.push_back("c_j^2 <= C(b,j)^2 q^{nj} for every j");
    out.push_back(std::move(coef));

    for (const auto& pr : a.predictions) {
        auto r = make_report("zeta.prediction", fp, Rational(pr.predicted), Relation::Equal, Rational(pr.counted));
        r.inputs = base;
        r.inputs["d"] = std::to_string(pr.d);
        r.notes.push_back("N_d predicted from P_n against enumeration");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CorpusRecipe> standard_recipes(std::uint64_t seed) {
    std::vector<CorpusRecipe> out;
    std::uint64_t s = seed * 1000;
    auto add = [&](const std::string& tag, unsigned N, std::vector<unsigned> d, std::uint32_t p, unsigned depth,
                   unsigned copies) {
        for (unsigned i = 0; i < copies; ++i) {
            out.push_back({tag + "-F" + std::to_string(p) + "-" + std::to_string(i), N, d, p, ++s, depth});
        }
    };
    add("plane-cubic", 2, {3}, 5, 3, 6);
    add("plane-cubic", 2, {3}, 7, 3, 4);
    add("plane-quartic", 2, {4}, 3, 4, 3);
    add("quadric-pair", 3, {2, 2}, 3, 3, 3);
    add("quadric-surface", 3, {2}, 3, 3, 2);
    add("quadric-surface", 3, {2}, 5, 2, 2);
    add("cubic-surface", 3, {3}, 2, 4, 2);
    add("quadric-threefold", 4, {2}, 3, 2, 1);
    return out;
}

std::vector<CorpusRecipe> curve_recipes(std::uint64_t seed) {
    std::vector<CorpusRecipe> out;
    std::uint64_t s = seed * 1000 + 500;
    auto add = [&](const std::string& tag, unsigned N, std::vector<unsigned> d, std::uint32_t p, unsigned depth,
                   unsigned copies) {
        for (unsigned i = 0; i < copies; ++i) {
            out.push_back({tag + "-F" + std::to_string(p) + "-" + std::to_string(i), N, d, p, ++s, depth});
        }
    };
    add("plane-cubic", 2, {3}, 5, 3, 4);
    add("plane-cubic", 2, {3}, 7, 3, 3);
    add("plane-quartic", 2, {4}, 5, 3, 2);
    add("quadric-pair", 3, {2, 2}, 3, 3, 3);
    return out;
}

std::vector<CorpusMember> build_corpus(const std::vector<CorpusRecipe>& recipes, const RandomCiOptions& options) {
    std::vector<CorpusMember> out;
    out.reserve(recipes.size());
    for (const auto& r : recipes) {
        out.push_back({r.label, random_ci(r.ambient_dim, r.degrees, r.p, r.seed, r.probe_depth, options)});
    }
    return out;
}

std::vector<BigInt> genus_counts(const CompleteIntersectionSpec& curve, const CountOptions& options,
                                 unsigned max_ext) {
    if (curve.dim() != 1) throw MathError("genus counts need a curve");
    const BigInt q = curve.p();
    std::vector<BigInt> counts;
    for (unsigned k = 1; k <= max_ext; ++k) {
        const BigInt Q = ipow(q, k);
        if (Q > BigInt(1) << 32) break;
        const auto reps = representative_count(curve.ambient_dim(), static_cast<std::uint64_t>(Q));
        if (!reps || *reps > options.budget) break;
        counts.push_back(count_projective(curve, k, options).count);
        const auto S = middle_power_sums(counts, 1, q).power_sums;
        const auto fits = consistent_middle_degrees(S, 1, q, 2 * k);
        if (!fits.empty() && k >= fits.front() / 2 + kGenusChecks) break;
    }
    return counts;
}

}  // namespace fqlab
