#include "roots.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace fqlab::detail {

namespace {

using RatPoly = std::vector<Rational>;  // constant term first

void trim(RatPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

RatPoly derivative(const RatPoly& a) {
    RatPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
    trim(d);
    return d;
}

void make_monic(RatPoly& a) {
    if (a.empty()) return;
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
}

// a = q * b + r
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& quot, RatPoly& rem) {
    rem = a;
    trim(rem);
    quot.assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, Rational(0));
    while (!rem.empty() && rem.size() >= b.size()) {
        Rational c = rem.back() / b.back();
        std::size_t shift = rem.size() - b.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
        rem.pop_back();
        trim(rem);
    }
    trim(quot);
}

RatPoly gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(a);
    return a;
}

RatPoly exact_div(const RatPoly& a, const RatPoly& b) {
    RatPoly q, r;
    divmod(a, b, q, r);
    return q;
}

RatPoly sub(const RatPoly& a, const RatPoly& b) {
    RatPoly out(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
}

// Yun: f = prod_i a_i^i with a_i squarefree and pairwise coprime.
std::vector<std::pair<RatPoly, unsigned>> squarefree_factors(RatPoly f) {
    std::vector<std::pair<RatPoly, unsigned>> out;
    make_monic(f);
    RatPoly fp = derivative(f);
    if (fp.empty()) return out;
    RatPoly a0 = gcd(f, fp);
    RatPoly b = exact_div(f, a0);
    RatPoly c = exact_div(fp, a0);
    RatPoly d = sub(c, derivative(b));
    for (unsigned i = 1; b.size() > 1; ++i) {
        RatPoly a = gcd(b, d);
        b = exact_div(b, a);
        c = exact_div(d, a);
        d = sub(c, derivative(b));
        if (a.size() > 1) out.emplace_back(std::move(a), i);
    }
    return out;
}

template <unsigned Digits>
void scan_factor(const RatPoly& f, unsigned multiplicity, const BigInt& target_square, ModulusScan& out) {
    using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;
    using Cx = boost::multiprecision::cpp_complex<Digits>;

    const std::size_t deg = f.size() - 1;
    std::vector<Cx> a(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Real num(boost::multiprecision::numerator(f[i]));
        Real den(boost::multiprecision::denominator(f[i]));
        a[i] = Cx(num / den);
    }

    auto eval = [&](const Cx& z, Cx& value, Cx& slope) {
        value = a[deg];
        slope = Cx(0);
        for (std::size_t i = deg; i-- > 0;) {
            slope = slope * z + value;
            value = value * z + a[i];
        }
    };

    // Start on the circle whose radius is the geometric mean of the root moduli.
    Real radius = 1;
    Real a0 = abs(a[0]);
    if (a0 != 0) radius = pow(a0, Real(1) / Real(deg));
    const Real two_pi = boost::math::constants::two_pi<Real>();
    std::vector<Cx> z(deg);
    for (std::size_t k = 0; k < deg; ++k) {
        Real theta = two_pi * Real(k) / Real(deg) + Real(0.4);
        z[k] = Cx(radius * cos(theta), radius * sin(theta));
    }

    const Real eps = std::numeric_limits<Real>::epsilon() * Real(1000);
    for (int iter = 0; iter < 2000; ++iter) {
        bool converged = true;
        for (std::size_t k = 0; k < deg; ++k) {
            Cx value, slope;
            eval(z[k], value, slope);
            if (value == Cx(0)) continue;
            Cx ratio = value / slope;
            Cx repulsion(0);
            for (std::size_t j = 0; j < deg; ++j) {
                if (j != k) repulsion += Cx(1) / (z[k] - z[j]);
            }
            Cx step = ratio / (Cx(1) - ratio * repulsion);
            z[k] -= step;
            if (abs(step) > eps * (Real(1) + abs(z[k]))) converged = false;
        }
        if (converged) break;
    }

    const Real target = sqrt(Real(target_square));
    for (const auto& root : z) {
        Real modulus = abs(root);
        Real dev = abs(modulus - target) / target;
        for (unsigned i = 0; i < multiplicity; ++i) out.moduli.push_back(static_cast<double>(modulus));
        out.max_relative_deviation = std::max(out.max_relative_deviation, static_cast<double>(dev));
    }
}

}  // namespace

ModulusScan scan_root_moduli(const std::vector<BigInt>& monic, const BigInt& target_square) {
    ModulusScan out;
    RatPoly f;
    for (const auto& c : monic) f.emplace_back(c);
    trim(f);
    if (f.size() <= 1) return out;
    for (const auto& [factor, mult] : squarefree_factors(f)) {
        // Working precision grows with the factor degree.
        const std::size_t deg = factor.size() - 1;
        if (deg <= 12) {
            scan_factor<50>(factor, mult, target_square, out);
        } else {
            scan_factor<100>(factor, mult, target_square, out);
        }
    }
    return out;
}

}  // namespace fqlab::detail
