#include "fqlab/gf.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "fqlab/error.hpp"

namespace fqlab {

namespace {

using Coeffs = std::vector<std::uint64_t>;

void trim(Coeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    // p is prime, so a^(p-2)
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// a mod f over F_p; f need not be monic but must be nonzero.
Coeffs poly_mod(Coeffs a, const Coeffs& f, std::uint64_t p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const std::uint64_t lead_inv = inv_mod(f.back(), p);
    while (a.size() >= f.size()) {
        std::uint64_t c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - f.size();
        for (std::size_t i = 0; i <= df; ++i) {
            a[shift + i] = (a[shift + i] + p - c * f[i] % p) % p;
        }
        trim(a);
    }
    return a;
}

Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(r), f, p);
}

Coeffs poly_gcd(Coeffs a, Coeffs b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Coeffs r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Ben-Or: f of degree m is irreducible iff gcd(x^{p^k} - x, f) = 1 for k <= m/2.
bool is_irreducible(const Coeffs& f, std::uint64_t p) {
    const std::size_t m = f.size() - 1;
    if (m == 1) return true;
    Coeffs xpk = {0, 1};
    for (std::size_t k = 1; k <= m / 2; ++k) {
        // xpk <- xpk^p mod f
        Coeffs base = xpk, acc = {1};
        std::uint64_t e = p;
        while (e) {
            if (e & 1) acc = poly_mulmod(acc, base, f, p);
            base = poly_mulmod(base, base, f, p);
            e >>= 1;
        }
        xpk = acc;
        Coeffs diff = xpk;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty()) return false;  // x^{p^k} = x mod f: f has a factor of degree dividing k
        Coeffs g = poly_gcd(diff, f, p);
        if (g.size() > 1) return false;
    }
    return true;
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (!a.field() || !b.field()) throw MathError("field element without a field");
    if (a.field() != b.field() && !(*a.field() == *b.field())) {
        throw MathError("operands belong to different fields");
    }
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

ExtensionField::ExtensionField(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), m_(0), size_(1), modulus_(std::move(modulus)) {
    if (!is_prime(p)) throw MathError("field characteristic " + std::to_string(p) + " is not prime");
    if (modulus_.size() < 2 || modulus_.back() != 1) throw MathError("modulus must be monic of degree >= 1");
    m_ = static_cast<std::uint32_t>(modulus_.size() - 1);
    for (auto c : modulus_) {
        if (c >= p) throw MathError("modulus coefficient out of range");
    }
    Coeffs f(modulus_.begin(), modulus_.end());
    if (!is_irreducible(f, p)) throw MathError("modulus is reducible over F_p");
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (size_ > (~0ULL) / p) throw BudgetError("field too large to enumerate");
        size_ *= p;
    }
}

FieldPtr make_field(std::uint32_t p, std::uint32_t m, std::uint64_t seed, std::uint64_t budget) {
    if (!is_prime(p)) throw MathError("field characteristic " + std::to_string(p) + " is not prime");
    if (m == 0) throw MathError("extension degree must be positive");
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        if (count > budget / p) throw BudgetError("p^m exceeds the enumeration budget");
        count *= p;
    }
    // Monic degree-m candidates are indexed by their low coefficients, base p.
    std::uint64_t start = 0;
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        start = rng() % count;
    }
    for (std::uint64_t k = 0; k < count; ++k) {
        std::uint64_t idx = (start + k) % count;
        Coeffs f(m + 1, 0);
        for (std::uint32_t i = 0; i < m; ++i) {
            f[i] = idx % p;
            idx /= p;
        }
        f[m] = 1;
        if (is_irreducible(f, p)) {
            return std::make_shared<const ExtensionField>(p, std::vector<std::uint32_t>(f.begin(), f.end()));
        }
    }
    throw MathError("no irreducible polynomial found");  // unreachable for prime p
}

FieldElement::FieldElement(FieldPtr field, std::vector<std::uint32_t> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw MathError("null field");
    if (coeffs_.size() != field_->m()) throw MathError("coefficient vector has wrong length");
    for (auto c : coeffs_) {
        if (c >= field_->p()) throw MathError("coefficient out of range");
    }
}

bool FieldElement::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c == 0; });
}

std::uint64_t FieldElement::index() const noexcept {
    std::uint64_t idx = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) idx = idx * field_->p() + coeffs_[i];
    return idx;
}

bool FieldElement::operator==(const FieldElement& o) const {
    require_same_field(*this, o);
    return coeffs_ == o.coeffs_;
}

FieldElement zero(const FieldPtr& f) { return FieldElement(f, std::vector<std::uint32_t>(f->m(), 0)); }

FieldElement one(const FieldPtr& f) {
    std::vector<std::uint32_t> c(f->m(), 0);
    c[0] = 1;
    return FieldElement(f, std::move(c));
}

FieldElement from_integer(const FieldPtr& f, std::int64_t v) {
    std::int64_t p = f->p();
    std::vector<std::uint32_t> c(f->m(), 0);
    c[0] = static_cast<std::uint32_t>(((v % p) + p) % p);
    return FieldElement(f, std::move(c));
}

FieldElement from_index(const FieldPtr& f, std::uint64_t index) {
    if (index >= f->size()) throw MathError("element index out of range");
    std::vector<std::uint32_t> c(f->m(), 0);
    for (auto& x : c) {
        x = static_cast<std::uint32_t>(index % f->p());
        index /= f->p();
    }
    return FieldElement(f, std::move(c));
}

FieldElement root(const FieldPtr& f) {
    if (f->m() == 1) return from_integer(f, -static_cast<std::int64_t>(f->modulus()[0]));
    std::vector<std::uint32_t> c(f->m(), 0);
    c[1] = 1;
    return FieldElement(f, std::move(c));
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    const std::uint32_t p = a.field()->p();
    std::vector<std::uint32_t> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.coeffs()[i] + b.coeffs()[i]) % p;
    return FieldElement(a.field(), std::move(c));
}

FieldElement neg(const FieldElement& a) {
    const std::uint32_t p = a.field()->p();
    std::vector<std::uint32_t> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (p - a.coeffs()[i]) % p;
    return FieldElement(a.field(), std::move(c));
}

FieldElement sub(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return add(a, neg(b));
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    const auto& F = *a.field();
    Coeffs fa(a.coeffs().begin(), a.coeffs().end());
    Coeffs fb(b.coeffs().begin(), b.coeffs().end());
    Coeffs f(F.modulus().begin(), F.modulus().end());
    trim(fa);
    trim(fb);
    Coeffs r = poly_mulmod(fa, fb, f, F.p());
    std::vector<std::uint32_t> c(F.m(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) c[i] = static_cast<std::uint32_t>(r[i]);
    return FieldElement(a.field(), std::move(c));
}

FieldElement pow(const FieldElement& a, const BigInt& exponent) {
    if (exponent < 0) return pow(inv(a), -exponent);
    FieldElement result = one(a.field());
    FieldElement base = a;
    BigInt e = exponent;
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0)) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FieldElement inv(const FieldElement& a) {
    if (a.is_zero()) throw MathError("inversion of zero");
    return pow(a, a.field()->q() - 2);
}

std::vector<FieldElement> enumerate_field(const FieldPtr& f) {
    std::vector<FieldElement> out;
    out.reserve(f->size());
    for (std::uint64_t i = 0; i < f->size(); ++i) out.push_back(from_index(f, i));
    return out;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Multiplication by a fixed element on enumeration indices, via digit vectors.
class IndexMultiplier {
  public:
    IndexMultiplier(const ExtensionField& F, const std::vector<std::uint32_t>& g)
        : p_(F.p()), m_(F.m()), table_(static_cast<std::size_t>(F.m()) * F.m(), 0) {
        // column j = g * t^j reduced mod the modulus
        Coeffs f(F.modulus().begin(), F.modulus().end());
        Coeffs col(g.begin(), g.end());
        trim(col);
        for (std::uint32_t j = 0; j < m_; ++j) {
            for (std::uint32_t i = 0; i < m_; ++i) table_[i * m_ + j] = i < col.size() ? col[i] : 0;
            Coeffs shifted(col.size() + 1, 0);
            for (std::size_t i = 0; i < col.size(); ++i) shifted[i + 1] = col[i];
            col = poly_mod(std::move(shifted), f, p_);
        }
    }

    std::uint64_t apply(std::uint64_t index, std::vector<std::uint64_t>& digits) const {
        for (std::uint32_t j = 0; j < m_; ++j) {
            digits[j] = index % p_;
            index /= p_;
        }
        std::uint64_t out = 0;
        for (std::uint32_t i = m_; i-- > 0;) {
            std::uint64_t s = 0;
            for (std::uint32_t j = 0; j < m_; ++j) s += table_[i * m_ + j] * digits[j];
            out = out * p_ + s % p_;
        }
        return out;
    }

  private:
    std::uint64_t p_;
    std::uint32_t m_;
    std::vector<std::uint64_t> table_;
};

}  // namespace

LogTables::LogTables(const FieldPtr& field) : field_(field), order_(0) {
    const std::uint64_t q = field->size();
    if (q > kMaxSize) throw BudgetError("field of size " + std::to_string(q) + " exceeds the log-table limit");
    order_ = static_cast<std::uint32_t>(q - 1);
    const auto factors = prime_factors(q - 1);

    FieldElement g;
    for (std::uint64_t i = 1; i < q; ++i) {
        FieldElement cand = from_index(field, i);
        bool primitive = true;
        for (auto l : factors) {
            if (fqlab::pow(cand, BigInt((q - 1) / l)) == one(field)) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            g = cand;
            break;
        }
    }

    log_.assign(q, kZero);
    exp_.assign(order_, 0);
    IndexMultiplier times_g(*field, g.coeffs());
    std::vector<std::uint64_t> scratch(field->m());
    std::uint64_t cur = 1;
    for (std::uint32_t k = 0; k < order_; ++k) {
        exp_[k] = static_cast<std::uint32_t>(cur);
        log_[cur] = k;
        cur = times_g.apply(cur, scratch);
    }
    if (cur != 1) throw MathError("generator search produced a non-primitive element");

    const std::uint64_t p = field->p();
    zech_.assign(order_, kZero);
    for (std::uint32_t k = 0; k < order_; ++k) {
        std::uint64_t idx = exp_[k];
        std::uint64_t c0 = idx % p;
        std::uint64_t plus_one = idx - c0 + (c0 + 1) % p;
        zech_[k] = log_[plus_one];
    }
}

}  // namespace fqlab
