#pragma once

// Exact arithmetic in F_p and F_{p^m}.
//
// Elements are coefficient vectors in the root t of a monic irreducible
// modulus, little-endian. Every field is built on its own; nothing here
// embeds one extension into another.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fqlab/bigint.hpp"

namespace fqlab {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000ULL;

class ExtensionField;
using FieldPtr = std::shared_ptr<const ExtensionField>;

bool is_prime(std::uint64_t n);

class ExtensionField {
  public:
    // Validates primality of p and irreducibility of the modulus.
    ExtensionField(std::uint32_t p, std::vector<std::uint32_t> modulus);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t m() const noexcept { return m_; }
    /// Monic modulus, m + 1 coefficients, constant term first.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    BigInt q() const { return ipow(p_, m_); }
    /// q as a machine word; fields are always small enough to enumerate.
    std::uint64_t size() const noexcept { return size_; }

    bool operator==(const ExtensionField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

  private:
    std::uint32_t p_;
    std::uint32_t m_;
    std::uint64_t size_;
    std::vector<std::uint32_t> modulus_;
};

class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(FieldPtr field, std::vector<std::uint32_t> coeffs);

    const FieldPtr& field() const noexcept { return field_; }
    const std::vector<std::uint32_t>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept;
    /// Position in enumerate_field order: sum of coeffs[i] * p^i.
    std::uint64_t index() const noexcept;

    bool operator==(const FieldElement& o) const;

  private:
    FieldPtr field_;
    std::vector<std::uint32_t> coeffs_;
};

FieldPtr make_field(std::uint32_t p, std::uint32_t m, std::uint64_t seed = 0,
                    std::uint64_t budget = kDefaultBudget);

FieldElement zero(const FieldPtr& f);
FieldElement one(const FieldPtr& f);
/// Image of an integer under Z -> F_p -> F_{p^m}.
FieldElement from_integer(const FieldPtr& f, std::int64_t v);
FieldElement from_index(const FieldPtr& f, std::uint64_t index);
/// The class of t modulo the modulus (equals the constant -modulus[0] when m = 1).
FieldElement root(const FieldPtr& f);

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement neg(const FieldElement& a);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);
FieldElement pow(const FieldElement& a, const BigInt& exponent);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return sub(a, b); }
inline FieldElement operator-(const FieldElement& a) { return neg(a); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }

std::vector<FieldElement> enumerate_field(const FieldPtr& f);

// Log/antilog/Zech tables over a primitive element g. Elements are addressed
// by their enumeration index; nonzero elements also by discrete log in
// [0, q-1). kZero stands for the zero element in the log domain.
class LogTables {
  public:
    static constexpr std::uint32_t kZero = 0xFFFFFFFFu;
    static constexpr std::uint64_t kMaxSize = 1ULL << 25;

    explicit LogTables(const FieldPtr& field);

    const FieldPtr& field() const noexcept { return field_; }
    std::uint32_t group_order() const noexcept { return order_; }
    std::uint32_t log_of(std::uint64_t index) const noexcept { return log_[index]; }
    std::uint64_t index_of(std::uint32_t log) const noexcept { return log == kZero ? 0 : exp_[log]; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        if (a == kZero || b == kZero) return kZero;
        std::uint32_t s = a + b;
        return s >= order_ ? s - order_ : s;
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        if (a == kZero) return b;
        if (b == kZero) return a;
        std::uint32_t d = b >= a ? b - a : b + order_ - a;
        std::uint32_t z = zech_[d];
        if (z == kZero) return kZero;
        std::uint32_t s = a + z;
        return s >= order_ ? s - order_ : s;
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept {
        if (a == kZero) return e == 0 ? 0 : kZero;
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * (e % order_)) % order_);
    }

  private:
    FieldPtr field_;
    std::uint32_t order_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> zech_;
};

}  // namespace fqlab
