#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fqlab/gf.hpp"

namespace fqlab {

// Base fields are prime fields for now (the file format reserves e > 1), so a
// coefficient is a residue in [0, p).
struct Term {
    std::uint32_t coeff;
    std::vector<std::uint32_t> exponents;

    bool operator==(const Term&) const = default;
};

class HomogeneousPoly {
  public:
    // Reduces coefficients mod p, drops zero terms and sorts terms
    // lexicographically by exponent vector. Rejects inhomogeneous terms and
    // repeated exponent vectors.
    HomogeneousPoly(std::uint32_t p, std::size_t nvars, unsigned degree, std::vector<Term> terms);

    std::uint32_t p() const noexcept { return p_; }
    std::size_t nvars() const noexcept { return nvars_; }
    unsigned degree() const noexcept { return degree_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Formal partial derivative, coefficients reduced mod p.
    HomogeneousPoly derivative(std::size_t var) const;
    /// Restriction to x_var = 0, with that variable removed.
    HomogeneousPoly restrict_to_hyperplane(std::size_t var) const;

    bool operator==(const HomogeneousPoly&) const = default;

  private:
    HomogeneousPoly() = default;
    std::uint32_t p_ = 0;
    std::size_t nvars_ = 0;
    unsigned degree_ = 0;
    std::vector<Term> terms_;
};

class CompleteIntersectionSpec {
  public:
    // allow_points admits r = N (zero-dimensional), which only arises for
    // hyperplane sections of curves.
    CompleteIntersectionSpec(std::uint32_t p, unsigned ambient_dim, std::vector<HomogeneousPoly> polys,
                             bool allow_points = false);

    std::uint32_t p() const noexcept { return p_; }
    unsigned e() const noexcept { return 1; }
    unsigned ambient_dim() const noexcept { return ambient_; }
    unsigned r() const noexcept { return static_cast<unsigned>(polys_.size()); }
    unsigned dim() const noexcept { return ambient_ - r(); }
    std::vector<unsigned> degrees() const;
    const std::vector<HomogeneousPoly>& polys() const noexcept { return polys_; }
    /// jacobian()[i][j] = d polys[i] / d x_j.
    const std::vector<std::vector<HomogeneousPoly>>& jacobian() const noexcept { return jacobian_; }
    /// Lowercase hex content hash of the canonical serialization.
    const std::string& fingerprint() const noexcept { return fingerprint_; }

    std::optional<unsigned> smoothness_verified_up_to;

  private:
    std::uint32_t p_;
    unsigned ambient_;
    std::vector<HomogeneousPoly> polys_;
    std::vector<std::vector<HomogeneousPoly>> jacobian_;
    std::string fingerprint_;
};

CompleteIntersectionSpec parse_spec(const std::string& document);
/// Canonical compact JSON; parse_spec(serialize_spec(s)) == s.
std::string serialize_spec(const CompleteIntersectionSpec& spec);

FieldElement evaluate(const HomogeneousPoly& f, std::span<const FieldElement> point);

// Rank of the Jacobian matrix at a point of X. Throws MathError if the point
// is not on X.
unsigned jacobian_rank_at(const CompleteIntersectionSpec& spec, std::span<const FieldElement> point);

CompleteIntersectionSpec hyperplane_section(const CompleteIntersectionSpec& spec, unsigned coordinate);

struct RandomCiOptions {
    std::uint64_t budget = kDefaultBudget;
    unsigned attempt_cap = 200;
    unsigned threads = 1;
};

// Seeded rejection sampling of dense complete intersections that are smooth at
// every point over F_{p^m}, m <= probe_depth.
CompleteIntersectionSpec random_ci(unsigned ambient_dim, const std::vector<unsigned>& degrees, std::uint32_t p,
                                   std::uint64_t seed, unsigned probe_depth, const RandomCiOptions& options = {});

/// Exponent vectors of all monomials of the given degree, lexicographic.
std::vector<std::vector<std::uint32_t>> monomials(std::size_t nvars, unsigned degree);

}  // namespace fqlab
