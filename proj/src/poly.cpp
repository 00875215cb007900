#include "fqlab/poly.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include <nlohmann/json.hpp>

#include "fqlab/error.hpp"

namespace fqlab {

using json = nlohmann::json;

namespace {

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json poly_to_json(const HomogeneousPoly& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) terms.push_back({{"c", json::array({t.coeff})}, {"e", t.exponents}});
    return {{"deg", f.degree()}, {"terms", terms}};
}

}  // namespace

HomogeneousPoly::HomogeneousPoly(std::uint32_t p, std::size_t nvars, unsigned degree, std::vector<Term> terms)
    : p_(p), nvars_(nvars), degree_(degree) {
    if (p < 2) throw ParseError("invalid characteristic");
    for (auto& t : terms) {
        if (t.exponents.size() != nvars) {
            throw ParseError("term has " + std::to_string(t.exponents.size()) + " exponents, expected " +
                             std::to_string(nvars));
        }
        unsigned total = std::accumulate(t.exponents.begin(), t.exponents.end(), 0u);
        if (total != degree) {
            throw ParseError("non-homogeneous term of degree " + std::to_string(total) + " in a degree-" +
                             std::to_string(degree) + " polynomial");
        }
        t.coeff %= p;
    }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exponents < b.exponents; });
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (terms[i].exponents == terms[i - 1].exponents) throw ParseError("duplicate exponent vector");
    }
    std::erase_if(terms, [](const Term& t) { return t.coeff == 0; });
    terms_ = std::move(terms);
}

HomogeneousPoly HomogeneousPoly::derivative(std::size_t var) const {
    HomogeneousPoly d;
    d.p_ = p_;
    d.nvars_ = nvars_;
    d.degree_ = degree_ == 0 ? 0 : degree_ - 1;
    for (const auto& t : terms_) {
        std::uint32_t e = t.exponents[var];
        if (e == 0) continue;
        std::uint32_t c = static_cast<std::uint32_t>((static_cast<std::uint64_t>(t.coeff) * (e % p_)) % p_);
        if (c == 0) continue;
        Term dt{c, t.exponents};
        dt.exponents[var] -= 1;
        d.terms_.push_back(std::move(dt));
    }
    // Lowering one exponent keeps the lexicographic order only within runs;
    // sort again to stay canonical.
    std::sort(d.terms_.begin(), d.terms_.end(),
              [](const Term& a, const Term& b) { return a.exponents < b.exponents; });
    return d;
}

HomogeneousPoly HomogeneousPoly::restrict_to_hyperplane(std::size_t var) const {
    std::vector<Term> kept;
    for (const auto& t : terms_) {
        if (t.exponents[var] != 0) continue;
        Term r{t.coeff, {}};
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (i != var) r.exponents.push_back(t.exponents[i]);
        }
        kept.push_back(std::move(r));
    }
    return HomogeneousPoly(p_, nvars_ - 1, degree_, std::move(kept));
}

CompleteIntersectionSpec::CompleteIntersectionSpec(std::uint32_t p, unsigned ambient_dim,
                                                   std::vector<HomogeneousPoly> polys, bool allow_points)
    : p_(p), ambient_(ambient_dim), polys_(std::move(polys)) {
    if (!is_prime(p)) throw ParseError("p = " + std::to_string(p) + " is not prime");
    const unsigned r = static_cast<unsigned>(polys_.size());
    if (r < 1) throw ParseError("a complete intersection needs r >= 1 equations");
    const unsigned max_r = allow_points ? ambient_ : ambient_ - 1;
    if (ambient_ < 1 || r > max_r) {
        throw ParseError("r = " + std::to_string(r) + " outside [1, " + std::to_string(max_r) + "] for N = " +
                         std::to_string(ambient_));
    }
    for (const auto& f : polys_) {
        if (f.p() != p || f.nvars() != ambient_ + 1) throw ParseError("polynomial does not live on P^N over F_p");
        if (f.degree() < 1) throw ParseError("defining polynomials must have positive degree");
        if (f.is_zero()) throw ParseError("defining polynomial is identically zero");
    }
    for (const auto& f : polys_) {
        std::vector<HomogeneousPoly> row;
        for (unsigned j = 0; j <= ambient_; ++j) row.push_back(f.derivative(j));
        jacobian_.push_back(std::move(row));
    }
    fingerprint_ = fnv1a_hex(serialize_spec(*this));
}

std::vector<unsigned> CompleteIntersectionSpec::degrees() const {
    std::vector<unsigned> d;
    for (const auto& f : polys_) d.push_back(f.degree());
    return d;
}

std::string serialize_spec(const CompleteIntersectionSpec& spec) {
    json polys = json::array();
    for (const auto& f : spec.polys()) polys.push_back(poly_to_json(f));
    json doc = {{"p", spec.p()}, {"e", spec.e()}, {"N", spec.ambient_dim()}, {"polys", polys}};
    return doc.dump();
}

CompleteIntersectionSpec parse_spec(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("spec is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw ParseError("spec must be a JSON object");
        for (const char* key : {"p", "e", "N", "polys"}) {
            if (!doc.contains(key)) throw ParseError(std::string("spec is missing field '") + key + "'");
        }
        const auto p = doc.at("p").get<std::int64_t>();
        const auto e = doc.at("e").get<std::int64_t>();
        const auto N = doc.at("N").get<std::int64_t>();
        if (p < 2 || p > 0xFFFFFFFFLL || !is_prime(static_cast<std::uint64_t>(p))) {
            throw ParseError("field parameter p = " + std::to_string(p) + " is not a supported prime");
        }
        if (e != 1) throw ParseError("field parameter e = " + std::to_string(e) + " is not supported (only e = 1)");
        if (N < 2 || N > 64) throw ParseError("ambient dimension N = " + std::to_string(N) + " out of range");
        const auto nvars = static_cast<std::size_t>(N + 1);

        std::vector<HomogeneousPoly> polys;
        for (const auto& jp : doc.at("polys")) {
            const auto deg = jp.at("deg").get<std::int64_t>();
            if (deg < 1 || deg > 1000) throw ParseError("polynomial degree " + std::to_string(deg) + " out of range");
            std::vector<Term> terms;
            for (const auto& jt : jp.at("terms")) {
                const auto& c = jt.at("c");
                if (!c.is_array() || c.size() != static_cast<std::size_t>(e)) {
                    throw ParseError("coefficient must be a list of e residues");
                }
                const auto cv = c[0].get<std::int64_t>();
                Term t;
                t.coeff = static_cast<std::uint32_t>(((cv % p) + p) % p);
                for (const auto& x : jt.at("e")) {
                    const auto v = x.get<std::int64_t>();
                    if (v < 0) throw ParseError("negative exponent");
                    t.exponents.push_back(static_cast<std::uint32_t>(v));
                }
                terms.push_back(std::move(t));
            }
            polys.emplace_back(static_cast<std::uint32_t>(p), nvars, static_cast<unsigned>(deg), std::move(terms));
        }
        return CompleteIntersectionSpec(static_cast<std::uint32_t>(p), static_cast<unsigned>(N), std::move(polys));
    } catch (const json::exception& ex) {
        throw ParseError(std::string("malformed spec: ") + ex.what());
    }
}

FieldElement evaluate(const HomogeneousPoly& f, std::span<const FieldElement> point) {
    if (point.size() != f.nvars()) throw MathError("point dimension does not match the polynomial");
    const FieldPtr& F = point[0].field();
    // powers[i][k] = x_i^k for k <= degree
    std::vector<std::vector<FieldElement>> powers(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        powers[i].reserve(f.degree() + 1);
        powers[i].push_back(one(F));
        for (unsigned k = 1; k <= f.degree(); ++k) powers[i].push_back(mul(powers[i].back(), point[i]));
    }
    FieldElement acc = zero(F);
    for (const auto& t : f.terms()) {
        FieldElement v = from_integer(F, t.coeff);
        for (std::size_t i = 0; i < point.size(); ++i) {
            if (t.exponents[i] != 0) v = mul(v, powers[i][t.exponents[i]]);
        }
        acc = add(acc, v);
    }
    return acc;
}

unsigned jacobian_rank_at(const CompleteIntersectionSpec& spec, std::span<const FieldElement> point) {
    if (point.size() != spec.ambient_dim() + 1) throw MathError("point dimension does not match the spec");
    for (const auto& f : spec.polys()) {
        if (!evaluate(f, point).is_zero()) throw MathError("point is not on X");
    }
    const std::size_t rows = spec.r(), cols = spec.ambient_dim() + 1;
    std::vector<std::vector<FieldElement>> a(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) a[i].push_back(evaluate(spec.jacobian()[i][j], point));
    }
    unsigned rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        FieldElement scale = inv(a[rank][col]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (a[i][col].is_zero()) continue;
            FieldElement factor = mul(a[i][col], scale);
            for (std::size_t j = col; j < cols; ++j) a[i][j] = sub(a[i][j], mul(factor, a[rank][j]));
        }
        ++rank;
    }
    return rank;
}

CompleteIntersectionSpec hyperplane_section(const CompleteIntersectionSpec& spec, unsigned coordinate) {
    if (coordinate > spec.ambient_dim()) {
        throw MathError("hyperplane index " + std::to_string(coordinate) + " out of range");
    }
    std::vector<HomogeneousPoly> restricted;
    for (std::size_t i = 0; i < spec.polys().size(); ++i) {
        auto g = spec.polys()[i].restrict_to_hyperplane(coordinate);
        if (g.is_zero()) {
            throw MathError("polynomial " + std::to_string(i) + " vanishes identically on x_" +
                            std::to_string(coordinate) + " = 0; the section is not a complete intersection");
        }
        restricted.push_back(std::move(g));
    }
    return CompleteIntersectionSpec(spec.p(), spec.ambient_dim() - 1, std::move(restricted), true);
}

std::vector<std::vector<std::uint32_t>> monomials(std::size_t nvars, unsigned degree) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(nvars, 0);
    // Enumerate compositions of degree into nvars parts, lexicographic.
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i + 1 == nvars) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            cur[i] = k;
            self(self, i + 1, left - k);
        }
    };
    if (nvars > 0) rec(rec, 0, degree);
    return out;
}

}  // namespace fqlab
