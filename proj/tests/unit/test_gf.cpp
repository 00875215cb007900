#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fqlab/error.hpp"
#include "fqlab/gf.hpp"

using namespace fqlab;

namespace {

FieldElement random_element(const FieldPtr& F, std::mt19937_64& rng) { return from_index(F, rng() % F->size()); }

// For degree <= 3, having no root in F_p is the same as irreducibility.
bool has_root_mod_p(const std::vector<std::uint32_t>& f, std::uint32_t p) {
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = (v * x + f[i]) % p;
        if (v == 0) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("prime field F_2 has modulus x") {
    auto F = make_field(2, 1, 0);
    CHECK(F->p() == 2);
    CHECK(F->m() == 1);
    CHECK(F->modulus() == std::vector<std::uint32_t>{0, 1});
    CHECK(F->q() == 2);
}

TEST_CASE("F_4 modulus is the unique irreducible quadratic over F_2") {
    std::vector<std::vector<std::uint32_t>> irreducible;
    for (std::uint32_t a = 0; a < 2; ++a) {
        for (std::uint32_t b = 0; b < 2; ++b) {
            std::vector<std::uint32_t> f{a, b, 1};
            if (!has_root_mod_p(f, 2)) irreducible.push_back(f);
        }
    }
    REQUIRE(irreducible.size() == 1);
    CHECK(make_field(2, 2, 0)->modulus() == irreducible.front());
    CHECK(irreducible.front() == std::vector<std::uint32_t>{1, 1, 1});
}

TEST_CASE("non-prime characteristic is rejected") {
    CHECK_THROWS_AS(make_field(4, 1, 0), MathError);
    CHECK_THROWS_AS(make_field(1, 1, 0), MathError);
    CHECK_THROWS_AS(make_field(9, 2, 0), MathError);
}

TEST_CASE("field construction respects the budget") {
    CHECK_THROWS_AS(make_field(2, 20, 0, 1000), BudgetError);
    CHECK_NOTHROW(make_field(2, 10, 0, 1024));
}

TEST_CASE("reducible modulus is rejected") {
    CHECK_THROWS(ExtensionField(2, {1, 0, 1}));     // (x+1)^2
    CHECK_THROWS(ExtensionField(3, {2, 0, 0, 1}));  // x^3 - 1 has root 1
    CHECK_THROWS(ExtensionField(2, {0, 1, 1}));     // x(x+1)
    CHECK_NOTHROW(ExtensionField(3, {1, 0, 1}));    // x^2 + 1
}

TEST_CASE("seeded modulus search is deterministic and always irreducible") {
    for (std::uint64_t seed : {0ULL, 1ULL, 7ULL, 12345ULL}) {
        auto a = make_field(3, 3, seed);
        auto b = make_field(3, 3, seed);
        CHECK(a->modulus() == b->modulus());
        CHECK_FALSE(has_root_mod_p(a->modulus(), 3));
    }
}

TEST_CASE("in F_4, t * t = t + 1") {
    auto F = make_field(2, 2, 0);
    const auto t = root(F);
    CHECK(t * t == t + one(F));
    CHECK((t * t).coeffs() == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("a * inv(a) = 1 on F_9") {
    auto F = make_field(3, 2, 0);
    for (const auto& a : enumerate_field(F)) {
        if (a.is_zero()) continue;
        CHECK(a * inv(a) == one(F));
    }
    CHECK_THROWS_AS(inv(zero(F)), MathError);
}

TEST_CASE("pow(a, q) = a and pow(a, q-1) = 1") {
    for (auto [p, m] : {std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{5u, 2u}, std::pair{7u, 1u}}) {
        auto F = make_field(p, m, 0);
        const BigInt q = F->q();
        for (const auto& a : enumerate_field(F)) {
            CHECK(pow(a, q) == a);
            if (!a.is_zero()) CHECK(pow(a, q - 1) == one(F));
        }
        CHECK(pow(zero(F), BigInt(0)) == one(F));
    }
}

TEST_CASE("pow agrees with repeated multiplication") {
    auto F = make_field(5, 3, 0);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_element(F, rng);
        FieldElement acc = one(F);
        for (unsigned e = 0; e < 40; ++e) {
            CHECK(pow(a, BigInt(e)) == acc);
            acc = acc * a;
        }
    }
}

TEST_CASE("mixed-field operands are rejected") {
    auto F = make_field(3, 2, 0);
    auto G = make_field(5, 2, 0);
    CHECK_THROWS_AS(add(one(F), one(G)), MathError);
    CHECK_THROWS_AS(mul(one(F), one(G)), MathError);
    CHECK_THROWS_AS((void)(one(F) == one(G)), MathError);
}

TEST_CASE("enumerate_field order") {
    auto F2 = make_field(2, 1, 0);
    auto e2 = enumerate_field(F2);
    REQUIRE(e2.size() == 2);
    CHECK(e2[0].is_zero());
    CHECK(e2[1] == one(F2));

    auto F4 = make_field(2, 2, 0);
    auto e4 = enumerate_field(F4);
    REQUIRE(e4.size() == 4);
    CHECK(e4[0] == zero(F4));
    CHECK(e4[1] == one(F4));

    auto F9 = make_field(3, 2, 0);
    auto e9 = enumerate_field(F9);
    REQUIRE(e9.size() == 9);
    for (std::size_t i = 0; i < e9.size(); ++i) {
        CHECK(e9[i].index() == i);
        for (std::size_t j = i + 1; j < e9.size(); ++j) CHECK_FALSE(e9[i] == e9[j]);
    }
    CHECK(enumerate_field(F9) == e9);
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(11);
    for (auto [p, m] : {std::pair{2u, 5u}, std::pair{3u, 3u}, std::pair{7u, 2u}, std::pair{13u, 1u}}) {
        auto F = make_field(p, m, 1);
        for (int trial = 0; trial < 300; ++trial) {
            const auto a = random_element(F, rng), b = random_element(F, rng), c = random_element(F, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + zero(F) == a);
            CHECK(a * one(F) == a);
            CHECK(a - a == zero(F));
            CHECK(a + neg(a) == zero(F));
        }
    }
}

TEST_CASE("Frobenius is additive") {
    std::mt19937_64 rng(5);
    for (auto [p, m] : {std::pair{2u, 4u}, std::pair{3u, 3u}, std::pair{5u, 2u}}) {
        auto F = make_field(p, m, 2);
        for (int trial = 0; trial < 200; ++trial) {
            const auto a = random_element(F, rng), b = random_element(F, rng);
            CHECK(pow(a + b, BigInt(p)) == pow(a, BigInt(p)) + pow(b, BigInt(p)));
        }
    }
}

TEST_CASE("from_integer reduces mod p") {
    auto F = make_field(7, 2, 0);
    CHECK(from_integer(F, 7) == zero(F));
    CHECK(from_integer(F, -1) == from_integer(F, 6));
    CHECK(from_integer(F, 15) == from_integer(F, 1));
}

TEST_CASE("log tables agree with direct arithmetic") {
    for (auto [p, m] : {std::pair{2u, 1u}, std::pair{2u, 4u}, std::pair{3u, 3u}, std::pair{5u, 2u}}) {
        auto F = make_field(p, m, 0);
        LogTables L(F);
        const auto elems = enumerate_field(F);
        CHECK(L.group_order() == F->size() - 1);
        for (const auto& a : elems) {
            CHECK(L.index_of(L.log_of(a.index())) == a.index());
            for (const auto& b : elems) {
                const auto la = L.log_of(a.index()), lb = L.log_of(b.index());
                CHECK(L.index_of(L.mul(la, lb)) == (a * b).index());
                CHECK(L.index_of(L.add(la, lb)) == (a + b).index());
            }
            for (unsigned e : {0u, 1u, 2u, 5u}) CHECK(L.index_of(L.pow(L.log_of(a.index()), e)) == pow(a, BigInt(e)).index());
        }
    }
}
