#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include <unistd.h>

#include "fqlab/counter.hpp"
#include "fqlab/error.hpp"
#include "oracle.hpp"

using namespace fqlab;
namespace fs = std::filesystem;

namespace {

CompleteIntersectionSpec conic() {
    return parse_spec(R"({"p":5,"e":1,"N":2,"polys":[{"deg":2,"terms":[{"c":[1],"e":[1,1,0]},{"c":[-1],"e":[0,0,2]}]}]})");
}

CompleteIntersectionSpec fermat_cubic_f2() {
    return parse_spec(R"({"p":2,"e":1,"N":2,"polys":[{"deg":3,"terms":[{"c":[1],"e":[3,0,0]},{"c":[1],"e":[0,3,0]},{"c":[-1],"e":[0,0,3]}]}]})");
}

CompleteIntersectionSpec random_dense(unsigned N, std::vector<unsigned> degrees, std::uint32_t p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<HomogeneousPoly> polys;
    for (auto d : degrees) {
        std::vector<Term> terms;
        for (auto& e : monomials(N + 1, d)) terms.push_back({static_cast<std::uint32_t>(rng() % p), e});
        terms.front().coeff = 1;
        polys.emplace_back(p, N + 1, d, terms);
    }
    return CompleteIntersectionSpec(p, N, polys);
}

fs::path temp_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("fqlab-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("count_pn examples") {
    CHECK(count_pn(1, 9) == 10);
    CHECK(count_pn(0, 7) == 1);
    CHECK(count_pn(3, 2) == 15);
    CHECK(count_pn(4, 10) == 11111);
}

TEST_CASE("projective counts of small examples") {
    CHECK(count_projective(fermat_cubic_f2(), 2).count == 9);
    CHECK(count_projective(conic(), 1).count == 6);
    const auto line = parse_spec(R"({"p":3,"e":1,"N":2,"polys":[{"deg":1,"terms":[{"c":[1],"e":[1,0,0]}]}]})");
    for (unsigned m = 1; m <= 3; ++m) CHECK(count_projective(line, m).count == ipow(3, m) + 1);
}

TEST_CASE("Fermat family X^{q+1} + Y^{q+1} - Z^{q+1} over F_{q^2}") {
    for (auto [p, k] : {std::pair{2u, 1u}, std::pair{3u, 1u}, std::pair{2u, 2u}}) {
        const unsigned q = static_cast<unsigned>(ipow(p, k));
        auto mono = [&](unsigned v) {
            std::vector<std::uint32_t> e(3, 0);
            e[v] = q + 1;
            return e;
        };
        CompleteIntersectionSpec s(p, 2, {HomogeneousPoly(p, 3, q + 1, {{1, mono(0)}, {1, mono(1)}, {p - 1, mono(2)}})});
        CHECK(count_projective(s, 2 * k).count == 1 + BigInt(q) * q * q);
    }
}

TEST_CASE("kernel agrees with the cone oracle on random specs") {
    struct Case {
        unsigned N;
        std::vector<unsigned> d;
        std::uint32_t p;
        unsigned m;
    };
    const std::vector<Case> cases = {{2, {3}, 5, 1}, {2, {3}, 2, 3}, {2, {4}, 3, 2}, {3, {2}, 3, 1},
                                     {3, {2, 2}, 3, 2}, {3, {3}, 2, 2}, {2, {5}, 7, 1}, {3, {1, 3}, 2, 2}};
    std::uint64_t seed = 100;
    for (const auto& c : cases) {
        for (int rep = 0; rep < 3; ++rep) {
            const auto s = random_dense(c.N, c.d, c.p, ++seed);
            CHECK(count_projective(s, c.m).count == oracle::cone_count(s, c.m));
        }
    }
}

TEST_CASE("sparse and degenerate specs agree with the oracle") {
    const std::vector<std::string> docs = {
        R"({"p":5,"e":1,"N":2,"polys":[{"deg":3,"terms":[{"c":[1],"e":[0,2,1]},{"c":[-1],"e":[3,0,0]},{"c":[-1],"e":[2,0,1]}]}]})",
        R"({"p":3,"e":1,"N":3,"polys":[{"deg":2,"terms":[{"c":[1],"e":[1,0,0,1]},{"c":[-1],"e":[0,1,1,0]}]}]})",
        R"({"p":2,"e":1,"N":2,"polys":[{"deg":2,"terms":[{"c":[1],"e":[2,0,0]}]}]})",
        R"({"p":3,"e":1,"N":3,"polys":[{"deg":1,"terms":[{"c":[1],"e":[0,0,0,1]}]},{"deg":2,"terms":[{"c":[1],"e":[0,0,0,2]}]}]})"};
    for (const auto& d : docs) {
        const auto s = parse_spec(d);
        for (unsigned m = 1; m <= 2; ++m) CHECK(count_projective(s, m).count == oracle::cone_count(s, m));
    }
}

TEST_CASE("a nonzero linear form cuts out P^{N-1}") {
    std::mt19937_64 rng(9);
    for (auto [N, p] : {std::pair{2u, 5u}, std::pair{3u, 3u}, std::pair{4u, 2u}}) {
        for (int rep = 0; rep < 4; ++rep) {
            std::vector<Term> terms;
            for (auto& e : monomials(N + 1, 1)) terms.push_back({static_cast<std::uint32_t>(rng() % p), e});
            terms[rep % terms.size()].coeff = 1;
            CompleteIntersectionSpec s(p, N, {HomogeneousPoly(p, N + 1, 1, terms)});
            for (unsigned m = 1; m <= 2; ++m) CHECK(count_projective(s, m).count == count_pn(N - 1, ipow(p, m)));
        }
    }
}

TEST_CASE("N_a <= N_ab") {
    const auto s = random_dense(2, {4}, 3, 77);
    const auto N = count_series(s, 6);
    for (unsigned a = 1; a <= 6; ++a) {
        for (unsigned b = 1; a * b <= 6; ++b) CHECK(N[a - 1] <= N[a * b - 1]);
    }
    for (unsigned m = 1; m <= 6; ++m) CHECK(N[m - 1] <= count_pn(2, ipow(3, m)));
}

TEST_CASE("chart subtotals and parallel workers") {
    const auto s = random_dense(3, {3}, 2, 5);
    CountOptions serial;
    const auto a = count_projective(s, 4, serial);
    CHECK(std::accumulate(a.chart_counts.begin(), a.chart_counts.end(), BigInt(0),
                          [](BigInt acc, std::uint64_t v) { return acc + v; }) == a.count);
    CHECK(a.chart_counts.size() == 4);
    for (unsigned threads : {2u, 3u, 4u, 7u}) {
        CountOptions par;
        par.threads = threads;
        const auto b = count_projective(s, 4, par);
        CHECK(b.count == a.count);
        CHECK(b.chart_counts == a.chart_counts);
    }
}

TEST_CASE("affine complements") {
    CHECK(count_affine_complement(conic(), 2, 1) == 4);
    CHECK(count_affine_complement(fermat_cubic_f2(), 2, 2) == 6);
    CHECK_THROWS_AS(count_affine_complement(conic(), 5, 1), MathError);
}

TEST_CASE("budget is enforced") {
    CountOptions o;
    o.budget = 30;
    CHECK_THROWS_AS(count_projective(conic(), 1, o), BudgetError);
    o.budget = 31;
    CHECK(count_projective(conic(), 1, o).count == 6);
}

TEST_CASE("smoothness piggyback finds the node of y^2 z = x^3 + x^2 z") {
    const auto nodal = parse_spec(
        R"({"p":5,"e":1,"N":2,"polys":[{"deg":3,"terms":[{"c":[1],"e":[0,2,1]},{"c":[-1],"e":[3,0,0]},{"c":[-1],"e":[2,0,1]}]}]})");
    CountOptions o;
    o.smoothness = true;
    const auto rec = count_projective(nodal, 1, o);
    REQUIRE(rec.anomalies.size() == 1);
    CHECK(rec.anomalies[0] == std::vector<std::uint64_t>{0, 0, 1});
    CHECK(rec.count == count_projective(nodal, 1).count);
    CHECK_FALSE(smooth_at_points_up_to(nodal, 1));
    CHECK(smooth_at_points_up_to(conic(), 2));
}

TEST_CASE("count table in memory") {
    CountTable t;
    CHECK_FALSE(t.get("abc", 1).has_value());
    t.put("abc", 1, 6);
    CHECK(t.get("abc", 1) == BigInt(6));
    t.put("abc", 1, 6);
    CHECK(t.size() == 1);
    CHECK_THROWS_AS(t.put("abc", 1, 7), IntegrityError);
    CHECK(t.get("abc", 1) == BigInt(6));
}

TEST_CASE("count table on disk round-trips and rejects corruption") {
    const auto dir = temp_dir("cache");
    const auto path = dir / "counts.csv";
    {
        CountTable t(path);
        CountOptions o;
        o.cache = &t;
        CHECK_FALSE(count_projective(conic(), 2, o).from_cache);
        CHECK(count_projective(conic(), 2, o).from_cache);
    }
    {
        std::ifstream in(path);
        std::string header, line;
        std::getline(in, header);
        std::getline(in, line);
        CHECK(header == "fingerprint,m,count");
        CHECK(line == conic().fingerprint() + ",2,26");
    }
    {
        CountTable t(path);
        CHECK(t.get(conic().fingerprint(), 2) == BigInt(26));
        CountOptions o;
        o.cache = &t;
        o.audit = true;
        CHECK(count_projective(conic(), 2, o).count == 26);
    }
    {
        std::ofstream out(path, std::ios::app);
        out << conic().fingerprint() << ",2,27\n";
    }
    CHECK_THROWS_AS(CountTable{path}, IntegrityError);
    {
        std::ofstream out(path);
        out << "fingerprint,m,count\nzz,not-a-number,3\n";
    }
    CHECK_THROWS_AS(CountTable{path}, IntegrityError);
    {
        std::ofstream out(path);
        out << "fingerprint,m,count\n" << conic().fingerprint() << ",1,7\n";
    }
    CountTable bad(path);
    CountOptions audit;
    audit.cache = &bad;
    audit.audit = true;
    CHECK_THROWS_AS(count_projective(conic(), 1, audit), IntegrityError);
    fs::remove_all(dir);
}

TEST_CASE("representative counts") {
    CHECK(representative_count(2, 5) == 31u);
    CHECK(representative_count(3, 2) == 15u);
    CHECK_FALSE(representative_count(10, 1ULL << 20).has_value());
}
