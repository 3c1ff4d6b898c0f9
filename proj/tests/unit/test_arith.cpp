#include <doctest.h>

#include "qfzeros/arith.hpp"
#include "test_helpers.hpp"

using namespace qfz;
using namespace qfz::testing;

TEST_CASE("factorize by trial division") {
    auto f = factorize(12);
    REQUIRE(f.pairs.size() == 2);
    CHECK(f.pairs[0] == std::pair<Int, unsigned long>{2, 2});
    CHECK(f.pairs[1] == std::pair<Int, unsigned long>{3, 1});
    CHECK(factorize(1).pairs.empty());
    CHECK(factorize(97).pairs.size() == 1);
    CHECK(factorize(97).pairs[0].first == 97);
    CHECK_THROWS_AS(factorize(0), ContractViolation);

    // product of p^e reconstructs the value
    SplitRng rng(5);
    for (int it = 0; it < 100; ++it) {
        Int v(rng.uniform(1, 100000));
        Int prod(1);
        for (const auto& [p, e] : factorize(v).pairs) prod *= pow_int(p, e);
        CHECK(prod == v);
    }
}

TEST_CASE("p-adic valuation") {
    CHECK(p_adic_valuation(24, 2) == 3);
    CHECK(p_adic_valuation(24, 5) == 0);
    CHECK(p_adic_valuation(-8, 2) == 3);  // sign ignored
    CHECK_THROWS_AS(p_adic_valuation(0, 2), ContractViolation);
}

TEST_CASE("bounded modular inverse") {
    CHECK(mod_inverse_bounded(3, 7) == 5);
    CHECK(mod_inverse_bounded(1, 9) == 1);
    CHECK(mod_inverse_bounded(5, 12) == 5);  // 25 = 1 (mod 12), via extended gcd
    CHECK(mod_inverse_bounded(4, 1) == 1);   // eta = 1 convention
    CHECK_THROWS_AS(mod_inverse_bounded(6, 9), ContractViolation);

    SplitRng rng(6);
    int done = 0;
    while (done < 1000) {
        Int eta(rng.uniform(1, 500));
        Int m(rng.uniform(-500, 500));
        if (m == 0 || gcd(m, eta) != 1) continue;
        Int mp = mod_inverse_bounded(m, eta);
        CHECK(mp >= 1);
        CHECK(mp <= eta);
        CHECK(mod_nonneg(m * mp, eta) == mod_nonneg(Int(1), eta));
        ++done;
    }
}

TEST_CASE("small residue lands in (-M/2, M/2]") {
    CHECK(small_residue(vec({7, -5, 0}), 4) == vec({-1, -1, 0}));
    CHECK(small_residue(vec({0, 0, 0}), 9) == vec({0, 0, 0}));
    CHECK(small_residue(vec({2, 2}), 4) == vec({2, 2}));  // boundary +M/2 kept

    SplitRng rng(7);
    for (int it = 0; it < 500; ++it) {
        Int m(rng.uniform(1, 60));
        IntVec z = random_vec(rng, 4, -300, 300);
        IntVec r = small_residue(z, m);
        for (std::size_t i = 0; i < z.size(); ++i) {
            CHECK(divides(m, z[i] - r[i]));
            CHECK(2 * r[i] > -m);
            CHECK(2 * r[i] <= m);
        }
    }
}

TEST_CASE("crt over coprime prime powers") {
    CHECK(crt({{Int(1), Int(2)}, {Int(2), Int(3)}}) == 5);
    CHECK(crt({{Int(0), Int(4)}, {Int(3), Int(9)}, {Int(4), Int(5)}}) == 84);
    CHECK(crt({}) == 0);
}

TEST_CASE("theta prime product") {
    SUBCASE("empty product") {
        ThetaData t = theta(3, 1, 1);
        CHECK(t.theta == 1);
        CHECK(t.per_prime.empty());
    }
    SUBCASE("p=2 contributes under the n-variable reading") {
        // lambda = 0, nu = 2, pi = 1: 2 > 1, exponent (3-1)*2 - 0 = 4
        ThetaData t = theta(3, 1, 4);
        CHECK(t.theta == 16);
        REQUIRE(t.per_prime.size() == 1);
        CHECK(t.per_prime[0].contributes);
        CHECK(t.per_prime[0].lambda == 0);
        CHECK(t.per_prime[0].nu == 2);
        CHECK(t.per_prime[0].pi == 1);
    }
    SUBCASE("no contribution when nu <= lambda + pi") {
        ThetaData t = theta(5, 2, 2);
        CHECK(t.theta == 1);
        REQUIRE(t.per_prime.size() == 1);
        CHECK(!t.per_prime[0].contributes);
    }
    SUBCASE("recomputing from per_prime reproduces theta") {
        SplitRng rng(8);
        for (int it = 0; it < 200; ++it) {
            Int delta(rng.uniform(1, 4000));
            Int eta(rng.uniform(1, 200));
            std::size_t n = 3 + it % 4;
            ThetaData t = theta(n, delta, eta);
            Rat prod(1);
            for (const auto& tp : t.per_prime) {
                if (!tp.contributes) continue;
                long e = (long(n) - 1) * long(tp.nu) - 2 * (long(n) - 1) * long(tp.lambda);
                Int pw = pow_int(tp.p, static_cast<unsigned long>(e < 0 ? -e : e));
                if (e >= 0)
                    prod *= Rat(pw);
                else
                    prod /= Rat(pw);
            }
            CHECK(prod == t.theta);
        }
    }
    SUBCASE("eta = 1 always yields theta = 1") {
        SplitRng rng(9);
        for (int it = 0; it < 50; ++it) {
            Int delta(rng.uniform(1, 10000));
            CHECK(theta(3 + it % 3, delta, 1).theta == 1);
        }
    }
}
