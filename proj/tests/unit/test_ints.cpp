#include <doctest.h>

#include "qfzeros/ints.hpp"
#include "test_helpers.hpp"

using namespace qfz;
using qfz::testing::vec;

TEST_CASE("content and primitivity") {
    CHECK(content(vec({2, 4, 6})) == 2);
    CHECK(content(vec({1, 0, 1})) == 1);
    CHECK(content(vec({0, 0, 0})) == 0);  // gcd convention for the zero vector
    CHECK(is_primitive(vec({1, 0, 1})));
    CHECK(!is_primitive(vec({2, 4})));
}

TEST_CASE("lexicographic tie-break order") {
    CHECK(lex_less(vec({-1, 0, -1}), vec({-1, 0, 1})));
    CHECK(lex_less(vec({-1, 0, 1}), vec({0, -1, -1})));
    CHECK(!lex_less(vec({1, 1}), vec({1, 1})));
}

TEST_CASE("bareiss determinant") {
    CHECK(det_bareiss({vec({1, 0}), vec({0, 1})}) == 1);
    CHECK(det_bareiss({vec({0, 1, 0}), vec({1, 0, 0}), vec({0, 0, 1})}) == -1);
    CHECK(det_bareiss({vec({2, 3}), vec({2, 3})}) == 0);
    // needs a pivot swap on the first column
    CHECK(det_bareiss({vec({0, 2}), vec({3, 1})}) == -6);

    // cross-check against rational elimination on random matrices
    SplitRng rng(99);
    for (int it = 0; it < 50; ++it) {
        std::size_t n = 2 + it % 4;
        IntMat m(n, IntVec(n));
        for (auto& row : m)
            for (auto& v : row) v = Int(rng.uniform(-9, 9));
        RatMat rm;
        for (const auto& row : m) rm.push_back(to_rat(row));
        CHECK(Rat(det_bareiss(m)) == det_rat(rm));
    }
}

TEST_CASE("rank over Q") {
    CHECK(rank_int({vec({1, 0, 0}), vec({0, 1, 0})}) == 2);
    CHECK(rank_int({vec({1, 1, 0}), vec({2, 2, 0})}) == 1);
    CHECK(rank_int({vec({1, 1, 0}), vec({0, 1, 0}), vec({1, 0, 0})}) == 2);
    CHECK(independent_with({vec({1, 1, 0}), vec({0, 1, 0})}, vec({0, 0, 5})));
    CHECK(!independent_with({vec({1, 1, 0}), vec({0, 1, 0})}, vec({3, 5, 0})));
}

TEST_CASE("rational floor and ceiling") {
    CHECK(rat_floor(Rat(7, 2)) == 3);
    CHECK(rat_floor(Rat(-7, 2)) == -4);
    CHECK(rat_ceil(Rat(7, 2)) == 4);
    CHECK(rat_ceil(Rat(-7, 2)) == -3);
    CHECK(rat_floor(Rat(4)) == 4);
    CHECK(rat_ceil(Rat(4)) == 4);
}
