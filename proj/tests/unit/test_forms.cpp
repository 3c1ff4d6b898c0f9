#include <doctest.h>

#include "qfzeros/forms.hpp"
#include "test_helpers.hpp"

using namespace qfz;
using namespace qfz::testing;

TEST_CASE("eval_form on the Pythagorean cone") {
    QuadraticForm q = diag_form({1, 1, -1});
    CHECK(eval_form(q, vec({3, 4, 5})) == 0);
    CHECK(eval_form(q, vec({1, 1, 1})) == 1);
    CHECK(eval_form(q, vec({0, 0, 0})) == 0);
    CHECK_THROWS_AS(eval_form(q, vec({1, 2})), ContractViolation);
}

TEST_CASE("doubled bilinear form") {
    QuadraticForm q = diag_form({1, 1, -1});
    CHECK(eval_bilinear_double(q, vec({1, 0, 0}), vec({1, 0, 0})) == 2);
    CHECK(eval_bilinear_double(q, vec({1, 0, 0}), vec({0, 0, 1})) == 0);
    // derived by expanding Q(x+y) - Q(x) - Q(y) directly
    CHECK(eval_bilinear_double(q, vec({1, 0, 1}), vec({0, 1, 0})) == 0);
}

TEST_CASE("bilinear expansion identity holds exactly on random inputs") {
    SplitRng rng(1);
    for (int it = 0; it < 300; ++it) {
        std::size_t n = 2 + it % 4;
        QuadraticForm q = random_symmetric_form(rng, n, 30);
        IntVec x = random_vec(rng, n, -20, 20);
        IntVec y = random_vec(rng, n, -20, 20);
        CHECK(eval_bilinear_double(q, x, y) ==
              q.eval(vec_add(x, y)) - q.eval(x) - q.eval(y));
        CHECK(eval_bilinear_double(q, x, y) == eval_bilinear_double(q, y, x));
        CHECK(eval_bilinear_double(q, x, x) == 2 * q.eval(x));
    }
}

TEST_CASE("scaling law Q(cx) = c^2 Q(x)") {
    SplitRng rng(2);
    for (int it = 0; it < 200; ++it) {
        QuadraticForm q = random_symmetric_form(rng, 3, 25);
        IntVec x = random_vec(rng, 3, -15, 15);
        Int c(rng.uniform(-10, 10));
        CHECK(q.eval(vec_scale(c, x)) == c * c * q.eval(x));
    }
}

TEST_CASE("eval_linear") {
    LinearForm l1(vec({1, 0, 0}));
    CHECK(eval_linear(l1, vec({5, 7, 9})) == 5);
    CHECK(eval_linear(LinearForm(vec({1, -1, 0})), vec({3, 3, 1})) == 0);
    CHECK(eval_linear(LinearForm(vec({2, 1, 1})), vec({1, 1, 1})) == 4);
    CHECK_THROWS_AS(LinearForm(vec({0, 0, 0})), ContractViolation);
}

TEST_CASE("verify_system") {
    QuadraticForm q = diag_form({1, 1, -1});
    CongruenceSystem sys(vec({1, 0, 1}), 2);
    CHECK(verify_system(q, sys, vec({1, 0, 1})));
    // (3,4,5) is on the cone and matches (1,0,1) mod 2 componentwise
    CHECK(verify_system(q, sys, vec({3, 4, 5})));
    // a genuine residue mismatch in the middle coordinate
    CHECK(!verify_system(q, CongruenceSystem(vec({1, 1, 1}), 2), vec({3, 4, 5})));
    CongruenceSystem zero_sys(vec({0, 0, 0}), 1);
    CHECK(verify_system(q, zero_sys, vec({0, 0, 0})));
}

TEST_CASE("verify_system invariant under xi shifts by eta") {
    SplitRng rng(3);
    QuadraticForm q = diag_form({1, 1, -1});
    for (int it = 0; it < 100; ++it) {
        IntVec xi = random_vec(rng, 3, -6, 6);
        Int eta(rng.uniform(1, 5));
        IntVec x = random_vec(rng, 3, -10, 10);
        IntVec w = random_vec(rng, 3, -4, 4);
        CongruenceSystem sys(xi, eta);
        IntVec shifted_xi = vec_add(xi, vec_scale(eta, w));
        CongruenceSystem sys2(shifted_xi, eta);
        CHECK(verify_system(q, sys, x) == verify_system(q, sys2, x));
    }
}

TEST_CASE("nondegeneracy via exact determinant") {
    CHECK(is_nondegenerate(diag_form({1, 1, -1})));
    CHECK(!is_nondegenerate(make_form({{1, 1}, {1, 1}})));
    QuadraticForm hyp = make_form({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    CHECK(is_nondegenerate(hyp));
    CHECK(hyp.det() == -1);  // cofactor expansion
}

TEST_CASE("gram caches equal recomputation") {
    SplitRng rng(4);
    for (int it = 0; it < 100; ++it) {
        QuadraticForm q = random_symmetric_form(rng, 3, 40);
        CHECK(q.det() == det_bareiss(q.gram()));
        Int h = 0;
        for (const auto& row : q.gram())
            for (const Int& v : row)
                if (abs(v) > h) h = abs(v);
        CHECK(q.height() == h);
    }
}

TEST_CASE("gram matrix validation") {
    CHECK_THROWS_AS(make_form({{1, 2}, {3, 1}}), ContractViolation);
    CHECK_THROWS_AS(QuadraticForm::from_gram({}), ContractViolation);
}

TEST_CASE("upper-coefficient importer") {
    SUBCASE("even cross terms stay undoubled") {
        // Q = x^2 + 2xy + y^2 -> G = [[1,1],[1,1]]
        QuadraticForm q = QuadraticForm::from_upper_coeffs(2, {Int(1), Int(2), Int(1)});
        CHECK(!q.doubled());
        CHECK(q.gram()[0][1] == 1);
        CHECK(q.eval(vec({1, 1})) == 4);
    }
    SUBCASE("odd cross term doubles the form") {
        // Q = x^2 + xy + y^2; doubled to keep G integral, zero set unchanged
        QuadraticForm q = QuadraticForm::from_upper_coeffs(2, {Int(1), Int(1), Int(1)});
        CHECK(q.doubled());
        CHECK(q.eval(vec({1, 1})) == 6);  // 2 * (1 + 1 + 1)
        CHECK(q.gram()[0][1] == 1);
        CHECK(q.gram()[0][0] == 2);
    }
}
