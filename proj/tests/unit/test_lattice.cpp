#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qfzeros/lattice.hpp"
#include "test_helpers.hpp"

using namespace qfz;
using namespace qfz::testing;

namespace {

// Independent brute-force minima: enumerate preimages in a sup-norm box wide
// enough to cover every lattice vector of norm <= 1 (all successive minima
// are <= 1 for projections of Z^n), project, and pick greedily.
std::vector<Rat> oracle_minima_norms(const IntVec& a, std::size_t count, long extra = 2) {
    const std::size_t n = a.size();
    long w_rad = static_cast<long>(std::sqrt(1.0 + norm_sq(a).get_d() / 4.0)) + extra;

    std::vector<std::pair<RatVec, Rat>> points;
    IntVec w(n, Int(0));
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            auto [q, alpha] = project_orthogonal(w, a);
            if (rvec_is_zero(q)) return;
            Rat ns = rnorm_sq(q);
            if (ns <= 1) points.emplace_back(std::move(q), std::move(ns));
            return;
        }
        for (long v = -w_rad; v <= w_rad; ++v) {
            w[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);

    std::sort(points.begin(), points.end(), [](const auto& x, const auto& y) {
        int c = cmp(x.second, y.second);
        if (c != 0) return c < 0;
        return rlex_less(x.first, y.first);
    });

    std::vector<Rat> norms;
    RatMat picked;
    for (const auto& [q, ns] : points) {
        if (norms.size() == count) break;
        picked.push_back(q);
        if (rank_rat(picked) != picked.size()) {
            picked.pop_back();
            continue;
        }
        norms.push_back(ns);
    }
    return norms;
}

}  // namespace

TEST_CASE("complete_primitive_basis contract") {
    SUBCASE("standard axis") {
        IntMat m = complete_primitive_basis(vec({1, 0, 0}));
        CHECK(matrix_column(m, 0) == vec({1, 0, 0}));
        CHECK(abs(det_bareiss(m)) == 1);
    }
    SUBCASE("extended gcd completion") {
        IntMat m = complete_primitive_basis(vec({2, 3}));
        CHECK(matrix_column(m, 0) == vec({2, 3}));
        CHECK(abs(det_bareiss(m)) == 1);
    }
    SUBCASE("negative unit axis") {
        IntMat m = complete_primitive_basis(vec({-1, 0, 0}));
        CHECK(matrix_column(m, 0) == vec({-1, 0, 0}));
        CHECK(abs(det_bareiss(m)) == 1);
    }
    SUBCASE("imprimitive input rejected") {
        CHECK_THROWS_AS(complete_primitive_basis(vec({2, 4})), ContractViolation);
        CHECK_THROWS_AS(complete_primitive_basis(vec({0, 0})), ContractViolation);
    }
    SUBCASE("random primitive vectors") {
        SplitRng rng(11);
        for (int it = 0; it < 200; ++it) {
            std::size_t n = 2 + it % 5;
            IntVec a = random_primitive_vec(rng, n, 40);
            IntMat m = complete_primitive_basis(a);
            CHECK(matrix_column(m, 0) == a);
            CHECK(abs(det_bareiss(m)) == 1);
        }
    }
}

TEST_CASE("orthogonal projection") {
    auto [q1, a1] = project_orthogonal(vec({1, 0}), vec({1, 1}));
    CHECK(a1 == Rat(1, 2));
    CHECK(q1 == RatVec{Rat(1, 2), Rat(-1, 2)});

    auto [q2, a2] = project_orthogonal(vec({1, 1}), vec({1, 1}));
    CHECK(a2 == 1);
    CHECK(rvec_is_zero(q2));

    auto [q3, a3] = project_orthogonal(vec({0, 1, 0}), vec({1, 0, 1}));
    CHECK(a3 == 0);
    CHECK(q3 == to_rat(vec({0, 1, 0})));

    CHECK_THROWS_AS(project_orthogonal(vec({1, 0}), vec({0, 0})), ContractViolation);
}

TEST_CASE("projection lattice determinant identity") {
    SUBCASE("diagonal axis in the plane") {
        ProjectionLattice lat = build_projection_lattice(vec({1, 1}));
        CHECK(lat.det_sq == Rat(1, 2));
        REQUIRE(lat.basis.size() == 1);
        CHECK(rnorm_sq(lat.basis[0]) == Rat(1, 2));
    }
    SUBCASE("unit axis leaves Z^2") {
        ProjectionLattice lat = build_projection_lattice(vec({1, 0, 0}));
        CHECK(lat.det_sq == 1);
    }
    SUBCASE("imprimitive axis rejected") {
        CHECK_THROWS_AS(build_projection_lattice(vec({2, 4})), ContractViolation);
    }
    SUBCASE("det_sq * ||a||^2 = 1 on random primitive axes") {
        SplitRng rng(12);
        for (int it = 0; it < 120; ++it) {
            std::size_t n = 3 + it % 3;
            IntVec a = random_primitive_vec(rng, n, 30);
            ProjectionLattice lat = build_projection_lattice(a);
            CHECK(lat.det_sq * Rat(norm_sq(a)) == 1);
            for (const RatVec& b : lat.basis) CHECK(rvec_dot(b, to_rat(a)) == 0);
            for (std::size_t i = 0; i < lat.basis.size(); ++i) {
                // preimage - basis is a rational multiple of a
                RatVec diff = rvec_sub(to_rat(lat.preimages[i]), lat.basis[i]);
                RatMat span{to_rat(a), diff};
                CHECK(rank_rat(span) <= 1);
            }
        }
    }
}

TEST_CASE("successive minima, frozen small cases") {
    SUBCASE("axis e1 in Z^3: both minima have norm 1") {
        ProjectionLattice lat = build_projection_lattice(vec({1, 0, 0}));
        MinimaResult m = successive_minima(lat, 2);
        REQUIRE(m.minima.size() == 2);
        CHECK(m.minima[0].norm_sq == 1);
        CHECK(m.minima[1].norm_sq == 1);
        CHECK(m.minima[0].lift == vec({0, -1, 0}));  // lex tie-break
        CHECK(m.minima[1].lift == vec({0, 0, -1}));
        CHECK(m.minima[0].alpha == 0);
    }
    SUBCASE("axis (1,1): single minimum of norm^2 1/2") {
        ProjectionLattice lat = build_projection_lattice(vec({1, 1}));
        MinimaResult m = successive_minima(lat, 1);
        REQUIRE(m.minima.size() == 1);
        CHECK(m.minima[0].norm_sq == Rat(1, 2));
        CHECK(m.minima[0].q == RatVec{Rat(-1, 2), Rat(1, 2)});
        CHECK(m.minima[0].lift == vec({0, 1}));
        CHECK(m.minima[0].alpha == Rat(1, 2));
    }
    SUBCASE("axis (3,4): shortest projection has norm^2 1/25") {
        ProjectionLattice lat = build_projection_lattice(vec({3, 4}));
        MinimaResult m = successive_minima(lat, 1);
        CHECK(m.minima[0].norm_sq == Rat(1, 25));
        auto oracle = oracle_minima_norms(vec({3, 4}), 1, 8);
        REQUIRE(oracle.size() == 1);
        CHECK(oracle[0] == Rat(1, 25));
    }
    SUBCASE("count out of range") {
        ProjectionLattice lat = build_projection_lattice(vec({1, 1}));
        CHECK_THROWS_AS(successive_minima(lat, 2), ContractViolation);
        CHECK_THROWS_AS(successive_minima(lat, 0), ContractViolation);
    }
}

TEST_CASE("successive minima agree with brute-force oracle") {
    SplitRng rng(13);
    for (int it = 0; it < 60; ++it) {
        std::size_t n = 3;
        IntVec a = random_primitive_vec(rng, n, 8);
        ProjectionLattice lat = build_projection_lattice(a);
        MinimaResult m = successive_minima(lat, n - 1);
        auto oracle = oracle_minima_norms(a, n - 1);
        REQUIRE(oracle.size() == n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) CHECK(m.minima[i].norm_sq == oracle[i]);
    }
}

TEST_CASE("lift invariants") {
    SplitRng rng(14);
    for (int it = 0; it < 80; ++it) {
        std::size_t n = 3 + it % 3;
        IntVec a = random_primitive_vec(rng, n, 25);
        ProjectionLattice lat = build_projection_lattice(a);
        MinimaResult m = successive_minima(lat, n - 1);
        Rat prev(0);
        std::vector<IntVec> lifts = {a};
        for (const LatticeMinimum& min : m.minima) {
            CHECK(min.norm_sq >= prev);  // nondecreasing
            prev = min.norm_sq;
            CHECK(abs(min.alpha) <= Rat(1, 2));
            // lift = q + alpha * a exactly
            CHECK(to_rat(min.lift) == rvec_add(min.q, rvec_scale(min.alpha, to_rat(a))));
            CHECK(Rat(norm_sq(min.lift)) <= min.norm_sq + Rat(norm_sq(a)));
            lifts.push_back(min.lift);
        }
        CHECK(rank_int(lifts) == lifts.size());
    }
}

TEST_CASE("minkowski certificate") {
    SUBCASE("unit axis in Z^3") {
        ProjectionLattice lat = build_projection_lattice(vec({1, 0, 0}));
        MinimaResult m = successive_minima(lat, 2);
        MinkowskiCertificate cert = minkowski_certificate(lat, m);
        CHECK(cert.pass);
        CHECK(cert.det_identity_ok);
        CHECK(cert.minima_product == doctest::Approx(1.0));
        CHECK(cert.bound == doctest::Approx(4.0 / 3.141592653589793));
    }
    SUBCASE("diagonal axis: equality case passes within tolerance") {
        ProjectionLattice lat = build_projection_lattice(vec({1, 1}));
        MinimaResult m = successive_minima(lat, 1);
        MinkowskiCertificate cert = minkowski_certificate(lat, m);
        CHECK(cert.pass);
        CHECK(cert.minima_product == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
    SUBCASE("forged oversized minima fail the certificate") {
        ProjectionLattice lat = build_projection_lattice(vec({1, 1}));
        MinimaResult m = successive_minima(lat, 1);
        m.minima[0].norm_sq *= 100;  // claim a much longer first minimum
        MinkowskiCertificate cert = minkowski_certificate(lat, m);
        CHECK(!cert.pass);
    }
    SUBCASE("tampered determinant fails the exact identity") {
        ProjectionLattice lat = build_projection_lattice(vec({1, 1}));
        MinimaResult m = successive_minima(lat, 1);
        lat.det_sq *= Rat(1, 4);
        MinkowskiCertificate cert = minkowski_certificate(lat, m);
        CHECK(!cert.det_identity_ok);
        CHECK(!cert.pass);
    }
    SUBCASE("incomplete minima rejected") {
        ProjectionLattice lat = build_projection_lattice(vec({1, 0, 0}));
        MinimaResult m = successive_minima(lat, 1);
        CHECK_THROWS_AS(minkowski_certificate(lat, m), ContractViolation);
    }
    SUBCASE("random instances all pass") {
        SplitRng rng(15);
        for (int it = 0; it < 60; ++it) {
            std::size_t n = 3 + it % 3;
            IntVec a = random_primitive_vec(rng, n, 30);
            ProjectionLattice lat = build_projection_lattice(a);
            MinimaResult m = successive_minima(lat, n - 1);
            CHECK(minkowski_certificate(lat, m).pass);
        }
    }
}
