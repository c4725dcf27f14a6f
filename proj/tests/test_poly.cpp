#include <random>

#include "doctest.h"
#include "endo/poly.hpp"
#include "test_util.hpp"

using namespace endo;
using endo::testutil::random_unit;

namespace {

Scalar pp(const CtxPtr& ctx, long twice) { return Scalar::p_power(ctx, HalfInt::make_twice(twice)); }

// prod_i (1 - r_i T) for planted inverse roots r_i.
SlopePoly planted_fredholm(const CtxPtr& ctx, const std::vector<Scalar>& roots) {
    SlopePoly acc = SlopePoly::one(ctx);
    for (const auto& r : roots) acc = acc * SlopePoly(ctx, {Scalar::one(ctx), -r});
    return acc;
}

SlopePoly monic_from_roots(const CtxPtr& ctx, const std::vector<Scalar>& roots) {
    SlopePoly acc = SlopePoly::one(ctx);
    for (const auto& r : roots) acc = acc * SlopePoly(ctx, {-r, Scalar::one(ctx)});
    return acc;
}

}  // namespace

TEST_CASE("newton polygon examples") {
    auto ctx = PrecisionCtx::make(5, 40);
    Scalar one = Scalar::one(ctx), p = pp(ctx, 2);

    auto np1 = newton_polygon(SlopePoly(ctx, {one, one, p}));
    REQUIRE(np1.segments.size() == 2);
    CHECK(np1.segments[0].slope == Rational(0, 1));
    CHECK(np1.segments[0].length == 1);
    CHECK(np1.segments[1].slope == Rational(1, 1));
    CHECK(np1.segments[1].length == 1);

    auto np2 = newton_polygon(SlopePoly(ctx, {one, p}));
    REQUIRE(np2.segments.size() == 1);
    CHECK(np2.segments[0].slope == Rational(1, 1));
    CHECK(np2.segments[0].length == 1);

    auto np3 = newton_polygon(SlopePoly(ctx, {one, one, one}));
    REQUIRE(np3.segments.size() == 1);
    CHECK(np3.segments[0].slope == Rational(0, 1));
    CHECK(np3.segments[0].length == 2);

    // Half-integral slope via pi
    auto np4 = newton_polygon(SlopePoly(ctx, {one, pp(ctx, 1)}));
    CHECK(np4.segments[0].slope == Rational(1, 2));

    CHECK_THROWS_AS(newton_polygon(SlopePoly(ctx, {Scalar::zero(ctx), one})),
                    std::invalid_argument);
    Scalar fuzzy = (one + pp(ctx, 80)) - one;  // inexact zero
    CHECK_THROWS_AS(newton_polygon(SlopePoly(ctx, {fuzzy, one})), precision_error);
}

TEST_CASE("slope factor worked example") {
    auto ctx = PrecisionCtx::make(5, 40);
    Scalar one = Scalar::one(ctx), p = pp(ctx, 2);
    SlopePoly P(ctx, {one, one, p});

    auto [q, r] = slope_factor(P, HalfInt::whole(0));
    REQUIRE(q.degree() == 1);
    REQUIRE(r.degree() == 1);
    CHECK(equal_at_precision(q.coeff(0), one));
    CHECK(valuation(q.coeff(1)) == HalfInt::whole(0));
    auto npr = newton_polygon(r);
    CHECK(npr.segments[0].slope == Rational(1, 1));
    SlopePoly prod = q * r;
    for (int i = 0; i <= 2; ++i) CHECK(congruent_mod_pi(prod.coeff(i), P.coeff(i), 20));
}

TEST_CASE("slope factor trivial cuts") {
    auto ctx = PrecisionCtx::make(5, 40);
    Scalar one = Scalar::one(ctx), p = pp(ctx, 2);
    SlopePoly P(ctx, {one, p});

    auto hi = slope_factor(P, HalfInt::whole(2));
    CHECK(hi.q.degree() == 1);
    CHECK(hi.r.degree() == 0);
    CHECK(equal_at_precision(hi.r.coeff(0), one));

    auto lo = slope_factor(P, HalfInt::make_twice(1));
    CHECK(lo.q.degree() == 0);
    CHECK(lo.r.degree() == 1);

    CHECK_THROWS_AS(slope_factor(SlopePoly(ctx, {p, one}), HalfInt::whole(0)),
                    std::invalid_argument);
}

TEST_CASE("slope factor planted property") {
    for (long pr : {2L, 3L, 5L}) {
        auto ctx = PrecisionCtx::make(pr, 80);
        std::mt19937_64 rng(101 + pr);
        const std::vector<long> vals_twice = {0, 1, 2, 4, 6};
        for (int trial = 0; trial < 25; ++trial) {
            std::uniform_int_distribution<int> degd(2, 8);
            int d = degd(rng);
            std::vector<Scalar> roots;
            std::vector<long> planted;
            std::uniform_int_distribution<size_t> pick(0, vals_twice.size() - 1);
            for (int i = 0; i < d; ++i) {
                long v2 = vals_twice[pick(rng)];
                planted.push_back(v2);
                roots.push_back(random_unit(ctx, rng) * pp(ctx, v2));
            }
            SlopePoly P = planted_fredholm(ctx, roots);

            // cut strictly between two distinct planted valuations
            std::vector<long> sorted = planted;
            std::sort(sorted.begin(), sorted.end());
            sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
            if (sorted.size() < 2) continue;
            std::uniform_int_distribution<size_t> cidx(0, sorted.size() - 2);
            size_t c = cidx(rng);
            HalfInt nu = HalfInt::make_twice(sorted[c]);  // cut at a slope boundary (<= keeps it)

            auto [q, r] = slope_factor(P, nu);
            long expect = 0;
            for (long v : planted)
                if (v <= nu.twice) ++expect;
            CHECK(q.degree() == expect);

            SlopePoly prod = q * r;
            for (int i = 0; i <= P.degree(); ++i)
                CHECK(congruent_mod_pi(prod.coeff(i), P.coeff(i), 60));

            // polygons partition at the cut
            auto npq = newton_polygon(q);
            for (const auto& s : npq.segments) CHECK(s.slope <= Rational::half(nu.twice));
            auto npr = newton_polygon(r);
            for (const auto& s : npr.segments) CHECK(Rational::half(nu.twice) < s.slope);

            // uniqueness shadow: a reordered construction yields the same Q
            std::shuffle(roots.begin(), roots.end(), rng);
            SlopePoly P2 = planted_fredholm(ctx, roots);
            auto again = slope_factor(P2, nu);
            for (int i = 0; i <= q.degree(); ++i)
                CHECK(congruent_mod_pi(again.q.coeff(i), q.coeff(i), 60));
        }
    }
}

TEST_CASE("reciprocal") {
    auto ctx = PrecisionCtx::make(5, 40);
    Scalar one = Scalar::one(ctx);
    SlopePoly q(ctx, {one, Scalar::from_integer(ctx, 2), Scalar::from_integer(ctx, 3)});
    SlopePoly rec = reciprocal(q);
    CHECK(equal_at_precision(rec.coeff(0), Scalar::from_integer(ctx, 3)));
    CHECK(equal_at_precision(rec.coeff(1), Scalar::from_integer(ctx, 2)));
    CHECK(equal_at_precision(rec.coeff(2), one));

    CHECK(reciprocal(SlopePoly::one(ctx)).degree() == 0);

    SlopePoly twice = reciprocal(reciprocal(q));
    for (int i = 0; i <= q.degree(); ++i) CHECK(equal_at_precision(twice.coeff(i), q.coeff(i)));
}

TEST_CASE("char poly examples") {
    auto ctx = PrecisionCtx::make(5, 40);
    Scalar one = Scalar::one(ctx), p = pp(ctx, 2);

    Matrix d2(ctx, 2, 2);
    d2.at(0, 0) = one;
    d2.at(1, 1) = p;
    SlopePoly cp = char_poly(d2);
    // T^2 - (1+p)T + p
    CHECK(cp.degree() == 2);
    CHECK(equal_at_precision(cp.coeff(2), one));
    CHECK(equal_at_precision(cp.coeff(1), -(one + p)));
    CHECK(equal_at_precision(cp.coeff(0), p));

    Matrix d1(ctx, 1, 1);
    d1.at(0, 0) = Scalar::from_integer(ctx, 7);
    SlopePoly cp1 = char_poly(d1);
    CHECK(cp1.degree() == 1);
    CHECK(equal_at_precision(cp1.coeff(0), -Scalar::from_integer(ctx, 7)));

    Matrix d3(ctx, 3, 3);
    d3.at(0, 0) = one;
    d3.at(1, 1) = p;
    d3.at(2, 2) = p * p;
    SlopePoly fred = reciprocal(char_poly(d3));
    // normalize constant to 1: reciprocal of monic has constant 1
    CHECK(equal_at_precision(fred.coeff(0), one));
    auto np = newton_polygon(fred);
    REQUIRE(np.segments.size() == 3);
    CHECK(np.segments[0].slope == Rational(0, 1));
    CHECK(np.segments[1].slope == Rational(1, 1));
    CHECK(np.segments[2].slope == Rational(2, 1));
}

TEST_CASE("char poly of planted conjugated matrix kills its eigenvalues") {
    auto ctx = PrecisionCtx::make(3, 80);
    std::mt19937_64 rng(7);
    // diag(1, 3, 12) conjugated by a unimodular integer matrix
    Matrix d(ctx, 3, 3);
    d.at(0, 0) = Scalar::one(ctx);
    d.at(1, 1) = Scalar::from_integer(ctx, 3);
    d.at(2, 2) = Scalar::from_integer(ctx, 12);
    Matrix s = Matrix::identity(ctx, 3), sinv = Matrix::identity(ctx, 3);
    // row ops keep an exact inverse
    auto add_row = [&](int i, int j, long c) {
        for (int k = 0; k < 3; ++k) {
            s.at(i, k) = s.at(i, k) + Scalar::from_integer(ctx, c) * s.at(j, k);
            sinv.at(k, j) = sinv.at(k, j) - Scalar::from_integer(ctx, c) * sinv.at(k, i);
        }
    };
    add_row(0, 1, 2);
    add_row(2, 0, -1);
    add_row(1, 2, 3);
    Matrix a = s * d * sinv;
    CHECK(is_zero_at_precision(s * sinv - Matrix::identity(ctx, 3)));

    SlopePoly cp = char_poly(a);
    for (long lam : {1L, 3L, 12L}) {
        Scalar v = eval(cp, Scalar::from_integer(ctx, lam));
        CHECK(v.is_zero_kind());
    }
}

TEST_CASE("roots in field") {
    auto ctx = PrecisionCtx::make(5, 60);
    Scalar one = Scalar::one(ctx), p = pp(ctx, 2);

    SUBCASE("distinct valuations") {
        SlopePoly P = monic_from_roots(ctx, {one, p, p * p});
        auto roots = roots_in_field(P);
        REQUIRE(roots.size() == 3);
        int total = 0;
        for (const auto& rm : roots) {
            total += rm.multiplicity;
            CHECK(eval(P, rm.root).is_zero_kind());
        }
        CHECK(total == 3);
    }

    SUBCASE("repeated roots") {
        SlopePoly P = monic_from_roots(ctx, {one, one, p});
        auto roots = roots_in_field(P);
        REQUIRE(roots.size() == 2);
        for (const auto& rm : roots) {
            if (equal_at_precision(rm.root, one)) CHECK(rm.multiplicity == 2);
            else CHECK(rm.multiplicity == 1);
        }
    }

    SUBCASE("same residue distinct roots") {
        Scalar r2 = one + p;  // same residue as 1 mod 5
        SlopePoly P = monic_from_roots(ctx, {one, r2});
        auto roots = roots_in_field(P);
        REQUIRE(roots.size() == 2);
        CHECK(eval(P, roots[0].root).is_zero_kind());
        CHECK(eval(P, roots[1].root).is_zero_kind());
        CHECK(!equal_at_precision(roots[0].root, roots[1].root));
    }

    SUBCASE("half integral valuation roots") {
        SlopePoly P(ctx, {-p, Scalar::zero(ctx), one});  // T^2 - p, roots +-pi
        auto roots = roots_in_field(P);
        REQUIRE(roots.size() == 2);
        for (const auto& rm : roots) CHECK(valuation(rm.root) == HalfInt::make_twice(1));
    }

    SUBCASE("zero roots") {
        SlopePoly P(ctx, {Scalar::zero(ctx), Scalar::zero(ctx), one});  // T^2
        auto roots = roots_in_field(P);
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].root.is_exact_zero());
        CHECK(roots[0].multiplicity == 2);
    }

    SUBCASE("outside the field") {
        SlopePoly P(ctx, {-Scalar::from_integer(ctx, 2), Scalar::zero(ctx), one});  // T^2 - 2
        CHECK_THROWS_AS(roots_in_field(P), outside_scalar_field);
    }
}

TEST_CASE("poly text format") {
    auto ctx = PrecisionCtx::make(5, 40);
    SlopePoly P = parse_poly(ctx, "1*pi^0,1*pi^0,1*pi^2");
    CHECK(P.degree() == 2);
    CHECK(valuation(P.coeff(2)) == HalfInt::whole(1));
    CHECK(to_string(P) == "1*pi^0,1*pi^0,1*pi^2");
    CHECK_THROWS_AS(parse_poly(ctx, "1*pi^0,,1*pi^0"), parse_error);
}
