#include <algorithm>
#include <random>

#include "doctest.h"
#include "endo/hecke.hpp"
#include "test_util.hpp"

using namespace endo;
using endo::testutil::random_unit;

namespace {

bool multiset_equal(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        bool hit = false;
        for (size_t j = 0; j < b.size() && !hit; ++j) {
            if (used[j]) continue;
            if (equal_at_precision(x, b[j])) {
                used[j] = true;
                hit = true;
            }
        }
        if (!hit) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("mu_assign parity rule") {
    auto p11 = mu_assign(1, 1);
    CHECK(p11.mu1 == MuFlag::TwistByMu);
    CHECK(p11.mu2 == MuFlag::TwistByMu);
    auto p21 = mu_assign(2, 1);
    CHECK(p21.mu1 == MuFlag::TwistByMu);
    CHECK(p21.mu2 == MuFlag::Trivial);
    auto p22 = mu_assign(2, 2);
    CHECK(p22.mu1 == MuFlag::Trivial);
    CHECK(p22.mu2 == MuFlag::Trivial);
    CHECK_THROWS_AS(mu_assign(0, 1), std::invalid_argument);
}

TEST_CASE("spherical transfer") {
    auto ctx = PrecisionCtx::make(5, 40);
    Scalar one = Scalar::one(ctx);
    MuData mu;
    mu.frob.emplace("11", one);

    SUBCASE("worked 1+1 example") {
        SatakeParams s1{"11", {Scalar::from_integer(ctx, 2)}};
        SatakeParams s2{"11", {Scalar::from_integer(ctx, 3)}};
        SatakeParams out = spherical_transfer(s1, s2, mu, mu_assign(1, 1));
        REQUIRE(out.n() == 2);
        CHECK(multiset_equal(out.values,
                             {Scalar::from_integer(ctx, 2), Scalar::from_integer(ctx, 3)}));
    }

    SUBCASE("trivial twists are a plain union") {
        std::mt19937_64 rng(9);
        SatakeParams s1{"11", {random_unit(ctx, rng), random_unit(ctx, rng)}};
        SatakeParams s2{"11", {random_unit(ctx, rng), random_unit(ctx, rng)}};
        SatakeParams out = spherical_transfer(s1, s2, MuData{}, mu_assign(2, 2));
        std::vector<Scalar> expect = s1.values;
        expect.insert(expect.end(), s2.values.begin(), s2.values.end());
        CHECK(multiset_equal(out.values, expect));
    }

    SUBCASE("(2,1) twists only the first block") {
        std::mt19937_64 rng(10);
        Scalar u = random_unit(ctx, rng);
        MuData mu2;
        mu2.frob.emplace("11", u);
        SatakeParams s1{"11", {Scalar::from_integer(ctx, 2), Scalar::from_integer(ctx, 3)}};
        SatakeParams s2{"11", {Scalar::from_integer(ctx, 7)}};
        SatakeParams out = spherical_transfer(s1, s2, mu2, mu_assign(2, 1));
        CHECK(multiset_equal(out.values, {u * Scalar::from_integer(ctx, 2),
                                          u * Scalar::from_integer(ctx, 3),
                                          Scalar::from_integer(ctx, 7)}));
    }

    SUBCASE("missing mu is an error") {
        SatakeParams s1{"13", {one}};
        SatakeParams s2{"13", {one}};
        CHECK_THROWS_AS(spherical_transfer(s1, s2, MuData{}, mu_assign(1, 1)),
                        std::invalid_argument);
    }

    SUBCASE("symmetric under swapping blocks with matched flags") {
        std::mt19937_64 rng(11);
        MuData mu2;
        mu2.frob.emplace("11", random_unit(ctx, rng));
        SatakeParams s1{"11", {random_unit(ctx, rng), random_unit(ctx, rng)}};
        SatakeParams s2{"11", {random_unit(ctx, rng)}};
        MuPair pair = mu_assign(2, 1);
        MuPair swapped{pair.mu2, pair.mu1};
        SatakeParams a = spherical_transfer(s1, s2, mu2, pair);
        SatakeParams b = spherical_transfer(s2, s1, mu2, swapped);
        CHECK(multiset_equal(a.values, b.values));
    }
}

TEST_CASE("theta pullback character") {
    auto ctx = PrecisionCtx::make(5, 40);
    Scalar one = Scalar::one(ctx);

    SUBCASE("worked (1,1) example: (1+2T)(1+3T)") {
        SphericalChar c1{"11", 1, {Scalar::from_integer(ctx, 2)}};
        SphericalChar c2{"11", 1, {Scalar::from_integer(ctx, 3)}};
        MuData mu;
        mu.frob.emplace("11", one);
        SphericalChar out = theta_pullback_char(c1, c2, mu, mu_assign(1, 1));
        REQUIRE(out.n == 2);
        CHECK(equal_at_precision(out.e[0], Scalar::from_integer(ctx, 5)));
        CHECK(equal_at_precision(out.e[1], Scalar::from_integer(ctx, 6)));
    }

    SUBCASE("product with the trivial-representation placeholder") {
        // chi2 from the all-ones multiset: e_k = binomial(n2, k)
        SatakeParams ones{"11", {one, one}};
        SphericalChar c2 = char_of_multiset(ones);
        CHECK(equal_at_precision(c2.e[0], Scalar::from_integer(ctx, 2)));
        CHECK(equal_at_precision(c2.e[1], one));
        SphericalChar c1{"11", 1, {Scalar::from_integer(ctx, 3)}};
        MuPair trivial{MuFlag::Trivial, MuFlag::Trivial};
        SphericalChar out = theta_pullback_char(c1, c2, MuData{}, trivial);
        // roots {3, 1, 1}: e = (5, 7, 3)
        CHECK(equal_at_precision(out.e[0], Scalar::from_integer(ctx, 5)));
        CHECK(equal_at_precision(out.e[1], Scalar::from_integer(ctx, 7)));
        CHECK(equal_at_precision(out.e[2], Scalar::from_integer(ctx, 3)));
    }

    SUBCASE("agrees with char_of_multiset of spherical_transfer") {
        std::mt19937_64 rng(12);
        for (int t = 0; t < 50; ++t) {
            std::uniform_int_distribution<int> nd(1, 4);
            int n1 = nd(rng), n2 = nd(rng);
            MuData mu;
            mu.frob.emplace("7", random_unit(ctx, rng));
            SatakeParams s1{"7", {}}, s2{"7", {}};
            for (int i = 0; i < n1; ++i) s1.values.push_back(random_unit(ctx, rng));
            for (int i = 0; i < n2; ++i) s2.values.push_back(random_unit(ctx, rng));
            MuPair pair = mu_assign(n1, n2);

            SphericalChar via_theta =
                theta_pullback_char(char_of_multiset(s1), char_of_multiset(s2), mu, pair);
            SphericalChar via_sets = char_of_multiset(spherical_transfer(s1, s2, mu, pair));
            for (int k = 0; k < via_theta.n; ++k)
                CHECK(equal_at_precision(via_theta.e[static_cast<size_t>(k)],
                                         via_sets.e[static_cast<size_t>(k)]));
        }
    }

    SUBCASE("independent of the ordering of each multiset") {
        std::mt19937_64 rng(13);
        SatakeParams s{"7", {}};
        for (int i = 0; i < 4; ++i) s.values.push_back(random_unit(ctx, rng));
        SphericalChar before = char_of_multiset(s);
        std::shuffle(s.values.begin(), s.values.end(), rng);
        SphericalChar after = char_of_multiset(s);
        for (int k = 0; k < 4; ++k)
            CHECK(equal_at_precision(before.e[static_cast<size_t>(k)],
                                     after.e[static_cast<size_t>(k)]));
    }
}

TEST_CASE("atkin-lehner transfer") {
    auto ctx = PrecisionCtx::make(5, 40);
    Scalar one = Scalar::one(ctx);
    Scalar pi = Scalar::p_power(ctx, HalfInt::make_twice(1));
    Scalar p = Scalar::p_power(ctx, HalfInt::whole(1));
    std::mt19937_64 rng(14);

    SUBCASE("worked (1,1) example") {
        Scalar phi = random_unit(ctx, rng), phi2 = random_unit(ctx, rng);
        MuData mu;
        mu.frob.emplace("p", one);
        auto out = atkin_lehner_transfer({phi}, {phi2}, mu, mu_assign(1, 1));
        REQUIRE(out.size() == 2);
        CHECK(equal_at_precision(out[0], phi * pi));
        CHECK(equal_at_precision(out[1], phi2 * inverse(pi)));
    }

    SUBCASE("all-ones (2,2) example") {
        auto out = atkin_lehner_transfer({one, one}, {one, one}, MuData{}, mu_assign(2, 2));
        REQUIRE(out.size() == 4);
        CHECK(equal_at_precision(out[0], p));
        CHECK(equal_at_precision(out[1], p));
        CHECK(equal_at_precision(out[2], inverse(p)));
        CHECK(equal_at_precision(out[3], inverse(p)));
    }

    SUBCASE("valuation shift and zero total drift") {
        MuData mu;
        mu.frob.emplace("p", random_unit(ctx, rng));
        std::vector<Scalar> x = {random_unit(ctx, rng) * p, random_unit(ctx, rng)};
        std::vector<Scalar> y = {random_unit(ctx, rng), random_unit(ctx, rng) * p * p};
        auto out = atkin_lehner_transfer(x, y, mu, mu_assign(2, 2));
        long in_total = 0, out_total = 0;
        for (size_t i = 0; i < 2; ++i) {
            CHECK(valuation(out[i]).twice == valuation(x[i]).twice + 2);  // + n2/2
            in_total += valuation(x[i]).twice + valuation(y[i]).twice;
        }
        for (const auto& v : out) out_total += valuation(v).twice;
        CHECK(out_total == in_total);

        CHECK_THROWS_AS(
            atkin_lehner_transfer({one}, {one}, MuData{}, mu_assign(1, 1)),
            std::invalid_argument);  // missing mu at p with twisting flags
    }
}
