#include <set>
#include <random>

#include "doctest.h"
#include "endo/refinement.hpp"
#include "test_util.hpp"

using namespace endo;
using endo::testutil::random_unit;

namespace {

Scalar pp(const CtxPtr& ctx, long twice) { return Scalar::p_power(ctx, HalfInt::make_twice(twice)); }

}  // namespace

TEST_CASE("delta_weight") {
    auto ctx = PrecisionCtx::make(5, 40);
    Weight k{{3, 0}};
    CHECK(equal_at_precision(delta_weight(ctx, k, UElement{{1, 0}}), pp(ctx, 6)));
    CHECK(equal_at_precision(delta_weight(ctx, k, UElement{{0, 0}}), Scalar::one(ctx)));
    Weight zero{{0, 0, 0}};
    CHECK(equal_at_precision(delta_weight(ctx, zero, UElement{{4, -2, 1}}), Scalar::one(ctx)));
}

TEST_CASE("delta_B_inv_sqrt") {
    auto ctx = PrecisionCtx::make(5, 40);
    CHECK(equal_at_precision(delta_B_inv_sqrt(ctx, 2, UElement{{1, 0}}), pp(ctx, 1)));  // pi
    CHECK(equal_at_precision(delta_B_inv_sqrt(ctx, 4, UElement{{0, 0, 0, 0}}), Scalar::one(ctx)));
    CHECK(equal_at_precision(delta_B_inv_sqrt(ctx, 3, UElement{{1, 1, 1}}), Scalar::one(ctx)));
}

TEST_CASE("psi_p") {
    auto ctx = PrecisionCtx::make(5, 40);
    std::mt19937_64 rng(21);

    SUBCASE("trivial character and zero weight collapse to the modulus factor") {
        UCharacter triv{{Scalar::one(ctx), Scalar::one(ctx), Scalar::one(ctx)}};
        Weight k{{0, 0, 0}};
        UElement a{{2, -1, 3}};
        CHECK(equal_at_precision(psi_p(k, triv, a), delta_B_inv_sqrt(ctx, 3, a)));
    }

    SUBCASE("worked n=2 example") {
        Scalar phi = random_unit(ctx, rng), phi2 = random_unit(ctx, rng);
        Refinement r{{phi, phi2}};
        Weight k{{3, 0}};
        Scalar got = psi_p(k, refinement_char(r), UElement{{1, 0}});
        CHECK(equal_at_precision(got, phi * pp(ctx, 1) * pp(ctx, 6)));
    }

    SUBCASE("multiplicative in alpha") {
        UCharacter chi{{random_unit(ctx, rng), random_unit(ctx, rng)}};
        Weight k{{2, -1}};
        std::uniform_int_distribution<long> d(-4, 4);
        for (int t = 0; t < 20; ++t) {
            UElement a{{d(rng), d(rng)}}, b{{d(rng), d(rng)}};
            UElement ab{{a.alpha[0] + b.alpha[0], a.alpha[1] + b.alpha[1]}};
            CHECK(equal_at_precision(psi_p(k, chi, ab), psi_p(k, chi, a) * psi_p(k, chi, b)));
        }
    }
}

TEST_CASE("refinement_char and combine") {
    auto ctx = PrecisionCtx::make(5, 40);
    Scalar two = Scalar::from_integer(ctx, 2), three = Scalar::from_integer(ctx, 3);
    Refinement r{{two, three}};
    UCharacter chi = refinement_char(r);
    CHECK(equal_at_precision(u_char_value(chi, UElement{{1, 0}}), two));
    CHECK(equal_at_precision(u_char_value(chi, UElement{{0, 1}}), three));
    CHECK(equal_at_precision(u_char_value(chi, UElement{{2, 1}}), two * two * three));

    Scalar one = Scalar::one(ctx);
    Refinement c = combine_refinements(Refinement{{two}}, Refinement{{three}}, one, one);
    REQUIRE(c.n() == 2);
    CHECK(equal_at_precision(c.phi[0], two));
    CHECK(equal_at_precision(c.phi[1], three));

    std::mt19937_64 rng(22);
    Scalar u = random_unit(ctx, rng);
    Refinement cu = combine_refinements(Refinement{{two}}, Refinement{{three}}, u, u);
    CHECK(equal_at_precision(cu.phi[0], two * u));
    CHECK(equal_at_precision(cu.phi[1], three * u));
    CHECK(cu.n() == 2);
}

TEST_CASE("F values") {
    auto ctx = PrecisionCtx::make(5, 40);
    std::mt19937_64 rng(23);

    SUBCASE("worked n=2 example") {
        Scalar phi = random_unit(ctx, rng), phi2 = random_unit(ctx, rng);
        auto f = F_values(Weight{{3, 0}}, Refinement{{phi, phi2}});
        REQUIRE(f.size() == 2);
        CHECK(equal_at_precision(f[0], phi * pp(ctx, 1) * pp(ctx, 6)));
        CHECK(equal_at_precision(f[1], phi2 * pp(ctx, -1)));
    }

    SUBCASE("unit refinement at zero weight leaves only the modulus factor") {
        int n = 3;
        Refinement r{{Scalar::one(ctx), Scalar::one(ctx), Scalar::one(ctx)}};
        auto f = F_values(Weight{{0, 0, 0}}, r);
        for (int i = 1; i <= n; ++i)
            CHECK(equal_at_precision(f[static_cast<size_t>(i - 1)],
                                     pp(ctx, -(2 * i - 1 - n))));
    }

    SUBCASE("psi_p reconstructs from F multiplicatively") {
        Weight k{{4, 1, -2}};
        Refinement r{{random_unit(ctx, rng), random_unit(ctx, rng), random_unit(ctx, rng)}};
        auto f = F_values(k, r);
        UElement a{{2, -3, 1}};
        Scalar from_f = pow(f[0], 2) * pow(f[1], -3) * pow(f[2], 1);
        CHECK(equal_at_precision(psi_p(k, refinement_char(r), a), from_f));
    }
}

TEST_CASE("kappa") {
    CHECK(kappa(Weight{{3, 0}}) == std::vector<long>{-3, 1});
    CHECK(kappa(Weight{{0, 0, 0, 0}}) == std::vector<long>{0, 1, 2, 3});
    Weight staircase{{3, 2, 1, 0}};
    auto kk = kappa(staircase);
    CHECK(kk == std::vector<long>{-3, -1, 1, 3});
    for (size_t i = 0; i + 1 < kk.size(); ++i) CHECK(kk[i] < kk[i + 1]);
}

TEST_CASE("recover_refinement round trip") {
    auto ctx = PrecisionCtx::make(3, 60);
    std::mt19937_64 rng(24);

    SUBCASE("n = 1 with zero weight is the identity") {
        Scalar phi = random_unit(ctx, rng);
        auto f = F_values(Weight{{0}}, Refinement{{phi}});
        Refinement r = recover_refinement(f, Weight{{0}});
        CHECK(equal_at_precision(r.phi[0], phi));
    }

    SUBCASE("random regular data round-trips exactly") {
        std::uniform_int_distribution<int> nd(1, 5);
        std::uniform_int_distribution<long> kd(-8, 8), vd(-2, 2);
        for (int t = 0; t < 40; ++t) {
            int n = nd(rng);
            std::set<long, std::greater<long>> ws;
            while (static_cast<int>(ws.size()) < n) ws.insert(kd(rng));
            Weight k;
            k.k.assign(ws.begin(), ws.end());
            Refinement r;
            for (int i = 0; i < n; ++i)
                r.phi.push_back(random_unit(ctx, rng) * pp(ctx, 2 * vd(rng)));
            Refinement back = recover_refinement(F_values(k, r), k);
            for (int i = 0; i < n; ++i)
                CHECK(compare_at_precision(back.phi[static_cast<size_t>(i)],
                                           r.phi[static_cast<size_t>(i)]) != Cmp::Distinct);
        }
    }
}

TEST_CASE("character identities") {
    auto ctx = PrecisionCtx::make(2, 40);
    std::mt19937_64 rng(25);
    std::uniform_int_distribution<long> ad(-5, 5), kd(-10, 10);

    SUBCASE("spec instances") {
        CHECK(verify_modulus_identity(ctx, 1, 1, UElement{{1, 0}}));
        CHECK(verify_modulus_identity(ctx, 2, 1, UElement{{1, 1, 1}}));
        CHECK(verify_delta_identity(ctx, Weight{{3}}, Weight{{0}}, UElement{{0, 0}}));
    }

    SUBCASE("random instances hold exactly") {
        for (int t = 0; t < 100; ++t) {
            int n1 = 1 + static_cast<int>(rng() % 3), n2 = 1 + static_cast<int>(rng() % 3);
            Weight k1, k2;
            for (int i = 0; i < n1; ++i) k1.k.push_back(kd(rng));
            for (int i = 0; i < n2; ++i) k2.k.push_back(kd(rng));
            UElement a;
            for (int i = 0; i < n1 + n2; ++i) a.alpha.push_back(ad(rng));
            CHECK(verify_delta_identity(ctx, k1, k2, a));
            CHECK(verify_modulus_identity(ctx, n1, n2, a));
        }
    }

    SUBCASE("a shuffled concatenation can fail the comparison") {
        Weight k1{{3}}, k2{{0}};
        UElement a{{1, 0}};
        Weight shuffled{{0, 3}};  // wrong block order
        Scalar lhs = delta_weight(ctx, k1, UElement{{1}}) * delta_weight(ctx, k2, UElement{{0}});
        Scalar rhs = delta_weight(ctx, shuffled, a);
        CHECK(compare_at_precision(lhs, rhs) == Cmp::Distinct);
    }

    SUBCASE("block compatibility chain for psi_p") {
        auto c5 = PrecisionCtx::make(5, 60);
        std::mt19937_64 r5(26);
        for (int t = 0; t < 25; ++t) {
            int n1 = 1 + static_cast<int>(r5() % 3), n2 = 1 + static_cast<int>(r5() % 3);
            Weight k1, k2;
            for (int i = 0; i < n1; ++i) k1.k.push_back(kd(r5));
            for (int i = 0; i < n2; ++i) k2.k.push_back(kd(r5));
            Refinement r1, r2;
            for (int i = 0; i < n1; ++i) r1.phi.push_back(random_unit(c5, r5));
            for (int i = 0; i < n2; ++i) r2.phi.push_back(random_unit(c5, r5));
            Scalar mu1 = random_unit(c5, r5), mu2 = random_unit(c5, r5);

            Weight cat;
            cat.k = k1.k;
            cat.k.insert(cat.k.end(), k2.k.begin(), k2.k.end());
            Refinement comb = combine_refinements(r1, r2, mu1, mu2);

            UElement a;
            long s1 = 0, s2 = 0;
            for (int i = 0; i < n1 + n2; ++i) a.alpha.push_back(ad(r5));
            for (int i = 0; i < n1; ++i) s1 += a.alpha[static_cast<size_t>(i)];
            for (int i = n1; i < n1 + n2; ++i) s2 += a.alpha[static_cast<size_t>(i)];
            UElement a1, a2;
            a1.alpha.assign(a.alpha.begin(), a.alpha.begin() + n1);
            a2.alpha.assign(a.alpha.begin() + n1, a.alpha.end());

            Scalar lhs = psi_p(cat, refinement_char(comb), a);
            Scalar rhs = pow(mu1, s1) * pow(mu2, s2) * psi_p(k1, refinement_char(r1), a1) *
                         psi_p(k2, refinement_char(r2), a2) *
                         Scalar::p_power(c5, HalfInt::make_twice(n2 * s1 - n1 * s2));
            CHECK(equal_at_precision(lhs, rhs));
        }
    }
}
