#pragma once

#include <random>

#include "endo/scalar.hpp"

namespace endo::testutil {

/// Uniform unit of the valuation ring, exact, full digit window.
inline Scalar random_unit(const CtxPtr& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> digit(0, ctx->p() - 1);
    std::uniform_int_distribution<long> lead(1, ctx->p() - 1);
    mpz_class a = lead(rng), b = 0;
    mpz_class pa = ctx->p(), pb = 1;
    for (int i = 1; i < ctx->digits() / 2; ++i) {
        a += digit(rng) * pa;
        b += digit(rng) * pb;
        pa *= ctx->p();
        pb *= ctx->p();
    }
    Scalar u = Scalar::from_integer(ctx, a);
    Scalar v = Scalar::from_integer(ctx, b) * Scalar::p_power(ctx, HalfInt::make_twice(1));
    return u + v;
}

}  // namespace endo::testutil
