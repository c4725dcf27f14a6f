#include "endo/hecke.hpp"

#include "endo/poly.hpp"

namespace endo {

const Scalar& MuData::at(const std::string& place) const {
    auto it = frob.find(place);
    if (it == frob.end())
        throw std::invalid_argument("mu value missing at place '" + place + "'");
    return it->second;
}

MuPair mu_assign(int n1, int n2) {
    if (n1 < 1 || n2 < 1) throw std::invalid_argument("mu_assign: block sizes must be >= 1");
    int parity = (n1 + n2 - 1) % 2;
    MuPair pair;
    pair.mu1 = (n1 % 2 == parity) ? MuFlag::TwistByMu : MuFlag::Trivial;
    pair.mu2 = (n2 % 2 == parity) ? MuFlag::TwistByMu : MuFlag::Trivial;
    return pair;
}

namespace {

CtxPtr ctx_of(const std::vector<Scalar>& values, const char* who) {
    for (const auto& v : values)
        if (v.ctx()) return v.ctx();
    throw std::invalid_argument(std::string(who) + ": empty value list");
}

void require_invertible(const std::vector<Scalar>& values, const char* who) {
    for (const auto& v : values)
        if (!v.is_value())
            throw std::invalid_argument(std::string(who) + ": values must be invertible");
}

Scalar twist_value(const CtxPtr& ctx, const MuData& mu, MuFlag flag, const std::string& place) {
    return flag == MuFlag::TwistByMu ? mu.at(place) : Scalar::one(ctx);
}

// 1 + e_1 T + ... + e_n T^n with e_k scaled by u^k (twisting every root by u).
SlopePoly twisted_generating_poly(const CtxPtr& ctx, const std::vector<Scalar>& e,
                                  const Scalar& u) {
    std::vector<Scalar> c;
    c.reserve(e.size() + 1);
    c.push_back(Scalar::one(ctx));
    Scalar uk = Scalar::one(ctx);
    for (const auto& ek : e) {
        uk = uk * u;
        c.push_back(uk * ek);
    }
    return SlopePoly(ctx, std::move(c));
}

}  // namespace

SphericalChar char_of_multiset(const SatakeParams& s) {
    CtxPtr ctx = ctx_of(s.values, "char_of_multiset");
    require_invertible(s.values, "char_of_multiset");
    SlopePoly acc = SlopePoly::one(ctx);
    for (const auto& v : s.values) acc = acc * SlopePoly(ctx, {Scalar::one(ctx), v});
    SphericalChar c;
    c.place = s.place;
    c.n = s.n();
    for (int k = 1; k <= c.n; ++k) c.e.push_back(acc.coeff(k));
    return c;
}

SatakeParams spherical_transfer(const SatakeParams& s1, const SatakeParams& s2, const MuData& mu,
                                MuPair pair) {
    if (s1.place != s2.place)
        throw std::invalid_argument("spherical_transfer: place mismatch ('" + s1.place +
                                    "' vs '" + s2.place + "')");
    CtxPtr ctx = ctx_of(s1.values, "spherical_transfer");
    require_invertible(s1.values, "spherical_transfer");
    require_invertible(s2.values, "spherical_transfer");
    Scalar u1 = twist_value(ctx, mu, pair.mu1, s1.place);
    Scalar u2 = twist_value(ctx, mu, pair.mu2, s2.place);

    SatakeParams out;
    out.place = s1.place;
    out.values.reserve(s1.values.size() + s2.values.size());
    for (const auto& v : s1.values) out.values.push_back(u1 * v);
    for (const auto& v : s2.values) out.values.push_back(u2 * v);
    return out;
}

SphericalChar theta_pullback_char(const SphericalChar& c1, const SphericalChar& c2,
                                  const MuData& mu, MuPair pair) {
    if (c1.place != c2.place)
        throw std::invalid_argument("theta_pullback_char: place mismatch");
    if (static_cast<int>(c1.e.size()) != c1.n || static_cast<int>(c2.e.size()) != c2.n)
        throw std::invalid_argument("theta_pullback_char: malformed character");
    CtxPtr ctx = ctx_of(c1.e, "theta_pullback_char");
    if (!c1.e.back().is_value() || !c2.e.back().is_value())
        throw std::invalid_argument("theta_pullback_char: top symmetric value not invertible");

    SlopePoly prod =
        twisted_generating_poly(ctx, c1.e, twist_value(ctx, mu, pair.mu1, c1.place)) *
        twisted_generating_poly(ctx, c2.e, twist_value(ctx, mu, pair.mu2, c2.place));

    SphericalChar out;
    out.place = c1.place;
    out.n = c1.n + c2.n;
    for (int k = 1; k <= out.n; ++k) out.e.push_back(prod.coeff(k));
    return out;
}

std::vector<Scalar> atkin_lehner_transfer(const std::vector<Scalar>& x,
                                          const std::vector<Scalar>& y, const MuData& mu,
                                          MuPair pair) {
    CtxPtr ctx = ctx_of(x, "atkin_lehner_transfer");
    require_invertible(x, "atkin_lehner_transfer");
    require_invertible(y, "atkin_lehner_transfer");
    const int n1 = static_cast<int>(x.size());
    const int n2 = static_cast<int>(y.size());

    Scalar f1 = twist_value(ctx, mu, pair.mu1, "p") * Scalar::p_power(ctx, HalfInt::make_twice(n2));
    Scalar f2 = twist_value(ctx, mu, pair.mu2, "p") * Scalar::p_power(ctx, HalfInt::make_twice(-n1));

    std::vector<Scalar> out;
    out.reserve(x.size() + y.size());
    for (const auto& v : x) out.push_back(f1 * v);
    for (const auto& v : y) out.push_back(f2 * v);
    return out;
}

}  // namespace endo
