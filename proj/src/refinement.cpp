#include "endo/refinement.hpp"

namespace endo {

bool Weight::strictly_decreasing() const {
    for (size_t i = 0; i + 1 < k.size(); ++i)
        if (!(k[i] > k[i + 1])) return false;
    return true;
}

bool Weight::weakly_decreasing() const {
    for (size_t i = 0; i + 1 < k.size(); ++i)
        if (k[i] < k[i + 1]) return false;
    return true;
}

HalfInt Weight::slope_bound() const {
    if (k.size() <= 1) return HalfInt::infinity();
    long min_gap = k[0] - k[1];
    for (size_t i = 1; i + 1 < k.size(); ++i) min_gap = std::min(min_gap, k[i] - k[i + 1]);
    return HalfInt::whole(1 + min_gap);
}

Scalar u_char_value(const UCharacter& chi, const UElement& a) {
    if (chi.n() != a.n()) throw std::invalid_argument("u_char_value: size mismatch");
    if (chi.n() == 0) throw std::invalid_argument("u_char_value: empty character");
    CtxPtr ctx = chi.g.front().ctx();
    Scalar acc = Scalar::one(ctx);
    for (int i = 0; i < chi.n(); ++i) acc = acc * pow(chi.g[static_cast<size_t>(i)], a.alpha[static_cast<size_t>(i)]);
    return acc;
}

Scalar delta_weight(const CtxPtr& ctx, const Weight& k, const UElement& a) {
    if (k.n() != a.n()) throw std::invalid_argument("delta_weight: size mismatch");
    long e = 0;
    for (int i = 0; i < k.n(); ++i) e += k.k[static_cast<size_t>(i)] * a.alpha[static_cast<size_t>(i)];
    return Scalar::p_power(ctx, HalfInt::whole(e));
}

Scalar delta_B_inv_sqrt(const CtxPtr& ctx, int n, const UElement& a) {
    if (a.n() != n) throw std::invalid_argument("delta_B_inv_sqrt: size mismatch");
    long twice = 0;  // exponent of p, doubled
    for (int i = 1; i <= n; ++i) twice -= a.alpha[static_cast<size_t>(i - 1)] * (2 * i - 1 - n);
    return Scalar::p_power(ctx, HalfInt::make_twice(twice));
}

Scalar psi_p(const Weight& k, const UCharacter& chi, const UElement& a) {
    if (chi.n() == 0) throw std::invalid_argument("psi_p: empty character");
    CtxPtr ctx = chi.g.front().ctx();
    return u_char_value(chi, a) * delta_B_inv_sqrt(ctx, chi.n(), a) * delta_weight(ctx, k, a);
}

UCharacter refinement_char(const Refinement& r) {
    for (const auto& v : r.phi)
        if (!v.is_value())
            throw std::invalid_argument("refinement_char: entries must be invertible");
    return UCharacter{r.phi};
}

Refinement combine_refinements(const Refinement& r1, const Refinement& r2, const Scalar& mu1,
                               const Scalar& mu2) {
    if (!mu1.is_value() || !mu2.is_value())
        throw std::invalid_argument("combine_refinements: twists must be invertible");
    Refinement out;
    out.phi.reserve(r1.phi.size() + r2.phi.size());
    for (const auto& v : r1.phi) out.phi.push_back(mu1 * v);
    for (const auto& v : r2.phi) out.phi.push_back(mu2 * v);
    return out;
}

std::vector<Scalar> F_values(const Weight& k, const Refinement& r) {
    if (k.n() != r.n()) throw std::invalid_argument("F_values: size mismatch");
    UCharacter chi = refinement_char(r);
    std::vector<Scalar> f;
    f.reserve(static_cast<size_t>(r.n()));
    for (int i = 0; i < r.n(); ++i) {
        UElement e;
        e.alpha.assign(static_cast<size_t>(r.n()), 0);
        e.alpha[static_cast<size_t>(i)] = 1;
        f.push_back(psi_p(k, chi, e));
    }
    return f;
}

std::vector<long> kappa(const Weight& k) {
    std::vector<long> out;
    out.reserve(k.k.size());
    for (int i = 1; i <= k.n(); ++i) out.push_back(-k.k[static_cast<size_t>(i - 1)] + i - 1);
    return out;
}

Refinement recover_refinement(const std::vector<Scalar>& f, const Weight& k) {
    if (static_cast<int>(f.size()) != k.n())
        throw std::invalid_argument("recover_refinement: size mismatch");
    if (f.empty()) return {};
    CtxPtr ctx = f.front().ctx();
    std::vector<long> kap = kappa(k);
    const int n = k.n();
    Refinement out;
    out.phi.reserve(f.size());
    for (int i = 0; i < n; ++i) {
        if (!f[static_cast<size_t>(i)].is_value())
            throw std::invalid_argument("recover_refinement: F values must be invertible");
        Scalar shift = Scalar::p_power(
            ctx, HalfInt::make_twice(2 * kap[static_cast<size_t>(i)] - (n - 1)));
        out.phi.push_back(f[static_cast<size_t>(i)] * shift);
    }
    return out;
}

namespace {

UElement slice(const UElement& a, int from, int to) {
    UElement out;
    out.alpha.assign(a.alpha.begin() + from, a.alpha.begin() + to);
    return out;
}

}  // namespace

bool verify_delta_identity(const CtxPtr& ctx, const Weight& k1, const Weight& k2,
                           const UElement& a) {
    if (a.n() != k1.n() + k2.n())
        throw std::invalid_argument("verify_delta_identity: size mismatch");
    Scalar lhs = delta_weight(ctx, k1, slice(a, 0, k1.n())) *
                 delta_weight(ctx, k2, slice(a, k1.n(), a.n()));
    Weight cat;
    cat.k = k1.k;
    cat.k.insert(cat.k.end(), k2.k.begin(), k2.k.end());
    Scalar rhs = delta_weight(ctx, cat, a);
    return compare_at_precision(lhs, rhs) == Cmp::Equal;
}

bool verify_modulus_identity(const CtxPtr& ctx, int n1, int n2, const UElement& a) {
    if (a.n() != n1 + n2) throw std::invalid_argument("verify_modulus_identity: size mismatch");
    long s1 = 0, s2 = 0;
    for (int i = 0; i < n1; ++i) s1 += a.alpha[static_cast<size_t>(i)];
    for (int i = n1; i < n1 + n2; ++i) s2 += a.alpha[static_cast<size_t>(i)];

    Scalar lhs = delta_B_inv_sqrt(ctx, n1, slice(a, 0, n1)) *
                 delta_B_inv_sqrt(ctx, n2, slice(a, n1, a.n())) *
                 Scalar::p_power(ctx, HalfInt::make_twice(n2 * s1 - n1 * s2));
    Scalar rhs = delta_B_inv_sqrt(ctx, n1 + n2, a);
    return compare_at_precision(lhs, rhs) == Cmp::Equal;
}

}  // namespace endo
