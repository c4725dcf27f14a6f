#pragma once

#include <vector>

#include "endo/scalar.hpp"

namespace endo {

/// Integer weight vector k_1, ..., k_n.
struct Weight {
    std::vector<long> k;
    int n() const { return static_cast<int>(k.size()); }
    bool strictly_decreasing() const;
    bool weakly_decreasing() const;
    /// 1 + min_i (k_i - k_{i+1}), the control-theorem bound; +inf for n = 1.
    HalfInt slope_bound() const;
};

/// diag(p^{a_1}, ..., p^{a_n}) in the group U of p-power diagonal matrices.
struct UElement {
    std::vector<long> alpha;
    int n() const { return static_cast<int>(alpha.size()); }
};

/// Ordering of the eigenvalues of the Langlands conjugacy class at p.
struct Refinement {
    std::vector<Scalar> phi;
    int n() const { return static_cast<int>(phi.size()); }
};

/// Character of U by its values on the standard generators u_i.
struct UCharacter {
    std::vector<Scalar> g;
    int n() const { return static_cast<int>(g.size()); }
};

/// chi(alpha) = prod g_i^{alpha_i}.
Scalar u_char_value(const UCharacter& chi, const UElement& a);

/// delta_k(diag(p^a)) = p^{sum k_i a_i}.
Scalar delta_weight(const CtxPtr& ctx, const Weight& k, const UElement& a);

/// delta_B^{-1/2}(diag(p^a)) = p^{- sum a_i (2i - 1 - n) / 2} under |p| = 1/p.
Scalar delta_B_inv_sqrt(const CtxPtr& ctx, int n, const UElement& a);

/// psi_p restricted to U: chi * delta_B^{-1/2} * delta_k.
Scalar psi_p(const Weight& k, const UCharacter& chi, const UElement& a);

/// The character of U sending u_i to phi_i.
UCharacter refinement_char(const Refinement& r);

/// Concatenation of mu1 * r1 and mu2 * r2, order preserved within blocks.
Refinement combine_refinements(const Refinement& r1, const Refinement& r2, const Scalar& mu1,
                               const Scalar& mu2);

/// F_i = psi_p(u_i) on the standard generators.
std::vector<Scalar> F_values(const Weight& k, const Refinement& r);

/// kappa_i = -k_i + i - 1 (strictly increasing iff k strictly decreasing).
std::vector<long> kappa(const Weight& k);

/// Inverts F_i = phi_i p^{-kappa_i} p^{(n-1)/2}: phi_i = F_i p^{kappa_i} p^{-(n-1)/2}.
Refinement recover_refinement(const std::vector<Scalar>& f, const Weight& k);

/// delta_{k1}(alpha_{<=n1}) delta_{k2}(alpha_{>n1}) = delta_{(k1,k2)}(alpha), exactly.
bool verify_delta_identity(const CtxPtr& ctx, const Weight& k1, const Weight& k2,
                           const UElement& a);

/// delta_{B1}^{-1/2} delta_{B2}^{-1/2} p^{(n2/2) s1 - (n1/2) s2} = delta_B^{-1/2}, exactly.
bool verify_modulus_identity(const CtxPtr& ctx, int n1, int n2, const UElement& a);

}  // namespace endo
