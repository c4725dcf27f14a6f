#pragma once

#include <map>
#include <string>
#include <vector>

#include "endo/scalar.hpp"

namespace endo {

/// Multiset of Satake parameters of an unramified representation at a split
/// place (all values invertible).
struct SatakeParams {
    std::string place;
    std::vector<Scalar> values;
    int n() const { return static_cast<int>(values.size()); }
};

/// Values mu(Frob_v) per place label; the place above p uses the key "p".
/// The paper-side constraint (restriction to the rational idele classes is
/// the quadratic character of E/Q) is not checkable at data level and is
/// recorded, not enforced.
struct MuData {
    std::map<std::string, Scalar> frob;

    bool has(const std::string& place) const { return frob.count(place) != 0; }
    const Scalar& at(const std::string& place) const;
};

/// Character of the spherical Hecke algebra, stored by its values on the
/// elementary symmetric generators e_1..e_n (root orderings never enter).
struct SphericalChar {
    std::string place;
    int n = 0;
    std::vector<Scalar> e;  // e[k-1] = value on the degree-k generator
};

enum class MuFlag { TwistByMu, Trivial };

struct MuPair {
    MuFlag mu1 = MuFlag::Trivial;
    MuFlag mu2 = MuFlag::Trivial;
};

/// Factor j is twisted by mu exactly when n_j == n - 1 (mod 2).
MuPair mu_assign(int n1, int n2);

/// Elementary symmetric values of a Satake multiset (generating-polynomial
/// product; no root extraction).
SphericalChar char_of_multiset(const SatakeParams& s);

/// Twisted multiset union {mu_1(Frob_l) lambda_i} u {mu_2(Frob_l) lambda'_j}.
SatakeParams spherical_transfer(const SatakeParams& s1, const SatakeParams& s2, const MuData& mu,
                                MuPair pair);

/// The character (chi1 (x) chi2) o theta: e-values of the union of the
/// twisted root multisets, computed as the coefficient product of the two
/// twisted generating polynomials.
SphericalChar theta_pullback_char(const SphericalChar& c1, const SphericalChar& c2,
                                  const MuData& mu, MuPair pair);

/// Atkin-Lehner algebra transfer on generator values:
///   T_i -> mu1(Frob_p) p^{n2/2} x_i          for 1 <= i <= n1,
///   T_i -> mu2(Frob_p) p^{-n1/2} y_{i-n1}    for n1 < i <= n.
std::vector<Scalar> atkin_lehner_transfer(const std::vector<Scalar>& x,
                                          const std::vector<Scalar>& y, const MuData& mu,
                                          MuPair pair);

}  // namespace endo
