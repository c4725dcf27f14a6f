#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "endo/eigensystem.hpp"
#include "endo/point.hpp"

namespace endo::verify {

struct SuiteResult {
    std::string name;
    bool pass = false;
    long trials = 0;
    double seconds = 0.0;
    std::string detail;  // first failure, or empty
};

// Trials are independent and each is seeded deterministically as seed+index,
// so results are order-independent and reproducible under any scheduling.

/// Field axioms, valuation axioms, p-power homomorphism and decomposition
/// round trip; trials per prime in {2,3,5}, N = 80, margin pi^76.
SuiteResult scalar_field_suite(long trials_per_prime, std::uint64_t seed);

/// Planted slope factorizations (deg <= 8, inverse-root valuations in
/// {0,1/2,1,2,3}): product certificate mod pi^60, cut degree, polygon
/// partition.
SuiteResult slope_factor_suite(long trials, std::uint64_t seed);

/// Planted commuting semisimple modules (dim <= 5): every sub-eigensystem
/// lifts and matches the brute-force restriction; tensor eigensystems match
/// the Kronecker build with multiplicities.
SuiteResult lemmas_suite(long trials, std::uint64_t seed);

/// The delta and modulus character identities, exactly, for all (n1, n2)
/// with n1 + n2 <= 6 and random alpha in [-5, 5]^n.
SuiteResult identity_suite(long trials_per_shape, std::uint64_t seed);

/// Random nice pairs (n_i <= 3): transferred Satake values match the theta
/// pullback exactly, the psi_p block identity holds, the refinement recovery
/// round-trips, and the output passes gate (a).
SuiteResult transfer_suite(long trials, std::uint64_t seed);

/// Classicality boundary: v(lambda) at the bound rejects, one pi-digit below
/// accepts.
SuiteResult classicality_suite(long trials, std::uint64_t seed);

/// Planted u0 with slopes {0,1,2,3} (dim <= 6) plus two commuting operators,
/// nu in {1/2, 1, 5/2}: local piece equals the planted systems with slope
/// <= nu and Q^rec(u0) is certified invertible on the complement.
SuiteResult slope_submodule_suite(std::uint64_t seed);

/// Uniqueness shadow for n = 2 and n = 3: a three-point family with pairwise
/// distinct kappa-gap vectors breaks every non-identity permutation.
SuiteResult uniqueness_suite(std::uint64_t seed);

/// All eight acceptance criteria at their contract parameters.
std::vector<SuiteResult> acceptance_criteria();

// Randomized data generators (also used by the unit tests).

Scalar random_unit(const CtxPtr& ctx, std::mt19937_64& rng);

/// Unimodular integer matrix built from random row operations; writes the
/// exact inverse to inv when non-null.
Matrix random_unimodular(const CtxPtr& ctx, int dim, std::mt19937_64& rng, Matrix* inv);

/// Commuting module with prescribed joint eigenvalues: ops[label] acts on the
/// j-th planted line by eigenvalues[label][j], conjugated by a shared
/// unimodular matrix.
FiniteModule planted_module(const CtxPtr& ctx,
                            const std::map<std::string, std::vector<Scalar>>& eigenvalues,
                            const std::set<std::string>& sub_labels, std::mt19937_64& rng);

}  // namespace endo::verify
