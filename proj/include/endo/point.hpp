#pragma once

#include <map>
#include <string>
#include <vector>

#include "endo/hecke.hpp"
#include "endo/refinement.hpp"

namespace endo {

/// A transfer precondition failed; message names the gate.
struct gate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Classical-point data: weight, refinement, Satake multisets at a finite set
/// of split places (keyed by the prime label), and mu(Frob) values (the place
/// above p keyed "p").
struct ClassicalPoint {
    int n = 0;
    Weight weight;
    Refinement refinement;
    std::map<std::string, SatakeParams> satake;
    MuData mu;
    CtxPtr ctx;

    /// Label of the p place inside the satake map, when recorded.
    std::string p_place_label() const;
};

/// Structural invariants: sizes, invertibility, and agreement of the
/// refinement with a recorded Satake multiset at p.  Throws parse_error.
void validate_point(const ClassicalPoint& pt);

struct GateResult {
    bool pass = false;
    std::string reason;
};

/// Control-theorem gate: v(lambda) < 1 + min_i (k_i - k_{i+1}); vacuously
/// true for n = 1.
bool check_classical(const Weight& k, const Scalar& lambda);

/// Eigenvalue of u0 = diag(p^{n-1}, ..., p, 1) on the point: prod F_i^{n-i}.
Scalar u0_eigenvalue(const ClassicalPoint& pt);

/// Conditions (a) strict weight, (b) v(F_1...F_{n-1}) below the control
/// bound, (c) phi_i phi_j^{-1} != p for all i != j (decided by valuation or
/// by the first kPhiRatioMarginDigits pi-digits of the unit parts).
GateResult is_Zn_member(const ClassicalPoint& pt);

inline constexpr int kPhiRatioMarginDigits = 10;

/// Strict weight and pairwise-distinct Satake values at p.  precision_error
/// when a pair is indistinguishable at the cap.
bool is_regular(const ClassicalPoint& pt);

/// k_{n1} > k'_1 on two regular members of their Z(n_i).
GateResult is_nice_pair(const ClassicalPoint& z1, const ClassicalPoint& z2);

struct TransferReport {
    ClassicalPoint result;
    GateResult z1_zn, z2_zn, nice;
    bool z1_regular = false, z2_regular = false;
    bool z1_classical = false, z2_classical = false;  // informational
    std::vector<Scalar> f_z1, f_z2, f_result;
    bool recovery_ok = false;  // recover_refinement(F, k) == refinement
};

/// The endoscopic transfer on classical-point data.  Gate failures raise
/// gate_error naming the failed gate; mismatched mu data or missing shared
/// places raise invalid_argument.
TransferReport transfer_point(const ClassicalPoint& z1, const ClassicalPoint& z2);

struct PermutationEvidence {
    std::vector<int> sigma;  // images of 0..n-1
    bool identity = false;
    bool broken = false;
    int witness_point = -1;  // index into the supplied reports
    int witness_index = -1;  // failing i (0-based)
    std::string detail;
};

struct UniquenessReport {
    std::vector<PermutationEvidence> permutations;
    bool all_broken = false;  // every non-identity permutation falsified
};

/// Uniqueness shadow: for each sigma != id, search the supplied transferred
/// points for an index i where F_i = F_{sigma(i)} p^{kappa_{sigma(i)} -
/// kappa_i} fails; permutations no point falsifies are flagged unbroken.
UniquenessReport uniqueness_witness(const std::vector<TransferReport>& reports);

}  // namespace endo
