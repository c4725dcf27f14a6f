#include "endo/point.hpp"

#include <algorithm>
#include <numeric>

namespace endo {

std::string ClassicalPoint::p_place_label() const {
    return ctx ? std::to_string(ctx->p()) : std::string();
}

void validate_point(const ClassicalPoint& pt) {
    if (!pt.ctx) throw parse_error("point: missing precision context");
    if (pt.n < 1) throw parse_error("point: n must be >= 1");
    if (pt.weight.n() != pt.n) throw parse_error("point: weight length != n");
    if (pt.refinement.n() != pt.n) throw parse_error("point: refinement length != n");
    if (!pt.weight.weakly_decreasing()) throw parse_error("point: weight must be decreasing");
    for (const auto& v : pt.refinement.phi)
        if (!v.is_value()) throw parse_error("point: refinement entries must be invertible");
    for (const auto& [place, s] : pt.satake) {
        if (s.n() != pt.n)
            throw parse_error("point: satake multiset at '" + place + "' has size != n");
        for (const auto& v : s.values)
            if (!v.is_value())
                throw parse_error("point: satake values at '" + place + "' must be invertible");
    }
    for (const auto& [place, v] : pt.mu.frob)
        if (!v.is_value()) throw parse_error("point: mu values must be invertible");

    // When the p place is recorded, its multiset must match the refinement.
    auto it = pt.satake.find(pt.p_place_label());
    if (it != pt.satake.end()) {
        std::vector<bool> used(static_cast<size_t>(pt.n), false);
        for (const auto& v : it->second.values) {
            bool matched = false;
            for (int j = 0; j < pt.n && !matched; ++j) {
                if (used[static_cast<size_t>(j)]) continue;
                if (equal_at_precision(v, pt.refinement.phi[static_cast<size_t>(j)])) {
                    used[static_cast<size_t>(j)] = true;
                    matched = true;
                }
            }
            if (!matched)
                throw parse_error("point: satake multiset at p does not match the refinement");
        }
    }
}

bool check_classical(const Weight& k, const Scalar& lambda) {
    if (!k.strictly_decreasing())
        throw std::invalid_argument("check_classical: weight must be strictly decreasing");
    if (lambda.is_exact_zero())
        throw std::invalid_argument("check_classical: lambda must be nonzero");
    return valuation(lambda) < k.slope_bound();
}

Scalar u0_eigenvalue(const ClassicalPoint& pt) {
    std::vector<Scalar> f = F_values(pt.weight, pt.refinement);
    Scalar acc = Scalar::one(pt.ctx);
    for (int i = 0; i < pt.n; ++i) acc = acc * pow(f[static_cast<size_t>(i)], pt.n - 1 - i);
    return acc;
}

GateResult is_Zn_member(const ClassicalPoint& pt) {
    if (!pt.weight.strictly_decreasing())
        return {false, "(a) weight is not strictly decreasing"};

    std::vector<Scalar> f = F_values(pt.weight, pt.refinement);
    Scalar prod = Scalar::one(pt.ctx);
    for (int i = 0; i + 1 < pt.n; ++i) prod = prod * f[static_cast<size_t>(i)];
    HalfInt v = valuation(prod);
    if (!(v < pt.weight.slope_bound()))
        return {false, "(b) v(F_1...F_{n-1}) = " + v.str() + " >= bound " +
                           pt.weight.slope_bound().str()};

    if (pt.ctx->digits() < kPhiRatioMarginDigits)
        throw precision_error("condition (c) undecidable: N below the comparison margin");
    std::vector<long> kap = kappa(pt.weight);
    std::vector<Scalar> phi;
    phi.reserve(f.size());
    for (int i = 0; i < pt.n; ++i)
        phi.push_back(f[static_cast<size_t>(i)] *
                      Scalar::p_power(pt.ctx, HalfInt::whole(kap[static_cast<size_t>(i)])));
    Scalar p_scalar = Scalar::p_power(pt.ctx, HalfInt::whole(1));
    for (int i = 0; i < pt.n; ++i)
        for (int j = 0; j < pt.n; ++j) {
            if (i == j) continue;
            Scalar r = phi[static_cast<size_t>(i)] / phi[static_cast<size_t>(j)];
            if (valuation(r) != HalfInt::whole(1)) continue;
            Scalar u = r / p_scalar;
            if (u.precision() < kPhiRatioMarginDigits)
                throw precision_error("condition (c) undecidable at this precision");
            if (congruent_mod_pi(u, Scalar::one(pt.ctx), kPhiRatioMarginDigits))
                return {false, "(c) phi_" + std::to_string(i + 1) + " / phi_" +
                                   std::to_string(j + 1) + " = p at the comparison margin"};
        }
    return {true, ""};
}

bool is_regular(const ClassicalPoint& pt) {
    if (!pt.weight.strictly_decreasing()) return false;
    for (int i = 0; i < pt.n; ++i)
        for (int j = i + 1; j < pt.n; ++j) {
            switch (compare_at_precision(pt.refinement.phi[static_cast<size_t>(i)],
                                         pt.refinement.phi[static_cast<size_t>(j)])) {
                case Cmp::Equal: return false;
                case Cmp::Indistinguishable:
                    throw precision_error("is_regular: refinement entries " + std::to_string(i + 1) +
                                          " and " + std::to_string(j + 1) +
                                          " indistinguishable at the cap");
                case Cmp::Distinct: break;
            }
        }
    return true;
}

GateResult is_nice_pair(const ClassicalPoint& z1, const ClassicalPoint& z2) {
    if (z1.weight.k.empty() || z2.weight.k.empty()) return {false, "empty weight"};
    long last = z1.weight.k.back(), first = z2.weight.k.front();
    if (last > first) return {true, ""};
    return {false, "niceness fails: k_{n1} = " + std::to_string(last) +
                       " is not > k'_1 = " + std::to_string(first)};
}

namespace {

void require_same_ctx(const ClassicalPoint& z1, const ClassicalPoint& z2) {
    if (!z1.ctx || !z2.ctx || !same_ctx(*z1.ctx, *z2.ctx))
        throw std::invalid_argument("transfer: precision contexts differ");
}

// The paper fixes one global mu; the two points must agree wherever both
// record a value that the transfer uses.
void require_mu_consistent(const ClassicalPoint& z1, const ClassicalPoint& z2,
                           const std::vector<std::string>& places) {
    for (const auto& place : places) {
        if (z1.mu.has(place) && z2.mu.has(place) &&
            !equal_at_precision(z1.mu.at(place), z2.mu.at(place)))
            throw std::invalid_argument("transfer: mu values disagree at place '" + place + "'");
    }
}

MuData merged_mu(const ClassicalPoint& z1, const ClassicalPoint& z2) {
    MuData mu = z1.mu;
    for (const auto& [place, v] : z2.mu.frob) mu.frob.emplace(place, v);
    return mu;
}

}  // namespace

TransferReport transfer_point(const ClassicalPoint& z1, const ClassicalPoint& z2) {
    require_same_ctx(z1, z2);
    const CtxPtr& ctx = z1.ctx;
    TransferReport rep;

    rep.z1_regular = is_regular(z1);
    if (!rep.z1_regular) throw gate_error("z1 is not regular");
    rep.z2_regular = is_regular(z2);
    if (!rep.z2_regular) throw gate_error("z2 is not regular");
    rep.z1_zn = is_Zn_member(z1);
    if (!rep.z1_zn.pass) throw gate_error("z1 not in Z(n1): " + rep.z1_zn.reason);
    rep.z2_zn = is_Zn_member(z2);
    if (!rep.z2_zn.pass) throw gate_error("z2 not in Z(n2): " + rep.z2_zn.reason);
    rep.nice = is_nice_pair(z1, z2);
    if (!rep.nice.pass) throw gate_error(rep.nice.reason);
    rep.z1_classical = check_classical(z1.weight, u0_eigenvalue(z1));
    rep.z2_classical = check_classical(z2.weight, u0_eigenvalue(z2));

    // Shared split places (the p place is carried by the refinements).
    std::vector<std::string> shared;
    const std::string p_label = z1.p_place_label();
    for (const auto& [place, s] : z1.satake)
        if (place != p_label && z2.satake.count(place)) shared.push_back(place);
    if (shared.empty())
        throw std::invalid_argument("transfer: the points share no split place");

    std::vector<std::string> mu_places = shared;
    mu_places.push_back("p");
    require_mu_consistent(z1, z2, mu_places);
    MuData mu = merged_mu(z1, z2);
    MuPair pair = mu_assign(z1.n, z2.n);

    ClassicalPoint out;
    out.ctx = ctx;
    out.n = z1.n + z2.n;
    out.weight.k = z1.weight.k;
    out.weight.k.insert(out.weight.k.end(), z2.weight.k.begin(), z2.weight.k.end());

    Scalar one = Scalar::one(ctx);
    Scalar mu1p = pair.mu1 == MuFlag::TwistByMu ? mu.at("p") : one;
    Scalar mu2p = pair.mu2 == MuFlag::TwistByMu ? mu.at("p") : one;
    out.refinement = combine_refinements(z1.refinement, z2.refinement, mu1p, mu2p);

    for (const auto& place : shared)
        out.satake.emplace(place,
                           spherical_transfer(z1.satake.at(place), z2.satake.at(place), mu, pair));
    // When both points record the p place, so does the transfer.
    if (z1.satake.count(p_label) && z2.satake.count(p_label)) {
        SatakeParams sp;
        sp.place = p_label;
        sp.values = out.refinement.phi;
        out.satake.emplace(p_label, sp);
    }
    out.mu = mu;

    rep.f_z1 = F_values(z1.weight, z1.refinement);
    rep.f_z2 = F_values(z2.weight, z2.refinement);
    rep.f_result = F_values(out.weight, out.refinement);

    Refinement recovered = recover_refinement(rep.f_result, out.weight);
    rep.recovery_ok = true;
    for (int i = 0; i < out.n; ++i)
        if (!equal_at_precision(recovered.phi[static_cast<size_t>(i)],
                                out.refinement.phi[static_cast<size_t>(i)]))
            rep.recovery_ok = false;
    if (!rep.recovery_ok)
        throw precision_error("transfer: refinement recovery identity failed at precision");

    rep.result = std::move(out);
    return rep;
}

UniquenessReport uniqueness_witness(const std::vector<TransferReport>& reports) {
    if (reports.size() < 2)
        throw std::invalid_argument("uniqueness_witness: need at least 2 transferred points");
    const int n = reports.front().result.n;
    for (const auto& r : reports)
        if (r.result.n != n)
            throw std::invalid_argument("uniqueness_witness: points of different rank");

    bool all_weights_equal = true;
    for (const auto& r : reports)
        if (r.result.weight.k != reports.front().result.weight.k) all_weights_equal = false;
    if (all_weights_equal)
        throw std::invalid_argument("uniqueness_witness: degenerate equal weights across points");

    const CtxPtr& ctx = reports.front().result.ctx;
    UniquenessReport out;
    std::vector<int> sigma(static_cast<size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        PermutationEvidence ev;
        ev.sigma = sigma;
        bool is_id = true;
        for (int i = 0; i < n; ++i)
            if (sigma[static_cast<size_t>(i)] != i) is_id = false;
        if (is_id) {
            ev.identity = true;
            ev.detail = "identity satisfies the relation on every point";
            out.permutations.push_back(std::move(ev));
            continue;
        }
        for (size_t zi = 0; zi < reports.size() && !ev.broken; ++zi) {
            const auto& rep = reports[zi];
            std::vector<long> kap = kappa(rep.result.weight);
            for (int i = 0; i < n && !ev.broken; ++i) {
                int si = sigma[static_cast<size_t>(i)];
                Scalar rhs = rep.f_result[static_cast<size_t>(si)] *
                             Scalar::p_power(ctx, HalfInt::whole(kap[static_cast<size_t>(si)] -
                                                                 kap[static_cast<size_t>(i)]));
                const Scalar& lhs = rep.f_result[static_cast<size_t>(i)];
                if (compare_at_precision(lhs, rhs) == Cmp::Distinct) {
                    ev.broken = true;
                    ev.witness_point = static_cast<int>(zi);
                    ev.witness_index = i;
                    if (valuation(lhs) != valuation(rhs))
                        ev.detail = "valuation mismatch at i=" + std::to_string(i + 1) + ": " +
                                    valuation(lhs).str() + " vs " + valuation(rhs).str();
                    else
                        ev.detail = "unit-part mismatch at i=" + std::to_string(i + 1);
                }
            }
        }
        if (!ev.broken) ev.detail = "sigma unbroken by supplied data";
        out.permutations.push_back(std::move(ev));
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    out.all_broken = true;
    for (const auto& ev : out.permutations)
        if (!ev.identity && !ev.broken) out.all_broken = false;
    return out;
}

}  // namespace endo
