#include "endo/verify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

namespace endo::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Scalar pi_pow(const CtxPtr& ctx, long twice) {
    return Scalar::p_power(ctx, HalfInt::make_twice(twice));
}

const std::vector<long> kPrimes = {2, 3, 5};

std::map<std::string, Scalar> line_values(const std::map<std::string, std::vector<Scalar>>& eig,
                                          size_t j) {
    std::map<std::string, Scalar> v;
    for (const auto& [label, vals] : eig) v.emplace(label, vals[j]);
    return v;
}

// Expected joint eigensystems of a planted module: group the planted lines by
// their joint value tuples.
std::vector<Eigensystem> planted_systems(const std::map<std::string, std::vector<Scalar>>& eig) {
    std::vector<Eigensystem> out;
    size_t dim = eig.begin()->second.size();
    for (size_t j = 0; j < dim; ++j) {
        Eigensystem cand{line_values(eig, j), 1};
        bool merged = false;
        for (auto& e : out)
            if (same_values(e, cand)) {
                ++e.multiplicity;
                merged = true;
                break;
            }
        if (!merged) out.push_back(std::move(cand));
    }
    return out;
}

bool eigensystem_multiset_equal(const std::vector<Eigensystem>& a,
                                const std::vector<Eigensystem>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        bool hit = false;
        for (size_t j = 0; j < b.size() && !hit; ++j) {
            if (used[j]) continue;
            if (x.multiplicity == b[j].multiplicity && same_values(x, b[j])) {
                used[j] = true;
                hit = true;
            }
        }
        if (!hit) return false;
    }
    return true;
}

struct Failure {
    bool failed = false;
    std::string detail;
};

void fail(Failure& f, const std::string& msg) {
    if (!f.failed) {
        f.failed = true;
        f.detail = msg;
    }
}

SuiteResult finish(const std::string& name, long trials, const Failure& f, Clock::time_point t0) {
    return SuiteResult{name, !f.failed, trials, seconds_since(t0), f.detail};
}

}  // namespace

Scalar random_unit(const CtxPtr& ctx, std::mt19937_64& rng) {
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
    Scalar v = Scalar::from_integer(ctx, b) * pi_pow(ctx, 1);
    return u + v;
}

Matrix random_unimodular(const CtxPtr& ctx, int dim, std::mt19937_64& rng, Matrix* inv) {
    Matrix s = Matrix::identity(ctx, dim);
    Matrix si = Matrix::identity(ctx, dim);
    if (dim > 1) {
        std::uniform_int_distribution<int> row(0, dim - 1);
        std::uniform_int_distribution<long> coef(-2, 2);
        for (int step = 0; step < 2 * dim; ++step) {
            int i = row(rng), j = row(rng);
            long c = coef(rng);
            if (i == j || c == 0) continue;
            Scalar sc = Scalar::from_integer(ctx, c);
            for (int k = 0; k < dim; ++k) {
                s.at(i, k) = s.at(i, k) + sc * s.at(j, k);
                si.at(k, j) = si.at(k, j) - sc * si.at(k, i);
            }
        }
    }
    if (inv) *inv = si;
    return s;
}

FiniteModule planted_module(const CtxPtr& ctx,
                            const std::map<std::string, std::vector<Scalar>>& eigenvalues,
                            const std::set<std::string>& sub_labels, std::mt19937_64& rng) {
    if (eigenvalues.empty()) throw std::invalid_argument("planted_module: no operators");
    int dim = static_cast<int>(eigenvalues.begin()->second.size());
    Matrix sinv;
    Matrix s = random_unimodular(ctx, dim, rng, &sinv);
    std::map<std::string, Matrix> ops;
    for (const auto& [label, vals] : eigenvalues) {
        if (static_cast<int>(vals.size()) != dim)
            throw std::invalid_argument("planted_module: ragged eigenvalue lists");
        Matrix d(ctx, dim, dim);
        for (int j = 0; j < dim; ++j) d.at(j, j) = vals[static_cast<size_t>(j)];
        ops.emplace(label, s * d * sinv);
    }
    return FiniteModule::make(ctx, dim, std::move(ops), sub_labels);
}

SuiteResult scalar_field_suite(long trials_per_prime, std::uint64_t seed) {
    auto t0 = Clock::now();
    Failure f;
    long total = 0;
    for (long p : kPrimes) {
        CtxPtr ctx = PrecisionCtx::make(p, 80);
        const long margin = 76;
        for (long t = 0; t < trials_per_prime && !f.failed; ++t, ++total) {
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(total));
            std::uniform_int_distribution<long> shift(0, 4);
            Scalar x = random_unit(ctx, rng) * pi_pow(ctx, 2 * shift(rng));
            Scalar y = random_unit(ctx, rng) * pi_pow(ctx, 2 * shift(rng));
            Scalar z = random_unit(ctx, rng) * pi_pow(ctx, 2 * shift(rng));
            std::ostringstream tag;
            tag << "p=" << p << " trial=" << t;

            if (!congruent_mod_pi((x + y) + z, x + (y + z), margin))
                fail(f, tag.str() + ": addition not associative at margin");
            if (!congruent_mod_pi((x * y) * z, x * (y * z), margin))
                fail(f, tag.str() + ": multiplication not associative at margin");
            if (!congruent_mod_pi(x * (y + z), x * y + x * z, margin))
                fail(f, tag.str() + ": distributivity fails at margin");
            if (!congruent_mod_pi(x * inverse(x), Scalar::one(ctx), margin))
                fail(f, tag.str() + ": inverse identity fails at margin");

            if (valuation(x * y).twice != valuation(x).twice + valuation(y).twice)
                fail(f, tag.str() + ": val(xy) != val(x) + val(y)");
            Scalar sum = x + y;
            if (valuation(x) != valuation(y)) {
                if (!sum.is_value() || valuation(sum) != std::min(valuation(x), valuation(y)))
                    fail(f, tag.str() + ": val(x+y) != min for distinct valuations");
            } else if (sum.is_value() && valuation(sum) < valuation(x)) {
                fail(f, tag.str() + ": val(x+y) < min");
            }

            std::uniform_int_distribution<long> e(-6, 6);
            long e1 = e(rng), e2 = e(rng);
            Scalar hom = Scalar::p_power(ctx, HalfInt::make_twice(e1)) *
                         Scalar::p_power(ctx, HalfInt::make_twice(e2));
            if (!hom.exact() ||
                compare_at_precision(hom, Scalar::p_power(ctx, HalfInt::make_twice(e1 + e2))) !=
                    Cmp::Equal)
                fail(f, tag.str() + ": p_power is not an exact homomorphism");

            Scalar back = x.unit_part() * pi_pow(ctx, x.pi_val());
            if (!equal_at_precision(back, x))
                fail(f, tag.str() + ": unit/exponent decomposition does not round-trip");
        }
    }
    return finish("scalar field axioms", total, f, t0);
}

SuiteResult slope_factor_suite(long trials, std::uint64_t seed) {
    auto t0 = Clock::now();
    Failure f;
    const std::vector<long> val_pool = {0, 1, 2, 4, 6};  // twice the valuation
    for (long t = 0; t < trials && !f.failed; ++t) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
        CtxPtr ctx = PrecisionCtx::make(kPrimes[static_cast<size_t>(t % 3)], 80);
        std::uniform_int_distribution<int> degd(2, 8);
        std::uniform_int_distribution<size_t> pick(0, val_pool.size() - 1);
        int d = degd(rng);

        std::vector<long> planted;
        std::vector<Scalar> roots;
        std::vector<long> distinct;
        for (int attempt = 0; attempt < 64; ++attempt) {
            planted.clear();
            roots.clear();
            for (int i = 0; i < d; ++i) planted.push_back(val_pool[pick(rng)]);
            distinct = planted;
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            if (distinct.size() >= 2) break;
        }
        if (distinct.size() < 2) continue;
        for (long v : planted) roots.push_back(random_unit(ctx, rng) * pi_pow(ctx, v));

        SlopePoly P = SlopePoly::one(ctx);
        for (const auto& r : roots)
            P = P * SlopePoly(ctx, {Scalar::one(ctx), -r});

        // Cut at a slope boundary or strictly between two slopes.
        std::uniform_int_distribution<size_t> cidx(0, distinct.size() - 2);
        size_t ci = cidx(rng);
        long nu_twice = distinct[ci];
        if (distinct[ci + 1] - distinct[ci] >= 2 && (t % 2 == 0)) nu_twice = distinct[ci] + 1;
        HalfInt nu = HalfInt::make_twice(nu_twice);

        std::ostringstream tag;
        tag << "trial=" << t << " p=" << ctx->p() << " deg=" << d << " nu=" << nu.str();
        SlopeSplit split;
        try {
            split = slope_factor(P, nu);
        } catch (const std::exception& e) {
            fail(f, tag.str() + ": slope_factor threw: " + e.what());
            continue;
        }
        long expect = 0;
        for (long v : planted)
            if (v <= nu_twice) ++expect;
        if (split.q.degree() != expect)
            fail(f, tag.str() + ": deg Q != planted count");
        SlopePoly prod = split.q * split.r;
        for (int i = 0; i <= P.degree() && !f.failed; ++i)
            if (!congruent_mod_pi(prod.coeff(i), P.coeff(i), 60))
                fail(f, tag.str() + ": Q*R != P mod pi^60");
        try {
            if (split.q.degree() > 0)
                for (const auto& s : newton_polygon(split.q).segments)
                    if (!(s.slope <= Rational::half(nu_twice)))
                        fail(f, tag.str() + ": Q has a slope above the cut");
            if (split.r.degree() > 0)
                for (const auto& s : newton_polygon(split.r).segments)
                    if (!(Rational::half(nu_twice) < s.slope))
                        fail(f, tag.str() + ": R has a slope at or below the cut");
        } catch (const std::exception& e) {
            fail(f, tag.str() + ": polygon check threw: " + e.what());
        }

        // Uniqueness shadow: the factorization is independent of the
        // construction order of P.
        std::shuffle(roots.begin(), roots.end(), rng);
        SlopePoly P2 = SlopePoly::one(ctx);
        for (const auto& r : roots) P2 = P2 * SlopePoly(ctx, {Scalar::one(ctx), -r});
        try {
            SlopeSplit again = slope_factor(P2, nu);
            for (int i = 0; i <= split.q.degree() && !f.failed; ++i)
                if (!congruent_mod_pi(again.q.coeff(i), split.q.coeff(i), 60))
                    fail(f, tag.str() + ": Q depends on the construction order");
        } catch (const std::exception& e) {
            fail(f, tag.str() + ": reordered slope_factor threw: " + e.what());
        }
    }
    return finish("slope factorization", trials, f, t0);
}

namespace {

std::vector<Scalar> eigen_pool(const CtxPtr& ctx) {
    Scalar one = Scalar::one(ctx);
    Scalar p = pi_pow(ctx, 2);
    return {one,
            one + p,
            Scalar::from_integer(ctx, 2),
            Scalar::from_integer(ctx, 1 + 2 * ctx->p()),
            p,
            p * p};
}

std::map<std::string, std::vector<Scalar>> random_eigendata(const CtxPtr& ctx, int dim, int r,
                                                            const std::vector<std::string>& labels,
                                                            std::mt19937_64& rng) {
    auto pool = eigen_pool(ctx);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    std::map<std::string, std::vector<Scalar>> eig;
    for (int op = 0; op < r; ++op) {
        std::vector<Scalar> vals;
        for (int j = 0; j < dim; ++j) vals.push_back(pool[pick(rng)]);
        eig.emplace(labels[static_cast<size_t>(op)], std::move(vals));
    }
    return eig;
}

}  // namespace

SuiteResult lemmas_suite(long trials, std::uint64_t seed) {
    auto t0 = Clock::now();
    Failure f;
    for (long t = 0; t < trials && !f.failed; ++t) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
        CtxPtr ctx = PrecisionCtx::make(kPrimes[static_cast<size_t>(t % 3)], 80);
        std::ostringstream tag;
        tag << "trial=" << t << " p=" << ctx->p();

        // Lifting lemma against the brute-force oracle.
        std::uniform_int_distribution<int> dimd(1, 5), opsd(1, 3);
        int dim = dimd(rng), r = opsd(rng);
        std::uniform_int_distribution<int> subd(0, r);
        int nsub = subd(rng);
        std::vector<std::string> labels = {"A", "B", "C"};
        auto eig = random_eigendata(ctx, dim, r, labels, rng);
        std::set<std::string> subs(labels.begin(), labels.begin() + nsub);

        try {
            FiniteModule m = planted_module(ctx, eig, subs, rng);
            auto oracle = common_eigensystems(m, m.all_labels());
            int total = 0;
            for (const auto& e : oracle) total += e.multiplicity;
            if (total != dim) fail(f, tag.str() + ": oracle multiplicities do not sum to dim");
            if (!eigensystem_multiset_equal(oracle, planted_systems(eig)))
                fail(f, tag.str() + ": oracle does not match the planted systems");

            // every distinct sub-system lifts to exactly the oracle's fiber
            std::vector<Eigensystem> sub_systems;
            for (int j = 0; j < dim; ++j) {
                std::map<std::string, Scalar> chi;
                for (const auto& label : subs) chi.emplace(label, eig.at(label)[static_cast<size_t>(j)]);
                Eigensystem cand{chi, 1};
                bool seen = false;
                for (const auto& s : sub_systems)
                    if (same_values(s, cand)) seen = true;
                if (!seen) sub_systems.push_back(cand);
            }
            for (const auto& chi : sub_systems) {
                auto lifted = lift_eigensystem(m, chi.values);
                std::vector<Eigensystem> expected;
                for (const auto& e : oracle) {
                    bool restricts = true;
                    for (const auto& [label, v] : chi.values)
                        if (!equal_at_precision(e.values.at(label), v)) restricts = false;
                    if (restricts) expected.push_back(e);
                }
                if (lifted.empty()) fail(f, tag.str() + ": a sub-eigensystem failed to lift");
                if (!eigensystem_multiset_equal(lifted, expected))
                    fail(f, tag.str() + ": lift set differs from the oracle restriction");
            }
        } catch (const std::exception& e) {
            fail(f, tag.str() + ": lifting part threw: " + e.what());
        }

        // Tensor lemma against the Kronecker build.
        try {
            std::uniform_int_distribution<int> dims(1, 3);
            int d1 = dims(rng), d2 = dims(rng);
            auto e1 = random_eigendata(ctx, d1, 2, {"A1", "A2"}, rng);
            auto e2 = random_eigendata(ctx, d2, 2, {"B1", "B2"}, rng);
            FiniteModule m1 = planted_module(ctx, e1, {}, rng);
            FiniteModule m2 = planted_module(ctx, e2, {}, rng);
            auto tensored = tensor_eigensystems(m1, m2);
            auto brute = common_eigensystems(tensor_module(m1, m2), {"A1", "A2", "B1", "B2"});
            int total = 0;
            for (const auto& e : tensored) total += e.multiplicity;
            if (total != d1 * d2)
                fail(f, tag.str() + ": tensor multiplicities do not sum to dim1*dim2");
            if (!eigensystem_multiset_equal(tensored, brute))
                fail(f, tag.str() + ": tensor systems differ from the Kronecker oracle");
        } catch (const std::exception& e) {
            fail(f, tag.str() + ": tensor part threw: " + e.what());
        }
    }
    return finish("eigensystem lemmas", trials, f, t0);
}

SuiteResult identity_suite(long trials_per_shape, std::uint64_t seed) {
    auto t0 = Clock::now();
    Failure f;
    long total = 0;
    for (int n1 = 1; n1 <= 5 && !f.failed; ++n1)
        for (int n2 = 1; n1 + n2 <= 6 && !f.failed; ++n2)
            for (long t = 0; t < trials_per_shape && !f.failed; ++t, ++total) {
                std::mt19937_64 rng(seed + static_cast<std::uint64_t>(total));
                CtxPtr ctx = PrecisionCtx::make(kPrimes[static_cast<size_t>(total % 3)], 40);
                std::uniform_int_distribution<long> ad(-5, 5), kd(-10, 10);
                UElement a;
                for (int i = 0; i < n1 + n2; ++i) a.alpha.push_back(ad(rng));
                Weight k1, k2;
                for (int i = 0; i < n1; ++i) k1.k.push_back(kd(rng));
                for (int i = 0; i < n2; ++i) k2.k.push_back(kd(rng));

                std::ostringstream tag;
                tag << "(n1,n2)=(" << n1 << "," << n2 << ") trial=" << t;
                if (!verify_delta_identity(ctx, k1, k2, a))
                    fail(f, tag.str() + ": delta identity failed");
                if (!verify_modulus_identity(ctx, n1, n2, a))
                    fail(f, tag.str() + ": modulus identity failed");
            }
    return finish("character identities", total, f, t0);
}

namespace {

struct NicePair {
    ClassicalPoint z1, z2;
};

// Random nice pair with unit refinements, conditioned on the Z(n_i) gates
// (nice points are by definition regular members of their Z(n_i)).
NicePair random_nice_pair(const CtxPtr& ctx, int n1, int n2,
                          const std::vector<std::string>& places, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> kd(-10, 10);
    for (int attempt = 0; attempt < 4000; ++attempt) {
        std::set<long, std::greater<long>> vals;
        while (static_cast<int>(vals.size()) < n1 + n2) vals.insert(kd(rng));
        std::vector<long> sorted(vals.begin(), vals.end());

        NicePair pair;
        pair.z1.ctx = pair.z2.ctx = ctx;
        pair.z1.n = n1;
        pair.z2.n = n2;
        pair.z1.weight.k.assign(sorted.begin(), sorted.begin() + n1);
        pair.z2.weight.k.assign(sorted.begin() + n1, sorted.end());

        for (int i = 0; i < n1; ++i) pair.z1.refinement.phi.push_back(random_unit(ctx, rng));
        for (int i = 0; i < n2; ++i) pair.z2.refinement.phi.push_back(random_unit(ctx, rng));

        Scalar mup = random_unit(ctx, rng);
        pair.z1.mu.frob.emplace("p", mup);
        pair.z2.mu.frob.emplace("p", mup);
        for (const auto& place : places) {
            Scalar mul = random_unit(ctx, rng);
            pair.z1.mu.frob.emplace(place, mul);
            pair.z2.mu.frob.emplace(place, mul);
            SatakeParams s1{place, {}}, s2{place, {}};
            for (int i = 0; i < n1; ++i) s1.values.push_back(random_unit(ctx, rng));
            for (int i = 0; i < n2; ++i) s2.values.push_back(random_unit(ctx, rng));
            pair.z1.satake.emplace(place, std::move(s1));
            pair.z2.satake.emplace(place, std::move(s2));
        }

        try {
            if (!is_regular(pair.z1) || !is_regular(pair.z2)) continue;
            if (!is_Zn_member(pair.z1).pass || !is_Zn_member(pair.z2).pass) continue;
            if (!is_nice_pair(pair.z1, pair.z2).pass) continue;
        } catch (const precision_error&) {
            continue;
        }
        return pair;
    }
    throw std::runtime_error("random_nice_pair: generator exhausted its attempts");
}

}  // namespace

SuiteResult transfer_suite(long trials, std::uint64_t seed) {
    auto t0 = Clock::now();
    Failure f;
    for (long t = 0; t < trials && !f.failed; ++t) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
        CtxPtr ctx = PrecisionCtx::make(kPrimes[static_cast<size_t>(t % 3)], 80);
        std::uniform_int_distribution<int> nd(1, 3);
        int n1 = nd(rng), n2 = nd(rng);
        std::vector<std::string> places = {"7", "11"};
        std::ostringstream tag;
        tag << "trial=" << t << " p=" << ctx->p() << " (n1,n2)=(" << n1 << "," << n2 << ")";

        try {
            NicePair pair = random_nice_pair(ctx, n1, n2, places, rng);
            TransferReport rep = transfer_point(pair.z1, pair.z2);
            MuPair flags = mu_assign(n1, n2);

            // (i) transferred Satake values match the theta pullback exactly
            for (const auto& place : places) {
                SphericalChar via_theta = theta_pullback_char(
                    char_of_multiset(pair.z1.satake.at(place)),
                    char_of_multiset(pair.z2.satake.at(place)), rep.result.mu, flags);
                SphericalChar via_transfer = char_of_multiset(rep.result.satake.at(place));
                for (int k = 0; k < via_theta.n; ++k)
                    if (!equal_at_precision(via_theta.e[static_cast<size_t>(k)],
                                            via_transfer.e[static_cast<size_t>(k)]))
                        fail(f, tag.str() + ": theta pullback mismatch at place " + place);
            }

            // (ii) psi_p block identity on random alpha
            Scalar one = Scalar::one(ctx);
            Scalar mu1p = flags.mu1 == MuFlag::TwistByMu ? rep.result.mu.at("p") : one;
            Scalar mu2p = flags.mu2 == MuFlag::TwistByMu ? rep.result.mu.at("p") : one;
            std::uniform_int_distribution<long> ad(-5, 5);
            for (int rep_i = 0; rep_i < 3; ++rep_i) {
                UElement a;
                for (int i = 0; i < n1 + n2; ++i) a.alpha.push_back(ad(rng));
                long s1 = 0, s2 = 0;
                for (int i = 0; i < n1; ++i) s1 += a.alpha[static_cast<size_t>(i)];
                for (int i = n1; i < n1 + n2; ++i) s2 += a.alpha[static_cast<size_t>(i)];
                UElement a1, a2;
                a1.alpha.assign(a.alpha.begin(), a.alpha.begin() + n1);
                a2.alpha.assign(a.alpha.begin() + n1, a.alpha.end());

                Scalar lhs = psi_p(rep.result.weight, refinement_char(rep.result.refinement), a);
                Scalar rhs = pow(mu1p, s1) * pow(mu2p, s2) *
                             psi_p(pair.z1.weight, refinement_char(pair.z1.refinement), a1) *
                             psi_p(pair.z2.weight, refinement_char(pair.z2.refinement), a2) *
                             Scalar::p_power(ctx, HalfInt::make_twice(n2 * s1 - n1 * s2));
                if (!equal_at_precision(lhs, rhs))
                    fail(f, tag.str() + ": psi_p block identity failed");
            }

            // (iii) recovery round trip, (iv) gate (a) on the output
            if (!rep.recovery_ok) fail(f, tag.str() + ": refinement recovery failed");
            Refinement recovered = recover_refinement(rep.f_result, rep.result.weight);
            for (int i = 0; i < rep.result.n; ++i)
                if (!equal_at_precision(recovered.phi[static_cast<size_t>(i)],
                                        rep.result.refinement.phi[static_cast<size_t>(i)]))
                    fail(f, tag.str() + ": recovered refinement differs");
            if (!rep.result.weight.strictly_decreasing())
                fail(f, tag.str() + ": output violates gate (a)");
        } catch (const std::exception& e) {
            fail(f, tag.str() + ": threw: " + e.what());
        }
    }
    return finish("transfer coherence", trials, f, t0);
}

SuiteResult classicality_suite(long trials, std::uint64_t seed) {
    auto t0 = Clock::now();
    Failure f;
    for (long t = 0; t < trials && !f.failed; ++t) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
        CtxPtr ctx = PrecisionCtx::make(kPrimes[static_cast<size_t>(t % 3)], 40);
        std::uniform_int_distribution<int> nd(2, 5);
        std::uniform_int_distribution<long> kd(-10, 10);
        int n = nd(rng);
        std::set<long, std::greater<long>> vals;
        while (static_cast<int>(vals.size()) < n) vals.insert(kd(rng));
        Weight k;
        k.k.assign(vals.begin(), vals.end());

        HalfInt bound = k.slope_bound();
        Scalar at_bound = random_unit(ctx, rng) * Scalar::p_power(ctx, bound);
        Scalar below = random_unit(ctx, rng) *
                       Scalar::p_power(ctx, HalfInt::make_twice(bound.twice - 1));
        std::ostringstream tag;
        tag << "trial=" << t << " n=" << n;
        if (check_classical(k, at_bound)) fail(f, tag.str() + ": boundary slope accepted");
        if (!check_classical(k, below)) fail(f, tag.str() + ": one pi-digit below rejected");
    }
    return finish("classicality gate boundary", trials, f, t0);
}

SuiteResult slope_submodule_suite(std::uint64_t seed) {
    auto t0 = Clock::now();
    Failure f;
    long trials = 0;
    const std::vector<long> nus_twice = {1, 2, 5};
    for (long p : kPrimes) {
        CtxPtr ctx = PrecisionCtx::make(p, 80);
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(p));

        // u0 slopes {0,1,2,3} in dimension 6 (two slopes doubled).
        std::vector<long> slopes_twice = {0, 0, 2, 4, 6, 6};
        std::map<std::string, std::vector<Scalar>> eig;
        std::vector<Scalar> u0vals;
        for (long s : slopes_twice) u0vals.push_back(random_unit(ctx, rng) * pi_pow(ctx, s));
        eig.emplace("u0", u0vals);
        auto pool = eigen_pool(ctx);
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        for (const char* label : {"T1", "T2"}) {
            std::vector<Scalar> vals;
            for (int j = 0; j < 6; ++j) vals.push_back(pool[pick(rng)]);
            eig.emplace(label, vals);
        }

        for (long nu_twice : nus_twice) {
            ++trials;
            HalfInt nu = HalfInt::make_twice(nu_twice);
            std::ostringstream tag;
            tag << "p=" << p << " nu=" << nu.str();
            try {
                FiniteModule m = planted_module(ctx, eig, {}, rng);
                LocalPiece piece = local_piece(m, "u0", nu);

                std::map<std::string, std::vector<Scalar>> kept;
                for (const auto& [label, vals] : eig) {
                    std::vector<Scalar> sel;
                    for (size_t j = 0; j < vals.size(); ++j)
                        if (slopes_twice[j] <= nu_twice) sel.push_back(vals[j]);
                    kept.emplace(label, std::move(sel));
                }
                auto expected = planted_systems(kept);
                if (!eigensystem_multiset_equal(piece.systems, expected))
                    fail(f, tag.str() + ": local piece differs from the planted systems");
                for (const auto& s : piece.systems)
                    if (!(valuation(s.values.at("u0")) <= nu))
                        fail(f, tag.str() + ": eigenvalue above the slope bound");

                // Riesz complement: Q^rec(u0) vanishes on the submodule and is
                // certified invertible on the complement.
                const Matrix& u0 = m.op("u0");
                SlopePoly fred = reciprocal(char_poly(u0));
                SlopeSplit split = slope_factor(fred, nu);
                Matrix qrec = eval(reciprocal(split.q), u0);
                Matrix sub_basis = kernel_basis(qrec);
                Matrix comp_basis = kernel_basis(eval(reciprocal(split.r), u0));
                if (sub_basis.cols() + comp_basis.cols() != 6)
                    fail(f, tag.str() + ": submodule and complement do not fill the space");
                if (sub_basis.cols() > 0 &&
                    !is_zero_at_precision(qrec * sub_basis))
                    fail(f, tag.str() + ": Q^rec(u0) does not vanish on the submodule");
                if (comp_basis.cols() > 0) {
                    Matrix restricted = solve_in_span(comp_basis, qrec * comp_basis);
                    Scalar dt = det(restricted);
                    if (!dt.is_value())
                        fail(f, tag.str() + ": Q^rec(u0) not certified invertible on complement");
                }
            } catch (const std::exception& e) {
                fail(f, tag.str() + ": threw: " + e.what());
            }
        }
    }
    return finish("slope submodule and local piece", trials, f, t0);
}

namespace {

MuData shared_mu(const CtxPtr& ctx, const std::vector<std::string>& places,
                 std::mt19937_64& rng) {
    MuData mu;
    mu.frob.emplace("p", random_unit(ctx, rng));
    for (const auto& place : places) mu.frob.emplace(place, random_unit(ctx, rng));
    return mu;
}

ClassicalPoint make_point(const CtxPtr& ctx, std::vector<long> weight,
                          std::vector<Scalar> refinement,
                          const std::vector<std::string>& places, const MuData& mu,
                          std::mt19937_64& rng) {
    ClassicalPoint z;
    z.ctx = ctx;
    z.n = static_cast<int>(weight.size());
    z.weight.k = std::move(weight);
    z.refinement.phi = std::move(refinement);
    z.mu = mu;
    for (const auto& place : places) {
        SatakeParams s{place, {}};
        for (int i = 0; i < z.n; ++i) s.values.push_back(random_unit(ctx, rng));
        z.satake.emplace(place, std::move(s));
    }
    return z;
}

}  // namespace

SuiteResult uniqueness_suite(std::uint64_t seed) {
    auto t0 = Clock::now();
    Failure f;
    long trials = 0;
    for (long p : kPrimes) {
        CtxPtr ctx = PrecisionCtx::make(p, 80);
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(p));
        std::vector<std::string> places = {"7"};
        if (p == 7) places = {"11"};

        // n = 2 via (1,1): refinement valuations differ within each point, so
        // every non-identity permutation is broken by a valuation mismatch.
        ++trials;
        try {
            std::vector<TransferReport> reports;
            const long gaps[3] = {6, 9, 13};
            for (int j = 0; j < 3; ++j) {
                MuData mu = shared_mu(ctx, places, rng);
                ClassicalPoint z1 = make_point(ctx, {gaps[j]},
                                               {random_unit(ctx, rng) * pi_pow(ctx, 0)}, places,
                                               mu, rng);
                ClassicalPoint z2 = make_point(ctx, {0},
                                               {random_unit(ctx, rng) * pi_pow(ctx, -2)}, places,
                                               mu, rng);
                reports.push_back(transfer_point(z1, z2));
            }
            UniquenessReport rep = uniqueness_witness(reports);
            if (!rep.all_broken) fail(f, "n=2: some permutation is unbroken");
            for (const auto& ev : rep.permutations)
                if (!ev.identity && ev.broken && (ev.witness_point < 0 || ev.witness_index < 0))
                    fail(f, "n=2: broken permutation lacks a concrete witness");
        } catch (const std::exception& e) {
            fail(f, std::string("n=2 family threw: ") + e.what());
        }

        // n = 3 via (2,1): z1 needs its Z(2) gate, so the second weight entry
        // sits low and the first refinement entry keeps valuation 0.
        ++trials;
        try {
            std::vector<TransferReport> reports;
            const long tops[3] = {8, 11, 15};
            for (int j = 0; j < 3; ++j) {
                MuData mu = shared_mu(ctx, places, rng);
                ClassicalPoint z1 = make_point(
                    ctx, {tops[j], -2 - j},
                    {random_unit(ctx, rng) * pi_pow(ctx, 0), random_unit(ctx, rng) * pi_pow(ctx, -2)},
                    places, mu, rng);
                ClassicalPoint z2 = make_point(ctx, {-8 - 2 * j},
                                               {random_unit(ctx, rng) * pi_pow(ctx, -6)}, places,
                                               mu, rng);
                reports.push_back(transfer_point(z1, z2));
            }
            UniquenessReport rep = uniqueness_witness(reports);
            if (!rep.all_broken) fail(f, "n=3: some permutation is unbroken");
            for (const auto& ev : rep.permutations)
                if (!ev.identity && ev.broken && (ev.witness_point < 0 || ev.witness_index < 0))
                    fail(f, "n=3: broken permutation lacks a concrete witness");
        } catch (const std::exception& e) {
            fail(f, std::string("n=3 family threw: ") + e.what());
        }
    }
    return finish("uniqueness shadow", trials, f, t0);
}

std::vector<SuiteResult> acceptance_criteria() {
    std::vector<SuiteResult> out;
    out.push_back(scalar_field_suite(10000, 0xA11CE5));
    out.back().name = "1. scalar field suite (3x10^4 triples, N=80, margin pi^76)";
    out.push_back(slope_factor_suite(500, 0xB0B5));
    out.back().name = "2. slope factorization (500 planted polynomials, mod pi^60)";
    out.push_back(lemmas_suite(200, 0xC0FFEE));
    out.back().name = "3. lifting/tensor lemma oracle equivalence (200 modules)";
    out.push_back(identity_suite(1000, 0xD1CE));
    out.back().name = "4. character identities (10^3 alpha per (n1,n2), exact)";
    out.push_back(transfer_suite(200, 0xE66));
    out.back().name = "5. transfer coherence (200 nice pairs)";
    out.push_back(classicality_suite(100, 0xF00D));
    out.back().name = "6. classicality gate boundary (100 weights, exact)";
    out.push_back(slope_submodule_suite(0xFEED));
    out.back().name = "7. slope submodule and local piece (planted, certified)";
    out.push_back(uniqueness_suite(0xFACE));
    out.back().name = "8. uniqueness shadow (n=2,3 families, deterministic)";
    return out;
}

}  // namespace endo::verify
