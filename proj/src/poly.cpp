#include "endo/poly.hpp"

#include <algorithm>

namespace endo {

namespace {

using Coeffs = std::vector<Scalar>;

void trim(Coeffs& c) {
    while (!c.empty() && c.back().is_exact_zero()) c.pop_back();
}

int deg(const Coeffs& c) { return static_cast<int>(c.size()) - 1; }

Scalar coeff_at(const Coeffs& c, const CtxPtr& ctx, int i) {
    if (i < 0 || i >= static_cast<int>(c.size())) return Scalar::zero(ctx);
    return c[static_cast<size_t>(i)];
}

Coeffs vec_add(const CtxPtr& ctx, const Coeffs& a, const Coeffs& b, bool negate_b) {
    Coeffs r(std::max(a.size(), b.size()), Scalar::zero(ctx));
    for (size_t i = 0; i < r.size(); ++i) {
        Scalar x = i < a.size() ? a[i] : Scalar::zero(ctx);
        Scalar y = i < b.size() ? b[i] : Scalar::zero(ctx);
        r[i] = negate_b ? x - y : x + y;
    }
    trim(r);
    return r;
}

Coeffs vec_mul(const CtxPtr& ctx, const Coeffs& a, const Coeffs& b) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, Scalar::zero(ctx));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_exact_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    trim(r);
    return r;
}

Coeffs vec_scale(const CtxPtr& ctx, const Scalar& s, const Coeffs& a) {
    Coeffs r(a.size(), Scalar::zero(ctx));
    for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    trim(r);
    return r;
}

// Division with remainder; the divisor's leading coefficient must be a unit
// at precision (here always a monic or monic-at-precision polynomial).
std::pair<Coeffs, Coeffs> vec_divrem(const CtxPtr& ctx, Coeffs num, const Coeffs& den) {
    int dn = deg(num), dd = deg(den);
    if (dd < 0) throw std::invalid_argument("poly division by zero");
    if (!den.back().is_value()) throw precision_error("poly division: divisor lead indeterminate");
    if (dn < dd) return {{}, std::move(num)};
    Scalar linv = inverse(den.back());
    Coeffs q(static_cast<size_t>(dn - dd + 1), Scalar::zero(ctx));
    for (int i = dn - dd; i >= 0; --i) {
        Scalar c = num[static_cast<size_t>(i + dd)] * linv;
        q[static_cast<size_t>(i)] = c;
        if (!c.is_exact_zero())
            for (int j = 0; j <= dd; ++j)
                num[static_cast<size_t>(i + j)] =
                    num[static_cast<size_t>(i + j)] - c * den[static_cast<size_t>(j)];
    }
    num.resize(static_cast<size_t>(dd > 0 ? dd : 0));
    trim(q);
    trim(num);
    return {std::move(q), std::move(num)};
}

bool vec_zero_at_precision(const Coeffs& c) {
    for (const auto& s : c)
        if (s.is_value()) return false;
    return true;
}

Scalar pi_monomial(const CtxPtr& ctx, long pi_exp) {
    return Scalar::p_power(ctx, HalfInt::make_twice(pi_exp));
}

}  // namespace

SlopePoly::SlopePoly(CtxPtr ctx, std::vector<Scalar> coeffs)
    : coeffs_(std::move(coeffs)), ctx_(std::move(ctx)) {
    if (!ctx_) throw std::invalid_argument("SlopePoly: null context");
    for (auto& c : coeffs_) {
        if (!c.ctx())
            c = Scalar::zero(ctx_);
        else if (!same_ctx(*c.ctx(), *ctx_))
            throw std::invalid_argument("SlopePoly: coefficient context mismatch");
    }
    trim(coeffs_);
}

SlopePoly SlopePoly::one(const CtxPtr& ctx) { return SlopePoly(ctx, {Scalar::one(ctx)}); }

SlopePoly SlopePoly::constant(const Scalar& c) {
    if (!c.ctx()) throw std::invalid_argument("SlopePoly::constant: context-free scalar");
    return SlopePoly(c.ctx(), {c});
}

const Scalar& SlopePoly::coeff(int i) const {
    static const Scalar kZero;
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
    return coeffs_[static_cast<size_t>(i)];
}

SlopePoly operator+(const SlopePoly& x, const SlopePoly& y) {
    return SlopePoly(x.ctx() ? x.ctx() : y.ctx(), vec_add(x.ctx(), x.coeffs(), y.coeffs(), false));
}

SlopePoly operator-(const SlopePoly& x, const SlopePoly& y) {
    return SlopePoly(x.ctx() ? x.ctx() : y.ctx(), vec_add(x.ctx(), x.coeffs(), y.coeffs(), true));
}

SlopePoly operator*(const SlopePoly& x, const SlopePoly& y) {
    return SlopePoly(x.ctx() ? x.ctx() : y.ctx(), vec_mul(x.ctx(), x.coeffs(), y.coeffs()));
}

SlopePoly operator*(const Scalar& s, const SlopePoly& x) {
    return SlopePoly(x.ctx(), vec_scale(x.ctx(), s, x.coeffs()));
}

Scalar eval(const SlopePoly& p, const Scalar& x) {
    const CtxPtr& ctx = p.ctx() ? p.ctx() : x.ctx();
    Scalar acc = Scalar::zero(ctx);
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeff(i);
    return acc;
}

Matrix eval(const SlopePoly& p, const Matrix& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("eval: square matrix required");
    Matrix acc(x.ctx(), x.rows(), x.cols());
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * x;
        if (!p.coeff(i).is_exact_zero())
            acc = acc + p.coeff(i) * Matrix::identity(x.ctx(), x.rows());
    }
    return acc;
}

SlopePoly derivative(const SlopePoly& p) {
    if (p.degree() < 1) return SlopePoly(p.ctx(), {});
    Coeffs r;
    r.reserve(static_cast<size_t>(p.degree()));
    for (int i = 1; i <= p.degree(); ++i)
        r.push_back(Scalar::from_integer(p.ctx(), i) * p.coeff(i));
    return SlopePoly(p.ctx(), std::move(r));
}

std::pair<SlopePoly, SlopePoly> divrem(const SlopePoly& num, const SlopePoly& den) {
    auto [q, r] = vec_divrem(num.ctx(), num.coeffs(), den.coeffs());
    return {SlopePoly(num.ctx(), std::move(q)), SlopePoly(num.ctx(), std::move(r))};
}

long NewtonPolygon::total_length() const {
    long t = 0;
    for (const auto& s : segments) t += s.length;
    return t;
}

long NewtonPolygon::length_at_most(HalfInt nu) const {
    if (nu.infinite) return total_length();
    Rational cut = Rational::half(nu.twice);
    long t = 0;
    for (const auto& s : segments)
        if (s.slope <= cut) t += s.length;
    return t;
}

NewtonPolygon newton_polygon(const SlopePoly& p) {
    if (p.is_zero()) throw std::invalid_argument("newton_polygon: zero polynomial");
    if (p.coeff(0).is_exact_zero()) throw std::invalid_argument("newton_polygon: P(0) = 0");
    if (p.coeff(0).is_inexact_zero())
        throw precision_error("newton_polygon: constant term valuation indeterminate");
    if (p.coeffs().back().is_inexact_zero())
        throw precision_error("newton_polygon: leading coefficient valuation indeterminate");

    // Heights in pi-units keep the hull arithmetic integral.
    std::vector<std::pair<long, long>> pts;       // (i, pi_val)
    std::vector<std::pair<long, long>> pending;   // (i, lower bound) for inexact zeros
    for (int i = 0; i <= p.degree(); ++i) {
        const Scalar& c = p.coeff(i);
        if (c.is_value())
            pts.emplace_back(i, c.pi_val());
        else if (c.is_inexact_zero())
            pending.emplace_back(i, c.zero_bound());
    }

    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // pop b when it lies on or above segment [a, pt]
            if ((b.first - a.first) * (pt.second - a.second) -
                    (b.second - a.second) * (pt.first - a.first) <=
                0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }

    auto hull_height_ok = [&](long i, long bound) {
        // true when bound >= hull value at abscissa i
        for (size_t s = 0; s + 1 < hull.size(); ++s) {
            auto [x1, y1] = hull[s];
            auto [x2, y2] = hull[s + 1];
            if (i < x1 || i > x2) continue;
            return (bound - y1) * (x2 - x1) >= (y2 - y1) * (i - x1);
        }
        return hull.size() == 1 ? bound >= hull[0].second : false;
    };
    for (auto [i, bound] : pending)
        if (!hull_height_ok(i, bound))
            throw precision_error("newton_polygon: coefficient valuation indeterminate near hull");

    NewtonPolygon np;
    for (size_t s = 0; s + 1 < hull.size(); ++s) {
        auto [x1, y1] = hull[s];
        auto [x2, y2] = hull[s + 1];
        np.segments.push_back(NewtonSegment{Rational(y2 - y1, 2 * (x2 - x1)), x2 - x1});
    }
    return np;
}

namespace {

// Power-series inverse of g modulo T^k; g(0) must be a unit.
Coeffs series_inverse(const CtxPtr& ctx, const Coeffs& g, int k) {
    Coeffs b(static_cast<size_t>(k), Scalar::zero(ctx));
    Scalar g0inv = inverse(g.at(0));
    b[0] = g0inv;
    for (int i = 1; i < k; ++i) {
        Scalar acc = Scalar::zero(ctx);
        for (int j = 1; j <= i && j < static_cast<int>(g.size()); ++j)
            acc = acc + g[static_cast<size_t>(j)] * b[static_cast<size_t>(i - j)];
        b[static_cast<size_t>(i)] = -(g0inv * acc);
    }
    trim(b);
    return b;
}

// Quadratic Hensel lift of the distinguished factorization M = F * G, where
// the residue of M is X^k * (unit polynomial):  F is monic of degree k with
// F == X^k mod pi, and G(0) is a unit.  This is the single engine behind the
// slope cut and the root-cluster extraction.
std::pair<Coeffs, Coeffs> hensel_split(const CtxPtr& ctx, const Coeffs& m, int k) {
    const int bigd = deg(m);
    if (k <= 0 || k > bigd) throw std::logic_error("hensel_split: bad split index");
    for (int j = 0; j < k; ++j) {
        const Scalar& c = m[static_cast<size_t>(j)];
        if (c.is_value() && c.pi_val() <= 0)
            throw precision_error("hensel_split: residue not distinguished at the cut");
    }
    if (!m[static_cast<size_t>(k)].is_value() || m[static_cast<size_t>(k)].pi_val() != 0)
        throw precision_error("hensel_split: cut coefficient is not a unit");

    Coeffs f(static_cast<size_t>(k + 1), Scalar::zero(ctx));
    f[static_cast<size_t>(k)] = Scalar::one(ctx);
    Coeffs g(m.begin() + k, m.end());
    Coeffs b = series_inverse(ctx, g, k);
    Coeffs two{Scalar::from_integer(ctx, 2)};

    for (int iter = 0; iter < 64; ++iter) {
        Coeffs e = vec_add(ctx, m, vec_mul(ctx, f, g), true);
        if (vec_zero_at_precision(e)) {
            f.resize(static_cast<size_t>(k + 1), Scalar::zero(ctx));
            g.resize(static_cast<size_t>(bigd - k + 1), Scalar::zero(ctx));
            return {std::move(f), std::move(g)};
        }
        Coeffs df = vec_divrem(ctx, vec_mul(ctx, b, e), f).second;
        Coeffs dg = vec_divrem(ctx, vec_add(ctx, e, vec_mul(ctx, df, g), true), f).first;
        f = vec_add(ctx, f, df, false);
        g = vec_add(ctx, g, dg, false);
        if (deg(f) != k || !f.back().exact())
            throw std::logic_error("hensel_split: monic factor corrupted");
        Coeffs gb = vec_divrem(ctx, vec_mul(ctx, g, b), f).second;
        b = vec_divrem(ctx, vec_mul(ctx, b, vec_add(ctx, two, gb, true)), f).second;
    }
    throw precision_error("slope cut not separable: Hensel lifting did not converge");
}

}  // namespace

SlopeSplit slope_factor(const SlopePoly& p, HalfInt nu) {
    const CtxPtr& ctx = p.ctx();
    if (p.is_zero()) throw std::invalid_argument("slope_factor: zero polynomial");
    if (!equal_at_precision(p.coeff(0), Scalar::one(ctx)))
        throw std::invalid_argument("slope_factor: P(0) must be 1");
    if (p.degree() == 0) return {SlopePoly::one(ctx), SlopePoly::one(ctx)};

    NewtonPolygon np;
    try {
        np = newton_polygon(p);
    } catch (const precision_error& e) {
        throw precision_error(std::string("slope cut not separable: ") + e.what());
    }
    const long d = np.length_at_most(nu);
    const int bigd = p.degree();
    if (d == 0) return {SlopePoly::one(ctx), p};
    if (d == bigd) return {p, SlopePoly::one(ctx)};

    // Rescale T by pi^{2 nu} and reverse: M's residue becomes X^{D-d} * unit,
    // the distinguished shape the lifting engine expects.
    Scalar gd = p.coeff(static_cast<int>(d)) * pi_monomial(ctx, -nu.twice * d);
    if (!gd.is_value()) throw precision_error("slope cut not separable: cut vertex indeterminate");
    Scalar gd_inv = inverse(gd);

    Coeffs m(static_cast<size_t>(bigd + 1), Scalar::zero(ctx));
    for (int i = 0; i <= bigd; ++i) {
        Scalar gi = p.coeff(i) * pi_monomial(ctx, -nu.twice * i);
        m[static_cast<size_t>(bigd - i)] = gi * gd_inv;
    }
    auto [f, g] = hensel_split(ctx, m, bigd - static_cast<int>(d));

    Coeffs q(static_cast<size_t>(d + 1), Scalar::zero(ctx));
    for (int i = 0; i <= static_cast<int>(d); ++i)
        q[static_cast<size_t>(i)] =
            gd * coeff_at(g, ctx, static_cast<int>(d) - i) * pi_monomial(ctx, nu.twice * i);
    const int kf = bigd - static_cast<int>(d);
    Coeffs r(static_cast<size_t>(kf + 1), Scalar::zero(ctx));
    for (int i = 0; i <= kf; ++i)
        r[static_cast<size_t>(i)] = coeff_at(f, ctx, kf - i) * pi_monomial(ctx, nu.twice * i);

    SlopeSplit out{SlopePoly(ctx, std::move(q)), SlopePoly(ctx, std::move(r))};

    // Certify the product before reporting success.
    long min_val = 0;
    for (int i = 0; i <= bigd; ++i)
        if (p.coeff(i).is_value()) min_val = std::min(min_val, p.coeff(i).pi_val());
    long threshold = min_val + ctx->digits() - 20;
    SlopePoly prod = out.q * out.r;
    int top = std::max(prod.degree(), bigd);
    for (int i = 0; i <= top; ++i)
        if (!congruent_mod_pi(prod.coeff(i), p.coeff(i), threshold))
            throw precision_error("slope factorization not certified at working precision");
    if (out.q.degree() != static_cast<int>(d))
        throw precision_error("slope factorization lost the cut degree at precision");
    return out;
}

SlopePoly reciprocal(const SlopePoly& q) {
    if (q.is_zero() || !q.coeff(0).is_value())
        throw std::invalid_argument("reciprocal: constant term must be nonzero");
    Coeffs r(q.coeffs().rbegin(), q.coeffs().rend());
    return SlopePoly(q.ctx(), std::move(r));
}

SlopePoly char_poly(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("char_poly: square matrix required");
    const CtxPtr& ctx = a.ctx();
    const int n = a.rows();
    if (n == 0) return SlopePoly::one(ctx);

    // Fraction-free Bareiss over K[T]; every pivot is the char poly of a
    // leading principal submatrix, hence exactly monic, so the divisions are
    // synthetic divisions by monic polynomials.
    std::vector<std::vector<Coeffs>> b(static_cast<size_t>(n),
                                       std::vector<Coeffs>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Coeffs c;
            if (i == j) c = Coeffs{-a.at(i, j), Scalar::one(ctx)};
            else if (!a.at(i, j).is_exact_zero())
                c = Coeffs{-a.at(i, j)};
            b[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(c);
        }

    Coeffs prev{Scalar::one(ctx)};
    for (int k = 0; k + 1 < n; ++k) {
        const Coeffs pivot = b[static_cast<size_t>(k)][static_cast<size_t>(k)];
        if (deg(pivot) != k + 1 || !pivot.back().exact())
            throw std::logic_error("char_poly: pivot minor is not monic");
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Coeffs num = vec_add(
                    ctx, vec_mul(ctx, pivot, b[static_cast<size_t>(i)][static_cast<size_t>(j)]),
                    vec_mul(ctx, b[static_cast<size_t>(i)][static_cast<size_t>(k)],
                            b[static_cast<size_t>(k)][static_cast<size_t>(j)]),
                    true);
                auto [quo, rem] = vec_divrem(ctx, std::move(num), prev);
                if (!vec_zero_at_precision(rem))
                    throw precision_error("char_poly: fraction-free division not exact at cap");
                b[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(quo);
            }
        prev = pivot;
    }
    return SlopePoly(ctx, b[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)]);
}

namespace {

void roots_rec(const CtxPtr& ctx, Coeffs p, int depth, std::vector<RootMult>& out);

int residue_digit(const Scalar& c) {
    if (c.is_zero_kind()) return 0;
    if (c.pi_val() >= 1) return 0;
    if (c.pi_val() < 0) throw std::logic_error("residue_digit: non-integral coefficient");
    mpz_class d = c.unit_a() % c.ctx()->p();
    if (d < 0) d += c.ctx()->p();
    return static_cast<int>(d.get_si());
}

std::vector<int> residue_poly(const Coeffs& c) {
    std::vector<int> r;
    r.reserve(c.size());
    for (const auto& s : c) {
        if (s.is_inexact_zero() && s.zero_bound() <= 0)
            throw precision_error("roots: residue of coefficient indeterminate");
        r.push_back(residue_digit(s));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// Multiplicity of the residue root a in rbar over F_p (repeated synthetic
// division by y - a).
int residue_multiplicity(std::vector<int> rbar, long a, long p) {
    int mult = 0;
    while (rbar.size() >= 2) {
        size_t n = rbar.size() - 1;
        std::vector<int> horner(rbar.size());
        horner[n] = static_cast<int>(((rbar[n] % p) + p) % p);
        for (size_t i = n; i-- > 0;)
            horner[i] = static_cast<int>((((rbar[i] + a * horner[i + 1]) % p) + p) % p);
        if (horner[0] != 0) break;  // remainder at a
        rbar.assign(horner.begin() + 1, horner.end());
        ++mult;
    }
    return mult;
}

Coeffs taylor_shift(Coeffs c, const Scalar& s) {
    int n = deg(c);
    for (int j = 0; j < n; ++j)
        for (int i = n - 1; i >= j; --i)
            c[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] + s * c[static_cast<size_t>(i + 1)];
    return c;
}

Scalar newton_lift_root(const CtxPtr& ctx, const Coeffs& c, int a) {
    SlopePoly poly(ctx, c);
    SlopePoly dpoly = derivative(poly);
    Scalar x = Scalar::from_integer(ctx, a);
    for (int iter = 0; iter < 200; ++iter) {
        Scalar fx = eval(poly, x);
        if (fx.is_zero_kind()) return x;
        Scalar dfx = eval(dpoly, x);
        if (!dfx.is_value()) throw precision_error("roots: derivative vanished during lifting");
        x = x - fx / dfx;
    }
    throw precision_error("roots: Newton lifting did not converge");
}

// Roots of the monic polynomial c whose roots all have valuation 0.
void unit_roots(const CtxPtr& ctx, const Coeffs& c, int depth,
                std::vector<std::pair<Scalar, int>>& out) {
    const int d = deg(c);
    if (d == 0) return;
    std::vector<int> rbar = residue_poly(c);
    int found = 0;
    for (int a = 1; a < ctx->p(); ++a) {
        int mult = residue_multiplicity(rbar, a, ctx->p());
        if (mult == 0) continue;
        if (mult == 1) {
            out.emplace_back(newton_lift_root(ctx, c, a), 1);
            found += 1;
            continue;
        }
        // Residue-multiple root: shift to the cluster around a and peel off
        // the positive-valuation factor.
        Coeffs shifted = taylor_shift(c, Scalar::from_integer(ctx, a));
        auto [fpos, grest] = hensel_split(ctx, shifted, mult);
        (void)grest;
        std::vector<RootMult> sub;
        roots_rec(ctx, std::move(fpos), depth + 1, sub);
        Scalar center = Scalar::from_integer(ctx, a);
        for (auto& rm : sub) {
            out.emplace_back(center + rm.root, rm.multiplicity);
            found += rm.multiplicity;
        }
    }
    if (found != d)
        throw outside_scalar_field("polynomial has roots outside Q_p(sqrt p)");
}

void roots_rec(const CtxPtr& ctx, Coeffs p, int depth, std::vector<RootMult>& out) {
    if (depth > 4 * ctx->digits())
        throw precision_error("roots: clusters not separable at working precision");
    trim(p);
    int d = deg(p);
    if (d <= 0) return;

    // Normalize monic (the lead drifts from exactly-1 after lifting steps).
    if (!p.back().is_value()) throw precision_error("roots: leading coefficient indeterminate");
    if (!(p.back().exact() && p.back().unit_a() == 1 && p.back().unit_b() == 0 &&
          p.back().pi_val() == 0)) {
        Scalar linv = inverse(p.back());
        for (auto& c : p) c = linv * c;
        p.back() = Scalar::one(ctx);
    }

    // Roots at zero (exactly, or certified zero at the cap).  A prefix of
    // inexact-zero coefficients pins the cluster only when its bounds leave a
    // positive certified valuation per root.
    int m0 = 0;
    bool prefix_inexact = false;
    long bound_min = 0;
    while (m0 < d && p[static_cast<size_t>(m0)].is_zero_kind()) {
        const Scalar& c = p[static_cast<size_t>(m0)];
        if (c.is_inexact_zero()) {
            bound_min = prefix_inexact ? std::min(bound_min, c.zero_bound()) : c.zero_bound();
            prefix_inexact = true;
        }
        ++m0;
    }
    if (m0 > 0) {
        Scalar zero_root = Scalar::zero(ctx);
        if (prefix_inexact) {
            long per_root = (bound_min - p[static_cast<size_t>(m0)].pi_val()) / m0;
            if (per_root < 1)
                throw precision_error("roots: zero cluster not certified at precision");
            zero_root = Scalar::inexact_zero(ctx, per_root);
        }
        out.push_back(RootMult{zero_root, m0});
        p.erase(p.begin(), p.begin() + m0);
        d = deg(p);
        if (d == 0) return;
    }

    NewtonPolygon np = newton_polygon(SlopePoly(ctx, p));
    const NewtonSegment& last = np.segments.back();
    if (!last.slope.is_half_integral())
        throw outside_scalar_field("root valuation outside (1/2)Z: slope " + last.slope.str());
    long v2 = -last.slope.as_half_int().twice;  // pi-valuation of the smallest-valuation roots

    // Rescale so that cluster to valuation 0; remaining roots get positive
    // valuation and are peeled off by the distinguished split.
    Coeffs scaled(p.size());
    for (int i = 0; i <= d; ++i)
        scaled[static_cast<size_t>(i)] =
            p[static_cast<size_t>(i)] * pi_monomial(ctx, v2 * (i - d));

    Coeffs cluster, rest;
    const long len = last.length;
    if (np.segments.size() == 1) {
        cluster = std::move(scaled);
    } else {
        auto [f, g] = hensel_split(ctx, scaled, d - static_cast<int>(len));
        cluster = std::move(g);
        rest = std::move(f);
    }

    std::vector<std::pair<Scalar, int>> unit_out;
    unit_roots(ctx, cluster, depth, unit_out);
    Scalar scale = pi_monomial(ctx, v2);
    for (auto& [root, mult] : unit_out) out.push_back(RootMult{root * scale, mult});

    if (!rest.empty()) {
        // Undo the rescaling on the remaining factor and recurse.
        const int dr = deg(rest);
        Coeffs back(rest.size());
        for (int i = 0; i <= dr; ++i)
            back[static_cast<size_t>(i)] =
                rest[static_cast<size_t>(i)] * pi_monomial(ctx, v2 * (dr - i));
        roots_rec(ctx, std::move(back), depth + 1, out);
    }
}

}  // namespace

std::vector<RootMult> roots_in_field(const SlopePoly& p) {
    if (p.is_zero()) throw std::invalid_argument("roots_in_field: zero polynomial");
    std::vector<RootMult> out;
    roots_rec(p.ctx(), p.coeffs(), 0, out);
    return out;
}

std::string to_string(const SlopePoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = 0; i <= p.degree(); ++i) {
        if (i) out.push_back(',');
        out += p.coeff(i).is_exact_zero() ? "0" : to_string(p.coeff(i));
    }
    return out;
}

SlopePoly parse_poly(const CtxPtr& ctx, const std::string& text) {
    Coeffs c;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        std::string tok = text.substr(start, comma == std::string::npos ? comma : comma - start);
        c.push_back(parse_scalar(ctx, tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return SlopePoly(ctx, std::move(c));
}

}  // namespace endo
