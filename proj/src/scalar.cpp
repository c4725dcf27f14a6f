#include "endo/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace endo {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// pi-adic digit position split: even positions live in a, odd in b.
int cap_a_digits(int prec) { return (prec + 1) / 2; }
int cap_b_digits(int prec) { return prec / 2; }

int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}

char digit_char(int v) {
    return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10);
}

}  // namespace

PrecisionCtx::PrecisionCtx(long p, int n) : p_(p), n_(n) {
    pow_.resize(n_ / 2 + 1);
    pow_[0] = 1;
    for (int i = 1; i <= n_ / 2; ++i) pow_[i] = pow_[i - 1] * p_;
}

CtxPtr PrecisionCtx::make(long p, int n_digits) {
    if (!is_prime(p)) throw std::invalid_argument("PrecisionCtx: p must be prime");
    if (n_digits < 4 || n_digits % 2 != 0)
        throw std::invalid_argument("PrecisionCtx: N must be even and >= 4");
    return CtxPtr(new PrecisionCtx(p, n_digits));
}

const mpz_class& PrecisionCtx::p_pow(int k) const { return pow_.at(static_cast<size_t>(k)); }

mpz_class PrecisionCtx::p_pow_any(long k) const {
    if (k < 0) throw std::logic_error("p_pow_any: negative exponent");
    if (k <= n_ / 2) return pow_[static_cast<size_t>(k)];
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(k));
    return r;
}

namespace {

CtxPtr harmonize(const CtxPtr& x, const CtxPtr& y) {
    if (!x) return y;
    if (!y) return x;
    if (!same_ctx(*x, *y)) throw std::invalid_argument("Scalar: precision context mismatch");
    return x;
}

// Pair coordinates of (a + b*pi) * pi^d for d >= 0.
void shift_pair(mpz_class& a, mpz_class& b, long d, const PrecisionCtx& ctx) {
    if (d == 0) return;
    if (d % 2 == 0) {
        mpz_class f = ctx.p_pow_any(d / 2);
        a *= f;
        b *= f;
    } else {
        mpz_class f = ctx.p_pow_any((d - 1) / 2);
        mpz_class na = b * f * ctx.p();
        mpz_class nb = a * f;
        a = na;
        b = nb;
    }
}

long pair_pi_val(const mpz_class& a, const mpz_class& b, long p) {
    mpz_class tmp;
    long t = -1;
    if (a != 0) {
        mp_bitcnt_t va = mpz_remove(tmp.get_mpz_t(), a.get_mpz_t(), mpz_class(p).get_mpz_t());
        t = 2 * static_cast<long>(va);
    }
    if (b != 0) {
        mp_bitcnt_t vb = mpz_remove(tmp.get_mpz_t(), b.get_mpz_t(), mpz_class(p).get_mpz_t());
        long tb = 2 * static_cast<long>(vb) + 1;
        if (t < 0 || tb < t) t = tb;
    }
    return t;
}

}  // namespace

Scalar Scalar::inexact_zero(CtxPtr ctx, long bound) {
    Scalar s;
    s.kind_ = Kind::InexactZero;
    s.exact_ = false;
    s.k_ = bound;
    s.ctx_ = std::move(ctx);
    return s;
}

Scalar Scalar::zero(CtxPtr ctx) {
    Scalar s;
    s.ctx_ = std::move(ctx);
    return s;
}

Scalar Scalar::one(const CtxPtr& ctx) { return p_power(ctx, HalfInt::whole(0)); }

Scalar Scalar::p_power(const CtxPtr& ctx, HalfInt e) {
    if (!ctx) throw std::invalid_argument("p_power: null context");
    if (e.infinite) throw std::invalid_argument("p_power: infinite exponent");
    Scalar s;
    s.kind_ = Kind::Value;
    s.exact_ = true;
    s.prec_ = ctx->digits();
    s.k_ = e.twice;
    s.a_ = 1;
    s.b_ = 0;
    s.ctx_ = ctx;
    return s;
}

Scalar Scalar::from_integer(const CtxPtr& ctx, const mpz_class& v) {
    if (!ctx) throw std::invalid_argument("from_integer: null context");
    if (v == 0) return zero(ctx);
    return normalize(ctx, v, mpz_class(0), 0, false, 0, true);
}

Scalar Scalar::from_integer(const CtxPtr& ctx, long v) { return from_integer(ctx, mpz_class(v)); }

Scalar Scalar::normalize(const CtxPtr& ctx, mpz_class pa, mpz_class pb, long align, bool bounded,
                         long horizon, bool exact_in) {
    if (pa == 0 && pb == 0) {
        if (exact_in) return zero(ctx);
        return inexact_zero(ctx, horizon);
    }
    long t = pair_pi_val(pa, pb, ctx->p());
    long k = align + t;
    if (bounded && k >= horizon) return inexact_zero(ctx, horizon);

    int n = ctx->digits();
    long prec = bounded ? std::min<long>(horizon - k, n) : n;

    // Extract the unit part: divide the pair by pi^t.
    mpz_class ua, ub;
    if (t % 2 == 0) {
        mpz_class f = ctx->p_pow_any(t / 2);
        ua = pa / f;
        ub = pb / f;
    } else {
        ua = pb / ctx->p_pow_any((t - 1) / 2);
        ub = pa / ctx->p_pow_any((t + 1) / 2);
    }

    Scalar s;
    s.kind_ = Kind::Value;
    s.prec_ = static_cast<int>(prec);
    s.k_ = k;
    s.ctx_ = ctx;
    const mpz_class& cap_a = ctx->p_pow(cap_a_digits(s.prec_));
    const mpz_class& cap_b = ctx->p_pow(cap_b_digits(s.prec_));
    // An exact value keeps its signed pair as long as it fits the digit
    // window; elements of Z[1/p][pi] then stay exact under +, -, *.
    if (exact_in && mpz_cmpabs(ua.get_mpz_t(), cap_a.get_mpz_t()) < 0 &&
        mpz_cmpabs(ub.get_mpz_t(), cap_b.get_mpz_t()) < 0) {
        s.a_ = std::move(ua);
        s.b_ = std::move(ub);
        s.exact_ = true;
        return s;
    }
    mpz_mod(s.a_.get_mpz_t(), ua.get_mpz_t(), cap_a.get_mpz_t());
    mpz_mod(s.b_.get_mpz_t(), ub.get_mpz_t(), cap_b.get_mpz_t());
    s.exact_ = false;
    return s;
}

long Scalar::pi_val() const {
    if (kind_ != Kind::Value) throw precision_error("valuation undetermined");
    return k_;
}

long Scalar::zero_bound() const {
    if (kind_ != Kind::InexactZero) throw std::logic_error("zero_bound: not an inexact zero");
    return k_;
}

Scalar Scalar::unit_part() const {
    if (kind_ != Kind::Value) throw std::invalid_argument("unit_part of zero");
    Scalar s = *this;
    s.k_ = 0;
    return s;
}

namespace {

// Shared core of addition and subtraction: exact pair arithmetic at the
// common alignment, then canonical truncation with horizon bookkeeping.
// Callers guarantee at least one operand is a value.
Scalar add_sub(const Scalar& x, const Scalar& y, bool negate_y) {
    CtxPtr ctx = harmonize(x.ctx(), y.ctx());

    long align = 0;
    bool have_align = false;
    if (x.is_value()) {
        align = x.pi_val();
        have_align = true;
    }
    if (y.is_value()) {
        long ky = y.pi_val();
        align = have_align ? std::min(align, ky) : ky;
        have_align = true;
    }

    mpz_class sa = 0, sb = 0;
    bool bounded = false;
    long horizon = 0;
    bool exact_in = true;
    auto accumulate = [&](const Scalar& s, bool neg) {
        if (s.is_exact_zero()) return;
        if (s.is_inexact_zero()) {
            exact_in = false;
            long h = s.zero_bound();
            horizon = bounded ? std::min(horizon, h) : h;
            bounded = true;
            return;
        }
        if (s.pi_val() - align > ctx->digits() + 2) {
            // Entirely beyond any representable window of the result: the
            // digits are dropped, which only costs exactness.
            exact_in = false;
            if (!s.exact()) {
                long h = s.pi_val() + s.precision();
                horizon = bounded ? std::min(horizon, h) : h;
                bounded = true;
            }
            return;
        }
        mpz_class a = s.unit_a(), b = s.unit_b();
        shift_pair(a, b, s.pi_val() - align, *ctx);
        if (neg) {
            sa -= a;
            sb -= b;
        } else {
            sa += a;
            sb += b;
        }
        if (!s.exact()) {
            exact_in = false;
            long h = s.pi_val() + s.precision();
            horizon = bounded ? std::min(horizon, h) : h;
            bounded = true;
        }
    };
    accumulate(x, false);
    accumulate(y, negate_y);
    return Scalar::normalize(ctx, std::move(sa), std::move(sb), align, bounded, horizon, exact_in);
}

}  // namespace

Scalar operator+(const Scalar& x, const Scalar& y) {
    CtxPtr ctx = harmonize(x.ctx(), y.ctx());
    if (x.is_zero_kind() && y.is_zero_kind()) {
        if (x.is_exact_zero() && y.is_exact_zero()) return Scalar::zero(ctx);
        long bound;
        if (x.is_exact_zero())
            bound = y.zero_bound();
        else if (y.is_exact_zero())
            bound = x.zero_bound();
        else
            bound = std::min(x.zero_bound(), y.zero_bound());
        return Scalar::inexact_zero(ctx, bound);
    }
    return add_sub(x, y, false);
}

Scalar operator-(const Scalar& x, const Scalar& y) {
    CtxPtr ctx = harmonize(x.ctx(), y.ctx());
    if (x.is_zero_kind() && y.is_zero_kind()) {
        if (x.is_exact_zero() && y.is_exact_zero()) return Scalar::zero(ctx);
        long bound;
        if (x.is_exact_zero())
            bound = y.zero_bound();
        else if (y.is_exact_zero())
            bound = x.zero_bound();
        else
            bound = std::min(x.zero_bound(), y.zero_bound());
        return Scalar::inexact_zero(ctx, bound);
    }
    return add_sub(x, y, true);
}

Scalar operator-(const Scalar& x) {
    if (x.is_zero_kind()) return x;
    mpz_class na = -x.unit_a(), nb = -x.unit_b();
    return Scalar::normalize(x.ctx(), std::move(na), std::move(nb), x.pi_val(), !x.exact(),
                             x.pi_val() + x.precision(), x.exact());
}

Scalar operator*(const Scalar& x, const Scalar& y) {
    CtxPtr ctx = harmonize(x.ctx(), y.ctx());
    if (x.is_exact_zero() || y.is_exact_zero()) return Scalar::zero(ctx);
    if (x.is_inexact_zero() || y.is_inexact_zero()) {
        long bx = x.is_inexact_zero() ? x.zero_bound() : x.pi_val();
        long by = y.is_inexact_zero() ? y.zero_bound() : y.pi_val();
        return Scalar::inexact_zero(ctx, bx + by);
    }
    long k = x.pi_val() + y.pi_val();
    bool bounded = !(x.exact() && y.exact());
    long rel = std::min(x.exact() ? ctx->digits() : x.precision(),
                        y.exact() ? ctx->digits() : y.precision());
    mpz_class pa = x.unit_a() * y.unit_a() + ctx->p() * x.unit_b() * y.unit_b();
    mpz_class pb = x.unit_a() * y.unit_b() + x.unit_b() * y.unit_a();
    return Scalar::normalize(ctx, std::move(pa), std::move(pb), k, bounded, k + rel,
                             x.exact() && y.exact());
}

Scalar inverse(const Scalar& x) {
    if (x.is_exact_zero()) throw std::invalid_argument("inverse: non-invertible (zero)");
    if (x.is_inexact_zero()) throw precision_error("non-invertible at this precision");
    const CtxPtr& ctx = x.ctx();
    int half = ctx->digits() / 2;
    const mpz_class& m = ctx->p_pow(half);

    mpz_class d = x.unit_a() * x.unit_a() - ctx->p() * x.unit_b() * x.unit_b();
    mpz_mod(d.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::logic_error("inverse: unit part not invertible");

    int prec = x.exact() ? ctx->digits() : x.precision();
    mpz_class na = (x.unit_a() * dinv) % m;
    mpz_class nb = (-(x.unit_b() * dinv)) % m;

    // Inverses of pi-power monomials (unit part +-1) are again exact.
    bool monomial = x.exact() && x.unit_b() == 0 &&
                    (x.unit_a() == 1 || x.unit_a() == -1);
    return Scalar::normalize(ctx, std::move(na), std::move(nb), -x.pi_val(), !monomial,
                             -x.pi_val() + prec, monomial);
}

Scalar operator/(const Scalar& x, const Scalar& y) { return x * inverse(y); }

Scalar pow(const Scalar& x, long e) {
    const CtxPtr& ctx = x.ctx();
    if (!ctx) throw std::invalid_argument("pow: context-free zero");
    if (e == 0) return Scalar::one(ctx);
    if (e < 0) return pow(inverse(x), -e);
    Scalar acc = Scalar::one(ctx);
    Scalar base = x;
    unsigned long n = static_cast<unsigned long>(e);
    while (n > 0) {
        if (n & 1UL) acc = acc * base;
        n >>= 1UL;
        if (n > 0) base = base * base;
    }
    return acc;
}

HalfInt valuation(const Scalar& x) {
    if (x.is_exact_zero()) return HalfInt::infinity();
    if (x.is_inexact_zero()) throw precision_error("valuation undetermined");
    return HalfInt::make_twice(x.pi_val());
}

Cmp compare_at_precision(const Scalar& x, const Scalar& y) {
    Scalar d = x - y;
    switch (d.kind()) {
        case Scalar::Kind::ExactZero: return Cmp::Equal;
        case Scalar::Kind::InexactZero: return Cmp::Indistinguishable;
        default: return Cmp::Distinct;
    }
}

bool congruent_mod_pi(const Scalar& x, const Scalar& y, long m) {
    Scalar d = x - y;
    if (d.is_exact_zero()) return true;
    if (d.is_inexact_zero()) return d.zero_bound() >= m;
    return d.pi_val() >= m;
}

bool equal_at_precision(const Scalar& x, const Scalar& y) {
    return compare_at_precision(x, y) != Cmp::Distinct;
}

std::string to_string(const Scalar& x) {
    if (x.is_exact_zero()) return "0";
    if (x.is_inexact_zero())
        throw precision_error("cannot serialize a value indistinguishable from zero");
    const CtxPtr& ctx = x.ctx();
    if (ctx->p() > 31) throw parse_error("canonical text format requires p <= 31");

    std::vector<int> digits(static_cast<size_t>(x.precision()), 0);
    mpz_class a = x.unit_a(), b = x.unit_b(), r;
    // Exact values may hold signed pairs; the text form is the canonical
    // nonnegative digit window.
    mpz_mod(a.get_mpz_t(), a.get_mpz_t(), ctx->p_pow(cap_a_digits(x.precision())).get_mpz_t());
    mpz_mod(b.get_mpz_t(), b.get_mpz_t(), ctx->p_pow(cap_b_digits(x.precision())).get_mpz_t());
    mpz_class p(ctx->p());
    for (size_t i = 0; i < digits.size(); ++i) {
        mpz_class& src = (i % 2 == 0) ? a : b;
        mpz_tdiv_qr(src.get_mpz_t(), r.get_mpz_t(), src.get_mpz_t(), p.get_mpz_t());
        digits[i] = static_cast<int>(r.get_si());
    }
    size_t len = digits.size();
    while (len > 1 && digits[len - 1] == 0) --len;

    std::string out;
    out.reserve(len + 8);
    for (size_t i = 0; i < len; ++i) out.push_back(digit_char(digits[i]));
    out += "*pi^";
    out += std::to_string(x.pi_val());
    return out;
}

Scalar parse_scalar(const CtxPtr& ctx, const std::string& text) {
    if (!ctx) throw std::invalid_argument("parse_scalar: null context");
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s == "0") return Scalar::zero(ctx);

    size_t sep = s.find("*pi^");
    if (sep == std::string::npos || sep == 0)
        throw parse_error("scalar '" + text + "': expected '<digits>*pi^<k>' or '0'");
    std::string digits = s.substr(0, sep);
    std::string expo = s.substr(sep + 4);
    if (expo.empty()) throw parse_error("scalar '" + text + "': missing pi exponent");

    long k = 0;
    try {
        size_t used = 0;
        k = std::stol(expo, &used);
        if (used != expo.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw parse_error("scalar '" + text + "': bad pi exponent '" + expo + "'");
    }

    if (static_cast<int>(digits.size()) > ctx->digits())
        throw parse_error("scalar '" + text + "': more digits than the precision cap");
    mpz_class a = 0, b = 0;
    for (size_t i = digits.size(); i-- > 0;) {
        int v = digit_value(digits[i]);
        if (v < 0 || v >= ctx->p())
            throw parse_error("scalar '" + text + "': digit out of range for base " +
                              std::to_string(ctx->p()));
        if (i % 2 == 0)
            a = a * ctx->p() + v;
        else
            b = b * ctx->p() + v;
    }
    if (a % ctx->p() == 0)
        throw parse_error("scalar '" + text + "': unit part must not be divisible by p");

    Scalar r = Scalar::normalize(ctx, std::move(a), std::move(b), k, false, 0, true);
    return r;
}

HalfInt parse_half_int(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    try {
        size_t slash = s.find('/');
        if (slash == std::string::npos) {
            size_t used = 0;
            long v = std::stol(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return HalfInt::whole(v);
        }
        size_t used = 0;
        long num = std::stol(s.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("");
        std::string den = s.substr(slash + 1);
        if (den == "1") return HalfInt::whole(num);
        if (den != "2") throw std::invalid_argument("");
        return HalfInt::make_twice(num);
    } catch (const std::exception&) {
        throw parse_error("'" + text + "': expected an integer or a fraction with denominator 2");
    }
}

}  // namespace endo
