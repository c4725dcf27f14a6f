#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "endo/rational.hpp"

namespace endo {

/// Thrown when a result cannot be certified at the working precision
/// (indeterminate valuation, uncertifiable rank, exhausted digits).
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown on malformed textual or JSON input.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class PrecisionCtx;
using CtxPtr = std::shared_ptr<const PrecisionCtx>;

/// Working precision for K = Q_p(pi), pi^2 = p.  The cap N counts pi-adic
/// digits, so each of the two Q_p components is held mod p^{N/2}.
class PrecisionCtx {
  public:
    static CtxPtr make(long p, int n_digits);

    long p() const { return p_; }
    int digits() const { return n_; }

    /// p^k, cached for 0 <= k <= N/2.
    const mpz_class& p_pow(int k) const;
    /// p^k for arbitrary k >= 0 (computed when beyond the cache).
    mpz_class p_pow_any(long k) const;

    friend bool same_ctx(const PrecisionCtx& a, const PrecisionCtx& b) {
        return a.p_ == b.p_ && a.n_ == b.n_;
    }

  private:
    PrecisionCtx(long p, int n);
    long p_;
    int n_;
    std::vector<mpz_class> pow_;
};

/// Immutable element of K = Q_p(pi) at capped precision.
///
/// A nonzero value is stored canonically as pi^k * (a + b*pi) with a a p-adic
/// unit; `prec` counts the pi-digits of the unit part that are actually known
/// (<= N), and `exact` records that the representative IS the value (no digits
/// were ever truncated), not merely an approximation mod pi^{k+prec}.
/// Subtraction therefore distinguishes three outcomes: provably equal
/// (exact zero), indistinguishable at the cap (inexact zero), and certified
/// distinct (a value with definite valuation).
class Scalar {
  public:
    enum class Kind : std::uint8_t { ExactZero, InexactZero, Value };

    /// Exact zero with no attached context; adopts a context on first use.
    Scalar() = default;

    static Scalar zero(CtxPtr ctx);
    /// Zero at cap with a certified lower bound on the pi-valuation.
    static Scalar inexact_zero(CtxPtr ctx, long bound);
    static Scalar one(const CtxPtr& ctx);
    static Scalar from_integer(const CtxPtr& ctx, const mpz_class& v);
    static Scalar from_integer(const CtxPtr& ctx, long v);
    /// pi^{2e}: the canonical monomial of valuation e.
    static Scalar p_power(const CtxPtr& ctx, HalfInt e);

    Kind kind() const { return kind_; }
    bool is_value() const { return kind_ == Kind::Value; }
    bool is_zero_kind() const { return kind_ != Kind::Value; }
    bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
    bool is_inexact_zero() const { return kind_ == Kind::InexactZero; }
    bool exact() const { return exact_; }

    /// pi-adic valuation as an integer exponent of pi; value kind only.
    long pi_val() const;
    /// For an inexact zero: certified lower bound on the pi-valuation.
    long zero_bound() const;
    /// Known pi-digits of the unit part.
    int precision() const { return prec_; }

    const CtxPtr& ctx() const { return ctx_; }
    const mpz_class& unit_a() const { return a_; }
    const mpz_class& unit_b() const { return b_; }

    /// Unit part as a Scalar of valuation 0 (canonical decomposition).
    Scalar unit_part() const;

    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x);

    /// Internal: canonicalize an exactly-computed pair (pa + pb*pi) * pi^align
    /// under a knowledge horizon (absolute pi-valuation bound, used when
    /// bounded).  exact_in marks whether the pair is the true value.
    static Scalar normalize(const CtxPtr& ctx, mpz_class pa, mpz_class pb, long align,
                            bool bounded, long horizon, bool exact_in);

  private:
    friend Scalar inverse(const Scalar& x);

    Kind kind_ = Kind::ExactZero;
    bool exact_ = true;
    int prec_ = 0;
    long k_ = 0;  // pi-valuation (Value) or valuation lower bound (InexactZero)
    mpz_class a_, b_;
    CtxPtr ctx_;
};

/// Multiplicative inverse.  Errors: exact zero -> invalid_argument; inexact
/// zero -> precision_error ("non-invertible at this precision").
Scalar inverse(const Scalar& x);
Scalar operator/(const Scalar& x, const Scalar& y);
/// Integer power with square-and-multiply; negative exponents via inverse.
Scalar pow(const Scalar& x, long e);

/// Valuation in (1/2)Z, +inf for exact zero; precision_error on inexact zero.
HalfInt valuation(const Scalar& x);

enum class Cmp { Equal, Indistinguishable, Distinct };

/// Trichotomy of x - y: provably equal / indistinguishable at cap / distinct.
Cmp compare_at_precision(const Scalar& x, const Scalar& y);
/// True when x - y vanishes at cap or has pi-valuation >= m.
bool congruent_mod_pi(const Scalar& x, const Scalar& y, long m);
/// True when x - y vanishes at the available precision.
bool equal_at_precision(const Scalar& x, const Scalar& y);

/// Canonical text form "<unit digits base p, little endian>*pi^<k>", "0" for
/// exact zero.  Digits use 0-9a-z, so p <= 31 is serializable.
std::string to_string(const Scalar& x);
Scalar parse_scalar(const CtxPtr& ctx, const std::string& text);

}  // namespace endo
