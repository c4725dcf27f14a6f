#pragma once

#include <string>
#include <utility>
#include <vector>

#include "endo/matrix.hpp"
#include "endo/scalar.hpp"

namespace endo {

/// Raised when an eigenvalue or polynomial root does not lie in Q_p(sqrt p).
struct outside_scalar_field : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Polynomial over K, constant term first.  Trailing exact zeros are
/// stripped; the zero polynomial has degree -1.
class SlopePoly {
  public:
    SlopePoly() = default;
    SlopePoly(CtxPtr ctx, std::vector<Scalar> coeffs);

    static SlopePoly one(const CtxPtr& ctx);
    static SlopePoly constant(const Scalar& c);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Coefficient of T^i; exact zero beyond the degree.
    const Scalar& coeff(int i) const;
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    const CtxPtr& ctx() const { return ctx_; }

    friend SlopePoly operator+(const SlopePoly& x, const SlopePoly& y);
    friend SlopePoly operator-(const SlopePoly& x, const SlopePoly& y);
    friend SlopePoly operator*(const SlopePoly& x, const SlopePoly& y);
    friend SlopePoly operator*(const Scalar& s, const SlopePoly& x);

  private:
    std::vector<Scalar> coeffs_;
    CtxPtr ctx_;
};

Scalar eval(const SlopePoly& p, const Scalar& x);
Matrix eval(const SlopePoly& p, const Matrix& x);
SlopePoly derivative(const SlopePoly& p);
/// Division with remainder by a divisor whose leading coefficient is a unit.
std::pair<SlopePoly, SlopePoly> divrem(const SlopePoly& num, const SlopePoly& den);

struct NewtonSegment {
    Rational slope;
    long length = 0;
};

struct NewtonPolygon {
    std::vector<NewtonSegment> segments;  // slopes strictly increasing
    long total_length() const;
    /// Total length of segments with slope <= nu.
    long length_at_most(HalfInt nu) const;
};

/// Lower convex hull of {(i, val c_i)}.  Requires P(0) != 0 and coefficient
/// valuations determinate (an inexact-zero coefficient is tolerated only when
/// its certified bound keeps it above the hull).
NewtonPolygon newton_polygon(const SlopePoly& p);

struct SlopeSplit {
    SlopePoly q;  // slope <= nu factor, q(0) = 1, deg = polygon length at nu
    SlopePoly r;  // slope  > nu factor, r(0) = 1
};

/// Factors P = Q*R across the Newton polygon cut at nu (Q keeps slopes <= nu),
/// by rescaling T to put the cut at slope zero and Hensel-lifting the
/// distinguished coprime pair.  Requires P(0) = 1.
SlopeSplit slope_factor(const SlopePoly& p, HalfInt nu);

/// T^{deg q} * q(1/T); requires q(0) != 0.
SlopePoly reciprocal(const SlopePoly& q);

/// det(T*I - a), monic of degree a.rows(), by fraction-free elimination over
/// K[T] (Bareiss; every pivot is a monic principal minor, so the exact
/// divisions are by unit leading coefficients).
SlopePoly char_poly(const Matrix& a);

struct RootMult {
    Scalar root;
    int multiplicity = 1;
};

/// Complete root list of p over K with multiplicities.  Throws
/// outside_scalar_field when some root does not lie in K, precision_error
/// when clusters cannot be separated at the cap.
std::vector<RootMult> roots_in_field(const SlopePoly& p);

/// Comma-separated canonical scalar tokens, constant term first.
std::string to_string(const SlopePoly& p);
SlopePoly parse_poly(const CtxPtr& ctx, const std::string& text);

}  // namespace endo
