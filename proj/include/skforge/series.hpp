#pragma once

#include <array>
#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <span>
#include <vector>

#include "skforge/word.hpp"

namespace skforge {

using Rational = boost::multiprecision::mpq_rational;

/// Exact Gaussian rational: re + im*i with arbitrary-precision rational parts.
struct GaussRational {
    Rational re, im;

    GaussRational() : re(0), im(0) {}
    GaussRational(Rational r) : re(std::move(r)), im(0) {}
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRational conjugate() const { return {re, -im}; }

    GaussRational operator+(const GaussRational& o) const {
        return {re + o.re, im + o.im};
    }
    GaussRational operator-(const GaussRational& o) const {
        return {re - o.re, im - o.im};
    }
    GaussRational operator-() const { return {-re, -im}; }
    GaussRational operator*(const GaussRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool operator==(const GaussRational& o) const {
        return re == o.re && im == o.im;
    }
};

struct RationalMat2 {
    GaussRational m00, m01, m10, m11;

    static RationalMat2 zero() { return {}; }
    static RationalMat2 identity();
    /// i X / 2, i Y / 2, i Z / 2 in the Pauli basis.
    static RationalMat2 ix_half();
    static RationalMat2 iy_half();
    static RationalMat2 iz_half();

    bool is_zero() const {
        return m00.is_zero() && m01.is_zero() && m10.is_zero() && m11.is_zero();
    }
    RationalMat2 operator+(const RationalMat2& o) const;
    RationalMat2 operator-(const RationalMat2& o) const;
    RationalMat2 operator*(const RationalMat2& o) const;
    RationalMat2 scaled(const GaussRational& s) const;
    /// Conjugate-transpose.
    RationalMat2 adjoint() const;
    bool operator==(const RationalMat2& o) const = default;
};

/// Exact unit quaternion with rational coordinates (a,b,c,d)/r, used as a
/// conjugator that keeps series coefficients inside the Gaussian rationals.
struct RationalQuat {
    long a, b, c, d, r;
    RationalMat2 matrix() const;
    RationalMat2 inverse_matrix() const;
};

/// Built-in conjugator pool (Pythagorean-quadruple quaternions).
std::span<const RationalQuat> rational_conjugators();

/// Formal power series in eps, truncated at a fixed order, with exact
/// Gaussian-rational coefficients. Multiplication is exact below truncation.
class TruncatedSeries {
  public:
    TruncatedSeries() = default;
    explicit TruncatedSeries(int order) : c_(order + 1) {}

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const GaussRational& operator[](int k) const { return c_[k]; }
    GaussRational& operator[](int k) { return c_[k]; }

    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    bool is_zero() const;

  private:
    std::vector<GaussRational> c_;
};

/// 2x2 matrix of truncated series; elements of G[[eps]]_0 have constant
/// term equal to the identity matrix.
class SeriesMatrix {
  public:
    SeriesMatrix() = default;
    explicit SeriesMatrix(int order);
    static SeriesMatrix identity(int order);

    int order() const { return e_[0].order(); }
    const TruncatedSeries& entry(int i, int j) const { return e_[2 * i + j]; }
    TruncatedSeries& entry(int i, int j) { return e_[2 * i + j]; }

    RationalMat2 coefficient(int k) const;
    void set_coefficient(int k, const RationalMat2& m);

    bool constant_term_is_identity() const;

    SeriesMatrix operator*(const SeriesMatrix& o) const;
    /// Neumann-series inverse (I + S)^-1 = sum (-S)^k; requires the constant
    /// term to be the identity.
    SeriesMatrix inverse() const;
    /// u M u^-1 for a constant conjugator.
    SeriesMatrix conjugated(const RationalQuat& u) const;
    TruncatedSeries determinant() const;
    /// Coefficient-wise adjoint (conjugate coefficients, transpose).
    SeriesMatrix adjoint() const;

  private:
    std::array<TruncatedSeries, 4> e_;
};

/// sum_{k<=N} (eps x)^k / k!; the constant term is the identity.
SeriesMatrix series_exp(const RationalMat2& x, int order);

/// Product of series matrices following the word; inverse letters use the
/// Neumann inverse of the assigned series (computed once per generator).
SeriesMatrix eval_word_series(const Word& w,
                              std::span<const SeriesMatrix> assignment);

/// Smallest k >= 1 with a nonzero degree-k coefficient of eval(w) - I;
/// nullopt means every coefficient up to the truncation order vanished
/// (the truncation was too small, not a property of the word).
std::optional<int> leading_degree(const Word& w,
                                  std::span<const SeriesMatrix> assignment);

struct LeadingTerm {
    std::optional<int> degree;
    RationalMat2 coefficient;  // valid when degree is set
};
LeadingTerm leading_term(const Word& w,
                         std::span<const SeriesMatrix> assignment);

/// Checks the Fibonacci cancellation degree of omega_n at the Pauli inputs
/// g = exp(eps iZ/2), h = exp(eps iY/2), truncation f_n + 2.
struct NilFibReport {
    int n = 0;
    std::int64_t fib = 0;
    std::optional<int> degree;
    char pauli = '?';  // expected axis by n mod 3: Z, Y, X
    int sign = 0;      // observed sign of the leading coefficient, 0 = mismatch
    bool pass = false;
};
NilFibReport verify_nilfib(int n);

/// Evaluates w at conjugate series inputs x, x^{u_1}, ... for several exact
/// rational conjugators and returns the minimum observed leading degree: an
/// upper-bound witness for ccan_SU(2)(w). nullopt = above truncation for all
/// sampled inputs.
std::optional<int> ccan_witness(const Word& w, int trials, int order);

}  // namespace skforge
