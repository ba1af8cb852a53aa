#pragma once

#include <cstddef>
#include <vector>

#include "logopt/model.hpp"

namespace logopt {

/// Polynomial in the resource fraction m0, coefficients ascending.
class MPoly {
 public:
  MPoly() = default;
  MPoly(double constant) : c_{constant} {}  // NOLINT: scalars promote
  explicit MPoly(std::vector<double> coefficients) : c_(std::move(coefficients)) {}

  static MPoly m0() { return MPoly(std::vector<double>{0.0, 1.0}); }

  const std::vector<double>& coefficients() const noexcept { return c_; }
  double coefficient(std::size_t n) const noexcept { return n < c_.size() ? c_[n] : 0.0; }
  double operator()(double m0) const;
  MPoly derivative() const;
  /// Exact division by m0; the constant term must vanish up to rounding.
  MPoly divide_by_m0() const;
  double nu() const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator/=(double s);

 private:
  std::vector<double> c_;
};

MPoly operator+(MPoly a, const MPoly& b);
MPoly operator-(MPoly a, const MPoly& b);
MPoly operator-(MPoly a);
MPoly operator*(const MPoly& a, const MPoly& b);
MPoly operator/(MPoly a, double s);

/// Function on (0, 1) with one breakpoint at m0. The left piece is a
/// polynomial in x, the right piece a polynomial in u = x - 1, so that
/// conditions at x = 1 read off the constant and linear coefficients.
template <class T>
struct BasicPiecewisePoly {
  T breakpoint{};
  std::vector<T> left;
  std::vector<T> right;
};

using PiecewisePoly = BasicPiecewisePoly<double>;

PiecewisePoly constant_piecewise(double breakpoint, double left, double right);
double evaluate(const PiecewisePoly& p, double x);
/// Left piece evaluated at x, or right piece at x; both are extended past
/// the breakpoint as polynomials.
double evaluate_left(const PiecewisePoly& p, double x);
double evaluate_right(const PiecewisePoly& p, double x);
PiecewisePoly add(const PiecewisePoly& a, const PiecewisePoly& b);
PiecewisePoly multiply(const PiecewisePoly& a, const PiecewisePoly& b);
PiecewisePoly scale(const PiecewisePoly& a, double s);
PiecewisePoly derivative(const PiecewisePoly& a);
/// Left piece vanishes at 0, right piece vanishes at 1.
PiecewisePoly antiderivative(const PiecewisePoly& a);
/// Integral over (0, 1).
double integral(const PiecewisePoly& a);
/// Integral over (0, m0).
double integral_left(const PiecewisePoly& a);
/// Right piece rewritten as a polynomial in x.
std::vector<double> right_in_x(const PiecewisePoly& a);
/// max over pieces of the sum of absolute x-coefficients.
double nu(const PiecewisePoly& a);

/// Expansion theta = m0 + sum eta_k / mu^k for m = chi_(0, m0) on (0, 1).
struct SeriesState {
  double m0 = 0.0;
  int K = 0;
  std::vector<PiecewisePoly> zeta;  ///< zeta_1 .. zeta_K
  std::vector<PiecewisePoly> eta;   ///< eta_k = zeta_k + beta_k
  std::vector<double> beta;
  std::vector<double> integrals;    ///< integral of eta_k over (0, 1)
  /// Same recursion with m0 symbolic: integral of eta_k as a polynomial in
  /// m0 and the bivariate coefficient norm of eta_k.
  std::vector<MPoly> integral_poly;
  std::vector<double> nu_bivariate;
};

constexpr int kSeriesDefaultOrder = 8;
constexpr int kSeriesMaxOrder = 12;

/// Requires 0 < m0 < 1 and 1 <= K <= 12.
SeriesState eta_k_compute(double m0, int K);

struct SeriesValue {
  double value = 0.0;
  double tail_estimate = 0.0;  ///< geometric from the last two terms; inf when they grow
  bool guaranteed = false;     ///< m0 < mu / 200
};

/// K = 0 gives m0.
SeriesValue F_series(double m0, double mu, int K);
SeriesValue F_series(const SeriesState& s, double mu);

struct SeriesPartials {
  double dF_dm0 = 0.0;
  double dF_dmu = 0.0;
};

/// Term-wise derivatives of the order-K partial sum.
SeriesPartials F_partials_series(double m0, double mu, int K = kSeriesDefaultOrder);
SeriesPartials F_partials_series(const SeriesState& s, double mu);

struct CoefficientDiagnostics {
  std::vector<double> nu_values;       ///< nu(eta_k) at the given m0
  std::vector<double> nu_bivariate;    ///< nu(eta_k) as a polynomial in (x, m0)
  std::vector<double> coefficient_sums;  ///< sum_n |a_{k,n}|
  std::vector<double> alpha_bound;
  std::vector<double> gamma_bound;
  std::vector<int> flagged;            ///< k with sum_n |a_{k,n}| > 3 gamma(k)
  double radius_estimate = 0.0;        ///< in 1/mu
};

CoefficientDiagnostics coefficient_diagnostics(const SeriesState& s, double C0 = 1.0,
                                               double C1 = 1.0);

struct SeriesInvariants {
  double max_neumann = 0.0;      ///< |zeta_k'| at 0 and 1
  double max_mean = 0.0;         ///< |integral of zeta_k|
  double max_continuity = 0.0;   ///< relative jump of zeta_k at m0
  double max_derivative_jump = 0.0;  ///< relative jump of zeta_k' at m0
  double max_solvability = 0.0;  ///< order-k coefficient of integral S(m - S)
  double max_low_order = 0.0;    ///< |a_{k,n}| for n <= k relative to nu
  /// sup |mu S_K'' + S_K (m - S_K)| on a fine sample, K = 0 .. s.K.
  std::vector<double> residuals;
};

SeriesInvariants series_invariants(const SeriesState& s, double mu);

nlohmann::json to_json(const SeriesState& s, double mu, double F_direct);

}  // namespace logopt
