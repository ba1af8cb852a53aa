#include "logopt/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <type_traits>

namespace logopt {

// ---- MPoly ----

double MPoly::operator()(double m0) const {
  double v = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * m0 + *it;
  return v;
}

MPoly MPoly::derivative() const {
  std::vector<double> d;
  for (std::size_t n = 1; n < c_.size(); ++n) d.push_back(c_[n] * static_cast<double>(n));
  return MPoly(std::move(d));
}

MPoly MPoly::divide_by_m0() const {
  if (c_.size() <= 1) return MPoly();
  return MPoly(std::vector<double>(c_.begin() + 1, c_.end()));
}

double MPoly::nu() const {
  double s = 0.0;
  for (double v : c_) s += std::fabs(v);
  return s;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  return *this;
}

MPoly& MPoly::operator/=(double s) {
  for (double& v : c_) v /= s;
  return *this;
}

MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
MPoly operator-(MPoly a) { return a *= MPoly(-1.0); }
MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r = a;
  return r *= b;
}
MPoly operator/(MPoly a, double s) { return a /= s; }

namespace {

// ---- coefficient arrays, generic in the scalar ----

template <class T>
using Coeffs = std::vector<T>;

// Neumaier summation for doubles, plain for polynomial scalars.
template <class T>
class Accumulator {
 public:
  void add(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
      const double t = sum_ + v;
      if (std::fabs(sum_) >= std::fabs(v))
        comp_ += (sum_ - t) + v;
      else
        comp_ += (v - t) + sum_;
      sum_ = t;
    } else {
      sum_ += v;
    }
  }
  T value() const {
    if constexpr (std::is_same_v<T, double>)
      return sum_ + comp_;
    else
      return sum_;
  }

 private:
  T sum_{};
  double comp_ = 0.0;
};

template <class T>
Coeffs<T> padd(const Coeffs<T>& a, const Coeffs<T>& b) {
  Coeffs<T> r(std::max(a.size(), b.size()), T(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

template <class T>
Coeffs<T> pmul(const Coeffs<T>& a, const Coeffs<T>& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs<T> r(a.size() + b.size() - 1);
  for (std::size_t n = 0; n < r.size(); ++n) {
    Accumulator<T> acc;
    const std::size_t lo = n >= b.size() ? n - b.size() + 1 : 0;
    const std::size_t hi = std::min(n, a.size() - 1);
    for (std::size_t i = lo; i <= hi; ++i) acc.add(a[i] * b[n - i]);
    r[n] = acc.value();
  }
  return r;
}

template <class T>
Coeffs<T> pscale(const Coeffs<T>& a, const T& s) {
  Coeffs<T> r;
  r.reserve(a.size());
  for (const T& v : a) r.push_back(v * s);
  return r;
}

template <class T>
Coeffs<T> pantiderivative(const Coeffs<T>& a) {
  Coeffs<T> r;
  r.reserve(a.size() + 1);
  r.push_back(T(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] / static_cast<double>(i + 1));
  return r;
}

template <class T>
Coeffs<T> pderivative(const Coeffs<T>& a) {
  Coeffs<T> r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<double>(i));
  return r;
}

template <class T>
T peval(const Coeffs<T>& a, const T& x) {
  T v(0.0);
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * x + *it;
  return v;
}

// Coefficients in x of p(x - 1).
template <class T>
Coeffs<T> shift_to_x(const Coeffs<T>& p) {
  Coeffs<T> r(p.size(), T(0.0));
  for (std::size_t n = 0; n < p.size(); ++n) {
    double binom = 1.0;  // C(n, i)
    for (std::size_t i = 0; i <= n; ++i) {
      const double sign = (n - i) % 2 == 0 ? 1.0 : -1.0;
      r[i] += p[n] * (sign * binom);
      binom = binom * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
  }
  return r;
}

template <class T>
using PP = BasicPiecewisePoly<T>;

template <class T>
PP<T> pp_add(const PP<T>& a, const PP<T>& b) {
  return {a.breakpoint, padd(a.left, b.left), padd(a.right, b.right)};
}

template <class T>
PP<T> pp_mul(const PP<T>& a, const PP<T>& b) {
  return {a.breakpoint, pmul(a.left, b.left), pmul(a.right, b.right)};
}

template <class T>
PP<T> pp_anti(const PP<T>& a) {
  return {a.breakpoint, pantiderivative(a.left), pantiderivative(a.right)};
}

template <class T>
T pp_integral(const PP<T>& a) {
  const T u = a.breakpoint - T(1.0);
  return peval(pantiderivative(a.left), a.breakpoint) - peval(pantiderivative(a.right), u);
}

template <class T>
T pp_integral_left(const PP<T>& a) {
  return peval(pantiderivative(a.left), a.breakpoint);
}

template <class T>
double coeff_nu(const Coeffs<T>& a) {
  double s = 0.0;
  for (const T& v : a) {
    if constexpr (std::is_same_v<T, double>)
      s += std::fabs(v);
    else
      s += v.nu();
  }
  return s;
}

template <class T>
double pp_nu(const PP<T>& a) {
  return std::max(coeff_nu(a.left), coeff_nu(shift_to_x(a.right)));
}

template <class T>
T div_m0(const T& v, const T& m0) {
  if constexpr (std::is_same_v<T, double>)
    return v / m0;
  else
    return v.divide_by_m0();
}

// zeta'' = g with zeta'(0) = zeta'(1) = 0, zero mean and continuity at m0.
template <class T>
PP<T> solve_neumann(const PP<T>& g) {
  const T m0 = g.breakpoint;
  const T u = m0 - T(1.0);
  const PP<T> H = pp_anti(pp_anti(g));
  const T delta = peval(H.left, m0) - peval(H.right, u);
  const T IL = peval(pantiderivative(H.left), m0);
  const T IR = T(0.0) - peval(pantiderivative(H.right), u);
  const T cL = T(0.0) - (IL + IR) - delta * (T(1.0) - m0);
  const T cR = cL + delta;
  PP<T> z = H;
  z.left[0] += cL;
  z.right[0] += cR;
  return z;
}

template <class T>
struct Recursion {
  std::vector<PP<T>> zeta;
  std::vector<PP<T>> eta;
  std::vector<T> beta;
};

template <class T>
Recursion<T> run_recursion(const T& m0, int K) {
  Recursion<T> r;
  const T one(1.0), two(2.0);
  for (int k = 1; k <= K; ++k) {
    PP<T> g{m0, {}, {}};
    // sum_{l=1}^{k-1} eta_l eta_{k-l}
    PP<T> prod{m0, {}, {}};
    for (int l = 1; l < k; ++l)
      prod = pp_add(prod, pp_mul(r.eta[l - 1], r.eta[k - l - 1]));
    if (k == 1) {
      g.left = {T(0.0) - m0 * (one - m0)};
      g.right = {m0 * m0};
    } else {
      PP<T> prev_prod{m0, {}, {}};
      for (int l = 1; l < k - 1; ++l)
        prev_prod = pp_add(prev_prod, pp_mul(r.eta[l - 1], r.eta[k - 1 - l - 1]));
      const PP<T>& e = r.eta[k - 2];
      g.left = pscale(e.left, T(0.0) - (one - two * m0));
      g.right = pscale(e.right, two * m0);
      g = pp_add(g, prev_prod);
    }
    PP<T> z = solve_neumann(g);
    const T b = div_m0(pp_integral_left(z) - pp_integral(prod), m0);
    PP<T> e = z;
    e.left[0] += b;
    e.right[0] += b;
    r.zeta.push_back(std::move(z));
    r.eta.push_back(std::move(e));
    r.beta.push_back(b);
  }
  return r;
}

void require_same_breakpoint(const PiecewisePoly& a, const PiecewisePoly& b) {
  if (a.breakpoint != b.breakpoint) {
    std::ostringstream os;
    os << "breakpoints differ: " << a.breakpoint << " vs " << b.breakpoint;
    throw Error(ErrorCode::BreakpointMismatch, os.str());
  }
}

}  // namespace

// ---- PiecewisePoly ----

PiecewisePoly constant_piecewise(double breakpoint, double left, double right) {
  return {breakpoint, {left}, {right}};
}

double evaluate_left(const PiecewisePoly& p, double x) { return peval(p.left, x); }
double evaluate_right(const PiecewisePoly& p, double x) { return peval(p.right, x - 1.0); }

double evaluate(const PiecewisePoly& p, double x) {
  return x < p.breakpoint ? evaluate_left(p, x) : evaluate_right(p, x);
}

PiecewisePoly add(const PiecewisePoly& a, const PiecewisePoly& b) {
  require_same_breakpoint(a, b);
  return pp_add(a, b);
}

PiecewisePoly multiply(const PiecewisePoly& a, const PiecewisePoly& b) {
  require_same_breakpoint(a, b);
  return pp_mul(a, b);
}

PiecewisePoly scale(const PiecewisePoly& a, double s) {
  return {a.breakpoint, pscale(a.left, s), pscale(a.right, s)};
}

PiecewisePoly derivative(const PiecewisePoly& a) {
  return {a.breakpoint, pderivative(a.left), pderivative(a.right)};
}

PiecewisePoly antiderivative(const PiecewisePoly& a) { return pp_anti(a); }
double integral(const PiecewisePoly& a) { return pp_integral(a); }
double integral_left(const PiecewisePoly& a) { return pp_integral_left(a); }
std::vector<double> right_in_x(const PiecewisePoly& a) { return shift_to_x(a.right); }
double nu(const PiecewisePoly& a) { return pp_nu(a); }

// ---- series ----

SeriesState eta_k_compute(double m0, int K) {
  if (!(m0 > 0.0) || !(m0 < 1.0))
    throw Error(ErrorCode::InvalidParams, "series needs 0 < m0 < 1");
  if (K < 1 || K > kSeriesMaxOrder)
    throw Error(ErrorCode::InvalidParams, "series order must be in [1, 12]");
  const Recursion<double> num = run_recursion<double>(m0, K);
  const Recursion<MPoly> sym = run_recursion<MPoly>(MPoly::m0(), K);

  SeriesState s;
  s.m0 = m0;
  s.K = K;
  s.zeta = num.zeta;
  s.eta = num.eta;
  s.beta = num.beta;
  for (int k = 0; k < K; ++k) {
    s.integrals.push_back(pp_integral(num.eta[k]));
    s.integral_poly.push_back(pp_integral(sym.eta[k]));
    s.nu_bivariate.push_back(pp_nu(sym.eta[k]));
  }
  return s;
}

SeriesValue F_series(const SeriesState& s, double mu) {
  if (!(mu > 0.0)) throw Error(ErrorCode::NonpositiveMu, "mu must be positive");
  SeriesValue out;
  out.guaranteed = s.m0 < mu / 200.0;
  Accumulator<double> acc;
  acc.add(s.m0);
  std::vector<double> terms;
  for (int k = 1; k <= s.K; ++k) {
    terms.push_back(s.integrals[k - 1] / std::pow(mu, k));
    acc.add(terms.back());
  }
  out.value = acc.value();
  out.tail_estimate = std::numeric_limits<double>::infinity();
  if (terms.size() >= 2 && terms[terms.size() - 2] != 0.0) {
    const double r = std::fabs(terms.back() / terms[terms.size() - 2]);
    if (r < 1.0) out.tail_estimate = std::fabs(terms.back()) * r / (1.0 - r);
  }
  return out;
}

SeriesValue F_series(double m0, double mu, int K) {
  if (K == 0) {
    if (!(mu > 0.0)) throw Error(ErrorCode::NonpositiveMu, "mu must be positive");
    if (!(m0 > 0.0) || !(m0 < 1.0))
      throw Error(ErrorCode::InvalidParams, "series needs 0 < m0 < 1");
    return {m0, std::numeric_limits<double>::infinity(), m0 < mu / 200.0};
  }
  return F_series(eta_k_compute(m0, K), mu);
}

SeriesPartials F_partials_series(const SeriesState& s, double mu) {
  if (!(mu > 0.0)) throw Error(ErrorCode::NonpositiveMu, "mu must be positive");
  Accumulator<double> dm0, dmu;
  dm0.add(1.0);
  for (int k = 1; k <= s.K; ++k) {
    const double pk = std::pow(mu, k);
    dm0.add(s.integral_poly[k - 1].derivative()(s.m0) / pk);
    dmu.add(-k * s.integrals[k - 1] / (pk * mu));
  }
  return {dm0.value(), dmu.value()};
}

SeriesPartials F_partials_series(double m0, double mu, int K) {
  return F_partials_series(eta_k_compute(m0, K), mu);
}

CoefficientDiagnostics coefficient_diagnostics(const SeriesState& s, double C0, double C1) {
  CoefficientDiagnostics d;
  const int K = s.K;
  for (int k = 0; k < K; ++k) {
    d.nu_values.push_back(nu(s.eta[k]));
    d.nu_bivariate.push_back(s.nu_bivariate[k]);
    d.coefficient_sums.push_back(s.integral_poly[k].nu());
  }
  d.alpha_bound.push_back(C0 * s.m0 * s.m0);
  d.gamma_bound.push_back(s.nu_bivariate.empty() ? 0.0 : s.nu_bivariate[0]);
  for (int k = 1; k < K; ++k) {
    double a = 0.0, g = 0.0;
    for (int l = 1; l <= k; ++l) a += d.alpha_bound[l - 1] * d.alpha_bound[k - l];
    for (int l = 1; l <= k - 1; ++l) g += d.gamma_bound[l - 1] * d.gamma_bound[k - l - 1];
    d.alpha_bound.push_back(C1 / s.m0 * a);
    d.gamma_bound.push_back(144.0 * d.gamma_bound[k - 1] + 50.0 * g);
  }
  for (int k = 1; k <= K; ++k)
    if (d.coefficient_sums[k - 1] > 3.0 * d.gamma_bound[k - 1]) d.flagged.push_back(k);

  double root = 0.0;
  for (int k = std::max(1, (K + 1) / 2); k <= K; ++k)
    root = std::max(root, std::pow(std::fabs(s.integrals[k - 1]), 1.0 / k));
  d.radius_estimate = root > 0.0 ? 1.0 / root : std::numeric_limits<double>::infinity();
  return d;
}

SeriesInvariants series_invariants(const SeriesState& s, double mu) {
  SeriesInvariants inv;
  const double m0 = s.m0;
  for (int k = 0; k < s.K; ++k) {
    const PiecewisePoly& z = s.zeta[k];
    const PiecewisePoly dz = derivative(z);
    const double d0 = dz.left.empty() ? 0.0 : dz.left[0];
    const double d1 = dz.right.empty() ? 0.0 : dz.right[0];
    inv.max_neumann = std::max({inv.max_neumann, std::fabs(d0), std::fabs(d1)});
    inv.max_mean = std::max(inv.max_mean, std::fabs(integral(z)));
    const double zl = evaluate_left(z, m0), zr = evaluate_right(z, m0);
    const double zs = std::max({std::fabs(zl), std::fabs(zr), nu(z) * 1e-3});
    inv.max_continuity = std::max(inv.max_continuity, std::fabs(zl - zr) / zs);
    const double dl = evaluate_left(dz, m0), dr = evaluate_right(dz, m0);
    const double ds = std::max({std::fabs(dl), std::fabs(dr), nu(dz) * 1e-3});
    inv.max_derivative_jump = std::max(inv.max_derivative_jump, std::fabs(dl - dr) / ds);

    // order-(k+1) coefficient of the integral of theta (m - theta)
    const PiecewisePoly& e = s.eta[k];
    double c = integral_left(e) - 2.0 * m0 * integral(e);
    for (int l = 1; l <= k; ++l) c -= integral(multiply(s.eta[l - 1], s.eta[k - l]));
    inv.max_solvability = std::max(inv.max_solvability, std::fabs(c));

    const MPoly& a = s.integral_poly[k];
    const double scale_a = std::max(a.nu(), std::numeric_limits<double>::min());
    for (int n = 0; n <= k + 1; ++n)
      inv.max_low_order = std::max(inv.max_low_order, std::fabs(a.coefficient(n)) / scale_a);
  }

  // residual of the partial sums on a fine sample, both sides of m0
  std::vector<std::pair<double, bool>> xs;
  const int n = 2000;
  for (int i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) / n;
    if (x < m0) xs.emplace_back(x, true);
    if (x > m0) xs.emplace_back(x, false);
  }
  xs.emplace_back(m0, true);
  xs.emplace_back(m0, false);
  std::vector<PiecewisePoly> d2;
  for (const auto& z : s.zeta) d2.push_back(derivative(derivative(z)));
  for (int K = 0; K <= s.K; ++K) {
    double worst = 0.0;
    for (const auto& [x, left] : xs) {
      double S = m0, S2 = 0.0;
      for (int k = 1; k <= K; ++k) {
        const double w = std::pow(mu, -k);
        S += w * (left ? evaluate_left(s.eta[k - 1], x) : evaluate_right(s.eta[k - 1], x));
        S2 += w * (left ? evaluate_left(d2[k - 1], x) : evaluate_right(d2[k - 1], x));
      }
      const double m = left ? 1.0 : 0.0;
      worst = std::max(worst, std::fabs(mu * S2 + S * (m - S)));
    }
    inv.residuals.push_back(worst);
  }
  return inv;
}

nlohmann::json to_json(const SeriesState& s, double mu, double F_direct) {
  nlohmann::json per = nlohmann::json::array();
  for (int k = 1; k <= s.K; ++k)
    per.push_back({{"k", k}, {"integral_eta_k", s.integrals[k - 1]}, {"nu_eta_k", nu(s.eta[k - 1])}});
  return {{"m0", s.m0},
          {"mu", mu},
          {"K", s.K},
          {"F_series", F_series(s, mu).value},
          {"F_direct", F_direct},
          {"per_order", per}};
}

}  // namespace logopt
