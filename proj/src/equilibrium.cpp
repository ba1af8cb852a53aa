#include "logopt/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "logopt/format.hpp"

namespace logopt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxNewton = 100;
constexpr int kMaxHalvings = 30;

// Thomas algorithm for a tridiagonal system; sub[0] and sup[n-1] unused.
void solve_tridiagonal(const std::vector<double>& sub, std::vector<double> diag,
                       const std::vector<double>& sup, std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

void residual(const std::vector<double>& theta, const ReactionOperator& op, double mu, double h,
              std::vector<double>& out) {
  const std::size_t n = theta.size() - 1;
  const double k = mu / (h * h);
  out.resize(theta.size());
  out[0] = k * 2.0 * (theta[1] - theta[0]) + op.apply(theta, 0) - theta[0] * theta[0];
  for (std::size_t j = 1; j < n; ++j)
    out[j] = k * ((theta[j - 1] - theta[j]) + (theta[j + 1] - theta[j])) + op.apply(theta, j) -
             theta[j] * theta[j];
  out[n] = k * 2.0 * (theta[n - 1] - theta[n]) + op.apply(theta, n) - theta[n] * theta[n];
}

double inf_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double max_value(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

// Rounding floor of the residual: the second difference of values of size
// |theta| carries an absolute error of a few ulps, amplified by mu / h^2.
double residual_floor(const std::vector<double>& theta, double mu, double h) {
  return 16.0 * kEps * (4.0 * mu / (h * h)) * max_value(theta);
}

std::vector<double> centered_derivative(const std::vector<double>& theta, double h) {
  const std::size_t n = theta.size() - 1;
  std::vector<double> d(theta.size(), 0.0);
  for (std::size_t j = 1; j < n; ++j) d[j] = (theta[j + 1] - theta[j - 1]) / (2.0 * h);
  return d;
}

EquilibriumSolution make_solution(const Domain& d, std::vector<double> theta,
                                  std::vector<double> coef, ReactionOperator op, double mu,
                                  double res, int iters, bool converged) {
  const double h = d.length() / static_cast<double>(theta.size() - 1);
  auto dtheta = centered_derivative(theta, h);
  return EquilibriumSolution{GridFunction(d, std::move(theta)),
                             GridFunction(d, std::move(dtheta)),
                             std::move(coef),
                             std::move(op),
                             mu,
                             res,
                             iters,
                             converged};
}

struct NewtonOutcome {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
};

NewtonOutcome newton(std::vector<double>& theta, const ReactionOperator& op, double mu, double h,
                     double tol) {
  const std::size_t n = theta.size() - 1;
  const double k = mu / (h * h);
  std::vector<double> r, r_trial, trial(theta.size());
  std::vector<double> sub(n + 1), sup(n + 1), diag(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    sub[j] = (j == n ? 2.0 * k : k) + op.lower[j];
    sup[j] = (j == 0 ? 2.0 * k : k) + op.upper[j];
  }

  NewtonOutcome out;
  bool polished = false;
  residual(theta, op, mu, h, r);
  double rnorm = inf_norm(r);
  for (int it = 0; it <= kMaxNewton; ++it) {
    out.iterations = it;
    out.residual = rnorm;
    if (rnorm <= tol && (polished || rnorm == 0.0)) {
      out.converged = true;
      return out;
    }
    if (rnorm <= tol) polished = true;  // one more step toward rounding level
    if (it == kMaxNewton) break;
    for (std::size_t j = 0; j <= n; ++j) diag[j] = -2.0 * k + op.diag[j] - 2.0 * theta[j];
    std::vector<double> step(r.size());
    for (std::size_t j = 0; j <= n; ++j) step[j] = -r[j];
    solve_tridiagonal(sub, diag, sup, step);

    if (inf_norm(step) <= 4.0 * kEps * max_value(theta)) {
      out.converged = true;
      return out;
    }

    double alpha = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving, alpha *= 0.5) {
      bool inside = true;
      for (std::size_t j = 0; j <= n; ++j) {
        trial[j] = theta[j] + alpha * step[j];
        if (!(trial[j] > 0.0) || trial[j] > 1.0) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      residual(trial, op, mu, h, r_trial);
      const double tn = inf_norm(r_trial);
      if (tn < rnorm) {
        theta.swap(trial);
        r.swap(r_trial);
        rnorm = tn;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Stagnation at rounding level counts as convergence.
      out.converged = polished || rnorm <= residual_floor(theta, mu, h);
      return out;
    }
  }
  return out;
}

void check_nodes(const Params& p) { validate(p); }

}  // namespace

std::vector<double> node_coefficients(const PiecewiseConstantResource& m, int n) {
  const Domain& d = m.domain();
  const double h = d.length() / n;
  std::vector<double> c(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double x = d.a() + j * h;
    const double lo = j == 0 ? d.a() : x - 0.5 * h;
    const double hi = j == n ? d.b() : x + 0.5 * h;
    c[j] = std::clamp(m.integral(lo, hi) / (hi - lo), 0.0, 1.0);
  }
  return c;
}

ReactionOperator reaction_operator(const PiecewiseConstantResource& m, int n) {
  const Domain& d = m.domain();
  const double h = d.length() / n;
  ReactionOperator op;
  op.lower.assign(n + 1, 0.0);
  op.diag.assign(n + 1, 0.0);
  op.upper.assign(n + 1, 0.0);
  // Antiderivatives in the local coordinate t of a cell, phi_j = 1 - t and
  // phi_{j+1} = t.
  auto left_sq = [](double t) { return -(1.0 - t) * (1.0 - t) * (1.0 - t) / 3.0; };
  auto cross = [](double t) { return t * t / 2.0 - t * t * t / 3.0; };
  auto right_sq = [](double t) { return t * t * t / 3.0; };
  const auto& segs = m.segments();
  std::size_t s = 0;
  for (int j = 0; j < n; ++j) {
    const double x0 = d.a() + j * h;
    const double x1 = j + 1 == n ? d.b() : d.a() + (j + 1) * h;
    while (s < segs.size() && segs[s].right <= x0) ++s;
    for (std::size_t q = s; q < segs.size() && segs[q].left < x1; ++q) {
      if (segs[q].value == 0.0) continue;
      const double t0 = std::clamp((std::max(segs[q].left, x0) - x0) / h, 0.0, 1.0);
      const double t1 = std::clamp((std::min(segs[q].right, x1) - x0) / h, 0.0, 1.0);
      if (!(t1 > t0)) continue;
      const double v = segs[q].value * h;
      op.diag[j] += v * (left_sq(t1) - left_sq(t0));
      op.upper[j] += v * (cross(t1) - cross(t0));
      op.lower[j + 1] += v * (cross(t1) - cross(t0));
      op.diag[j + 1] += v * (right_sq(t1) - right_sq(t0));
    }
  }
  for (int j = 0; j <= n; ++j) {
    const double w = (j == 0 || j == n) ? 0.5 * h : h;
    op.lower[j] /= w;
    op.diag[j] /= w;
    op.upper[j] /= w;
  }
  return op;
}

double residual_norm(const std::vector<double>& theta, const ReactionOperator& op, double mu,
                     double h) {
  std::vector<double> r;
  residual(theta, op, mu, h, r);
  return inf_norm(r);
}

GridFunction constant_grid(const Domain& d, int n, double value) {
  return GridFunction(d, std::vector<double>(static_cast<std::size_t>(n) + 1, value));
}

EquilibriumSolution solve(const PiecewiseConstantResource& m, const Params& p) {
  check_nodes(p);
  if (!(m.mass() > 0.0)) throw Error(ErrorCode::ZeroMass, "resource has zero mass");
  const Domain& d = m.domain();
  const int n = p.grid_n;
  const double h = d.length() / n;
  auto coef = node_coefficients(m, n);
  auto op = reaction_operator(m, n);
  std::vector<double> theta(n + 1, std::max(m.m0(), 1e-4));

  NewtonOutcome nw = newton(theta, op, p.mu, h, p.tol_residual);
  int total = nw.iterations;
  if (!nw.converged) {
    // Pseudo-time relaxation toward the basin of the positive equilibrium.
    auto relaxed = march(m, p, constant_grid(d, n, std::max(m.m0(), 1e-4)),
                         MarchOptions{0.05, 200'000});
    theta = relaxed.theta.values;
    nw = newton(theta, op, p.mu, h, p.tol_residual);
    total += relaxed.iterations + nw.iterations;
  }
  const double res = residual_norm(theta, op, p.mu, h);
  return make_solution(d, std::move(theta), std::move(coef), std::move(op), p.mu, res, total,
                       nw.converged);
}

EquilibriumSolution solve(const BangBangResource& m, const Params& p) {
  return solve(PiecewiseConstantResource::from(m), p);
}

EquilibriumSolution march(const PiecewiseConstantResource& m, const Params& p,
                          const GridFunction& theta0, const MarchOptions& opt) {
  check_nodes(p);
  const Domain& d = m.domain();
  const int n = p.grid_n;
  if (theta0.cells() != n || !(theta0.domain == d))
    throw Error(ErrorCode::InvalidParams, "initial condition must live on the solver grid");
  if (std::any_of(theta0.values.begin(), theta0.values.end(), [](double v) { return v < 0.0; }) ||
      max_value(theta0.values) <= 0.0)
    throw Error(ErrorCode::InvalidParams, "initial condition must be nonnegative and nonzero");
  const double h = d.length() / n;
  const double dt = opt.dt;
  const double k = dt * p.mu / (h * h);
  auto coef = node_coefficients(m, n);
  auto op = reaction_operator(m, n);

  // (I - dt*mu*D2) theta^{n+1} = theta^n + dt*(A theta^n - theta^n^2); the
  // elimination factors are computed once.
  std::vector<double> sub(n + 1, -k), sup(n + 1, -k), diag(n + 1, 1.0 + 2.0 * k);
  sup[0] = -2.0 * k;
  sub[n] = -2.0 * k;
  std::vector<double> w(n + 1, 0.0), dmod = diag;
  for (int i = 1; i <= n; ++i) {
    w[i] = sub[i] / dmod[i - 1];
    dmod[i] -= w[i] * sup[i - 1];
  }

  std::vector<double> theta = theta0.values, next(n + 1);
  long step = 0;
  bool converged = false;
  for (; step < opt.max_steps; ++step) {
    for (int j = 0; j <= n; ++j) next[j] = theta[j] + dt * (op.apply(theta, j) - theta[j] * theta[j]);
    for (int i = 1; i <= n; ++i) next[i] -= w[i] * next[i - 1];
    next[n] /= dmod[n];
    for (int i = n; i-- > 0;) next[i] = (next[i] - sup[i] * next[i + 1]) / dmod[i];
    double change = 0.0;
    for (int j = 0; j <= n; ++j) change = std::max(change, std::abs(next[j] - theta[j]));
    theta.swap(next);
    if (change / dt < p.tol_residual) {
      converged = true;
      ++step;
      break;
    }
  }
  const double res = residual_norm(theta, op, p.mu, h);
  const int iters = static_cast<int>(std::min<long>(step, std::numeric_limits<int>::max()));
  return make_solution(d, std::move(theta), std::move(coef), std::move(op), p.mu, res, iters,
                       converged);
}

EquilibriumSolution march(const BangBangResource& m, const Params& p, const GridFunction& theta0,
                          const MarchOptions& opt) {
  return march(PiecewiseConstantResource::from(m), p, theta0, opt);
}

const EquilibriumSolution& require_converged(const EquilibriumSolution& sol) {
  if (!sol.converged) {
    std::ostringstream os;
    os << "no convergence after " << sol.iterations << " iterations, residual "
       << sol.residual_norm;
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  return sol;
}

double total_population(const EquilibriumSolution& sol) {
  const auto& v = sol.theta.values;
  const std::size_t n = v.size() - 1;
  double s = 0.5 * (v[0] + v[n]);
  double c = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    // Neumaier summation
    const double t = s + v[j];
    c += std::abs(s) >= std::abs(v[j]) ? (s - t) + v[j] : (v[j] - t) + s;
    s = t;
  }
  return (s + c) * sol.theta.h;
}

Comparability comparability_check(const EquilibriumSolution& sol) {
  const auto [lo, hi] = std::minmax_element(sol.theta.values.begin(), sol.theta.values.end());
  return {*lo, *hi, *hi / *lo};
}

int count_strict_extrema(const EquilibriumSolution& sol) {
  const auto& v = sol.theta.values;
  int count = 0;
  for (std::size_t j = 1; j + 1 < v.size(); ++j) {
    if ((v[j] > v[j - 1] && v[j] > v[j + 1]) || (v[j] < v[j - 1] && v[j] < v[j + 1])) ++count;
  }
  return count;
}

EnergySpread energy_spread(const EquilibriumSolution& sol) {
  const auto& th = sol.theta.values;
  const auto& c = sol.coefficient;
  const int n = sol.theta.cells();
  const double h = sol.theta.h;
  EnergySpread out;
  double lo = 0.0, hi = 0.0;
  int run_value = -1;
  auto close_run = [&] {
    if (run_value >= 0) {
      out.max_spread = std::max(out.max_spread, hi - lo);
      ++out.cells_checked;
    }
    run_value = -1;
  };
  for (int j = 1; j < n; ++j) {
    const bool pure = (c[j] == 0.0 || c[j] == 1.0) && c[j - 1] == c[j] && c[j + 1] == c[j];
    if (!pure) {
      close_run();
      continue;
    }
    const double d = (th[j + 1] - th[j - 1]) / (2.0 * h);
    const double e = sol.mu * d * d - (2.0 / 3.0) * th[j] * th[j] * th[j] + c[j] * th[j] * th[j];
    const int value = static_cast<int>(c[j]);
    if (value != run_value) {
      close_run();
      run_value = value;
      lo = hi = e;
    } else {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
  }
  close_run();
  return out;
}

std::string solution_csv(const EquilibriumSolution& sol, const PiecewiseConstantResource& m) {
  std::string out = "x,theta,dtheta,m\n";
  const int n = sol.theta.cells();
  for (int j = 0; j <= n; ++j) {
    const double x = sol.theta.x(j);
    out += format_double(x);
    out += ',';
    out += format_double(sol.theta.values[j]);
    out += ',';
    out += format_double(sol.dtheta.values[j]);
    out += ',';
    out += format_double(m.evaluate(std::min(x, m.domain().b())));
    out += '\n';
  }
  return out;
}

}  // namespace logopt
