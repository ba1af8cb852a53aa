#pragma once

#include <string>
#include <vector>

#include "logopt/model.hpp"

namespace logopt {

/// Reaction term of the scheme: the products m*phi_j*phi_k of the nodal hat
/// functions are integrated exactly and divided by the nodal weight
/// w_j = integral of phi_j. Jumps of m inside a cell are resolved exactly.
struct ReactionOperator {
  std::vector<double> lower;  ///< A(j, j-1) / w_j
  std::vector<double> diag;   ///< A(j, j) / w_j
  std::vector<double> upper;  ///< A(j, j+1) / w_j

  double apply(const std::vector<double>& theta, std::size_t j) const {
    double s = diag[j] * theta[j];
    if (j > 0) s += lower[j] * theta[j - 1];
    if (j + 1 < theta.size()) s += upper[j] * theta[j + 1];
    return s;
  }
};

ReactionOperator reaction_operator(const PiecewiseConstantResource& m, int n);

/// Discrete equilibrium of mu*theta'' + theta*(m - theta) = 0 with
/// homogeneous Neumann data, on a uniform grid.
struct EquilibriumSolution {
  GridFunction theta;
  GridFunction dtheta;              ///< centered differences; zero at the ends
  std::vector<double> coefficient;  ///< dual-cell averages of m at the nodes
  ReactionOperator reaction;
  double mu = 1.0;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct MarchOptions {
  /// Implicit diffusion keeps any step stable; explicit reaction needs dt < 1.
  double dt = 0.05;
  long max_steps = 4'000'000;
};

/// Dual-cell averages of m at the n + 1 nodes. Resource endpoints are used
/// exactly, so the weighted sum of the averages reproduces the mass.
std::vector<double> node_coefficients(const PiecewiseConstantResource& m, int n);

/// Damped Newton on the three-point system with ghost-node
/// Neumann conditions. A non-converged result carries the best iterate.
EquilibriumSolution solve(const PiecewiseConstantResource& m, const Params& p);
EquilibriumSolution solve(const BangBangResource& m, const Params& p);

/// Semi-implicit time marching of theta_t = mu*theta'' + theta*(m - theta)
/// until the update rate drops below tol_residual.
EquilibriumSolution march(const PiecewiseConstantResource& m, const Params& p,
                          const GridFunction& theta0, const MarchOptions& opt = {});
EquilibriumSolution march(const BangBangResource& m, const Params& p,
                          const GridFunction& theta0, const MarchOptions& opt = {});

/// Throws NoConvergence unless sol.converged.
const EquilibriumSolution& require_converged(const EquilibriumSolution& sol);

/// Trapezoid rule with the scheme's own weights (h/2 at the ends).
double total_population(const EquilibriumSolution& sol);

struct Comparability {
  double theta_min;
  double theta_max;
  double ratio;
};
Comparability comparability_check(const EquilibriumSolution& sol);

/// ||mu*D2 theta + theta*(m - theta)||_inf of the discrete system.
double residual_norm(const std::vector<double>& theta, const ReactionOperator& op, double mu,
                     double h);

/// Number of strict interior local extrema of theta on the grid.
int count_strict_extrema(const EquilibriumSolution& sol);

/// Interior nodes whose three-point stencil lies inside one cell where m is
/// constantly 0 or 1; the first integral there is
/// mu*(theta')^2 - (2/3)theta^3 + m*theta^2.
struct EnergySpread {
  double max_spread = 0.0;  ///< over all cells
  int cells_checked = 0;
};
EnergySpread energy_spread(const EquilibriumSolution& sol);

/// CSV with header x,theta,dtheta,m.
std::string solution_csv(const EquilibriumSolution& sol, const PiecewiseConstantResource& m);

/// Uniform grid function with constant value.
GridFunction constant_grid(const Domain& d, int n, double value);

}  // namespace logopt
