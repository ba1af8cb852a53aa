#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "logopt/equilibrium.hpp"
#include "logopt/model.hpp"

namespace logopt {

enum class Tag { Off, On };

/// Level set (theta')^2 = V(theta) + E of the first integral in rescaled
/// units (mu = 1), with V = (2/3)theta^3 where m = 0 and
/// V = (2/3)theta^3 - theta^2 where m = 1.
struct PhaseCurve {
  Tag tag = Tag::Off;
  double energy = 0.0;
  int branch = 1;  ///< sign of theta'

  double potential(double theta) const noexcept;
  double radicand(double theta) const noexcept { return potential(theta) + energy; }
  /// branch * sqrt(radicand); NaN outside the admissible range.
  double slope(double theta) const noexcept;

  static PhaseCurve through(Tag tag, double theta, double dtheta);
};

/// Signed displacement in x along the curve: integral of dtheta / theta'.
/// A simple turning point at an endpoint is integrated exactly after the
/// substitution theta = theta_end +- s^2; a degenerate one (V' = 0 there)
/// gives +-infinity. Throws TurningPointInsideRange or NonAdmissibleRange.
double x_advance(const PhaseCurve& curve, double theta_from, double theta_to);

/// Same path, integral of theta dx.
double population_advance(const PhaseCurve& curve, double theta_from, double theta_to);

/// Crossing of two curves in {theta' > 0}. Throws IdenticalCurves.
std::optional<std::pair<double, double>> intersect(const PhaseCurve& c1, const PhaseCurve& c2);

/// Interior critical points of a discrete equilibrium, ascending.
std::vector<double> critical_points(const EquilibriumSolution& sol);

/// Four consecutive pieces off/on/off/on inside a span on which theta
/// increases. Everything is stored in rescaled units; a decreasing span is
/// handled in the mirrored frame x -> a + b - x.
struct SurgeryInstance {
  Domain frame;               ///< rescaled domain
  bool mirrored = false;
  double x_lo = 0.0;          ///< span start (theta minimal)
  double x_hi = 0.0;          ///< span end (theta maximal)
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  std::array<double, 5> c{};  ///< c0 < c1 < c2 < c3 < c4
  std::array<PhaseCurve, 4> curves{};  ///< on (c0,c1), (c1,c2), (c2,c3), (c3,c4)
  double T = 0.0;

  /// Off-curve with energy E3 + t.
  PhaseCurve curve5(double t) const;
  double theta_A() const;
  double theta_B() const;
  double theta_C() const;
  double theta_D() const;
  double theta_E(double t) const;
  double theta_F(double t) const;
};

double zeta(const SurgeryInstance& s, double t);
double xi(const SurgeryInstance& s, double t);
double eta_fn(const SurgeryInstance& s, double t);

/// Derivatives in t by quadrature over curve 5.
double zeta_prime(const SurgeryInstance& s, double t);
double xi_prime(const SurgeryInstance& s, double t);
/// Closed form [1/(2 theta theta')] from E to F.
double eta_prime(const SurgeryInstance& s, double t);
/// xi' minus the integral of 1 / (2 theta^2 theta') over curve 5.
double eta_prime_quadrature(const SurgeryInstance& s, double t);

/// zeta(T) and xi(T) along curves 1 and 4 through the crossing D.
double zeta_T_direct(const SurgeryInstance& s);
double xi_T_direct(const SurgeryInstance& s);

/// Spans between consecutive partition points with the pieces of m inside.
struct Span {
  double lo;
  double hi;
  int direction;  ///< +1 increasing, -1 decreasing, 0 constant
  std::vector<PiecewiseConstantResource::Segment> pieces;
};

/// Partition of the domain at the critical points of theta. Segments with
/// intermediate values are spans of their own, on which theta is constant.
std::vector<Span> monotone_spans(const PiecewiseConstantResource& m,
                                 const EquilibriumSolution& sol);

/// True when m is one-sided characteristic on the span.
bool is_monotone_characteristic(const Span& span);

/// First off/on/off/on pattern in left-to-right order, from a solve with
/// mu = 1 on the rescaled domain. Empty when m is block decomposable.
std::optional<SurgeryInstance> find_surgery(const PiecewiseConstantResource& m_rescaled,
                                            const EquilibriumSolution& sol);

struct SurgeryReport {
  double zeta_T = 0.0;
  double xi_T = 0.0;
  double eta_T = 0.0;
  std::array<double, 3> x_hat{};
  double mass_before = 0.0;
  double mass_after = 0.0;
  double pop_before = 0.0;
  double pop_after = 0.0;
};

struct Improvement {
  PiecewiseConstantResource m_hat;
  SurgeryReport report;
};

/// Lengths and populations in the report are physical (scaled back by
/// sqrt(mu)); x_hat is mapped back to the original frame.
Improvement improve_resource(const PiecewiseConstantResource& m, const Params& p);
Improvement improve_resource(const BangBangResource& m, const Params& p);

nlohmann::json to_json(const SurgeryReport& r);

struct RefinedResource {
  PiecewiseConstantResource resource;
  std::vector<double> partition;  ///< y_0 < ... < y_{s+1}
  std::vector<int> span_kind;     ///< 1: one-sided characteristic, 2: theta constant
  int surgeries = 0;
  double mass_before = 0.0;
  double mass_after = 0.0;
  double pop_before = 0.0;
  double pop_after = 0.0;
};

RefinedResource block_refine(const BangBangResource& m, const Params& p, int max_iterations = 64);

}  // namespace logopt
