#include "logopt/phaseplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace logopt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class F>
double gk(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-12, &err);
}

double on_value(Tag t) { return t == Tag::On ? 1.0 : 0.0; }

// (V(x) - V(y)) / (x - y)
double divided_potential(Tag t, double x, double y) {
  return (2.0 / 3.0) * (x * x + x * y + y * y) - on_value(t) * (x + y);
}

double potential_slope(Tag t, double x) { return 2.0 * x * x - 2.0 * on_value(t) * x; }

// Integral of w(theta) / sqrt(radicand) over [lo, hi], lo < hi.
template <class W>
double branch_integral(const PhaseCurve& c, double lo, double hi, W w) {
  const double scale = std::max({std::abs(c.potential(lo)), std::abs(c.potential(hi)),
                                  std::abs(c.energy), std::numeric_limits<double>::min()});
  const double zero_tol = 64.0 * kEps * scale;
  double r_lo = c.radicand(lo);
  double r_hi = c.radicand(hi);
  if (r_lo < -zero_tol || r_hi < -zero_tol || !std::isfinite(r_lo) || !std::isfinite(r_hi)) {
    std::ostringstream os;
    os << "theta range [" << lo << ", " << hi << "] leaves the admissible set of the curve";
    throw Error(ErrorCode::NonAdmissibleRange, os.str());
  }
  const bool turn_lo = r_lo <= zero_tol;
  const bool turn_hi = r_hi <= zero_tol;
  if (turn_lo) r_lo = 0.0;
  if (turn_hi) r_hi = 0.0;
  // The radicand is monotone on [0, 1] for both tags; its only interior
  // minimum is at theta = 1 on an on-curve.
  if (c.tag == Tag::On && lo < 1.0 && 1.0 < hi && c.radicand(1.0) <= 0.0)
    throw Error(ErrorCode::TurningPointInsideRange, "theta' vanishes inside the range");
  if ((turn_lo && std::abs(potential_slope(c.tag, lo)) <= 64.0 * kEps * std::max(1.0, lo * lo)) ||
      (turn_hi && std::abs(potential_slope(c.tag, hi)) <= 64.0 * kEps * std::max(1.0, hi * hi)))
    return kInf;

  const double mid = 0.5 * (lo + hi);
  auto rad = [&](double th) {
    return th <= mid ? r_lo + (th - lo) * divided_potential(c.tag, th, lo)
                     : r_hi + (th - hi) * divided_potential(c.tag, th, hi);
  };
  const double delta = 0.1 * (hi - lo);
  const double sd = std::sqrt(delta);
  // theta = lo + s^2 and theta = hi - s^2 on the end pieces.
  const double left = gk(
      [&](double s) {
        const double th = lo + s * s;
        const double q = divided_potential(c.tag, th, lo);
        return turn_lo ? 2.0 * w(th) / std::sqrt(q) : 2.0 * s * w(th) / std::sqrt(r_lo + s * s * q);
      },
      0.0, sd);
  const double right = gk(
      [&](double s) {
        const double th = hi - s * s;
        const double q = divided_potential(c.tag, th, hi);
        return turn_hi ? 2.0 * w(th) / std::sqrt(-q) : 2.0 * s * w(th) / std::sqrt(r_hi - s * s * q);
      },
      0.0, sd);
  const double middle = gk([&](double th) { return w(th) / std::sqrt(rad(th)); }, lo + delta,
                           hi - delta);
  return left + middle + right;
}

template <class W>
double signed_advance(const PhaseCurve& c, double from, double to, W w) {
  if (from == to) return 0.0;
  const double lo = std::min(from, to);
  const double hi = std::max(from, to);
  const double sign = (to > from ? 1.0 : -1.0) * (c.branch >= 0 ? 1.0 : -1.0);
  return sign * branch_integral(c, lo, hi, w);
}

// Positive-branch length and population between two theta values, lo <= hi.
double length(const PhaseCurve& c, double lo, double hi) {
  return signed_advance(c, lo, hi, [](double) { return 1.0; });
}
double pop(const PhaseCurve& c, double lo, double hi) {
  return signed_advance(c, lo, hi, [](double th) { return th; });
}

double clamp_sqrt(double v) { return std::sqrt(std::max(v, 0.0)); }

}  // namespace

double PhaseCurve::potential(double theta) const noexcept {
  return (2.0 / 3.0) * theta * theta * theta - on_value(tag) * theta * theta;
}

double PhaseCurve::slope(double theta) const noexcept {
  const double r = radicand(theta);
  if (r < 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (branch >= 0 ? 1.0 : -1.0) * std::sqrt(r);
}

PhaseCurve PhaseCurve::through(Tag tag, double theta, double dtheta) {
  PhaseCurve c{tag, 0.0, dtheta < 0.0 ? -1 : 1};
  c.energy = dtheta * dtheta - c.potential(theta);
  return c;
}

double x_advance(const PhaseCurve& curve, double theta_from, double theta_to) {
  return signed_advance(curve, theta_from, theta_to, [](double) { return 1.0; });
}

double population_advance(const PhaseCurve& curve, double theta_from, double theta_to) {
  return signed_advance(curve, theta_from, theta_to, [](double th) { return th; });
}

std::optional<std::pair<double, double>> intersect(const PhaseCurve& c1, const PhaseCurve& c2) {
  if (c1.tag == c2.tag) {
    if (c1.energy == c2.energy) throw Error(ErrorCode::IdenticalCurves, "curves coincide");
    return std::nullopt;
  }
  const PhaseCurve& off = c1.tag == Tag::Off ? c1 : c2;
  const PhaseCurve& on = c1.tag == Tag::On ? c1 : c2;
  // (2/3)theta^3 + E_off = (2/3)theta^3 - theta^2 + E_on
  const double sq = on.energy - off.energy;
  if (!(sq > 0.0)) return std::nullopt;
  const double th = std::sqrt(sq);
  const double r = off.radicand(th);
  if (!(r > 0.0)) return std::nullopt;
  return std::make_pair(th, std::sqrt(r));
}

std::vector<double> critical_points(const EquilibriumSolution& sol) {
  const auto& d = sol.dtheta.values;
  const int n = sol.theta.cells();
  const double h = sol.theta.h;
  double dmax = 0.0;
  for (double v : d) dmax = std::max(dmax, std::abs(v));
  std::vector<double> out;
  if (dmax == 0.0) return out;
  const double small = 1e-7 * dmax;
  std::vector<char> flag(n + 1, 0);
  for (int j = 1; j < n; ++j) {
    if (std::abs(d[j]) < small) flag[j] = 1;
    if (j >= 2 && j <= n - 2 && d[j - 1] * d[j + 1] < 0.0) flag[j] = 1;
  }
  int j = 1;
  while (j < n) {
    if (!flag[j]) {
      ++j;
      continue;
    }
    int k = j;
    while (k + 1 < n && flag[k + 1]) ++k;
    if (j > 1 && k < n - 1) {
      const double center = 0.5 * (sol.theta.x(j) + sol.theta.x(k));
      double best = center;
      double best_dist = kInf;
      for (int q = j - 1; q <= k; ++q) {
        const double a = d[q], b = d[q + 1];
        if (a == 0.0 && b == 0.0) continue;
        if ((a >= 0.0 && b <= 0.0) || (a <= 0.0 && b >= 0.0)) {
          const double x = sol.theta.x(q) + h * a / (a - b);
          if (std::abs(x - center) < best_dist) {
            best_dist = std::abs(x - center);
            best = x;
          }
        }
      }
      out.push_back(best);
    }
    j = k + 1;
  }
  return out;
}

PhaseCurve SurgeryInstance::curve5(double t) const {
  return PhaseCurve{Tag::Off, curves[2].energy + t, 1};
}
double SurgeryInstance::theta_A() const { return clamp_sqrt(curves[1].energy - curves[0].energy); }
double SurgeryInstance::theta_B() const { return clamp_sqrt(curves[1].energy - curves[2].energy); }
double SurgeryInstance::theta_C() const { return clamp_sqrt(curves[3].energy - curves[2].energy); }
double SurgeryInstance::theta_D() const { return clamp_sqrt(curves[3].energy - curves[0].energy); }
double SurgeryInstance::theta_E(double t) const {
  return clamp_sqrt((curves[1].energy - curves[2].energy) - t);
}
double SurgeryInstance::theta_F(double t) const {
  return clamp_sqrt((curves[3].energy - curves[2].energy) - t);
}

double zeta(const SurgeryInstance& s, double t) {
  const double e = s.theta_E(t), f = s.theta_F(t);
  return length(s.curve5(t), e, f) + length(s.curves[3], f, s.theta_C()) -
         length(s.curves[1], e, s.theta_B()) - length(s.curves[2], s.theta_B(), s.theta_C());
}

double xi(const SurgeryInstance& s, double t) {
  const double e = s.theta_E(t), f = s.theta_F(t);
  return pop(s.curve5(t), e, f) + pop(s.curves[3], f, s.theta_C()) -
         pop(s.curves[1], e, s.theta_B()) - pop(s.curves[2], s.theta_B(), s.theta_C());
}

double eta_fn(const SurgeryInstance& s, double t) {
  return length(s.curves[3], s.theta_F(t), s.theta_C()) -
         length(s.curves[1], s.theta_E(t), s.theta_B());
}

double zeta_prime(const SurgeryInstance& s, double t) {
  const PhaseCurve c = s.curve5(t);
  return -0.5 * gk([&](double th) { return std::pow(c.radicand(th), -1.5); }, s.theta_E(t),
                   s.theta_F(t));
}

double xi_prime(const SurgeryInstance& s, double t) {
  const PhaseCurve c = s.curve5(t);
  return -0.5 * gk([&](double th) { return th * std::pow(c.radicand(th), -1.5); }, s.theta_E(t),
                   s.theta_F(t));
}

double eta_prime(const SurgeryInstance& s, double t) {
  const PhaseCurve c = s.curve5(t);
  const double e = s.theta_E(t), f = s.theta_F(t);
  return 0.5 / (f * c.slope(f)) - 0.5 / (e * c.slope(e));
}

double eta_prime_quadrature(const SurgeryInstance& s, double t) {
  const PhaseCurve c = s.curve5(t);
  return xi_prime(s, t) -
         gk([&](double th) { return 0.5 / (th * th * std::sqrt(c.radicand(th))); }, s.theta_E(t),
            s.theta_F(t));
}

double zeta_T_direct(const SurgeryInstance& s) {
  const auto d = intersect(s.curves[0], s.curves[3]);
  if (!d) throw Error(ErrorCode::SurgeryDegenerate, "curves 1 and 4 do not cross");
  const double a = s.theta_A(), b = s.theta_B(), c = s.theta_C();
  return length(s.curves[0], a, d->first) + length(s.curves[3], d->first, c) -
         length(s.curves[1], a, b) - length(s.curves[2], b, c);
}

double xi_T_direct(const SurgeryInstance& s) {
  const auto d = intersect(s.curves[0], s.curves[3]);
  if (!d) throw Error(ErrorCode::SurgeryDegenerate, "curves 1 and 4 do not cross");
  const double a = s.theta_A(), b = s.theta_B(), c = s.theta_C();
  return pop(s.curves[0], a, d->first) + pop(s.curves[3], d->first, c) - pop(s.curves[1], a, b) -
         pop(s.curves[2], b, c);
}

namespace {

using Segment = PiecewiseConstantResource::Segment;

bool intermediate(double v) { return v != 0.0 && v != 1.0; }

std::vector<Segment> clip(const std::vector<Segment>& segs, double lo, double hi, double sliver) {
  std::vector<Segment> out;
  for (const auto& s : segs) {
    const double l = std::max(lo, s.left), r = std::min(hi, s.right);
    if (r > l) out.push_back({l, r, s.value});
  }
  // Pieces thinner than the grid resolution come from the partition error.
  if (out.size() > 1) {
    std::vector<Segment> kept;
    for (const auto& s : out)
      if (s.right - s.left >= sliver) kept.push_back(s);
    if (!kept.empty()) {
      kept.front().left = lo;
      kept.back().right = hi;
      for (std::size_t i = 1; i < kept.size(); ++i) kept[i].left = kept[i - 1].right;
      out.swap(kept);
    }
  }
  std::vector<Segment> merged;
  for (const auto& s : out) {
    if (!merged.empty() && merged.back().value == s.value)
      merged.back().right = s.right;
    else
      merged.push_back(s);
  }
  return merged;
}

EquilibriumSolution mirror(const EquilibriumSolution& sol) {
  EquilibriumSolution out = sol;
  std::reverse(out.theta.values.begin(), out.theta.values.end());
  std::reverse(out.dtheta.values.begin(), out.dtheta.values.end());
  for (double& v : out.dtheta.values) v = -v;
  std::reverse(out.coefficient.begin(), out.coefficient.end());
  return out;
}

// Value at an extremum from the parabola through the three nearest nodes.
double extremum_value(const GridFunction& th, double x) {
  const int n = th.cells();
  const int j = std::clamp(static_cast<int>(std::lround((x - th.domain.a()) / th.h)), 0, n);
  if (j == 0 || j == n) return th.values[j];
  const double a = th.values[j - 1], b = th.values[j], c = th.values[j + 1];
  const double curv = a - 2.0 * b + c;
  if (curv == 0.0) return b;
  const double v = b - (c - a) * (c - a) / (8.0 * curv);
  return std::clamp(v, std::min({a, b, c}), std::max({a, b, c}));
}

// Mean first integral over nodes whose stencil lies inside [l, r].
std::optional<double> piece_energy(const EquilibriumSolution& sol, Tag tag, double l, double r) {
  const auto& th = sol.theta.values;
  const int n = sol.theta.cells();
  const double h = sol.theta.h;
  const double slack = 1e-9 * h;
  PhaseCurve probe{tag, 0.0, 1};
  double sum = 0.0;
  int count = 0;
  for (int j = 1; j < n; ++j) {
    if (sol.theta.x(j - 1) < l - slack || sol.theta.x(j + 1) > r + slack) continue;
    const double d = (th[j + 1] - th[j - 1]) / (2.0 * h);
    sum += d * d - probe.potential(th[j]);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

}  // namespace

std::vector<Span> monotone_spans(const PiecewiseConstantResource& m,
                                 const EquilibriumSolution& sol) {
  const Domain& d = m.domain();
  const double h = sol.theta.h;
  std::vector<double> cuts{d.a(), d.b()};
  for (double x : critical_points(sol)) {
    bool masked = false;
    for (const auto& s : m.segments())
      if (intermediate(s.value) && x >= s.left - 2.0 * h && x <= s.right + 2.0 * h) masked = true;
    if (!masked) cuts.push_back(x);
  }
  for (const auto& s : m.segments()) {
    if (!intermediate(s.value)) continue;
    cuts.push_back(s.left);
    cuts.push_back(s.right);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> uniq;
  for (double x : cuts) {
    if (uniq.empty() || x - uniq.back() > 0.5 * h)
      uniq.push_back(x);
    else if (x == d.b())
      uniq.back() = x;
  }
  uniq.front() = d.a();
  uniq.back() = d.b();

  std::vector<Span> out;
  for (std::size_t i = 0; i + 1 < uniq.size(); ++i) {
    Span s{uniq[i], uniq[i + 1], 0, clip(m.segments(), uniq[i], uniq[i + 1], 0.5 * h)};
    const bool flat = s.pieces.size() == 1 && intermediate(s.pieces[0].value);
    if (!flat) {
      const double lo = sol.theta.at(s.lo), hi = sol.theta.at(s.hi);
      s.direction = hi > lo ? 1 : (hi < lo ? -1 : 0);
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool is_monotone_characteristic(const Span& span) {
  const auto& p = span.pieces;
  for (const auto& s : p)
    if (intermediate(s.value)) return p.size() == 1;
  if (p.size() <= 1) return true;
  if (p.size() > 2) return false;
  // two pieces: the resource sits at the high end of theta
  return span.direction >= 0 ? p[1].value == 1.0 : p[0].value == 1.0;
}

std::optional<SurgeryInstance> find_surgery(const PiecewiseConstantResource& m_rescaled,
                                            const EquilibriumSolution& sol) {
  if (sol.mu != 1.0) throw Error(ErrorCode::InvalidParams, "surgery works in rescaled units");
  const Domain& d = m_rescaled.domain();
  const double sum = d.a() + d.b();
  for (const Span& span : monotone_spans(m_rescaled, sol)) {
    if (span.direction == 0 || is_monotone_characteristic(span)) continue;
    const bool mir = span.direction < 0;
    std::vector<Segment> pieces = span.pieces;
    double lo = span.lo, hi = span.hi;
    if (mir) {
      std::reverse(pieces.begin(), pieces.end());
      for (auto& s : pieces) s = {sum - s.right, sum - s.left, s.value};
      lo = sum - span.hi;
      hi = sum - span.lo;
    }
    std::optional<std::size_t> hit;
    for (std::size_t k = 0; k + 3 < pieces.size(); ++k) {
      if (pieces[k].value == 0.0 && pieces[k + 1].value == 1.0 && pieces[k + 2].value == 0.0 &&
          pieces[k + 3].value == 1.0) {
        hit = k;
        if (!mir) break;  // leftmost in the original frame
      }
    }
    if (!hit) continue;
    const std::size_t k = *hit;
    const EquilibriumSolution frame_sol = mir ? mirror(sol) : sol;

    SurgeryInstance inst{d};
    inst.mirrored = mir;
    inst.x_lo = lo;
    inst.x_hi = hi;
    inst.c = {pieces[k].left, pieces[k + 1].left, pieces[k + 2].left, pieces[k + 3].left,
              pieces[k + 3].right};
    inst.theta_lo = extremum_value(frame_sol.theta, lo);
    inst.theta_hi = extremum_value(frame_sol.theta, hi);
    const Tag tags[4] = {Tag::Off, Tag::On, Tag::Off, Tag::On};
    std::array<std::optional<double>, 4> e;
    for (int q = 0; q < 4; ++q)
      e[q] = piece_energy(frame_sol, tags[q], pieces[k + q].left, pieces[k + q].right);
    // Thin pieces: the first integral jumps by theta(c)^2 across a switch.
    for (int pass = 0; pass < 3; ++pass) {
      for (int q = 0; q < 3; ++q) {
        const double th = frame_sol.theta.at(inst.c[q + 1]);
        const double jump = q % 2 == 0 ? th * th : -th * th;
        if (e[q] && !e[q + 1]) e[q + 1] = *e[q] + jump;
        if (!e[q] && e[q + 1]) e[q] = *e[q + 1] - jump;
      }
    }
    if (!e[0]) throw Error(ErrorCode::SurgeryDegenerate, "no grid node resolves the pattern");
    for (int q = 0; q < 4; ++q) inst.curves[q] = PhaseCurve{tags[q], *e[q], 1};
    inst.T = inst.curves[0].energy - inst.curves[2].energy;
    return inst;
  }
  return std::nullopt;
}

namespace {

struct RescaledImprovement {
  PiecewiseConstantResource m_hat;  // rescaled, original orientation
  double zeta_T, xi_T, eta_T;
  std::array<double, 3> x_hat;      // rescaled, original orientation
};

RescaledImprovement improve_rescaled(const PiecewiseConstantResource& m_r,
                                     const SurgeryInstance& s) {
  const double scale = std::max(1.0, s.theta_hi);
  if (!(s.T > 1e-12 * scale) || !(s.theta_B() > s.theta_A()) || !(s.theta_C() > s.theta_B()))
    throw Error(ErrorCode::SurgeryDegenerate, "parameter range T is below tolerance");
  if (!(s.theta_hi > s.theta_lo))
    throw Error(ErrorCode::SurgeryDegenerate, "theta(x_i) == theta(x_{i+1})");
  const double zT = zeta(s, s.T);
  const double xT = xi(s, s.T);
  const double eT = eta_fn(s, s.T);
  double p1 = (xT - s.theta_hi * zT) / (s.theta_hi - s.theta_lo);
  const double room = -zT;
  if (!(room > 0.0)) throw Error(ErrorCode::SurgeryDegenerate, "zeta(T) is not negative");
  const double slop = 1e-9 * (s.x_hi - s.x_lo);
  if (p1 < -slop || p1 > room + slop)
    throw Error(ErrorCode::SurgeryDegenerate, "plateau length outside [0, -zeta(T)]");
  p1 = std::clamp(p1, 0.0, room);
  const double p2 = room - p1;
  const double l_ad = length(s.curves[0], s.theta_A(), s.theta_D());

  const Domain& d = m_r.domain();
  const PiecewiseConstantResource frame = s.mirrored ? m_r.mirrored() : m_r;
  std::vector<Segment> out;
  auto push = [&](double l, double r, double v) {
    if (!(r > l)) return;
    if (!out.empty() && out.back().value == v)
      out.back().right = r;
    else
      out.push_back({l, r, v});
  };
  for (const auto& seg : clip(frame.segments(), d.a(), s.x_lo, 0.0)) push(seg.left, seg.right, seg.value);
  const double x1 = s.x_lo + p1;
  push(s.x_lo, x1, s.theta_lo);
  for (const auto& seg : clip(frame.segments(), s.x_lo, s.c[1], 0.0))
    push(seg.left + p1, seg.right + p1, seg.value);
  const double x2 = s.c[1] + p1 + l_ad;
  push(s.c[1] + p1, x2, 0.0);
  const double shift = p1 + zT;
  push(x2, s.c[3] + shift, 1.0);
  for (const auto& seg : clip(frame.segments(), s.c[3], s.x_hi, 0.0))
    push(seg.left + shift, seg.right + shift, seg.value);
  const double x3 = s.x_hi - p2;
  push(x3, s.x_hi, s.theta_hi);
  for (const auto& seg : clip(frame.segments(), s.x_hi, d.b(), 0.0)) push(seg.left, seg.right, seg.value);
  // Tiling after floating-point shifts.
  for (std::size_t i = 1; i < out.size(); ++i) out[i].left = out[i - 1].right;
  out.back().right = d.b();

  PiecewiseConstantResource hat(d, std::move(out));
  std::array<double, 3> xs{x1, x2, x3};
  if (s.mirrored) {
    hat = hat.mirrored();
    for (double& x : xs) x = d.a() + d.b() - x;
  }
  return {std::move(hat), zT, xT, eT, xs};
}

}  // namespace

Improvement improve_resource(const PiecewiseConstantResource& m, const Params& p) {
  validate(p);
  const double root = std::sqrt(p.mu);
  const PiecewiseConstantResource m_r = m.scaled(1.0 / root);
  Params q = p;
  q.mu = 1.0;
  const EquilibriumSolution sol = require_converged(solve(m_r, q));
  const auto inst = find_surgery(m_r, sol);
  if (!inst) throw Error(ErrorCode::AlreadyDecomposable, "m is one-sided characteristic on every monotone span");
  RescaledImprovement imp = improve_rescaled(m_r, *inst);
  PiecewiseConstantResource hat = imp.m_hat.scaled(root);

  SurgeryReport r;
  r.zeta_T = root * imp.zeta_T;
  r.xi_T = root * imp.xi_T;
  r.eta_T = root * imp.eta_T;
  for (int i = 0; i < 3; ++i) r.x_hat[i] = root * imp.x_hat[i];
  r.mass_before = m.mass();
  r.mass_after = hat.mass();
  if (!(r.mass_after - r.mass_before < -10.0 * p.tol_integral))
    throw Error(ErrorCode::SurgeryDegenerate, "resource reduction below tolerance");
  r.pop_before = root * total_population(sol);
  r.pop_after = total_population(require_converged(solve(hat, p)));
  return {std::move(hat), r};
}

Improvement improve_resource(const BangBangResource& m, const Params& p) {
  return improve_resource(PiecewiseConstantResource::from(validate(m).resource), p);
}

nlohmann::json to_json(const SurgeryReport& r) {
  return {{"zeta_T", r.zeta_T},         {"xi_T", r.xi_T},
          {"eta_T", r.eta_T},           {"x_hat", {r.x_hat[0], r.x_hat[1], r.x_hat[2]}},
          {"mass_before", r.mass_before}, {"mass_after", r.mass_after},
          {"pop_before", r.pop_before},   {"pop_after", r.pop_after}};
}

RefinedResource block_refine(const BangBangResource& m, const Params& p, int max_iterations) {
  validate(p);
  const double root = std::sqrt(p.mu);
  Params q = p;
  q.mu = 1.0;
  PiecewiseConstantResource current = PiecewiseConstantResource::from(validate(m).resource);
  RefinedResource out{current, {}, {}, 0, current.mass(), 0.0, 0.0, 0.0};
  for (int it = 0;; ++it) {
    const PiecewiseConstantResource m_r = current.scaled(1.0 / root);
    const EquilibriumSolution sol = require_converged(solve(m_r, q));
    if (it == 0) out.pop_before = root * total_population(sol);
    const auto inst = find_surgery(m_r, sol);
    if (!inst) {
      out.resource = current;
      out.pop_after = root * total_population(sol);
      for (const Span& s : monotone_spans(m_r, sol)) {
        if (out.partition.empty()) out.partition.push_back(root * s.lo);
        out.partition.push_back(root * s.hi);
        out.span_kind.push_back(s.direction == 0 ? 2 : (is_monotone_characteristic(s) ? 1 : 0));
      }
      break;
    }
    if (it >= max_iterations) {
      std::ostringstream os;
      os << "no block-refined resource after " << it << " surgeries; mass " << current.mass();
      throw Error(ErrorCode::IterationLimit, os.str());
    }
    current = improve_rescaled(m_r, *inst).m_hat.scaled(root);
    ++out.surgeries;
  }
  out.mass_after = out.resource.mass();
  return out;
}

}  // namespace logopt
