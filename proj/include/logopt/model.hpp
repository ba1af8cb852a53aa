#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace logopt {

enum class ErrorCode {
  InvalidDomain,
  InvalidParams,
  OverlappingIntervals,
  IntervalOutOfDomain,
  EmptyResource,
  FullResource,
  NonpositiveMu,
  OutOfDomain,
  ZeroMass,
  NoConvergence,
  TurningPointInsideRange,
  NonAdmissibleRange,
  IdenticalCurves,
  AlreadyDecomposable,
  SurgeryDegenerate,
  IterationLimit,
  StepUnderflow,
  BreakpointMismatch,
  Config,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Open interval (a, b) of the real line.
class Domain {
 public:
  Domain(double a, double b);
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  bool contains(double x) const noexcept { return x >= a_ && x <= b_; }
  bool operator==(const Domain&) const = default;

 private:
  double a_;
  double b_;
};

struct Interval {
  double left;
  double right;
  double length() const noexcept { return right - left; }
  bool operator==(const Interval&) const = default;
};

/// Indicator function of a finite union of closed intervals.
/// Construction does not validate; use validate() before solving.
class BangBangResource {
 public:
  BangBangResource(Domain domain, std::vector<Interval> intervals);

  const Domain& domain() const noexcept { return domain_; }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }

  /// Sum of interval lengths, exact on the endpoints.
  double mass() const noexcept;
  double m0() const noexcept { return mass() / domain_.length(); }

  /// Value of the indicator; interval endpoints evaluate to 1.
  int evaluate(double x) const;

  /// Measure of {m = 1} inside [lo, hi].
  double mass_in(double lo, double hi) const noexcept;

  /// Reflection x -> a + b - x.
  BangBangResource mirrored() const;

  bool operator==(const BangBangResource&) const = default;

 private:
  Domain domain_;
  std::vector<Interval> intervals_;
};

struct ValidResource {
  BangBangResource resource;
  double mass;
  double m0;
  bool full;  ///< m0 == 1, outside the admissible class
};

/// Sorts intervals, merges touching ones and checks every invariant.
/// A full resource raises FullResource unless allow_full is set.
ValidResource validate(const BangBangResource& m, bool allow_full = false);

/// Maps m on Omega to m~ on Omega / sqrt(mu).
BangBangResource rescale(const BangBangResource& m, double mu);
/// Inverse of rescale.
BangBangResource unscale(const BangBangResource& m, double mu);

inline int evaluate(const BangBangResource& m, double x) { return m.evaluate(x); }

/// Piecewise-constant coefficient with values in [0, 1]; the segments
/// tile the domain. Used for the improved resources of the surgery,
/// whose plateaus carry intermediate values, and for constant resources.
class PiecewiseConstantResource {
 public:
  struct Segment {
    double left;
    double right;
    double value;
  };

  PiecewiseConstantResource(Domain domain, std::vector<Segment> segments);
  static PiecewiseConstantResource constant(Domain domain, double value);
  static PiecewiseConstantResource from(const BangBangResource& m);

  const Domain& domain() const noexcept { return domain_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }

  double mass() const noexcept;
  double m0() const noexcept { return mass() / domain_.length(); }
  double integral(double lo, double hi) const noexcept;
  /// Measure of {m == value} (exact comparison).
  double level_set_measure(double value) const noexcept;
  double evaluate(double x) const;
  bool is_bang_bang() const noexcept;

  /// Reflection x -> a + b - x.
  PiecewiseConstantResource mirrored() const;
  /// Domain and segments multiplied by factor > 0.
  PiecewiseConstantResource scaled(double factor) const;

 private:
  Domain domain_;
  std::vector<Segment> segments_;
};

struct Params {
  double mu = 1.0;
  int grid_n = 512;
  double tol_residual = 1e-10;
  double tol_integral = 1e-12;
};

/// Throws InvalidParams / NonpositiveMu on violation.
void validate(const Params& p);

/// Values at the grid_n + 1 uniform nodes of a domain.
struct GridFunction {
  Domain domain;
  std::vector<double> values;
  double h;

  GridFunction(Domain d, std::vector<double> v);
  int cells() const noexcept { return static_cast<int>(values.size()) - 1; }
  double x(int j) const noexcept { return domain.a() + j * h; }
  /// Piecewise-linear interpolation.
  double at(double x) const;
};

// JSON: {"domain": [a, b], "intervals": [[l1, r1], ...]}
nlohmann::json to_json(const BangBangResource& m);
BangBangResource resource_from_json(const nlohmann::json& j);

}  // namespace logopt
