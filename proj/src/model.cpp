#include "logopt/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace logopt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::OverlappingIntervals: return "OverlappingIntervals";
    case ErrorCode::IntervalOutOfDomain: return "IntervalOutOfDomain";
    case ErrorCode::EmptyResource: return "EmptyResource";
    case ErrorCode::FullResource: return "FullResource";
    case ErrorCode::NonpositiveMu: return "NonpositiveMu";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::TurningPointInsideRange: return "TurningPointInsideRange";
    case ErrorCode::NonAdmissibleRange: return "NonAdmissibleRange";
    case ErrorCode::IdenticalCurves: return "IdenticalCurves";
    case ErrorCode::AlreadyDecomposable: return "AlreadyDecomposable";
    case ErrorCode::SurgeryDegenerate: return "SurgeryDegenerate";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::BreakpointMismatch: return "BreakpointMismatch";
    case ErrorCode::Config: return "Config";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Domain::Domain(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    std::ostringstream os;
    os << "domain (" << a << ", " << b << ") must satisfy a < b";
    throw Error(ErrorCode::InvalidDomain, os.str());
  }
}

BangBangResource::BangBangResource(Domain domain, std::vector<Interval> intervals)
    : domain_(domain), intervals_(std::move(intervals)) {}

double BangBangResource::mass() const noexcept {
  double s = 0.0;
  for (const auto& iv : intervals_) s += iv.length();
  return s;
}

int BangBangResource::evaluate(double x) const {
  if (!domain_.contains(x)) {
    std::ostringstream os;
    os << "x = " << x << " outside [" << domain_.a() << ", " << domain_.b() << "]";
    throw Error(ErrorCode::OutOfDomain, os.str());
  }
  for (const auto& iv : intervals_)
    if (x >= iv.left && x <= iv.right) return 1;
  return 0;
}

double BangBangResource::mass_in(double lo, double hi) const noexcept {
  double s = 0.0;
  for (const auto& iv : intervals_) {
    const double l = std::max(lo, iv.left);
    const double r = std::min(hi, iv.right);
    if (r > l) s += r - l;
  }
  return s;
}

BangBangResource BangBangResource::mirrored() const {
  const double s = domain_.a() + domain_.b();
  std::vector<Interval> out;
  out.reserve(intervals_.size());
  for (auto it = intervals_.rbegin(); it != intervals_.rend(); ++it)
    out.push_back({s - it->right, s - it->left});
  return BangBangResource(domain_, std::move(out));
}

ValidResource validate(const BangBangResource& m, bool allow_full) {
  const Domain& d = m.domain();
  std::vector<Interval> ivs = m.intervals();
  for (const auto& iv : ivs) {
    if (!std::isfinite(iv.left) || !std::isfinite(iv.right) || !(iv.left < iv.right)) {
      std::ostringstream os;
      os << "interval (" << iv.left << ", " << iv.right << ") must satisfy left < right";
      throw Error(ErrorCode::IntervalOutOfDomain, os.str());
    }
    if (iv.left < d.a() || iv.right > d.b()) {
      std::ostringstream os;
      os << "interval (" << iv.left << ", " << iv.right << ") not contained in ["
         << d.a() << ", " << d.b() << "]";
      throw Error(ErrorCode::IntervalOutOfDomain, os.str());
    }
  }
  std::sort(ivs.begin(), ivs.end(),
            [](const Interval& x, const Interval& y) { return x.left < y.left; });
  std::vector<Interval> merged;
  for (const auto& iv : ivs) {
    if (!merged.empty()) {
      Interval& last = merged.back();
      if (iv.left < last.right) {
        std::ostringstream os;
        os << "intervals (" << last.left << ", " << last.right << ") and (" << iv.left
           << ", " << iv.right << ") overlap";
        throw Error(ErrorCode::OverlappingIntervals, os.str());
      }
      if (iv.left == last.right) {
        last.right = iv.right;
        continue;
      }
    }
    merged.push_back(iv);
  }
  BangBangResource out(d, std::move(merged));
  const double mass = out.mass();
  if (mass <= 0.0) throw Error(ErrorCode::EmptyResource, "resource has zero mass");
  const bool full = out.intervals().size() == 1 && out.intervals()[0].left == d.a() &&
                    out.intervals()[0].right == d.b();
  if (full && !allow_full)
    throw Error(ErrorCode::FullResource, "m0 = 1 lies outside the admissible class");
  return {std::move(out), mass, mass / d.length(), full};
}

namespace {

BangBangResource scale_by(const BangBangResource& m, double factor) {
  std::vector<Interval> out;
  out.reserve(m.intervals().size());
  for (const auto& iv : m.intervals()) out.push_back({iv.left * factor, iv.right * factor});
  return BangBangResource(Domain(m.domain().a() * factor, m.domain().b() * factor),
                          std::move(out));
}

void require_positive_mu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw Error(ErrorCode::NonpositiveMu, "mu must be positive");
}

}  // namespace

BangBangResource rescale(const BangBangResource& m, double mu) {
  require_positive_mu(mu);
  if (mu == 1.0) return m;
  return scale_by(m, 1.0 / std::sqrt(mu));
}

BangBangResource unscale(const BangBangResource& m, double mu) {
  require_positive_mu(mu);
  if (mu == 1.0) return m;
  return scale_by(m, std::sqrt(mu));
}

PiecewiseConstantResource::PiecewiseConstantResource(Domain domain, std::vector<Segment> segments)
    : domain_(domain), segments_(std::move(segments)) {
  if (segments_.empty()) throw Error(ErrorCode::InvalidParams, "no segments");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!(s.left < s.right) || s.value < 0.0 || s.value > 1.0)
      throw Error(ErrorCode::InvalidParams, "segment must have left < right and value in [0, 1]");
    if (i > 0 && s.left != segments_[i - 1].right)
      throw Error(ErrorCode::InvalidParams, "segments must tile the domain");
  }
  // Endpoint drift from arithmetic on the construction side is absorbed here.
  const double slack = 1e-9 * domain_.length();
  if (std::abs(segments_.front().left - domain_.a()) > slack ||
      std::abs(segments_.back().right - domain_.b()) > slack)
    throw Error(ErrorCode::InvalidParams, "segments must tile the domain");
  segments_.front().left = domain_.a();
  segments_.back().right = domain_.b();
}

PiecewiseConstantResource PiecewiseConstantResource::constant(Domain domain, double value) {
  return PiecewiseConstantResource(domain, {{domain.a(), domain.b(), value}});
}

PiecewiseConstantResource PiecewiseConstantResource::from(const BangBangResource& m) {
  const Domain& d = m.domain();
  std::vector<Segment> segs;
  double cursor = d.a();
  for (const auto& iv : m.intervals()) {
    if (iv.left > cursor) segs.push_back({cursor, iv.left, 0.0});
    if (iv.right > std::max(cursor, iv.left)) segs.push_back({std::max(cursor, iv.left), iv.right, 1.0});
    cursor = std::max(cursor, iv.right);
  }
  if (cursor < d.b()) segs.push_back({cursor, d.b(), 0.0});
  return PiecewiseConstantResource(d, std::move(segs));
}

double PiecewiseConstantResource::mass() const noexcept {
  double s = 0.0;
  for (const auto& seg : segments_) s += seg.value * (seg.right - seg.left);
  return s;
}

double PiecewiseConstantResource::integral(double lo, double hi) const noexcept {
  double s = 0.0;
  for (const auto& seg : segments_) {
    if (seg.right <= lo) continue;
    if (seg.left >= hi) break;
    const double l = std::max(lo, seg.left);
    const double r = std::min(hi, seg.right);
    if (r > l) s += seg.value * (r - l);
  }
  return s;
}

double PiecewiseConstantResource::level_set_measure(double value) const noexcept {
  double s = 0.0;
  for (const auto& seg : segments_)
    if (seg.value == value) s += seg.right - seg.left;
  return s;
}

double PiecewiseConstantResource::evaluate(double x) const {
  if (!domain_.contains(x)) throw Error(ErrorCode::OutOfDomain, "point outside domain");
  // Closed segments; on a shared endpoint the larger value wins.
  double v = 0.0;
  bool found = false;
  for (const auto& seg : segments_) {
    if (x >= seg.left && x <= seg.right) {
      v = found ? std::max(v, seg.value) : seg.value;
      found = true;
    }
  }
  return v;
}

bool PiecewiseConstantResource::is_bang_bang() const noexcept {
  return std::all_of(segments_.begin(), segments_.end(),
                     [](const Segment& s) { return s.value == 0.0 || s.value == 1.0; });
}

PiecewiseConstantResource PiecewiseConstantResource::mirrored() const {
  const double s = domain_.a() + domain_.b();
  std::vector<Segment> out;
  out.reserve(segments_.size());
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it)
    out.push_back({s - it->right, s - it->left, it->value});
  // Keep the tiling exact after rounding.
  for (std::size_t i = 1; i < out.size(); ++i) out[i].left = out[i - 1].right;
  return PiecewiseConstantResource(domain_, std::move(out));
}

PiecewiseConstantResource PiecewiseConstantResource::scaled(double factor) const {
  if (factor == 1.0) return *this;
  std::vector<Segment> out;
  out.reserve(segments_.size());
  for (const auto& seg : segments_) out.push_back({seg.left * factor, seg.right * factor, seg.value});
  return PiecewiseConstantResource(Domain(domain_.a() * factor, domain_.b() * factor),
                                   std::move(out));
}

void validate(const Params& p) {
  if (!(p.mu > 0.0) || !std::isfinite(p.mu))
    throw Error(ErrorCode::NonpositiveMu, "mu must be positive");
  if (p.grid_n < 64 || (p.grid_n & (p.grid_n - 1)) != 0)
    throw Error(ErrorCode::InvalidParams, "grid_n must be a power of two >= 64");
  if (!(p.tol_residual > 0.0) || !(p.tol_integral > 0.0))
    throw Error(ErrorCode::InvalidParams, "tolerances must be positive");
}

GridFunction::GridFunction(Domain d, std::vector<double> v)
    : domain(d), values(std::move(v)), h(d.length() / static_cast<double>(values.size() - 1)) {}

double GridFunction::at(double xq) const {
  const int n = cells();
  double s = (xq - domain.a()) / h;
  if (s <= 0.0) return values.front();
  if (s >= n) return values.back();
  const int j = std::min(static_cast<int>(s), n - 1);
  const double w = s - j;
  return (1.0 - w) * values[j] + w * values[j + 1];
}

nlohmann::json to_json(const BangBangResource& m) {
  nlohmann::json ivs = nlohmann::json::array();
  for (const auto& iv : m.intervals()) ivs.push_back({iv.left, iv.right});
  return {{"domain", {m.domain().a(), m.domain().b()}}, {"intervals", ivs}};
}

BangBangResource resource_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw Error(ErrorCode::Config, "field '" + field + "': " + why);
  };
  if (!j.is_object()) fail("resource", "expected an object");
  if (!j.contains("domain")) fail("domain", "missing");
  const auto& d = j.at("domain");
  if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number())
    fail("domain", "expected [a, b]");
  const Domain domain(d[0].get<double>(), d[1].get<double>());
  if (!j.contains("intervals")) fail("intervals", "missing");
  const auto& ivs = j.at("intervals");
  if (!ivs.is_array()) fail("intervals", "expected an array of [left, right] pairs");
  std::vector<Interval> out;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    const auto& iv = ivs[i];
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      fail("intervals[" + std::to_string(i) + "]", "expected [left, right]");
    out.push_back({iv[0].get<double>(), iv[1].get<double>()});
  }
  return BangBangResource(domain, std::move(out));
}

}  // namespace logopt
