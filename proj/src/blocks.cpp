#include "logopt/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "logopt/equilibrium.hpp"
#include "logopt/format.hpp"
#include "logopt/phaseplane.hpp"

namespace logopt {

std::string_view to_string(Orientation o) {
  return o == Orientation::ResourceLeft ? "resource-left" : "resource-right";
}

Decomposition block_decompose(const BangBangResource& m, const Params& p) {
  validate(p);
  const ValidResource v = validate(m);
  const double root = std::sqrt(p.mu);
  const auto m_r = PiecewiseConstantResource::from(v.resource).scaled(1.0 / root);
  Params q = p;
  q.mu = 1.0;
  const EquilibriumSolution sol = require_converged(solve(m_r, q));

  Decomposition out;
  out.config.domain_length = m.domain().length();
  out.config.mu = p.mu;
  for (const Span& s : monotone_spans(m_r, sol)) {
    if (!is_monotone_characteristic(s)) {
      out.decomposable = false;
      out.config.blocks.clear();
      out.span_lo = root * s.lo;
      out.span_hi = root * s.hi;
      return out;
    }
    Block b;
    b.l = s.hi - s.lo;
    for (const auto& piece : s.pieces)
      if (piece.value == 1.0) b.b += piece.right - piece.left;
    if (s.pieces.size() == 2)
      b.orientation = s.pieces[0].value == 1.0 ? Orientation::ResourceLeft : Orientation::ResourceRight;
    else
      b.orientation = s.direction < 0 ? Orientation::ResourceLeft : Orientation::ResourceRight;
    out.config.blocks.push_back(b);
  }
  out.decomposable = true;
  return out;
}

double advantage(double l, double b, const Params& p) {
  if (!(l > 0.0) || b < 0.0 || b > l)
    throw Error(ErrorCode::InvalidParams, "advantage needs l > 0 and 0 <= b <= l");
  if (b == 0.0 || b == l) return 0.0;
  Params q = p;
  q.mu = 1.0;
  const PiecewiseConstantResource m(Domain(0.0, l), {{0.0, b, 1.0}, {b, l, 0.0}});
  const EquilibriumSolution sol = require_converged(solve(m, q));
  return total_population(sol) - b;
}

double population_from_blocks(const BlockConfig& c, const Params& p) {
  double mass = 0.0, sum = 0.0;
  for (const auto& b : c.blocks) {
    mass += b.b;
    sum += advantage(b.l, b.b, p);
  }
  const double root = std::sqrt(c.mu);
  return root * mass + root * sum;
}

std::vector<SurfacePoint> advantage_surface(double l_min, double l_max, int nl, double r_min,
                                            double r_max, int nr, const Params& p) {
  if (!(l_min > 0.0) || l_max < l_min || r_min < 0.0 || r_max > 1.0 || r_max < r_min || nl < 1 ||
      nr < 1)
    throw Error(ErrorCode::InvalidParams, "surface ranges must be positive with b/l in [0, 1]");
  auto node = [](double lo, double hi, int n, int i) {
    if (n == 1) return lo;
    return i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  };
  std::vector<SurfacePoint> out;
  out.reserve(static_cast<std::size_t>(nl) * nr);
  for (int i = 0; i < nl; ++i) {
    const double l = node(l_min, l_max, nl, i);
    for (int j = 0; j < nr; ++j) {
      const double r = node(r_min, r_max, nr, j);
      // r == 1 must give b == l exactly
      const double b = r == 1.0 ? l : r * l;
      out.push_back({l, r, advantage(l, b, p)});
    }
  }
  return out;
}

std::string surface_csv(const std::vector<SurfacePoint>& s) {
  std::string out = "l,b_over_l,H\n";
  for (const auto& pt : s) {
    out += format_double(pt.l);
    out += ',';
    out += format_double(pt.b_over_l);
    out += ',';
    out += format_double(pt.H);
    out += '\n';
  }
  return out;
}

Partials advantage_partials(double l, double b, const Params& p) {
  const double step = 1e-4 * std::min({l, b, l - b});
  if (!(step > 1e-13 * l)) {
    std::ostringstream os;
    os << "finite-difference step " << step << " degenerates at (l, b) = (" << l << ", " << b << ")";
    throw Error(ErrorCode::StepUnderflow, os.str());
  }
  const double dl = (advantage(l + step, b, p) - advantage(l - step, b, p)) / (2.0 * step);
  const double db = (advantage(l, b + step, p) - advantage(l, b - step, p)) / (2.0 * step);
  return {dl, db};
}

double superlinearity_check(double l1, double b1, double l2, double b2, const Params& p) {
  return advantage(l1 + l2, b1 + b2, p) - advantage(l1, b1, p) - advantage(l2, b2, p);
}

namespace {

struct Enumerator {
  double L, B;
  int n;
  const Params& p;
  std::map<std::pair<int, int>, double> cache;

  double H(int i, int j) {
    auto it = cache.find({i, j});
    if (it != cache.end()) return it->second;
    const double l = i == n ? L : L * i / n;
    const double b = j == n ? B : B * j / n;
    const double v = advantage(l, std::min(b, l), p);
    cache.emplace(std::make_pair(i, j), v);
    return v;
  }
};

// Compositions of total into r positive (or nonnegative) parts.
void compositions(int total, int r, bool positive, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (r == 1) {
    if (!positive || total > 0) {
      cur.push_back(total);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (int k = positive ? 1 : 0; k <= total; ++k) {
    cur.push_back(k);
    compositions(total - k, r - 1, positive, cur, out);
    cur.pop_back();
  }
}

}  // namespace

OptimizeResult optimize_small_resource(double domain_length, double m0, double mu, int r_max,
                                       int grid, const Params& p, double m0_max) {
  if (!(domain_length > 0.0) || !(m0 > 0.0) || !(m0 < 1.0) || r_max < 1 || r_max > 3 || grid < 2)
    throw Error(ErrorCode::InvalidParams, "optimize needs |Omega| > 0, 0 < m0 < 1, 1 <= r <= 3");
  if (!(mu > 0.0)) throw Error(ErrorCode::NonpositiveMu, "mu must be positive");
  const double root = std::sqrt(mu);
  Enumerator en{domain_length / root, m0 * domain_length / root, grid, p, {}};

  OptimizeResult out;
  out.regime_violation = m0 > m0_max;
  const double base = m0 * domain_length;
  for (int r = 1; r <= r_max; ++r) {
    std::vector<std::vector<int>> ls, bs;
    std::vector<int> cur;
    compositions(grid, r, true, cur, ls);
    compositions(grid, r, false, cur, bs);
    for (const auto& li : ls) {
      for (const auto& bj : bs) {
        bool ok = true;
        double sum = 0.0;
        for (int k = 0; k < r; ++k) {
          if (en.B * bj[k] > en.L * li[k]) ok = false;
        }
        if (!ok) continue;
        for (int k = 0; k < r; ++k) sum += en.H(li[k], bj[k]);
        for (int mask = 0; mask < (1 << r); ++mask) {
          ScoredConfig c;
          for (int k = 0; k < r; ++k) {
            Block blk;
            blk.l = li[k] == grid ? en.L : en.L * li[k] / grid;
            blk.b = bj[k] == grid ? en.B : en.B * bj[k] / grid;
            blk.orientation = (mask >> k) & 1 ? Orientation::ResourceRight : Orientation::ResourceLeft;
            c.blocks.push_back(blk);
          }
          c.F = base + root * sum;
          out.configs.push_back(std::move(c));
        }
      }
    }
  }
  out.evaluations = static_cast<int>(en.cache.size());

  const double single = base + root * en.H(grid, grid);
  double fmax = -1.0;
  for (const auto& c : out.configs) fmax = std::max(fmax, c.F);
  for (auto& c : out.configs) {
    c.gap = single - c.F;
    if (c.F >= fmax - 1e-12) out.best.push_back(c);
  }
  out.single_block_wins = true;
  for (const auto& c : out.best)
    if (c.blocks.size() != 1) out.single_block_wins = false;

  // Gap against m0^2 (|Omega| - l_max) over configurations that split Omega.
  std::vector<double> gx, gy;
  double c3 = std::numeric_limits<double>::infinity();
  for (const auto& c : out.configs) {
    if (c.blocks.size() < 2) continue;
    double lmax = 0.0;
    for (const auto& b : c.blocks) lmax = std::max(lmax, b.l);
    const double x = m0 * m0 * (domain_length - root * lmax);
    if (!(x > 0.0)) continue;
    gx.push_back(x);
    gy.push_back(c.gap);
    c3 = std::min(c3, c.gap / x);
    if (!(c.gap > 0.0)) out.single_block_wins = false;
  }
  out.fitted_C3 = gx.empty() ? 0.0 : c3;
  if (gx.size() > 1) {
    const double n = static_cast<double>(gx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      mx += gx[i];
      my += gy[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      sxy += (gx[i] - mx) * (gy[i] - my);
      sxx += (gx[i] - mx) * (gx[i] - mx);
      syy += (gy[i] - my) * (gy[i] - my);
    }
    out.correlation = sxx > 0.0 && syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 0.0;
  }
  return out;
}

nlohmann::json to_json(const Block& b) {
  return {{"l", b.l}, {"b", b.b}, {"orientation", std::string(to_string(b.orientation))}};
}

namespace {
nlohmann::json config_json(const ScoredConfig& c) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : c.blocks) blocks.push_back(to_json(b));
  return {{"blocks", blocks}, {"F", c.F}, {"gap", c.gap}};
}
}  // namespace

nlohmann::json to_json(const OptimizeResult& r) {
  nlohmann::json best = nlohmann::json::array(), gaps = nlohmann::json::array();
  for (const auto& c : r.best) best.push_back(config_json(c));
  for (const auto& c : r.configs) gaps.push_back(config_json(c));
  return {{"best", best},
          {"gaps", gaps},
          {"fitted_C3", r.fitted_C3},
          {"correlation", r.correlation},
          {"single_block_wins", r.single_block_wins},
          {"regime_violation", r.regime_violation}};
}

}  // namespace logopt
