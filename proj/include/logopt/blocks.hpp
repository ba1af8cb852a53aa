#pragma once

#include <string>
#include <vector>

#include "logopt/model.hpp"

namespace logopt {

enum class Orientation { ResourceLeft, ResourceRight };

std::string_view to_string(Orientation o);

/// Rescaled block: length l, resource length b at one end.
struct Block {
  double l = 0.0;
  double b = 0.0;
  Orientation orientation = Orientation::ResourceLeft;
};

struct BlockConfig {
  std::vector<Block> blocks;
  double domain_length = 1.0;  ///< physical |Omega|
  double mu = 1.0;
};

struct Decomposition {
  bool decomposable = false;
  BlockConfig config;
  /// Offending span (physical units) when not decomposable.
  double span_lo = 0.0;
  double span_hi = 0.0;
};

/// Splits Omega at the critical points of theta and reads off (l_i, b_i)
/// in rescaled units.
Decomposition block_decompose(const BangBangResource& m, const Params& p);

/// H(l, b) = integral of theta_{l,b} - b, solved with mu = 1 on (0, l) and
/// m = chi_(0,b) on p.grid_n cells. Exactly 0 when b = 0 or b = l.
double advantage(double l, double b, const Params& p);

/// F = m0 |Omega| + sqrt(mu) * sum H(l_i, b_i).
double population_from_blocks(const BlockConfig& c, const Params& p);

struct SurfacePoint {
  double l;
  double b_over_l;
  double H;
};

/// Row-major in l, then b/l; n points per axis including both ends.
std::vector<SurfacePoint> advantage_surface(double l_min, double l_max, int nl, double r_min,
                                            double r_max, int nr, const Params& p);
/// Header l,b_over_l,H.
std::string surface_csv(const std::vector<SurfacePoint>& s);

struct Partials {
  double dH_dl;
  double dH_db;
};

/// Centered differences with step 1e-4 * min(l, b, l - b). Throws
/// StepUnderflow when the step degenerates.
Partials advantage_partials(double l, double b, const Params& p);

/// H(l1 + l2, b1 + b2) - H(l1, b1) - H(l2, b2).
double superlinearity_check(double l1, double b1, double l2, double b2, const Params& p);

struct ScoredConfig {
  std::vector<Block> blocks;
  double F;
  double gap;  ///< F(single boundary block) - F
};

struct OptimizeResult {
  std::vector<ScoredConfig> best;  ///< all maximizers within 1e-12
  std::vector<ScoredConfig> configs;
  double fitted_C3 = 0.0;          ///< min gap / (m0^2 (|Omega| - l_max)) over split configs
  double correlation = 0.0;        ///< Pearson(gap, m0^2 (|Omega| - l_max)) over split configs
  bool single_block_wins = false;
  bool regime_violation = false;   ///< m0 above the small-resource threshold
  int evaluations = 0;             ///< distinct solver calls
};

/// Exhaustive enumeration of configurations with r <= r_max blocks whose
/// lengths and resources lie on an n-point simplex grid, all orientations.
OptimizeResult optimize_small_resource(double domain_length, double m0, double mu, int r_max,
                                       int grid, const Params& p, double m0_max = 0.1);

nlohmann::json to_json(const Block& b);
nlohmann::json to_json(const OptimizeResult& r);

}  // namespace logopt
