// Copyright 2026 The madmat Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "madmat/construction.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "madmat/certified.hpp"

namespace madmat {

namespace {

constexpr int kMaxRefinements = 400;

// Certified decision of 2^m·c < e^{−1}, i.e. 2^m·c·e < 1.  The product is
// transcendental for rational c > 0, so refinement always resolves.
bool condition_i_holds(int m, const Rational& c) {
  const Rational factor = rational_pow_int(Rational(2), m) * c;
  Rational precision = make_rational(1, 16);
  for (int i = 0; i < kMaxRefinements; ++i) {
    const LogBounds product = bounds_scale(factor, e_bounds(precision));
    const int cmp = bounds_compare(product, Rational(1));
    if (cmp < 0) return true;
    if (cmp > 0) return false;
    precision /= 8;
  }
  throw Error("comparison of 2^m*c against e^-1 did not resolve");
}

// Enclosure of log*(R^{j/3}) = max{1, (j/3)·log R}, valid for every j ≥ 0.
LogBounds log_star_of_power(long long r, long long j,
                            const Rational& precision) {
  return log_star_pow_bounds(Rational(static_cast<long>(r)),
                             make_rational(j, 3), precision);
}

// Clamps a certified lower endpoint up to zero; sound whenever the enclosed
// value is known non-negative (used before integer powers of logarithms of
// arguments > 1).
LogBounds clamp_nonnegative(LogBounds b) {
  if (b.lower < 0) b.lower = 0;
  return b;
}

struct BandData {
  std::vector<IntVector> qs;
  std::vector<Rational> eps;  // certified upper bound of ε(q), same order
};

BandData make_band_data(int n, long long r, int k, const Rational& c,
                        int exponent) {
  BandData band;
  band.qs = enumerate_band(n, r, k);
  band.eps.reserve(band.qs.size());
  std::map<long long, Rational> by_height;
  for (const IntVector& q : band.qs) {
    const long long height = prod_plus(q);
    auto it = by_height.find(height);
    if (it == by_height.end()) {
      it = by_height.emplace(height, epsilon_upper(c, height, exponent))
               .first;
    }
    band.eps.push_back(it->second);
  }
  return band;
}

// True when the child cube must be removed: it meets the staged hyperplane
// (if any) or some danger set of the given band.
bool child_removed(const Cube& child, const BandData& band,
                   const std::vector<Rational>& gamma,
                   const Hyperplane* staged) {
  if (staged != nullptr && cube_meets_hyperplane(child, *staged)) return true;
  for (std::size_t i = 0; i < band.qs.size(); ++i) {
    for (const DangerPoint& point :
         candidate_points(child, band.qs[i], gamma)) {
      if (cube_meets_danger(child, point, gamma, band.eps[i])) return true;
    }
  }
  return false;
}

// The per-row integer shift that brings A_i·q + γ_i closest to zero; used to
// name the offending danger point when a scan fails.
IntVector nearest_shift(const RationalMatrix& a,
                        const std::vector<Rational>& gamma,
                        const IntVector& q) {
  IntVector p(a.rows, 0);
  const Rational half = make_rational(1, 2);
  for (int i = 0; i < a.rows; ++i) {
    const Rational value = row_form(a, gamma, i, q);
    p[i] = -to_long_long_checked(rational_floor(value + half),
                                 "nearest shift");
  }
  return p;
}

struct SearchContext {
  const ConstructionConfig* config = nullptr;
  int depth = 0;
  long long child_total = 0;
  std::vector<BandData> bands;      // band k used when forming generation k+1
  std::vector<Rational> budgets;    // certified-regime removal caps
  bool enforce_budgets = false;
  long long nodes_left = 0;
  ConstructionStats* stats = nullptr;

  std::vector<long long> chain;
  std::vector<long long> removals;
  Cube final_cube;
  MinFormCertification scan;
  long long scan_height_limit = 0;

  const Hyperplane* staged(int k) const {
    const auto& planes = config->hyperplanes;
    return static_cast<std::size_t>(k) < planes.size() ? &planes[k] : nullptr;
  }

  void charge_node() {
    if (nodes_left == 0) {
      throw Exhausted("node budget spent before reaching depth " +
                      std::to_string(depth));
    }
    --nodes_left;
    if (stats != nullptr) ++stats->nodes_tested;
  }

  void check_budget(int k, long long removed) {
    if (!enforce_budgets) return;
    if (Rational(static_cast<long>(removed)) > budgets[k]) {
      throw BudgetExceeded("removed " + std::to_string(removed) +
                           " cubes at generation " + std::to_string(k + 1) +
                           ", exceeding budget " +
                           format_rational(budgets[k]));
    }
  }

  bool leaf_accepts(const Cube& cube) {
    scan = certify_min_exceeds(cube.center(), config->gamma,
                               scan_height_limit, config->c);
    return scan.exceeds;
  }
};

// Depth-first search for a surviving path.  Every child of the current cube
// is tested (so the removal count of the final path is exact), then the
// survivors are explored in index order.  A leaf additionally has to pass
// the finite-range scan at its center; one that does not is a dead end.
bool dfs_search(SearchContext& ctx, const Cube& cube, int k, int& deepest) {
  deepest = std::max(deepest, k);
  if (k == ctx.depth) return ctx.leaf_accepts(cube);
  const BandData& band = ctx.bands[k];
  const Hyperplane* staged = ctx.staged(k);
  std::vector<long long> survivors;
  for (long long index = 0; index < ctx.child_total; ++index) {
    ctx.charge_node();
    if (!child_removed(cube.child(ctx.config->R, index), band,
                       ctx.config->gamma, staged)) {
      survivors.push_back(index);
    }
  }
  const long long removed =
      ctx.child_total - static_cast<long long>(survivors.size());
  ctx.check_budget(k, removed);
  for (long long index : survivors) {
    if (dfs_search(ctx, cube.child(ctx.config->R, index), k + 1, deepest)) {
      ctx.chain[k] = index;
      ctx.removals[k] = removed;
      if (k == ctx.depth - 1) ctx.final_cube = cube.child(ctx.config->R, index);
      return true;
    }
  }
  return false;
}

void full_frontier_search(SearchContext& ctx) {
  struct Node {
    Cube cube;
    std::vector<long long> path;
  };
  std::vector<Node> frontier;
  frontier.push_back(Node{ctx.config->initial_cube, {}});
  if (ctx.stats != nullptr) {
    ctx.stats->frontier_sizes.assign(1, 1);
    ctx.stats->frontier_peak = 1;
  }
  for (int k = 0; k < ctx.depth; ++k) {
    const BandData& band = ctx.bands[k];
    const Hyperplane* staged = ctx.staged(k);
    const std::size_t ancestor_prefix =
        static_cast<std::size_t>(h_rule(k, ctx.config->n));
    std::vector<Node> next;
    long long max_removed = 0;
    long long bucket_removed = 0;
    const std::vector<long long>* bucket_key = nullptr;
    auto close_bucket = [&]() {
      max_removed = std::max(max_removed, bucket_removed);
      bucket_removed = 0;
    };
    for (const Node& node : frontier) {
      // Removals are attributed to the generation-h_k ancestor, identified
      // by the path prefix; the frontier is in path-lexicographic order, so
      // equal prefixes are consecutive.
      if (bucket_key == nullptr ||
          !std::equal(bucket_key->begin(),
                      bucket_key->begin() + ancestor_prefix,
                      node.path.begin())) {
        if (bucket_key != nullptr) close_bucket();
        bucket_key = &node.path;
      }
      for (long long index = 0; index < ctx.child_total; ++index) {
        ctx.charge_node();
        Cube child = node.cube.child(ctx.config->R, index);
        if (child_removed(child, band, ctx.config->gamma, staged)) {
          ++bucket_removed;
        } else {
          std::vector<long long> path = node.path;
          path.push_back(index);
          next.push_back(Node{std::move(child), std::move(path)});
        }
      }
    }
    close_bucket();
    ctx.removals[k] = max_removed;
    ctx.check_budget(k, max_removed);
    if (next.empty()) {
      throw Exhausted("every branch died at generation " +
                      std::to_string(k + 1));
    }
    frontier = std::move(next);
    if (ctx.stats != nullptr) {
      ctx.stats->frontier_sizes.push_back(
          static_cast<long long>(frontier.size()));
      ctx.stats->frontier_peak =
          std::max(ctx.stats->frontier_peak,
                   static_cast<long long>(frontier.size()));
    }
  }
  for (const Node& node : frontier) {
    if (ctx.leaf_accepts(node.cube)) {
      ctx.chain = node.path;
      ctx.final_cube = node.cube;
      return;
    }
  }
  throw Exhausted("no surviving cube passed the finite-range scan at depth " +
                  std::to_string(ctx.depth));
}

std::string describe_parameter_failures(const ParameterReport& report) {
  std::ostringstream out;
  if (!report.condition_ii) out << " ii";
  if (!report.condition_iii) out << " iii";
  if (!report.tail_covered) out << " tail";
  if (!report.condition_v) out << " v";
  return out.str();
}

}  // namespace

void validate_config(const ConstructionConfig& config) {
  if (config.m < 1 || config.n < 1) {
    throw PreconditionViolated("m and n must be positive");
  }
  if (config.m + config.n < 3) {
    throw PreconditionViolated("m+n >= 3 required");
  }
  if (config.initial_cube.rows != config.m ||
      config.initial_cube.cols != config.n) {
    throw PreconditionViolated("initial cube shape does not match m x n");
  }
  if (sgn(config.initial_cube.edge) <= 0) {
    throw PreconditionViolated("initial cube edge must be positive");
  }
  if (config.gamma.size() != static_cast<std::size_t>(config.m)) {
    throw PreconditionViolated("gamma must have one entry per row");
  }
  if (sgn(config.c) <= 0) throw PreconditionViolated("c must be positive");
  if (config.R < 2) throw PreconditionViolated("R must be at least 2");
  if (config.node_budget < 1) {
    throw PreconditionViolated("node budget must be positive");
  }
  for (const Hyperplane& plane : config.hyperplanes) {
    if (plane.coefficients.rows != config.m ||
        plane.coefficients.cols != config.n) {
      throw PreconditionViolated("hyperplane shape does not match m x n");
    }
    bool any_nonzero = false;
    for (const Rational& coeff : plane.coefficients.entries) {
      if (sgn(coeff) != 0) any_nonzero = true;
    }
    if (!any_nonzero) {
      throw PreconditionViolated("hyperplane coefficients are all zero");
    }
  }
  if (config.regime == Regime::kCertifiedParameters &&
      !condition_i_holds(config.m, config.c)) {
    throw InvalidC("2^m*c must be below e^-1 in the certified regime");
  }
}

long long h_rule(int k, int n) {
  if (k < 0 || n < 1) throw PreconditionViolated("h_rule requires k >= 0, n >= 1");
  return static_cast<long long>(k) / (3LL * n);
}

ParameterReport check_parameters(const ConstructionConfig& config,
                                 int horizon) {
  if (config.m < 1 || config.n < 1 || config.m + config.n < 3) {
    throw PreconditionViolated("m+n >= 3 required");
  }
  if (sgn(config.c) <= 0 || config.R < 2 ||
      sgn(config.initial_cube.edge) <= 0 || horizon < 0) {
    throw PreconditionViolated("parameter check needs c > 0, R >= 2, l > 0, "
                               "horizon >= 0");
  }
  if (sgn(config.cond5_epsilon) <= 0 || config.cond5_epsilon >= 1) {
    throw PreconditionViolated("epsilon must lie strictly between 0 and 1");
  }
  const int exponent = config.m + config.n - 1;
  const Rational r_value(static_cast<long>(config.R));
  const Rational& ell = config.edge();

  ParameterReport report;
  report.condition_i = condition_i_holds(config.m, config.c);

  // Condition ii: R ≥ e³.  Equality is impossible, so refinement resolves.
  {
    Rational precision = make_rational(1, 16);
    for (int i = 0; i < kMaxRefinements; ++i) {
      const LogBounds e_cubed = bounds_pow_int(e_bounds(precision), 3);
      const int cmp = bounds_compare(e_cubed, r_value);
      if (cmp != 0) {
        report.condition_ii = cmp < 0;
        break;
      }
      precision /= 8;
      if (i + 1 == kMaxRefinements) {
        throw Error("comparison of R against e^3 did not resolve");
      }
    }
  }

  // Condition iii: ℓ·R^{−j/3}·log*(R^{j/3})^{m+n−1} ≤ c for j = k+1,
  // k = 0..horizon.  Each term is decided with directed rounding; terms can
  // only equal c when their enclosure is exact, so refinement resolves.
  auto term_at_most_c = [&](long long j) {
    Rational precision = make_rational(1, 64);
    for (int i = 0; i < kMaxRefinements; ++i) {
      const LogBounds x =
          rational_pow_bounds(r_value, make_rational(j, 3), precision);
      const LogBounds star = log_star_of_power(config.R, j, precision);
      const LogBounds term = bounds_scale(
          ell, bounds_mul(bounds_reciprocal(x),
                          bounds_pow_int(star, exponent)));
      if (term.upper <= config.c) return true;
      if (term.lower > config.c) return false;
      precision /= 8;
    }
    throw Error("condition iii comparison did not resolve");
  };
  report.condition_iii = true;
  for (int k = 0; k <= horizon; ++k) {
    if (!term_at_most_c(k + 1)) {
      report.condition_iii = false;
      break;
    }
  }

  // Tail: x ↦ ℓ·x^{−1}·(log x)^{m+n−1} is decreasing for x ≥ e^{m+n−1}, so
  // the horizon term dominates every later one once
  // R^{horizon+1} ≥ e^{3(m+n−1)}.
  {
    bool tail_domain = false;
    const Rational r_pow =
        rational_pow_int(r_value, static_cast<long>(horizon) + 1);
    Rational precision = make_rational(1, 16);
    for (int i = 0; i < kMaxRefinements; ++i) {
      const LogBounds e_pow = bounds_pow_int(e_bounds(precision), 3 * exponent);
      const int cmp = bounds_compare(e_pow, r_pow);
      if (cmp != 0) {
        tail_domain = cmp < 0;
        break;
      }
      precision /= 8;
      if (i + 1 == kMaxRefinements) {
        throw Error("tail domain comparison did not resolve");
      }
    }
    report.tail_covered =
        tail_domain && report.condition_iii && term_at_most_c(horizon + 1);
  }

  // Condition v: c ≤ const·ℓ^{m/(1−ε)}·log*(R^{1/3})^{−n/(1−ε)}.
  {
    const Rational one_minus_eps = 1 - config.cond5_epsilon;
    const Rational exp_ell = Rational(config.m) / one_minus_eps;
    const Rational exp_star = -(Rational(config.n) / one_minus_eps);
    Rational precision = make_rational(1, 64);
    for (int i = 0; i < kMaxRefinements; ++i) {
      const LogBounds ell_pow = rational_pow_bounds(ell, exp_ell, precision);
      const LogBounds star = log_star_of_power(config.R, 1, precision);
      const LogBounds star_pow =
          pow_bounds_of_enclosure(star, exp_star, precision);
      const LogBounds rhs =
          bounds_scale(config.cond5_const, bounds_mul(ell_pow, star_pow));
      if (config.c <= rhs.lower) {
        report.condition_v = true;
        break;
      }
      if (config.c > rhs.upper) {
        report.condition_v = false;
        break;
      }
      precision /= 8;
      if (i + 1 == kMaxRefinements) {
        throw Error("condition v comparison did not resolve");
      }
    }
  }
  return report;
}

LogBounds frak_f_from_parts(int m, int n, const Rational& c,
                            const Rational& ell, const FrakFParts& parts) {
  if (m < 1 || n < 1) throw PreconditionViolated("m, n must be positive");
  if (sgn(c) <= 0) throw PreconditionViolated("c must be positive");
  if (sgn(ell) <= 0) throw PreconditionViolated("edge must be positive");
  const Rational two_m_c = rational_pow_int(Rational(2), m) * c;
  if (two_m_c >= 1) {
    throw InvalidC("2^m*c must be below 1 for the log factor");
  }
  LogBounds log_factor = LogBounds::exact(Rational(1));
  if (m > 1) {
    // 1/(2^m c) > 1, so the true logarithm is positive; the enclosure's
    // lower endpoint may still be clamped to 0 before the integer power.
    const LogBounds log_arg = clamp_nonnegative(
        log_bounds(1 / two_m_c, make_rational(1, 1LL << 32)));
    log_factor = bounds_pow_int(log_arg, m - 1);
  }
  const LogBounds star_reciprocal = bounds_reciprocal(parts.log_star_f_k);
  LogBounds ratio_factor = LogBounds::exact(Rational(1));
  if (n > 1) {
    ratio_factor = bounds_pow_int(clamp_nonnegative(parts.log_ratio), n - 1);
  }
  const Rational scale = rational_pow_int(ell, -m) * parts.window_factor;
  const LogBounds difference =
      bounds_sub(bounds_scale(Rational(2), parts.f_k_pow), parts.f_k1_pow);
  const LogBounds bracket =
      bounds_add(parts.log_ratio, bounds_scale(scale, difference));
  return bounds_scale(
      c, bounds_mul(log_factor,
                    bounds_mul(star_reciprocal,
                               bounds_mul(ratio_factor, bracket))));
}

LogBounds frak_f(const ConstructionConfig& config, int k,
                 const Rational& precision) {
  if (k < 0) throw PreconditionViolated("k must be non-negative");
  if (sgn(precision) <= 0) {
    throw PreconditionViolated("precision must be positive");
  }
  const Rational r_value(static_cast<long>(config.R));
  FrakFParts parts;
  parts.log_star_f_k = log_star_of_power(config.R, k, precision);
  parts.log_ratio = bounds_scale(
      make_rational(1, 3), log_bounds(r_value, precision * 3));
  parts.f_k_pow = rational_pow_bounds(
      r_value, make_rational(-static_cast<long long>(k) * config.m,
                             3LL * config.n),
      precision);
  parts.f_k1_pow = rational_pow_bounds(
      r_value, make_rational(-(static_cast<long long>(k) + 1) * config.m,
                             3LL * config.n),
      precision);
  parts.window_factor = rational_pow_int(
      r_value, config.m * h_rule(k, config.n));
  return frak_f_from_parts(config.m, config.n, config.c, config.edge(), parts);
}

Rational removal_budget(const ConstructionConfig& config, int k,
                        const Rational& const_mn) {
  if (sgn(const_mn) <= 0) {
    throw PreconditionViolated("const_mn must be positive");
  }
  const Rational f_upper = frak_f(config, k, make_rational(1, 1024)).upper;
  const long window = static_cast<long>(k - h_rule(k, config.n) + 1);
  const Rational r_value(static_cast<long>(config.R));
  const Rational main_term =
      f_upper * rational_pow_int(r_value, static_cast<long>(config.l()) * window);
  const Rational side_term =
      rational_pow_int(r_value, static_cast<long>(config.l() - 1) * window);
  return const_mn * (main_term + side_term);
}

Certificate run_construction(const ConstructionConfig& config, int K,
                             SearchMode mode, ConstructionStats* stats) {
  validate_config(config);
  if (K < 0) throw PreconditionViolated("depth must be non-negative");
  if (config.regime == Regime::kCertifiedParameters) {
    const ParameterReport report = check_parameters(config, std::max(K - 1, 0));
    if (!report.all_pass()) {
      throw PreconditionViolated(
          "certified regime requires the admissibility conditions; failing:" +
          describe_parameter_failures(report));
    }
  }

  SearchContext ctx;
  ctx.config = &config;
  ctx.depth = K;
  ctx.child_total = Cube::child_count(config.R, config.m, config.n);
  ctx.nodes_left = config.node_budget;
  ctx.stats = stats;
  ctx.chain.assign(K, 0);
  ctx.removals.assign(K, 0);
  ctx.final_cube = config.initial_cube;
  ctx.scan_height_limit = band_height_limit(config.R, K);
  const int exponent = config.m + config.n - 1;
  ctx.bands.reserve(K);
  for (int k = 0; k < K; ++k) {
    ctx.bands.push_back(
        make_band_data(config.n, config.R, k, config.c, exponent));
  }
  ctx.enforce_budgets = config.regime == Regime::kCertifiedParameters;
  if (ctx.enforce_budgets) {
    ctx.budgets.reserve(K);
    for (int k = 0; k < K; ++k) {
      ctx.budgets.push_back(removal_budget(config, k, config.const_mn));
    }
  }

  if (mode == SearchMode::kDfsWitness) {
    int deepest = 0;
    if (!dfs_search(ctx, config.initial_cube, 0, deepest)) {
      throw Exhausted("every branch died; deepest generation reached: " +
                      std::to_string(deepest));
    }
  } else {
    full_frontier_search(ctx);
  }

  Certificate cert;
  cert.config = config;
  cert.K = K;
  cert.mode = mode;
  cert.chain = std::move(ctx.chain);
  cert.observed_removals = std::move(ctx.removals);
  cert.witness = ctx.final_cube.center();
  cert.finite_range_bound = ctx.scan.min_lower;
  return cert;
}

MinFormCertification certify_min_exceeds(const RationalMatrix& a,
                                         const std::vector<Rational>& gamma,
                                         long long height_limit,
                                         const Rational& threshold) {
  MinFormCertification out;
  out.min_lower = Rational(0);
  if (height_limit <= 0) {
    out.exceeds = true;
    return out;
  }
  // The starting width is tied to the threshold so coarse first evaluations
  // still have a chance to resolve the comparison immediately.
  Rational start = make_rational(1, 16);
  if (sgn(threshold) > 0 && threshold / 4 < start) start = threshold / 4;
  bool failed = false;
  bool first = true;
  for_each_with_prod_bound(
      a.cols, height_limit, [&](const IntVector& q) {
        if (failed) return;
        Rational precision = start;
        LogBounds bounds = mad_form_bounds(a, gamma, q, precision);
        for (int i = 0; i < kMaxRefinements && bounds.lower <= threshold &&
                        bounds.upper > threshold;
             ++i) {
          precision /= 8;
          bounds = mad_form_bounds(a, gamma, q, precision);
        }
        if (bounds.lower > threshold) {
          if (first || bounds.lower < out.min_lower ||
              (bounds.lower == out.min_lower && lex_less(q, out.witness_q))) {
            out.min_lower = bounds.lower;
            out.witness_q = q;
          }
          first = false;
          return;
        }
        if (bounds.upper <= threshold) {
          failed = true;
          out.min_lower = bounds.lower;
          out.witness_q = q;
          return;
        }
        throw Error("finite-range comparison did not resolve");
      });
  out.exceeds = !failed;
  return out;
}

namespace {

VerificationResult rejection(std::string reason,
                             std::optional<DangerPoint> offending = {}) {
  VerificationResult result;
  result.accepted = false;
  result.reason = std::move(reason);
  result.offending = std::move(offending);
  return result;
}

}  // namespace

VerificationResult verify_certificate(const Certificate& cert) {
  const ConstructionConfig& config = cert.config;
  // Structural sanity.
  try {
    validate_config(config);
  } catch (const Error& error) {
    return rejection(std::string("invalid configuration: ") + error.what());
  }
  if (cert.K < 0) return rejection("negative depth");
  const std::size_t depth = static_cast<std::size_t>(cert.K);
  if (cert.chain.size() != depth) {
    return rejection("chain length does not match depth");
  }
  if (cert.observed_removals.size() != depth) {
    return rejection("removal record length does not match depth");
  }
  long long child_total = 0;
  try {
    child_total = Cube::child_count(config.R, config.m, config.n);
  } catch (const Error& error) {
    return rejection(std::string("split too large: ") + error.what());
  }
  for (long long index : cert.chain) {
    if (index < 0 || index >= child_total) {
      return rejection("chain index out of range");
    }
  }
  // In dfs mode a removal count tallies siblings of one node, so it is
  // bounded by the child count; in full-frontier mode it is a maximum over
  // generation-h_k ancestors of removed generation-(k+1) descendants, so
  // the coarse structural cap is child_total^(k+1−h_k) (saturating).  The
  // exact values are re-derived later by the recount or replay stage.
  constexpr long long kCountCap = std::numeric_limits<long long>::max() / 2;
  for (std::size_t k = 0; k < cert.observed_removals.size(); ++k) {
    long long cap = child_total;
    if (cert.mode == SearchMode::kFullFrontier) {
      const long long window = static_cast<long long>(k) + 1 -
                               h_rule(static_cast<int>(k), config.n);
      cap = 1;
      for (long long i = 0; i < window && cap < kCountCap; ++i) {
        cap = (cap > kCountCap / child_total) ? kCountCap
                                              : cap * child_total;
      }
    }
    const long long removed = cert.observed_removals[k];
    if (removed < 0 || removed > cap) {
      return rejection("removal count out of range");
    }
  }
  if (cert.witness.rows != config.m || cert.witness.cols != config.n) {
    return rejection("witness shape does not match m x n");
  }

  // Recompute the cube chain from the child indices.
  std::vector<Cube> chain_cubes;
  chain_cubes.reserve(depth + 1);
  chain_cubes.push_back(config.initial_cube);
  for (std::size_t g = 0; g < depth; ++g) {
    chain_cubes.push_back(chain_cubes.back().child(config.R, cert.chain[g]));
  }

  const int exponent = config.m + config.n - 1;
  std::vector<BandData> bands;
  bands.reserve(depth);
  for (std::size_t k = 0; k < depth; ++k) {
    bands.push_back(make_band_data(config.n, config.R, static_cast<int>(k),
                                   config.c, exponent));
  }

  // Every chain cube must avoid every danger point of every band below its
  // generation — not only the incremental band — and every staged
  // hyperplane up to its generation.
  for (std::size_t g = 1; g <= depth; ++g) {
    const Cube& cube = chain_cubes[g];
    for (std::size_t b = 0; b < g; ++b) {
      const BandData& band = bands[b];
      for (std::size_t i = 0; i < band.qs.size(); ++i) {
        for (const DangerPoint& point :
             candidate_points(cube, band.qs[i], config.gamma)) {
          if (cube_meets_danger(cube, point, config.gamma, band.eps[i])) {
            return rejection("generation " + std::to_string(g) +
                                 " cube meets a danger set",
                             point);
          }
        }
      }
    }
    const std::size_t staged_count =
        std::min(g, config.hyperplanes.size());
    for (std::size_t h = 0; h < staged_count; ++h) {
      if (cube_meets_hyperplane(cube, config.hyperplanes[h])) {
        return rejection("generation " + std::to_string(g) +
                         " cube meets staged hyperplane " +
                         std::to_string(h + 1));
      }
    }
  }

  // Recount removed siblings along the chain (dfs mode records exactly
  // these).
  if (cert.mode == SearchMode::kDfsWitness) {
    for (std::size_t g = 0; g < depth; ++g) {
      const Hyperplane* staged =
          g < config.hyperplanes.size() ? &config.hyperplanes[g] : nullptr;
      long long removed = 0;
      for (long long index = 0; index < child_total; ++index) {
        if (child_removed(chain_cubes[g].child(config.R, index), bands[g],
                          config.gamma, staged)) {
          ++removed;
        }
      }
      if (removed != cert.observed_removals[g]) {
        return rejection("removal count mismatch at generation " +
                         std::to_string(g + 1) + ": recorded " +
                         std::to_string(cert.observed_removals[g]) +
                         ", recounted " + std::to_string(removed));
      }
    }
  }

  // The witness must beat the threshold on the whole finite range; checked
  // before the center comparison so a tampered witness names the offending
  // danger point.
  const long long height_limit = band_height_limit(config.R, cert.K);
  MinFormCertification scan;
  try {
    scan = certify_min_exceeds(cert.witness, config.gamma, height_limit,
                               config.c);
  } catch (const Error& error) {
    return rejection(std::string("witness scan failed: ") + error.what());
  }
  if (!scan.exceeds) {
    return rejection(
        "witness violates the finite-range bound",
        DangerPoint{nearest_shift(cert.witness, config.gamma, scan.witness_q),
                    scan.witness_q});
  }

  // Witness placement and the recorded bound value.
  const RationalMatrix center = chain_cubes.back().center();
  if (cert.witness.entries != center.entries) {
    return rejection("witness is not the center of the deepest cube");
  }
  if (cert.K == 0) {
    if (cert.finite_range_bound != 0) {
      return rejection("vacuous certificate must record bound 0");
    }
  } else {
    if (cert.finite_range_bound != scan.min_lower) {
      return rejection("recorded finite_range_bound " +
                       format_rational(cert.finite_range_bound) +
                       " differs from the recomputed bound " +
                       format_rational(scan.min_lower));
    }
    if (cert.finite_range_bound <= config.c) {
      return rejection("finite_range_bound does not exceed c");
    }
  }

  // Deterministic re-run: the certificate must be exactly what this
  // configuration produces.
  try {
    const Certificate replay =
        run_construction(config, cert.K, cert.mode, nullptr);
    if (replay.chain != cert.chain) {
      return rejection("re-run produced a different chain");
    }
    if (replay.observed_removals != cert.observed_removals) {
      return rejection("re-run produced different removal counts");
    }
    if (replay.witness.entries != cert.witness.entries) {
      return rejection("re-run produced a different witness");
    }
    if (replay.finite_range_bound != cert.finite_range_bound) {
      return rejection("re-run produced a different finite-range bound");
    }
  } catch (const Error& error) {
    return rejection(std::string("re-run failed: ") + error.what());
  }

  VerificationResult result;
  result.accepted = true;
  return result;
}

}  // namespace madmat
