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

#ifndef MADMAT_CONSTRUCTION_HPP_
#define MADMAT_CONSTRUCTION_HPP_

// The concrete cube construction: danger-set pruning, hyperplane avoidance,
// parameter admissibility, witness search, and machine-checkable
// certificates.
//
// The construction refines an initial m×n matrix cube C through generations
// 0..K.  Forming generation k+1 splits every surviving generation-k cube into
// R^{mn} children and removes each child that meets either a danger set Δ(P)
// with ∏(q)³ in band k (earlier bands are inherited from the parent) or the
// staged hyperplane H_{k+1}.  A point of the deepest surviving cube therefore
// avoids every Δ(P) with ∏(q)³ < R^K and every staged hyperplane — which is
// exactly what the emitted Certificate records and what verify_certificate
// re-derives from scratch.
//
// Two regimes are deliberately decoupled.  Parameter checking
// (check_parameters) certifies the admissibility inequalities at arbitrarily
// large R by pure arithmetic, without running anything.  The executable
// construction runs at small R and certifies only the finite-range avoidance
// property; in the certified-parameters regime it additionally enforces the
// removal budgets of removal_budget against the observed removal counts.

#include <optional>
#include <string>
#include <vector>

#include "madmat/bounds.hpp"
#include "madmat/diophantine.hpp"
#include "madmat/geometry.hpp"
#include "madmat/rational.hpp"

namespace madmat {

// The admissibility constraint on c is violated (2^m·c ≥ 1 where a logarithm
// of 1/(2^m c) is required, or 2^m·c ≥ e^{−1} in the certified regime).
class InvalidC : public Error {
 public:
  explicit InvalidC(const std::string& what) : Error(what) {}
};

// Every branch of the search died before reaching the requested depth, or
// the configured node budget was spent first.
class Exhausted : public Error {
 public:
  explicit Exhausted(const std::string& what) : Error(what) {}
};

// An observed removal count exceeded the certified-regime removal budget.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

enum class SearchMode {
  kDfsWitness,    // follow one surviving child, backtracking on dead ends
  kFullFrontier,  // keep every survivor; records exact removal maxima
};

enum class Regime {
  kEmpirical,            // run regardless of the admissibility inequalities
  kCertifiedParameters,  // parameter conditions and removal budgets enforced
};

struct ConstructionConfig {
  int m = 0;
  int n = 0;
  Cube initial_cube;            // edge ℓ
  std::vector<Rational> gamma;  // length m
  Rational c = Rational(0);
  long long R = 0;
  std::vector<Hyperplane> hyperplanes;  // H_1, H_2, …; H_{k+1} staged at k+1
  Regime regime = Regime::kEmpirical;
  long long node_budget = 20'000'000;  // child tests before Exhausted

  // User-supplied constants; the source inequalities leave them unspecified,
  // so no default below claims to be canonical.
  Rational const_mn = Rational(1);      // removal-budget multiplier
  Rational cond5_const = Rational(1);   // const in the c-vs-ℓ condition
  Rational cond5_epsilon;               // ε ∈ (0,1) in the same condition

  ConstructionConfig() : cond5_epsilon(1, 2) {}

  int l() const { return m * n; }
  const Rational& edge() const { return initial_cube.edge; }
};

// Structural validation: dimensions, m+n ≥ 3, c > 0, R ≥ 2, gamma length,
// hyperplane shapes, positive node budget.  In the certified-parameters
// regime additionally requires 2^m·c < e^{−1} (throws InvalidC otherwise).
void validate_config(const ConstructionConfig& config);

// h_k = ⌊k/(3n)⌋.
long long h_rule(int k, int n);

struct ParameterReport {
  bool condition_i = false;    // 2^m·c < e^{−1}
  bool condition_ii = false;   // R ≥ e³
  bool condition_iii = false;  // ℓ·R^{−(k+1)/3}·log*(R^{(k+1)/3})^{m+n−1} ≤ c
                               // for all k = 0..horizon
  bool tail_covered = false;   // the k > horizon tail follows by monotonicity
  bool condition_v = false;    // c ≤ const·ℓ^{m/(1−ε)}·log*(R^{1/3})^{−n/(1−ε)}

  bool all_pass() const {
    return condition_i && condition_ii && condition_iii && tail_covered &&
           condition_v;
  }
};

// Certified evaluation of the admissibility conditions with directed
// rounding on the safe side: a condition is reported as passing only when
// its inequality is certainly true, and each undecided comparison is refined
// until it resolves.  The tail beyond the horizon is covered when
// R^{horizon+1} ≥ e^{3(m+n−1)} (then x ↦ x^{−1}(log x)^{m+n−1} is decreasing
// on the remaining arguments) and the horizon term itself passes.
ParameterReport check_parameters(const ConstructionConfig& config,
                                 int horizon);

// Certified enclosures of the factors of the removal-count majorant 𝔣 at
// step k of the band schedule F(k) = R^{k/3}.  Exposed separately so the
// factor values can also be supplied directly (e.g. for schedules whose
// ratio F(k+1)/F(k) is not a rational power of an integer).
struct FrakFParts {
  LogBounds log_star_f_k;        // log*(F(k))
  LogBounds log_ratio;           // log(F(k+1)/F(k))
  LogBounds f_k_pow;             // F(k)^{−m/n}
  LogBounds f_k1_pow;            // F(k+1)^{−m/n}
  Rational window_factor = Rational(1);  // ∏_{h<h_k} R_h^m (exact)
};

// 𝔣 = c·log(1/(2^m c))^{m−1}·(1/log*(F(k)))·log(F(k+1)/F(k))^{n−1}
//       ·(log(F(k+1)/F(k)) + ℓ^{−m}·(2·F(k)^{−m/n} − F(k+1)^{−m/n})·∏ R_h^m).
// Throws InvalidC when 2^m·c ≥ 1.
LogBounds frak_f_from_parts(int m, int n, const Rational& c,
                            const Rational& ell, const FrakFParts& parts);

// Same with the parts derived from config (F(k) = R^{k/3}, h_k = ⌊k/(3n)⌋),
// each certified to width ≤ precision.
LogBounds frak_f(const ConstructionConfig& config, int k,
                 const Rational& precision);

// Removal budget const_mn·(𝔣̄·R^{mn(k−h_k+1)} + R^{(mn−1)(k−h_k+1)}) using
// the upper 𝔣 bound.  Throws PreconditionViolated unless const_mn > 0.
Rational removal_budget(const ConstructionConfig& config, int k,
                        const Rational& const_mn);

struct Certificate {
  ConstructionConfig config;
  int K = 0;
  SearchMode mode = SearchMode::kDfsWitness;
  std::vector<long long> chain;              // K child indices, root down
  std::vector<long long> observed_removals;  // K per-step removal counts
  RationalMatrix witness;                    // center of the deepest cube
  Rational finite_range_bound = Rational(0);
};

struct ConstructionStats {
  long long nodes_tested = 0;     // children run through the pruning test
  long long frontier_peak = 0;    // full-frontier mode only
  std::vector<long long> frontier_sizes;  // #J_k per generation (full mode)
};

// Builds generations 0..K and returns the certificate of the found cube.
// observed_removals[k] is, in full-frontier mode, the maximum over ancestors
// J ∈ J_{h_k} of children removed while forming generation k+1 and, in
// dfs-witness mode, the number of removed siblings along the final path.
// Throws Exhausted when no branch reaches depth K within the node budget and
// BudgetExceeded when a removal count exceeds removal_budget in the
// certified-parameters regime.
Certificate run_construction(const ConstructionConfig& config, int K,
                             SearchMode mode,
                             ConstructionStats* stats = nullptr);

struct MinFormCertification {
  bool exceeds = false;     // every form value is certifiably > threshold
  Rational min_lower;       // min of the certified lower bounds (0 if vacuous)
  IntVector witness_q;      // argmin when exceeds, else the offending q
};

// Certifies min over 0 < ∏(q) ≤ height_limit of
// ∏(q)·log*(∏(q))^{m+n−1}·∏_i ‖A_i q + γ_i‖ > threshold, refining each q
// until the comparison against the threshold resolves.  height_limit = 0 is
// the vacuous case (exceeds = true, min_lower = 0).
MinFormCertification certify_min_exceeds(const RationalMatrix& a,
                                         const std::vector<Rational>& gamma,
                                         long long height_limit,
                                         const Rational& threshold);

struct VerificationResult {
  bool accepted = false;
  std::string reason;  // empty when accepted
  std::optional<DangerPoint> offending;  // set when a danger test failed
};

// Re-derives everything the certificate claims, trusting none of it:
// structural sanity, the cube chain from the child indices, every chain
// cube against every danger point of all bands below its generation and all
// staged hyperplanes up to its generation, the recorded removal counts
// (sibling recount in dfs mode, deterministic re-run comparison in
// full-frontier mode), the witness's finite-range bound by exhaustive
// certified scan, witness = center of the deepest cube, and the recorded
// bound value itself.
VerificationResult verify_certificate(const Certificate& cert);

}  // namespace madmat

#endif  // MADMAT_CONSTRUCTION_HPP_
