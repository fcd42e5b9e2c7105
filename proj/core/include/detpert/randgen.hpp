#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "detpert/inequalities.hpp"

namespace detpert {

// Generator configuration; fields map 1:1 to CLI flags.
struct GenConfig {
  std::uint64_t seed = 42;
  int max_dim = 32;
  int max_blocks = 5;
  double cond_cap = 1e6;
  // Probability of drawing a rank-deficient PSD matrix where PSD is allowed
  // (lemma and Grothendieck trials; never theorem perturbations).
  double psd_rank_deficient_prob = 1.0 / 3.0;

  void validate() const;
};

// splitmix64 finalizer; the fixed mixing function behind per-trial substreams.
std::uint64_t splitmix64(std::uint64_t x);

// Substream seed for trial `substream` of stream `seed`. Trials are
// order-independent and individually replayable.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t substream);

// Deterministic double-precision source: uniforms from the top 53 bits of a
// mersenne twister, normals via Box-Muller.
class Rng {
 public:
  explicit Rng(std::uint64_t raw_seed) : engine_(raw_seed) {}

  double uniform();               // [0, 1)
  double normal();                // standard normal
  int uniform_int(int lo, int hi);  // inclusive bounds

 private:
  std::mt19937_64 engine_;
};

// A = G G^T / dim + delta I with G iid standard normal and delta uniform on
// [0.1, 1]; redrawn while the estimated condition number exceeds cond_cap.
SpdMatrix random_spd(int dim, std::uint64_t substream, const GenConfig& cfg);

// D = H H^T / dim; H has fewer than dim columns with probability
// psd_rank_deficient_prob (dim permitting).
SymMatrix random_psd(int dim, std::uint64_t substream, const GenConfig& cfg);

// Same generators continuing an existing stream; used when one trial draws
// several matrices.
SpdMatrix random_spd_from(Rng& rng, int dim, const GenConfig& cfg);
SymMatrix random_psd_from(Rng& rng, int dim, const GenConfig& cfg);

// k blocks with k uniform on [2, max_blocks] and total dimension at most
// max_dim; the identical (seed, substream) pair reproduces the instance.
TheoremInstance random_instance(TheoremVariant variant, const GenConfig& cfg,
                                std::uint64_t substream);

// Ratio of power-iteration estimates of the extreme eigenvalues.
double estimate_condition(const SpdMatrix& a);

// A (C, D, partition) triple where D is a full SPD matrix rather than
// block-diagonal; the shape fed to generalized_gap.
struct CounterexampleInstance {
  SpdMatrix c;
  SpdMatrix d;
  BlockPartition partition;
  TheoremVariant variant;
  Fingerprint fingerprint;
};

// The built-in 2x2 violating instances, one per variant.
CounterexampleInstance builtin_counterexample(TheoremVariant variant);

struct SearchResult {
  bool found = false;
  std::optional<CounterexampleInstance> instance;
  double gap = 0.0;
  // Random trials consumed; 0 when the built-in seed instance already hits.
  int trials_used = 0;
};

struct SearchOptions {
  int max_trials = 1000;
  bool use_builtin_seeds = true;
  double tol_base = kDefaultTolBase;
};

// Looks for a violation of the generalized (full-D) statement: first the
// built-in seed instance when enabled, then random (C, full SPD D) pairs.
// Exhausting max_trials without a hit is a negative result, not an error.
SearchResult search_counterexample(TheoremVariant variant, const GenConfig& cfg,
                                   const SearchOptions& opts);

}  // namespace detpert
