#include "detpert/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace detpert {

void GenConfig::validate() const {
  if (max_dim < 1 || max_dim > 64) {
    throw DimensionMismatchError("GenConfig.max_dim must be in [1, 64]");
  }
  if (max_blocks < 1 || max_blocks > 8 || max_blocks > max_dim) {
    throw DimensionMismatchError("GenConfig.max_blocks must be in [1, 8] and <= max_dim");
  }
  if (!(cond_cap > 1.0)) {
    throw DimensionMismatchError("GenConfig.cond_cap must exceed 1");
  }
  if (psd_rank_deficient_prob < 0.0 || psd_rank_deficient_prob > 1.0) {
    throw DimensionMismatchError("GenConfig.psd_rank_deficient_prob must be in [0, 1]");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t substream) {
  return splitmix64(seed ^ splitmix64(substream));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int Rng::uniform_int(int lo, int hi) {
  const int span = hi - lo + 1;
  const int v = lo + static_cast<int>(uniform() * span);
  return std::min(v, hi);
}

namespace {

Matrix random_gaussian(Rng& rng, int rows, int cols) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.normal();
  return g;
}

double rayleigh(const SymMatrix& a, const std::vector<double>& v) {
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < a.n(); ++i) {
    double row = 0.0;
    for (int j = 0; j < a.n(); ++j) row += a(i, j) * v[j];
    num += v[i] * row;
    den += v[i] * v[i];
  }
  return num / den;
}

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  for (double& x : v) x /= s;
}

}  // namespace

double estimate_condition(const SpdMatrix& a) {
  const int n = a.dim();
  constexpr int kIters = 30;

  std::vector<double> v(n, 1.0);
  normalize(v);
  for (int it = 0; it < kIters; ++it) {
    std::vector<double> w(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w[i] += a.base()(i, j) * v[j];
    normalize(w);
    v = std::move(w);
  }
  const double lambda_max = rayleigh(a.base(), v);

  Matrix u(n, 1);
  for (int i = 0; i < n; ++i) u(i, 0) = 1.0;
  for (int it = 0; it < kIters; ++it) {
    u = a.solve(u);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += u(i, 0) * u(i, 0);
    s = std::sqrt(s);
    for (int i = 0; i < n; ++i) u(i, 0) /= s;
  }
  std::vector<double> bottom(n);
  for (int i = 0; i < n; ++i) bottom[i] = u(i, 0);
  const double lambda_min = rayleigh(a.base(), bottom);

  return lambda_max / std::max(lambda_min, 1e-300);
}

SpdMatrix random_spd_from(Rng& rng, int dim, const GenConfig& cfg) {
  while (true) {
    const Matrix g = random_gaussian(rng, dim, dim);
    const double delta = 0.1 + 0.9 * rng.uniform();
    SymMatrix a(add_scaled_identity(SymMatrix((1.0 / dim) * (g * transpose(g))), delta));
    SpdMatrix spd = cholesky(a);
    if (estimate_condition(spd) <= cfg.cond_cap) return spd;
  }
}

SymMatrix random_psd_from(Rng& rng, int dim, const GenConfig& cfg) {
  int width = dim;
  if (dim > 1 && rng.uniform() < cfg.psd_rank_deficient_prob) {
    width = rng.uniform_int(1, dim - 1);
  }
  const Matrix h = random_gaussian(rng, dim, width);
  return SymMatrix((1.0 / dim) * (h * transpose(h)));
}

SpdMatrix random_spd(int dim, std::uint64_t substream, const GenConfig& cfg) {
  cfg.validate();
  if (dim < 1 || dim > cfg.max_dim) {
    throw DimensionMismatchError("random_spd: dim out of range");
  }
  Rng rng(mix_seed(cfg.seed, substream));
  return random_spd_from(rng, dim, cfg);
}

SymMatrix random_psd(int dim, std::uint64_t substream, const GenConfig& cfg) {
  cfg.validate();
  if (dim < 1 || dim > cfg.max_dim) {
    throw DimensionMismatchError("random_psd: dim out of range");
  }
  Rng rng(mix_seed(cfg.seed, substream));
  return random_psd_from(rng, dim, cfg);
}

namespace {

// Random composition: k block sizes, each >= 1, summing to a total drawn
// uniformly from [k, max_dim].
BlockPartition random_partition(Rng& rng, int min_blocks, const GenConfig& cfg) {
  const int k = rng.uniform_int(std::min(min_blocks, cfg.max_blocks), cfg.max_blocks);
  const int total = rng.uniform_int(k, cfg.max_dim);
  std::vector<int> cuts;
  if (k > 1) {
    std::vector<int> candidates(total - 1);
    for (int i = 0; i < total - 1; ++i) candidates[i] = i + 1;
    for (int i = 0; i < k - 1; ++i) {
      const int j = rng.uniform_int(i, total - 2);
      std::swap(candidates[i], candidates[j]);
      cuts.push_back(candidates[i]);
    }
    std::sort(cuts.begin(), cuts.end());
  }
  std::vector<int> sizes;
  int prev = 0;
  for (int c : cuts) {
    sizes.push_back(c - prev);
    prev = c;
  }
  sizes.push_back(total - prev);
  return BlockPartition(std::move(sizes));
}

}  // namespace

TheoremInstance random_instance(TheoremVariant variant, const GenConfig& cfg,
                                std::uint64_t substream) {
  (void)variant;  // both variants share the hypothesis shape; the block
                  // matrices for theorem2 are derived downstream from C
  cfg.validate();
  Rng rng(mix_seed(cfg.seed, substream));
  BlockPartition partition = random_partition(rng, 2, cfg);
  SpdMatrix c = random_spd_from(rng, partition.total(), cfg);
  std::vector<SpdMatrix> ds;
  ds.reserve(partition.block_count());
  for (int i = 0; i < partition.block_count(); ++i) {
    ds.push_back(random_spd_from(rng, partition.size(i), cfg));
  }
  Fingerprint fp = fingerprint_instance(c, partition, ds, cfg.seed, substream);
  return TheoremInstance{std::move(c), std::move(partition), std::move(ds), fp};
}

CounterexampleInstance builtin_counterexample(TheoremVariant variant) {
  if (variant == TheoremVariant::theorem1) {
    SpdMatrix c = cholesky(SymMatrix{{10, 2}, {2, 5}});
    SpdMatrix d = cholesky(SymMatrix{{2, 1}, {1, 1}});
    Hasher h;
    h.add(c.base().data()).add(d.base().data());
    return CounterexampleInstance{std::move(c), std::move(d),
                                  BlockPartition({1, 1}), variant,
                                  Fingerprint{h.value(), 0, 0}};
  }
  SpdMatrix c = cholesky(SymMatrix{{2, -2}, {-2, 4}});
  SpdMatrix d = cholesky(SymMatrix{{1, 1}, {1, 2}});
  Hasher h;
  h.add(c.base().data()).add(d.base().data());
  return CounterexampleInstance{std::move(c), std::move(d), BlockPartition({1, 1}),
                                variant, Fingerprint{h.value(), 0, 0}};
}

SearchResult search_counterexample(TheoremVariant variant, const GenConfig& cfg,
                                   const SearchOptions& opts) {
  cfg.validate();
  if (opts.max_trials < 1) {
    throw DimensionMismatchError("search_counterexample: max_trials must be >= 1");
  }

  if (opts.use_builtin_seeds) {
    CounterexampleInstance seed_inst = builtin_counterexample(variant);
    const GapReport rep = generalized_gap(seed_inst.c, seed_inst.d,
                                          seed_inst.partition, variant,
                                          opts.tol_base);
    if (rep.verdict == Verdict::violated) {
      return SearchResult{true, std::move(seed_inst), rep.gap, 0};
    }
  }

  for (int trial = 0; trial < opts.max_trials; ++trial) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    BlockPartition partition = random_partition(rng, 2, cfg);
    SpdMatrix c = random_spd_from(rng, partition.total(), cfg);
    SpdMatrix d = random_spd_from(rng, partition.total(), cfg);
    const GapReport rep =
        generalized_gap(c, d, partition, variant, opts.tol_base);
    if (rep.verdict == Verdict::violated) {
      Hasher h;
      h.add(c.base().data()).add(d.base().data());
      CounterexampleInstance inst{
          std::move(c), std::move(d), std::move(partition), variant,
          Fingerprint{h.value(), cfg.seed, static_cast<std::uint64_t>(trial)}};
      return SearchResult{true, std::move(inst), rep.gap, trial + 1};
    }
  }
  return SearchResult{false, std::nullopt, 0.0, opts.max_trials};
}

}  // namespace detpert
