#include "chshseq/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "chshseq/errors.hpp"
#include "chshseq/parallel.hpp"

namespace chshseq {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

StreamRng::StreamRng(std::uint64_t master_seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(master_seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

double StreamRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

TrajectorySample sample_once(StreamRng& rng, const QuantumState& psi, const DichotomicObservable& a,
                             const DichotomicObservable& b) {
  TrajectorySample s;
  s.order = rng.uniform() < 0.5 ? Order::ab : Order::ba;
  const auto& first = s.order == Order::ab ? a : b;
  const auto& second = s.order == Order::ab ? b : a;

  auto draw = [&rng](const QuantumState& state, const DichotomicObservable& obs) {
    return rng.uniform() < born_probability(state, obs, Outcome::plus) ? Outcome::plus : Outcome::minus;
  };

  s.outcome_first = draw(psi, first);
  QuantumState after = [&] {
    try {
      return collapse(psi, first, s.outcome_first);
    } catch (const ZeroProbabilityCollapse& e) {
      throw NumericalError(std::string("sampled an outcome of zero probability: ") + e.what());
    }
  }();
  s.outcome_second = draw(after, second);
  s.canonical_pair = s.order == Order::ab ? std::pair{s.outcome_first, s.outcome_second}
                                          : std::pair{s.outcome_second, s.outcome_first};
  return s;
}

EmpiricalStats run(std::uint64_t n, std::uint64_t seed, const QuantumState& psi, const DichotomicObservable& a,
                   const DichotomicObservable& b, std::size_t threads) {
  if (n == 0) throw ParameterError("run: sample count must be positive");
  if (psi.dim() != a.dim() || psi.dim() != b.dim()) throw DimensionError("run: dimension mismatch");

  const std::uint64_t blocks = (n + kBlockSize - 1) / kBlockSize;
  struct BlockCounts {
    std::array<std::uint64_t, 4> cells{};
    std::uint64_t order_ab = 0;
  };
  std::vector<BlockCounts> per_block(blocks);

  parallel_for(blocks, resolve_thread_count(threads), [&](std::size_t k) {
    StreamRng rng(seed, k);
    const std::uint64_t begin = k * kBlockSize;
    const std::uint64_t end = std::min(n, begin + kBlockSize);
    auto& out = per_block[k];
    for (std::uint64_t t = begin; t < end; ++t) {
      const auto s = sample_once(rng, psi, a, b);
      ++out.cells[JointDistribution::index(s.canonical_pair.first, s.canonical_pair.second)];
      if (s.order == Order::ab) ++out.order_ab;
    }
  });

  EmpiricalStats stats;
  stats.n = n;
  stats.labels = {a.name(), b.name()};
  for (const auto& block : per_block) {
    for (std::size_t c = 0; c < 4; ++c) stats.counts[c] += block.cells[c];
    stats.order_ab_count += block.order_ab;
  }
  for (std::size_t c = 0; c < 4; ++c) {
    stats.frequencies[c] = static_cast<double>(stats.counts[c]) / static_cast<double>(n);
  }
  stats.order_ab_fraction = static_cast<double>(stats.order_ab_count) / static_cast<double>(n);
  stats.max_abs_error_vs_analytic = compare(stats, mixed_joint_distribution(psi, a, b)).max_abs_error;
  return stats;
}

Comparison compare(const EmpiricalStats& stats, const JointDistribution& analytic) {
  if (stats.labels != analytic.labels) {
    throw LabelError("compare: empirical labels (" + stats.labels.first + ", " + stats.labels.second +
                     ") differ from analytic (" + analytic.labels.first + ", " + analytic.labels.second + ")");
  }
  if (stats.n == 0) throw ParameterError("compare: empty sample");
  const double n = static_cast<double>(stats.n);
  const double floor = 1.0 / (2.0 * n);
  Comparison out;
  for (std::size_t c = 0; c < 4; ++c) {
    const double p = analytic.probs[c];
    const double diff = stats.frequencies[c] - p;
    const double p_clamped = std::clamp(p, floor, 1.0 - floor);
    out.z[c] = diff / std::sqrt(p_clamped * (1.0 - p_clamped) / n);
    out.max_abs_error = std::max(out.max_abs_error, std::abs(diff));
  }
  return out;
}

}  // namespace chshseq
