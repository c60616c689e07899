#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "chshseq/observables.hpp"
#include "chshseq/sequential.hpp"

namespace chshseq {

/// One independent random stream. The generator family is mt19937_64, whose
/// output sequence is fixed by the C++ standard; stream seeds are derived
/// from (master seed, stream index) through SplitMix64, and doubles are taken
/// from the top 53 bits so results do not depend on the standard library's
/// distribution implementations.
class StreamRng {
 public:
  StreamRng(std::uint64_t master_seed, std::uint64_t stream);

  /// Uniform in [0, 1).
  double uniform();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

enum class Order { ab, ba };

struct TrajectorySample {
  Order order = Order::ab;
  Outcome outcome_first = Outcome::plus;
  Outcome outcome_second = Outcome::plus;
  /// (outcome of a, outcome of b) regardless of which was measured first.
  std::pair<Outcome, Outcome> canonical_pair{Outcome::plus, Outcome::plus};
};

/// Fair coin for the order, Born draw for the first measurement, collapse,
/// Born draw for the second on the collapsed state.
TrajectorySample sample_once(StreamRng& rng, const QuantumState& psi, const DichotomicObservable& a,
                             const DichotomicObservable& b);

struct EmpiricalStats {
  std::uint64_t n = 0;
  std::array<std::uint64_t, 4> counts{};  // JointDistribution cell order
  std::array<double, 4> frequencies{};
  std::uint64_t order_ab_count = 0;
  double order_ab_fraction = 0.0;
  double max_abs_error_vs_analytic = 0.0;
  std::pair<std::string, std::string> labels;
};

/// Trajectories are grouped into fixed blocks of kBlockSize; block k draws
/// from StreamRng(seed, k). Any sharding of blocks over threads therefore
/// produces the same counts as a serial run.
inline constexpr std::uint64_t kBlockSize = 1 << 14;

/// `threads` = 0 resolves through resolve_thread_count.
EmpiricalStats run(std::uint64_t n, std::uint64_t seed, const QuantumState& psi, const DichotomicObservable& a,
                   const DichotomicObservable& b, std::size_t threads = 0);

struct Comparison {
  double max_abs_error = 0.0;
  std::array<double, 4> z{};
};

/// z = (f - p) / sqrt(p (1 - p) / n) with p clamped to [1/(2n), 1 - 1/(2n)] in
/// the denominator. Throws LabelError when stats and analytic describe
/// different observable pairs.
Comparison compare(const EmpiricalStats& stats, const JointDistribution& analytic);

}  // namespace chshseq
