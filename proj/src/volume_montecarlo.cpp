#include "kmvol/volume.hpp"

#include "kmvol/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace kmvol {

namespace {

struct ChunkStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations
};

// Chan et al. pairwise update.
void merge(ChunkStats& into, const ChunkStats& other) {
  if (other.count == 0) return;
  const double total = static_cast<double>(into.count + other.count);
  const double delta = other.mean - into.mean;
  into.mean += delta * static_cast<double>(other.count) / total;
  into.m2 += other.m2 + delta * delta * static_cast<double>(into.count) *
                            static_cast<double>(other.count) / total;
  into.count += other.count;
}

std::mt19937_64 chunk_stream(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

VolumeEstimate volume_montecarlo(const ShapeMatrix& s, std::int64_t samples, std::uint64_t seed,
                                 int threads) {
  if (samples <= 0) throw Error(ErrorCode::InvalidSampleCount, "sample count must be positive");
  if (classify_hyperbolicity(s).verdict == Verdict::not_hyperbolic)
    throw Error(ErrorCode::NotHyperbolic, "the volume integral diverges");
  const QForm q = make_qform(s);
  const int n = q.n();
  const double exponent = -0.5 * n;
  // Samples with Q >= 1 have probability zero; rounding can still produce
  // one next to a cusp, so the gap is floored.
  const double min_gap = std::numeric_limits<double>::epsilon();

  const auto chunks = static_cast<std::size_t>((samples + kMonteCarloChunk - 1) / kMonteCarloChunk);
  std::vector<ChunkStats> stats(chunks);
  detail::parallel_for(chunks, threads, [&](std::size_t c, std::size_t) {
    auto gen = chunk_stream(seed, c);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kMonteCarloChunk;
    const std::int64_t count = std::min(kMonteCarloChunk, samples - begin);
    Eigen::VectorXd u(n);
    Eigen::VectorXd t(n);
    ChunkStats st;
    for (std::int64_t k = 0; k < count; ++k) {
      // Spacings of sorted uniforms are uniform on the simplex.
      for (int i = 0; i < n; ++i) u(i) = unit_uniform(gen);
      std::sort(u.data(), u.data() + n);
      t(0) = u(0);
      for (int i = 1; i < n; ++i) t(i) = u(i) - u(i - 1);
      const double gap = std::max(1.0 - quadratic_form(q.S, t), min_gap);
      const double f = std::pow(gap, exponent);
      ++st.count;
      const double delta = f - st.mean;
      st.mean += delta / static_cast<double>(st.count);
      st.m2 += delta * (f - st.mean);
    }
    stats[c] = st;
  });

  ChunkStats total;
  for (const auto& st : stats) merge(total, st);

  double nfact = 1.0;
  for (int k = 2; k <= n; ++k) nfact *= k;
  const double scale = q.sqrt_det / n / nfact;
  const double variance = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;

  VolumeEstimate est;
  est.method = Method::montecarlo;
  est.value = scale * total.mean;
  est.error_bound = scale * std::sqrt(variance / static_cast<double>(total.count));
  est.work = total.count;
  est.converged = true;
  return est;
}

}  // namespace kmvol
