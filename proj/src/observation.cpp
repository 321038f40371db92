#include "sst/observation.hpp"

#include "sst/rng.hpp"

namespace sst {

namespace {

std::vector<std::int8_t> sample_outcomes(const ProbabilityMatrix& m, std::uint64_t seed,
                                         const Rng* presence, double p_obs) {
  const int n = m.size();
  Rng outcome(seed, kStreamOutcome);
  Rng diagonal(seed, kStreamDiagonal);
  std::vector<std::int8_t> out(static_cast<std::size_t>(n) * n, ObservationMatrix::kAbsent);
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i) * n + i] =
        diagonal.bernoulli_at(static_cast<std::uint64_t>(i), 0.5) ? 1 : 0;
    for (int j = i + 1; j < n; ++j) {
      const std::uint64_t pair = static_cast<std::uint64_t>(i) * n + j;
      if (presence != nullptr && !presence->bernoulli_at(pair, p_obs)) continue;
      const std::int8_t y = outcome.bernoulli_at(pair, m(i, j)) ? 1 : 0;
      out[static_cast<std::size_t>(i) * n + j] = y;
      out[static_cast<std::size_t>(j) * n + i] = static_cast<std::int8_t>(1 - y);
    }
  }
  return out;
}

}  // namespace

ObservationMatrix sample_full(const ProbabilityMatrix& m, std::uint64_t seed) {
  return ObservationMatrix::create(m.size(), sample_outcomes(m, seed, nullptr, 1.0),
                                   ObservationMatrix::Mode::full);
}

ObservationMatrix sample_partial(const ProbabilityMatrix& m, double p_obs, std::uint64_t seed) {
  if (!(p_obs > 0.0 && p_obs <= 1.0)) {
    throw Error(Errc::PObsOutOfRange, "p_obs must lie in (0,1]");
  }
  Rng presence(seed, kStreamPresence);
  return ObservationMatrix::create(m.size(), sample_outcomes(m, seed, &presence, p_obs),
                                   ObservationMatrix::Mode::partial, p_obs);
}

LinearizedObservation linearize_partial(const ObservationMatrix& y) {
  if (y.mode() != ObservationMatrix::Mode::partial) {
    throw Error(Errc::ModeMismatch, "linearize_partial needs partial-mode observations");
  }
  const int n = y.size();
  const double p = y.p_obs();
  const double offset = (1.0 - p) / (2.0 * p);
  Matrix v(n);
  for (int i = 0; i < n; ++i) {
    v(i, i) = 0.5;
    for (int j = i + 1; j < n; ++j) {
      const double raw = y.present(i, j) ? static_cast<double>(y.outcome(i, j)) : 0.5;
      v(i, j) = raw / p - offset;
      v(j, i) = 1.0 - v(i, j);
    }
  }
  return {std::move(v), p};
}

}  // namespace sst
