#pragma once

#include <cstdint>

#include "sst/matrix.hpp"

namespace sst {

// One Bernoulli(M[i][j]) draw per pair above the diagonal, skew-completed;
// the diagonal is Bernoulli(1/2). Outcome draws are addressed per pair, so
// they do not depend on draw order.
ObservationMatrix sample_full(const ProbabilityMatrix& m, std::uint64_t seed);

// Each unordered pair is kept independently with probability p_obs; kept
// pairs are sampled as in sample_full, dropped pairs are absent on both
// sides. Presence and outcome draws come from disjoint streams: changing
// p_obs never perturbs the outcome of a pair present under both settings.
// The diagonal is always observed.
ObservationMatrix sample_partial(const ProbabilityMatrix& m, double p_obs, std::uint64_t seed);

// Absent entries (and the diagonal) are replaced by 1/2, then
//   Y' = (1/p) Y - (1-p)/(2p) * ones
// entrywise, which makes E[Y'] equal to the ground truth.
LinearizedObservation linearize_partial(const ObservationMatrix& y);

}  // namespace sst
