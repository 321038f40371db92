#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sst/error.hpp"

namespace sst {

// Strict tolerance used when validating exact (generator-produced) matrices;
// estimators re-validate their float output with kLooseTol.
constexpr double kStrictTol = 1e-9;
constexpr double kLooseTol = 1e-6;

// Dense row-major square matrix of doubles. Plain storage, no invariants.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n, double fill = 0.0)
      : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {}

  int size() const { return n_; }
  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool operator==(const Matrix&) const = default;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

// Total ordering of n items. ranks()[i] is the rank of item i, 0-based with
// rank 0 the most preferred; serialized 1-based. rank_of(i) < rank_of(j)
// means item i is preferred to item j.
class Permutation {
 public:
  static Permutation identity(int n);
  // Validates that `ranks` is a bijection on {0..n-1}; throws BadPermutation.
  static Permutation from_ranks(std::vector<int> ranks);
  // Ranks given 1-based, as in the serialized form.
  static Permutation from_ranks_one_based(const std::vector<int>& ranks);

  int size() const { return static_cast<int>(rank_.size()); }
  int rank_of(int item) const { return rank_[item]; }
  int item_at(int rank) const { return item_[rank]; }
  const std::vector<int>& ranks() const { return rank_; }
  Permutation inverse() const;

  bool operator==(const Permutation&) const = default;

 private:
  Permutation(std::vector<int> rank, std::vector<int> item)
      : rank_(std::move(rank)), item_(std::move(item)) {}
  std::vector<int> rank_;  // item -> rank
  std::vector<int> item_;  // rank -> item
};

// n x n matrix of pairwise win probabilities. Immutable once validated:
// entries in [0,1], M[j][i] = 1 - M[i][j], diagonal 1/2.
class ProbabilityMatrix {
 public:
  int size() const { return m_.size(); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Matrix& values() const { return m_; }

  friend ProbabilityMatrix validate_probability_matrix(Matrix m, double tol);

 private:
  explicit ProbabilityMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

// Validates a raw square array; throws Error with code NotSquare,
// EntryOutOfRange, SkewViolation or DiagonalNotHalf. The returned matrix is
// NOT renormalized: entries are kept bit-for-bit.
ProbabilityMatrix validate_probability_matrix(Matrix m, double tol = kStrictTol);
ProbabilityMatrix validate_probability_matrix(const std::vector<std::vector<double>>& raw,
                                              double tol = kStrictTol);

// result[pi(i)][pi(j)] = M[i][j]: relabels items by rank, so a matrix
// faithful to pi becomes faithful to the identity.
ProbabilityMatrix permute(const ProbabilityMatrix& m, const Permutation& pi);
Matrix permute(const Matrix& m, const Permutation& pi);

double frobenius_distance_sq(const ProbabilityMatrix& a, const ProbabilityMatrix& b);
double frobenius_distance_sq(const Matrix& a, const Matrix& b);

// Outcomes of one comparison per pair: 0, 1, or absent. Skew-consistent by
// construction (outcome(j,i) = 1 - outcome(i,j) when present).
class ObservationMatrix {
 public:
  enum class Mode { full, partial };
  static constexpr std::int8_t kAbsent = -1;

  // `outcomes` must already satisfy the skew and mode invariants; validated.
  static ObservationMatrix create(int n, std::vector<std::int8_t> outcomes, Mode mode,
                                  double p_obs = 1.0);

  int size() const { return n_; }
  Mode mode() const { return mode_; }
  double p_obs() const { return p_obs_; }
  std::int8_t outcome(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  bool present(int i, int j) const { return outcome(i, j) != kAbsent; }

  // Full-mode matrix as 0/1 doubles (diagonal as sampled).
  Matrix to_real() const;

 private:
  ObservationMatrix(int n, std::vector<std::int8_t> d, Mode mode, double p_obs)
      : n_(n), data_(std::move(d)), mode_(mode), p_obs_(p_obs) {}
  int n_;
  std::vector<std::int8_t> data_;
  Mode mode_;
  double p_obs_;
};

// The rescaled partial-observation matrix Y': unbiased for the ground truth,
// satisfies values[i][j] + values[j][i] = 1 for all i, j.
struct LinearizedObservation {
  Matrix values;
  double p_obs = 1.0;
  int size() const { return values.size(); }
};

// --- CSV / text serialization ------------------------------------------------
// Matrix files: one row per line, comma-separated decimal floats, no header.
// Observation files: same shape, absent entries as empty fields.
// Permutations: a single comma-separated line of 1-based ranks.

void write_matrix_csv(std::ostream& os, const Matrix& m);
Matrix read_matrix_csv(std::istream& is);
void write_matrix_csv_file(const std::string& path, const Matrix& m);
Matrix read_matrix_csv_file(const std::string& path);

void write_observation_csv(std::ostream& os, const ObservationMatrix& y);
ObservationMatrix read_observation_csv(std::istream& is, double p_obs);
void write_observation_csv_file(const std::string& path, const ObservationMatrix& y);
ObservationMatrix read_observation_csv_file(const std::string& path, double p_obs);

std::string permutation_to_string(const Permutation& pi);
Permutation permutation_from_string(const std::string& line);

}  // namespace sst
