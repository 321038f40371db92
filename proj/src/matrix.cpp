#include "sst/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace sst {

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Permutation(v, v);
}

Permutation Permutation::from_ranks(std::vector<int> ranks) {
  const int n = static_cast<int>(ranks.size());
  std::vector<int> item(n, -1);
  for (int i = 0; i < n; ++i) {
    if (ranks[i] < 0 || ranks[i] >= n || item[ranks[i]] != -1) {
      throw Error(Errc::BadPermutation, "ranks are not a bijection on {0.." +
                                            std::to_string(n - 1) + "}", i);
    }
    item[ranks[i]] = i;
  }
  return Permutation(std::move(ranks), std::move(item));
}

Permutation Permutation::from_ranks_one_based(const std::vector<int>& ranks) {
  std::vector<int> zero_based(ranks.size());
  for (std::size_t i = 0; i < ranks.size(); ++i) zero_based[i] = ranks[i] - 1;
  return from_ranks(std::move(zero_based));
}

Permutation Permutation::inverse() const {
  return Permutation(item_, rank_);
}

ProbabilityMatrix validate_probability_matrix(Matrix m, double tol) {
  const int n = m.size();
  if (n < 2) throw Error(Errc::NotSquare, "need a square matrix with n >= 2");
  for (int i = 0; i < n; ++i) {
    if (std::abs(m(i, i) - 0.5) > tol) {
      throw Error(Errc::DiagonalNotHalf, "diagonal entry " + std::to_string(i) + " is not 1/2",
                  i, i);
    }
    for (int j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (!(v >= -tol && v <= 1.0 + tol)) {
        throw Error(Errc::EntryOutOfRange,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside [0,1]",
                    i, j);
      }
      if (j > i && std::abs(m(j, i) - (1.0 - v)) > tol) {
        throw Error(Errc::SkewViolation,
                    "entry (" + std::to_string(j) + "," + std::to_string(i) +
                        ") != 1 - entry (" + std::to_string(i) + "," + std::to_string(j) + ")",
                    j, i);
      }
    }
  }
  return ProbabilityMatrix(std::move(m));
}

ProbabilityMatrix validate_probability_matrix(const std::vector<std::vector<double>>& raw,
                                              double tol) {
  const int n = static_cast<int>(raw.size());
  for (const auto& row : raw) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(Errc::NotSquare, "row length does not match row count");
    }
  }
  if (n < 2) throw Error(Errc::NotSquare, "need a square matrix with n >= 2");
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = raw[i][j];
  return validate_probability_matrix(std::move(m), tol);
}

Matrix permute(const Matrix& m, const Permutation& pi) {
  const int n = m.size();
  if (pi.size() != n) throw Error(Errc::SizeMismatch, "permutation size does not match matrix");
  Matrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(pi.rank_of(i), pi.rank_of(j)) = m(i, j);
  return out;
}

ProbabilityMatrix permute(const ProbabilityMatrix& m, const Permutation& pi) {
  // Relabeling preserves all three invariants exactly.
  return validate_probability_matrix(permute(m.values(), pi), 1.0);
}

double frobenius_distance_sq(const Matrix& a, const Matrix& b) {
  const int n = a.size();
  if (b.size() != n) throw Error(Errc::SizeMismatch, "matrix sizes differ");
  double s = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (std::size_t k = 0; k < static_cast<std::size_t>(n) * n; ++k) {
    const double d = pa[k] - pb[k];
    s += d * d;
  }
  return s;
}

double frobenius_distance_sq(const ProbabilityMatrix& a, const ProbabilityMatrix& b) {
  return frobenius_distance_sq(a.values(), b.values());
}

ObservationMatrix ObservationMatrix::create(int n, std::vector<std::int8_t> outcomes, Mode mode,
                                            double p_obs) {
  if (n < 2 || outcomes.size() != static_cast<std::size_t>(n) * n) {
    throw Error(Errc::NotSquare, "outcome array does not match n");
  }
  if (mode == Mode::partial && !(p_obs > 0.0 && p_obs <= 1.0)) {
    throw Error(Errc::PObsOutOfRange, "p_obs must lie in (0,1]");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::int8_t a = outcomes[static_cast<std::size_t>(i) * n + j];
      const std::int8_t b = outcomes[static_cast<std::size_t>(j) * n + i];
      const bool ok = (a == kAbsent && b == kAbsent) ||
                      (a != kAbsent && b != kAbsent && b == 1 - a);
      if (!ok) {
        throw Error(Errc::SkewViolation, "outcomes are not skew-consistent", i, j);
      }
      if (mode == Mode::full && a == kAbsent) {
        throw Error(Errc::ModeMismatch, "absent off-diagonal entry in full mode", i, j);
      }
    }
    if (outcomes[static_cast<std::size_t>(i) * n + i] == kAbsent) {
      throw Error(Errc::ModeMismatch, "diagonal entries are always observed", i, i);
    }
  }
  return ObservationMatrix(n, std::move(outcomes), mode, mode == Mode::full ? 1.0 : p_obs);
}

Matrix ObservationMatrix::to_real() const {
  if (mode_ != Mode::full) {
    throw Error(Errc::ModeMismatch, "to_real requires full observations; linearize instead");
  }
  Matrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = static_cast<double>(outcome(i, j));
  return m;
}

// --- serialization -----------------------------------------------------------

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Trim to the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

void write_matrix_csv(std::ostream& os, const Matrix& m) {
  const int n = m.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

Matrix read_matrix_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& f : split_line(line)) {
      try {
        row.push_back(std::stod(f));
      } catch (const std::exception&) {
        throw Error(Errc::ParseError, "bad numeric field '" + f + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw Error(Errc::NotSquare, "CSV is not square");
    }
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

void write_matrix_csv_file(const std::string& path, const Matrix& m) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::ParseError, "cannot open " + path + " for writing");
  write_matrix_csv(os, m);
}

Matrix read_matrix_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(Errc::ParseError, "cannot open " + path);
  return read_matrix_csv(is);
}

void write_observation_csv(std::ostream& os, const ObservationMatrix& y) {
  const int n = y.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) os << ',';
      if (y.present(i, j)) os << static_cast<int>(y.outcome(i, j));
    }
    os << '\n';
  }
}

ObservationMatrix read_observation_csv(std::istream& is, double p_obs) {
  std::vector<std::vector<std::int8_t>> rows;
  bool any_absent = false;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::int8_t> row;
    for (const auto& f : split_line(line)) {
      if (f.empty()) {
        row.push_back(ObservationMatrix::kAbsent);
        any_absent = true;
      } else if (f == "0" || f == "1") {
        row.push_back(static_cast<std::int8_t>(f == "1"));
      } else {
        throw Error(Errc::ParseError, "observation field must be 0, 1 or empty, got '" + f + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  std::vector<std::int8_t> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw Error(Errc::NotSquare, "CSV is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  const auto mode =
      any_absent ? ObservationMatrix::Mode::partial : ObservationMatrix::Mode::full;
  return ObservationMatrix::create(n, std::move(flat), mode, p_obs);
}

void write_observation_csv_file(const std::string& path, const ObservationMatrix& y) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::ParseError, "cannot open " + path + " for writing");
  write_observation_csv(os, y);
}

ObservationMatrix read_observation_csv_file(const std::string& path, double p_obs) {
  std::ifstream is(path);
  if (!is) throw Error(Errc::ParseError, "cannot open " + path);
  return read_observation_csv(is, p_obs);
}

std::string permutation_to_string(const Permutation& pi) {
  std::ostringstream os;
  for (int i = 0; i < pi.size(); ++i) {
    if (i) os << ',';
    os << pi.rank_of(i) + 1;
  }
  return os.str();
}

Permutation permutation_from_string(const std::string& line) {
  std::vector<int> ranks;
  for (const auto& f : split_line(line)) {
    try {
      ranks.push_back(std::stoi(f));
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad rank field '" + f + "'");
    }
  }
  return Permutation::from_ranks_one_based(ranks);
}

}  // namespace sst
