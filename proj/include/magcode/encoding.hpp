#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "magcode/error.hpp"

namespace magcode {

/// Cell storage for a face encoding: +1 / -1 magnetic pixel polarities.
using CellMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// True iff every coefficient is exactly +1 or -1.
template <typename Derived>
bool is_sign_matrix(const Eigen::MatrixBase<Derived>& m) {
  return (m.array() == typename Derived::Scalar(1) || m.array() == typename Derived::Scalar(-1)).all();
}

/// Exact lattice rotation of a square grid by n quarter turns counter-clockwise
/// (as displayed, row 0 at the top) about the grid center.
template <typename Derived>
typename Derived::PlainObject rotate_quarter(const Eigen::MatrixBase<Derived>& m, int n) {
  typename Derived::PlainObject out = m;
  n = ((n % 4) + 4) % 4;
  for (int t = 0; t < n; ++t) {
    // new(i, j) = old(j, N - 1 - i)
    typename Derived::PlainObject next = out.transpose().colwise().reverse();
    out = std::move(next);
  }
  return out;
}

/// A square ±1 matrix assigned to one module face.
class Encoding {
 public:
  Encoding() = default;
  /// Throws ValidationError unless `cells` is non-empty, square and ±1.
  explicit Encoding(CellMatrix cells, std::string label = {});

  static Encoding from_rows(const std::vector<std::vector<int>>& rows, std::string label = {});

  int order() const { return static_cast<int>(cells_.rows()); }
  const CellMatrix& cells() const { return cells_; }
  int operator()(int row, int col) const { return cells_(row, col); }

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  std::vector<std::vector<int>> rows() const;

  /// Cells equal; labels are metadata and do not take part.
  friend bool operator==(const Encoding& a, const Encoding& b) {
    return a.cells_.rows() == b.cells_.rows() && a.cells_ == b.cells_;
  }

 private:
  CellMatrix cells_;
  std::string label_;
};

/// Largest Sylvester exponent accepted by default (order 64).
inline constexpr int kDefaultMaxSylvesterExponent = 6;

/// Normalized Sylvester-Hadamard matrix of order 2^k, built by the doubling
/// recursion [[H, H], [H, -H]] from H_1 = [1].
Encoding sylvester(int k, int max_exponent = kDefaultMaxSylvesterExponent);

/// All distinct row pairs are orthogonal (equivalently A * A^T == N * I).
bool is_hadamard(const Encoding& e);

/// Elementwise negation; the maximally attractive partner face.
Encoding mate(const Encoding& e);

/// cell(i, j) = (-1)^(i + j).
Encoding checkerboard(int order);

Encoding random_encoding(int order, std::mt19937_64& rng);

}  // namespace magcode
