#include "magcode/encoding.hpp"

namespace magcode {

Encoding::Encoding(CellMatrix cells, std::string label)
    : cells_(std::move(cells)), label_(std::move(label)) {
  if (cells_.rows() == 0 || cells_.rows() != cells_.cols()) {
    throw ValidationError("encoding must be a non-empty square matrix, got " +
                          std::to_string(cells_.rows()) + "x" + std::to_string(cells_.cols()));
  }
  if (!is_sign_matrix(cells_)) throw ValidationError("encoding cells must be exactly +1 or -1");
}

Encoding Encoding::from_rows(const std::vector<std::vector<int>>& rows, std::string label) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  CellMatrix cells(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) {
      throw ValidationError("encoding row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " cells, expected " + std::to_string(n));
    }
    for (Eigen::Index j = 0; j < n; ++j) cells(i, j) = rows[i][j];
  }
  return Encoding(std::move(cells), std::move(label));
}

std::vector<std::vector<int>> Encoding::rows() const {
  std::vector<std::vector<int>> out(order(), std::vector<int>(order()));
  for (int i = 0; i < order(); ++i)
    for (int j = 0; j < order(); ++j) out[i][j] = cells_(i, j);
  return out;
}

Encoding sylvester(int k, int max_exponent) {
  if (k < 0) throw ValidationError("sylvester exponent must be non-negative");
  if (k > max_exponent) {
    throw SizeLimitError("sylvester exponent " + std::to_string(k) + " exceeds limit " +
                         std::to_string(max_exponent));
  }
  CellMatrix h = CellMatrix::Ones(1, 1);
  for (int step = 0; step < k; ++step) {
    const Eigen::Index n = h.rows();
    CellMatrix next(2 * n, 2 * n);
    next << h, h, h, -h;
    h = std::move(next);
  }
  return Encoding(std::move(h), "sylvester-" + std::to_string(k));
}

bool is_hadamard(const Encoding& e) {
  const CellMatrix& a = e.cells();
  const CellMatrix gram = a * a.transpose();
  return gram == CellMatrix::Identity(a.rows(), a.cols()) * e.order();
}

Encoding mate(const Encoding& e) {
  return Encoding(-e.cells(), e.label().empty() ? std::string{} : e.label() + "'");
}

Encoding checkerboard(int order) {
  if (order < 1) throw ValidationError("checkerboard order must be positive");
  CellMatrix cells(order, order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) cells(i, j) = ((i + j) % 2 == 0) ? 1 : -1;
  return Encoding(std::move(cells), "checkerboard-" + std::to_string(order));
}

Encoding random_encoding(int order, std::mt19937_64& rng) {
  CellMatrix cells(order, order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) cells(i, j) = (rng() >> 63) ? 1 : -1;
  return Encoding(std::move(cells));
}

}  // namespace magcode
