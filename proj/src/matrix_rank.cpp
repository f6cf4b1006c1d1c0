#include "plp/matrix_rank.hpp"

#include <utility>

namespace plp {

FieldMatrix::FieldMatrix(int rows, int cols, std::uint64_t modulus)
    : rows_(rows), cols_(cols), q_(modulus),
      data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), FieldElement::zero(modulus)) {}

int rank(FieldMatrix m) {
  const int rows = m.rows();
  const int cols = m.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (!m.at(i, c).isZero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = c; j < cols; ++j) std::swap(m.at(r, j), m.at(pivot, j));
    const FieldElement p = m.at(r, c);
    for (int i = r + 1; i < rows; ++i) {
      const FieldElement f = m.at(i, c);
      if (f.isZero()) continue;
      for (int j = c; j < cols; ++j) m.at(i, j) = m.at(i, j) * p - m.at(r, j) * f;
    }
    ++r;
  }
  return r;
}

}  // namespace plp
