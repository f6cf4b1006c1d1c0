#pragma once

#include <vector>

#include "plp/ffield.hpp"

namespace plp {

/// Dense matrix over a prime field.
class FieldMatrix {
 public:
  FieldMatrix(int rows, int cols, std::uint64_t modulus);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::uint64_t modulus() const { return q_; }

  FieldElement& at(int r, int c) { return data_[static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c)]; }
  const FieldElement& at(int r, int c) const {
    return data_[static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c)];
  }

 private:
  int rows_;
  int cols_;
  std::uint64_t q_;
  std::vector<FieldElement> data_;
};

/// Exact rank by Gaussian elimination with pivot search. Rows are combined by
/// cross-multiplication only, so no inversions are needed.
int rank(FieldMatrix m);

}  // namespace plp
