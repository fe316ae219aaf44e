#pragma once

#include <initializer_list>
#include <vector>

#include "ginv/algebra.hpp"
#include "ginv/random.hpp"

namespace ginv::test {

// Single-block element from rows of complex entries.
inline AlgebraElement mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t n = rows.size();
  ComplexMatrix m(n, n);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const cplx& v : row) m(i, j++) = v;
    ++i;
  }
  return AlgebraElement::from_matrix(std::move(m));
}

inline AlgebraElement diag(std::initializer_list<cplx> d) {
  const std::vector<cplx> v(d);
  return AlgebraElement::from_matrix(ComplexMatrix::diagonal(v));
}

inline AlgebraShape shape(std::initializer_list<std::size_t> s) { return AlgebraShape(std::vector<std::size_t>(s)); }

// E_ij in M_n, indices from 1.
inline AlgebraElement unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  ComplexMatrix m(n, n);
  m(i - 1, j - 1) = 1.0;
  return AlgebraElement::from_matrix(std::move(m));
}

}  // namespace ginv::test
