#pragma once

// Cholesky factorization M = L L^T of the Hankel moment matrix
// M_ij = mu_{i+j}, 0 <= i, j < size.
//
// cholesky_hankel() parallelizes the row updates below each pivot with
// OpenMP; every entry is still one sequential dot product, so it matches
// cholesky_hankel_serial() bit for bit.

#include "plw/real.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace plw {

/// Packed lower-triangular matrix, row-major.
class LowerTriangular {
public:
    LowerTriangular() = default;
    LowerTriangular(std::size_t size, Bits prec);

    std::size_t size() const { return size_; }
    Real& operator()(std::size_t i, std::size_t j) { return data_[index(i, j)]; }
    const Real& operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }

private:
    static std::size_t index(std::size_t i, std::size_t j) { return i * (i + 1) / 2 + j; }

    std::size_t size_ = 0;
    std::vector<Real> data_;
};

/// Entry accessor for the matrix being factored, M(i, j) for i >= j.
using HankelEntry = std::function<const Real&(std::size_t i, std::size_t j)>;

/// Throws CholeskyBreakdown on a non-positive pivot.
LowerTriangular cholesky_hankel(const HankelEntry& entry, std::size_t size, Bits prec);
LowerTriangular cholesky_hankel_serial(const HankelEntry& entry, std::size_t size, Bits prec);

}  // namespace plw
