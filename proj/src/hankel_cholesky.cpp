#include "plw/hankel_cholesky.hpp"

#include "plw/errors.hpp"

#include <string>

namespace plw {

namespace {

// s = M(i, j) - sum_{k<j} L(i, k) L(j, k)
void reduced_entry(const HankelEntry& entry, const LowerTriangular& l, std::size_t i, std::size_t j, Real& s,
                   Real& tmp) {
    s = entry(i, j);
    for (std::size_t k = 0; k < j; ++k) {
        mpfr_mul(tmp.get(), l(i, k).get(), l(j, k).get(), MPFR_RNDN);
        mpfr_sub(s.get(), s.get(), tmp.get(), MPFR_RNDN);
    }
}

void pivot(const HankelEntry& entry, LowerTriangular& l, std::size_t j, Bits prec) {
    Real s(0L, prec);
    Real tmp(0L, prec);
    reduced_entry(entry, l, j, j, s, tmp);
    if (s <= 0L)
        throw CholeskyBreakdown(j, "Hankel Cholesky: non-positive pivot at index " + std::to_string(j) +
                                       "; working precision too low");
    mpfr_sqrt(l(j, j).get(), s.get(), MPFR_RNDN);
}

void below_pivot(const HankelEntry& entry, LowerTriangular& l, std::size_t i, std::size_t j, Real& s, Real& tmp) {
    reduced_entry(entry, l, i, j, s, tmp);
    mpfr_div(l(i, j).get(), s.get(), l(j, j).get(), MPFR_RNDN);
}

}  // namespace

LowerTriangular::LowerTriangular(std::size_t size, Bits prec)
    : size_(size), data_(size * (size + 1) / 2, Real(0L, prec)) {}

LowerTriangular cholesky_hankel(const HankelEntry& entry, std::size_t size, Bits prec) {
    LowerTriangular l(size, prec);
    for (std::size_t j = 0; j < size; ++j) {
        pivot(entry, l, j, prec);
        const auto rows = static_cast<std::ptrdiff_t>(size - j - 1);
#pragma omp parallel
        {
            Real s(0L, prec);
            Real tmp(0L, prec);
#pragma omp for schedule(static)
            for (std::ptrdiff_t r = 0; r < rows; ++r)
                below_pivot(entry, l, j + 1 + static_cast<std::size_t>(r), j, s, tmp);
        }
    }
    return l;
}

LowerTriangular cholesky_hankel_serial(const HankelEntry& entry, std::size_t size, Bits prec) {
    LowerTriangular l(size, prec);
    Real s(0L, prec);
    Real tmp(0L, prec);
    for (std::size_t j = 0; j < size; ++j) {
        pivot(entry, l, j, prec);
        for (std::size_t i = j + 1; i < size; ++i) below_pivot(entry, l, i, j, s, tmp);
    }
    return l;
}

}  // namespace plw
