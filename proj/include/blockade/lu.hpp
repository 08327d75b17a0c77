#ifndef BLOCKADE_LU_HPP
#define BLOCKADE_LU_HPP

#include "blockade/fock.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace blockade
{

class SingularMatrixError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/*
 * LU factorization with partial (row) pivoting, PA = LU, of a square
 * complex matrix. L is unit lower triangular and shares storage with U.
 */
class LuDecomposition
{
public:
    /// Throws SingularMatrixError if a pivot column is exactly zero.
    explicit LuDecomposition(ComplexMatrix a);

    std::size_t size() const { return m_lu.rows(); }

    std::vector<Complex> solve(std::span<const Complex> b) const;
    /// Solves A^dagger x = b.
    std::vector<Complex> solve_adjoint(std::span<const Complex> b) const;

    /// 1-norm condition number estimate ||A||_1 * est(||A^-1||_1)
    /// (Hager's method, refined by Higham).
    double condition_estimate() const;

private:
    ComplexMatrix m_lu;
    std::vector<std::size_t> m_perm;
    double m_norm1 = 0.0;
};

/// Solves a x = b in one step.
std::vector<Complex> lu_solve(const ComplexMatrix& a, std::span<const Complex> b);

} // namespace blockade

#endif
