#ifndef BLOCKADE_FOCK_HPP
#define BLOCKADE_FOCK_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace blockade
{

using Complex = std::complex<double>;

class DimensionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense complex matrix, row-major, zero-based (row, col) indexing.
class ComplexMatrix
{
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const { return m_rows; }
    std::size_t cols() const { return m_cols; }
    bool is_square() const { return m_rows == m_cols; }

    Complex& operator()(std::size_t r, std::size_t c) { return m_data[r * m_cols + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return m_data[r * m_cols + c]; }

    std::span<const Complex> entries() const { return m_data; }
    std::span<Complex> entries() { return m_data; }
    std::span<const Complex> row(std::size_t r) const { return {m_data.data() + r * m_cols, m_cols}; }

    bool all_finite() const;
    /// Maximum absolute row sum.
    double norm_inf() const;
    /// Largest entry modulus.
    double max_abs() const;
    Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t m_rows = 0;
    std::size_t m_cols = 0;
    std::vector<Complex> m_data;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> x);

ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);
ComplexMatrix conjugate(const ComplexMatrix& m);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(rho * op). Throws DimensionError unless both are square with equal size.
Complex expectation(const ComplexMatrix& op, const ComplexMatrix& rho);

/// Max |m - m^dagger| entry.
double hermiticity_error(const ComplexMatrix& m);

/// Column-stacking vectorization and its inverse.
std::vector<Complex> vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(std::span<const Complex> v, std::size_t dim);

/// Truncated Fock space holding |0>..|dim-1>.
class FockSpace
{
public:
    /// Throws DimensionError when dim < 3.
    explicit FockSpace(std::size_t dim);

    std::size_t dim() const { return m_dim; }

private:
    std::size_t m_dim;
};

/// Ladder operator with (n-1, n) = sqrt(n). Takes a raw dimension so that
/// the two-level ladder is constructible; FockSpace enforces dim >= 3.
ComplexMatrix annihilation(std::size_t dim);
ComplexMatrix annihilation(const FockSpace& space);
ComplexMatrix creation(std::size_t dim);
ComplexMatrix creation(const FockSpace& space);
ComplexMatrix number_operator(const FockSpace& space);

} // namespace blockade

#endif
