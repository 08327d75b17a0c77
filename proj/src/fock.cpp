#include "blockade/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace blockade
{

namespace
{

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(what) + ": shape mismatch");
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : m_rows(rows), m_cols(cols), m_data(rows * cols, Complex{})
{
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : m_rows(rows), m_cols(cols), m_data(std::move(entries))
{
    if (m_data.size() != rows * cols)
        throw DimensionError("ComplexMatrix: entry count does not match rows*cols");
    if (!all_finite())
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : m_rows(rows.size()), m_cols(rows.size() ? rows.begin()->size() : 0)
{
    m_data.reserve(m_rows * m_cols);
    for (const auto& r : rows) {
        if (r.size() != m_cols)
            throw DimensionError("ComplexMatrix: ragged initializer");
        m_data.insert(m_data.end(), r.begin(), r.end());
    }
    if (!all_finite())
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n)
{
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag)
{
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

bool ComplexMatrix::all_finite() const
{
    return std::all_of(m_data.begin(), m_data.end(), finite);
}

double ComplexMatrix::norm_inf() const
{
    double best = 0.0;
    for (std::size_t r = 0; r < m_rows; ++r) {
        double sum = 0.0;
        for (Complex z : row(r))
            sum += std::abs(z);
        best = std::max(best, sum);
    }
    return best;
}

double ComplexMatrix::max_abs() const
{
    double best = 0.0;
    for (Complex z : m_data)
        best = std::max(best, std::abs(z));
    return best;
}

Complex ComplexMatrix::trace() const
{
    if (!is_square())
        throw DimensionError("trace: matrix not square");
    Complex t{};
    for (std::size_t i = 0; i < m_rows; ++i)
        t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other)
{
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < m_data.size(); ++i)
        m_data[i] += other.m_data[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other)
{
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < m_data.size(); ++i)
        m_data[i] -= other.m_data[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s)
{
    for (auto& z : m_data)
        z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.cols() != b.rows())
        throw DimensionError("matrix product: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{})
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> x)
{
    if (a.cols() != x.size())
        throw DimensionError("matrix-vector product: dimension mismatch");
    std::vector<Complex> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex sum{};
        auto r = a.row(i);
        for (std::size_t j = 0; j < r.size(); ++j)
            sum += r[j] * x[j];
        y[i] = sum;
    }
    return y;
}

ComplexMatrix adjoint(const ComplexMatrix& m)
{
    ComplexMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            t(j, i) = std::conj(m(i, j));
    return t;
}

ComplexMatrix transpose(const ComplexMatrix& m)
{
    ComplexMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            t(j, i) = m(i, j);
    return t;
}

ComplexMatrix conjugate(const ComplexMatrix& m)
{
    ComplexMatrix c = m;
    for (auto& z : c.entries())
        z = std::conj(z);
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{})
                continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return k;
}

Complex expectation(const ComplexMatrix& op, const ComplexMatrix& rho)
{
    if (!op.is_square() || !rho.is_square() || op.rows() != rho.rows())
        throw DimensionError("expectation: operator and state must be square of equal size");
    // Tr(rho op) = sum_ij rho(i,j) op(j,i)
    Complex t{};
    for (std::size_t i = 0; i < rho.rows(); ++i)
        for (std::size_t j = 0; j < rho.cols(); ++j)
            t += rho(i, j) * op(j, i);
    return t;
}

double hermiticity_error(const ComplexMatrix& m)
{
    if (!m.is_square())
        throw DimensionError("hermiticity_error: matrix not square");
    double err = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            err = std::max(err, std::abs(m(i, j) - std::conj(m(j, i))));
    return err;
}

std::vector<Complex> vectorize(const ComplexMatrix& m)
{
    std::vector<Complex> v(m.rows() * m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            v[j * m.rows() + i] = m(i, j);
    return v;
}

ComplexMatrix unvectorize(std::span<const Complex> v, std::size_t dim)
{
    if (v.size() != dim * dim)
        throw DimensionError("unvectorize: length is not dim^2");
    ComplexMatrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i)
            m(i, j) = v[j * dim + i];
    return m;
}

FockSpace::FockSpace(std::size_t dim) : m_dim(dim)
{
    if (dim < 3)
        throw DimensionError("FockSpace: need at least |0>,|1>,|2> (dim >= 3), got " + std::to_string(dim));
}

ComplexMatrix annihilation(std::size_t dim)
{
    if (dim == 0)
        throw DimensionError("annihilation: dim must be positive");
    ComplexMatrix a(dim, dim);
    for (std::size_t n = 1; n < dim; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

ComplexMatrix annihilation(const FockSpace& space) { return annihilation(space.dim()); }

ComplexMatrix creation(std::size_t dim) { return adjoint(annihilation(dim)); }

ComplexMatrix creation(const FockSpace& space) { return creation(space.dim()); }

ComplexMatrix number_operator(const FockSpace& space)
{
    ComplexMatrix n(space.dim(), space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i)
        n(i, i) = static_cast<double>(i);
    return n;
}

} // namespace blockade
