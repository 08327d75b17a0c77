#include "blockade/lu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace blockade
{

namespace
{

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

double norm1(const ComplexMatrix& a)
{
    std::vector<double> colsum(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            colsum[j] += std::abs(a(i, j));
    return colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
}

double vec_norm1(std::span<const Complex> v)
{
    double s = 0.0;
    for (Complex z : v)
        s += std::abs(z);
    return s;
}

} // namespace

LuDecomposition::LuDecomposition(ComplexMatrix a) : m_lu(std::move(a))
{
    if (!m_lu.is_square())
        throw DimensionError("LuDecomposition: matrix not square");
    m_norm1 = norm1(m_lu);

    const std::size_t n = m_lu.rows();
    m_perm.resize(n);
    std::iota(m_perm.begin(), m_perm.end(), std::size_t{0});

    // Interleaved (re, im) view used by the rank-1 update.
    double* d = reinterpret_cast<double*>(m_lu.entries().data());

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = abs1(m_lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = abs1(m_lu(i, k));
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (best == 0.0)
            throw SingularMatrixError("LuDecomposition: matrix is singular (zero pivot column " +
                                      std::to_string(k) + ")");
        if (pivot != k) {
            std::swap_ranges(m_lu.entries().begin() + k * n, m_lu.entries().begin() + (k + 1) * n,
                             m_lu.entries().begin() + pivot * n);
            std::swap(m_perm[k], m_perm[pivot]);
        }

        const Complex inv = 1.0 / m_lu(k, k);
        const double* rowk = d + 2 * k * n;
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex& lik = m_lu(i, k);
            if (lik == Complex{})
                continue;
            lik *= inv;
            const double lr = lik.real();
            const double li = lik.imag();
            double* rowi = d + 2 * i * n;
            for (std::size_t j = k + 1; j < n; ++j) {
                const double ur = rowk[2 * j];
                const double ui = rowk[2 * j + 1];
                rowi[2 * j] -= lr * ur - li * ui;
                rowi[2 * j + 1] -= lr * ui + li * ur;
            }
        }
    }
}

std::vector<Complex> LuDecomposition::solve(std::span<const Complex> b) const
{
    const std::size_t n = size();
    if (b.size() != n)
        throw DimensionError("LuDecomposition::solve: rhs length mismatch");
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[m_perm[i]];
    // Ly = Pb
    for (std::size_t i = 0; i < n; ++i) {
        Complex s = x[i];
        for (std::size_t j = 0; j < i; ++j)
            s -= m_lu(i, j) * x[j];
        x[i] = s;
    }
    // Ux = y
    for (std::size_t i = n; i-- > 0;) {
        Complex s = x[i];
        for (std::size_t j = i + 1; j < n; ++j)
            s -= m_lu(i, j) * x[j];
        x[i] = s / m_lu(i, i);
    }
    return x;
}

std::vector<Complex> LuDecomposition::solve_adjoint(std::span<const Complex> b) const
{
    // A^H = U^H L^H P, so solve U^H w = b, L^H z = w, x = P^T z.
    const std::size_t n = size();
    if (b.size() != n)
        throw DimensionError("LuDecomposition::solve_adjoint: rhs length mismatch");
    std::vector<Complex> w(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        Complex s = w[i];
        for (std::size_t j = 0; j < i; ++j)
            s -= std::conj(m_lu(j, i)) * w[j];
        w[i] = s / std::conj(m_lu(i, i));
    }
    for (std::size_t i = n; i-- > 0;) {
        Complex s = w[i];
        for (std::size_t j = i + 1; j < n; ++j)
            s -= std::conj(m_lu(j, i)) * w[j];
        w[i] = s;
    }
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[m_perm[i]] = w[i];
    return x;
}

double LuDecomposition::condition_estimate() const
{
    const std::size_t n = size();
    if (n == 0)
        return 0.0;
    std::vector<Complex> x(n, Complex(1.0 / static_cast<double>(n), 0.0));
    double estimate = 0.0;
    std::size_t last_j = n;
    for (int iter = 0; iter < 5; ++iter) {
        auto y = solve(x);
        estimate = vec_norm1(y);
        std::vector<Complex> sign(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::abs(y[i]);
            sign[i] = m > 0.0 ? y[i] / m : Complex(1.0, 0.0);
        }
        auto z = solve_adjoint(sign);
        std::size_t j = 0;
        double zmax = 0.0;
        Complex zx{};
        for (std::size_t i = 0; i < n; ++i) {
            zx += std::conj(z[i]) * x[i];
            if (std::abs(z[i]) > zmax) {
                zmax = std::abs(z[i]);
                j = i;
            }
        }
        if (zmax <= zx.real() || j == last_j)
            break;
        std::fill(x.begin(), x.end(), Complex{});
        x[j] = 1.0;
        last_j = j;
    }

    // Higham's alternating-sign probe guards against Hager's underestimate.
    std::vector<Complex> alt(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
        alt[i] = sgn * (1.0 + static_cast<double>(i) / static_cast<double>(n > 1 ? n - 1 : 1));
    }
    const double alt_est = 2.0 * vec_norm1(solve(alt)) / (3.0 * static_cast<double>(n));
    estimate = std::max(estimate, alt_est);

    if (!std::isfinite(estimate))
        return std::numeric_limits<double>::infinity();
    return m_norm1 * estimate;
}

std::vector<Complex> lu_solve(const ComplexMatrix& a, std::span<const Complex> b)
{
    return LuDecomposition(a).solve(b);
}

} // namespace blockade
