#ifndef BLOCKADE_TESTS_ORACLES_HPP
#define BLOCKADE_TESTS_ORACLES_HPP

// Test-only reference computations. None of these go through the
// superoperator assembly or the LU steady-state path.

#include "blockade/fock.hpp"
#include "blockade/model.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace blockade::oracle
{

/// d rho/dt in operator form: -i[H, rho] + kappa (a rho a^dag - {a^dag a, rho}/2).
inline ComplexMatrix master_rhs(const ComplexMatrix& h, const ComplexMatrix& a, double kappa, const ComplexMatrix& rho)
{
    const ComplexMatrix ad = adjoint(a);
    const ComplexMatrix n = ad * a;
    ComplexMatrix out = Complex(0.0, -1.0) * (h * rho - rho * h);
    out += kappa * (a * rho * ad);
    out -= (0.5 * kappa) * (n * rho + rho * n);
    return out;
}

/// Classical RK4 from the vacuum to t_end.
inline ComplexMatrix evolve_from_vacuum(const SystemParams& p, std::size_t dim, double t_end, double dt)
{
    const FockSpace space(dim);
    const ComplexMatrix h = build_h_eff(p, space);
    const ComplexMatrix a = annihilation(space);
    ComplexMatrix rho(dim, dim);
    rho(0, 0) = 1.0;
    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    for (std::size_t s = 0; s < steps; ++s) {
        const ComplexMatrix k1 = master_rhs(h, a, p.kappa, rho);
        const ComplexMatrix k2 = master_rhs(h, a, p.kappa, rho + (0.5 * dt) * k1);
        const ComplexMatrix k3 = master_rhs(h, a, p.kappa, rho + (0.5 * dt) * k2);
        const ComplexMatrix k4 = master_rhs(h, a, p.kappa, rho + dt * k3);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

/// Mean photon number and g2 straight from the diagonal of rho.
struct DiagonalStats
{
    double n;
    double g2;
};

inline DiagonalStats diagonal_stats(const ComplexMatrix& rho)
{
    double n = 0.0, pairs = 0.0;
    for (std::size_t k = 0; k < rho.rows(); ++k) {
        const double pk = rho(k, k).real();
        n += static_cast<double>(k) * pk;
        pairs += static_cast<double>(k) * static_cast<double>(k - (k > 0 ? 1 : 0)) * pk;
    }
    return {n, pairs / (n * n)};
}

/// Driven damped linear cavity: alpha = -F e^{i phi} / (Delta - i kappa/2).
inline Complex coherent_amplitude(const SystemParams& p)
{
    return -p.f * std::exp(Complex(0.0, p.phi)) / Complex(p.delta, -0.5 * p.kappa);
}

/// Coherent-state density matrix |alpha><alpha| truncated to dim levels.
inline ComplexMatrix coherent_density(Complex alpha, std::size_t dim)
{
    std::vector<Complex> psi(dim);
    double fact = 1.0;
    for (std::size_t n = 0; n < dim; ++n) {
        if (n > 0)
            fact *= std::sqrt(static_cast<double>(n));
        psi[n] = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, static_cast<double>(n)) / fact;
    }
    ComplexMatrix rho(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            rho(i, j) = psi[i] * std::conj(psi[j]);
    return rho;
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols)
{
    std::normal_distribution<double> dist;
    ComplexMatrix m(rows, cols);
    for (auto& z : m.entries())
        z = Complex(dist(rng), dist(rng));
    return m;
}

/// Random density matrix: B B^dag / Tr.
inline ComplexMatrix random_density(std::mt19937_64& rng, std::size_t dim)
{
    const ComplexMatrix b = random_matrix(rng, dim, dim);
    ComplexMatrix rho = b * adjoint(b);
    const Complex tr = rho.trace();
    rho *= 1.0 / tr;
    return rho;
}

inline SystemParams random_params(std::mt19937_64& rng, double max_f, double max_g, double max_delta, double max_u)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SystemParams p;
    p.f = max_f * unit(rng);
    p.g = max_g * (2.0 * unit(rng) - 1.0);
    p.delta = max_delta * (2.0 * unit(rng) - 1.0);
    p.u = max_u * unit(rng);
    p.phi = 2.0 * 3.14159265358979323846 * unit(rng);
    return p;
}

} // namespace blockade::oracle

#endif
