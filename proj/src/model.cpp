#include "blockade/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blockade
{

void SystemParams::validate() const
{
    for (double v : {delta, u, g, f, phi, kappa})
        if (!std::isfinite(v))
            throw std::invalid_argument("SystemParams: all fields must be finite");
    if (!(kappa > 0.0))
        throw std::invalid_argument("SystemParams: kappa must be positive, got " + std::to_string(kappa));
    if (f < 0.0)
        throw std::invalid_argument("SystemParams: drive strength f must be >= 0 (use phi for its sign)");
}

ComplexMatrix build_h_eff(const SystemParams& p, const FockSpace& space)
{
    p.validate();
    const std::size_t d = space.dim();
    const Complex i{0.0, 1.0};
    const Complex drive = p.f * std::exp(i * p.phi);
    ComplexMatrix h(d, d);

    // Diagonal: detuning and Kerr, a^dag a^dag a a |n> = n (n - 1) |n>.
    for (std::size_t n = 0; n < d; ++n) {
        const double nd = static_cast<double>(n);
        h(n, n) = p.delta * nd + p.u * nd * (nd - 1.0);
    }
    // Drive couples n <-> n + 1.
    for (std::size_t n = 0; n + 1 < d; ++n) {
        const double amp = std::sqrt(static_cast<double>(n + 1));
        h(n + 1, n) += drive * amp;
        h(n, n + 1) += std::conj(drive) * amp;
    }
    // Parametric pump couples n <-> n + 2.
    for (std::size_t n = 0; n + 2 < d; ++n) {
        const double amp = std::sqrt(static_cast<double>((n + 1) * (n + 2)));
        h(n + 2, n) += i * p.g * amp;
        h(n, n + 2) += -i * p.g * amp;
    }
    return h;
}

ComplexMatrix build_h_non(const SystemParams& p, const FockSpace& space)
{
    ComplexMatrix h = build_h_eff(p, space);
    for (std::size_t n = 0; n < space.dim(); ++n)
        h(n, n) -= Complex(0.0, 0.5 * p.kappa * static_cast<double>(n));
    return h;
}

std::vector<EnergyLevel> energy_levels(double omega_a, double u, int n_max)
{
    if (n_max < 0)
        throw std::invalid_argument("energy_levels: n_max must be >= 0");
    std::vector<EnergyLevel> levels;
    levels.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        levels.push_back({n, n * omega_a + n * (n - 1) * u});
    return levels;
}

} // namespace blockade
