#ifndef BLOCKADE_MODEL_HPP
#define BLOCKADE_MODEL_HPP

#include "blockade/fock.hpp"

#include <vector>

namespace blockade
{

/*
 * Physical knobs of the driven Kerr cavity with a parametric (two-photon)
 * pump. Every rate is expressed in units of the cavity decay rate kappa,
 * which defaults to 1.
 *
 *   delta  detuning of the cavity from the drive
 *   u      Kerr strength
 *   g      parametric amplification coefficient (signed)
 *   f      drive amplitude (>= 0; phase lives in phi)
 *   phi    drive phase in radians, stored as given
 */
struct SystemParams
{
    double delta = 0.0;
    double u = 0.0;
    double g = 0.0;
    double f = 0.0;
    double phi = 0.0;
    double kappa = 1.0;

    /// Throws std::invalid_argument on kappa <= 0, f < 0 or non-finite fields.
    void validate() const;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct EnergyLevel
{
    int n;
    double energy;
};

/// H = delta a^dag a + u a^dag a^dag a a + i g (a^dag a^dag - a a)
///     + f (a^dag e^{i phi} + a e^{-i phi})
ComplexMatrix build_h_eff(const SystemParams& p, const FockSpace& space);

/// build_h_eff(p) - i (kappa/2) a^dag a
ComplexMatrix build_h_non(const SystemParams& p, const FockSpace& space);

/// Bare ladder E_n = n omega_a + n (n - 1) u for n = 0..n_max.
std::vector<EnergyLevel> energy_levels(double omega_a, double u, int n_max);

} // namespace blockade

#endif
