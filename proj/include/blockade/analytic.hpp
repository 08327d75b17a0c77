#ifndef BLOCKADE_ANALYTIC_HPP
#define BLOCKADE_ANALYTIC_HPP

#include "blockade/fock.hpp"
#include "blockade/model.hpp"

#include <optional>
#include <stdexcept>

namespace blockade
{

/*
 * Weak-drive solution of the non-Hermitian Schrodinger equation on the
 * two-photon subspace, |psi> = c0|0> + c1|1> + c2|2>, normalized to c0 = 1.
 *
 * The direct path |0> -> |2> (parametric pump, amplitude ~ g) and the
 * sequential path |0> -> |1> -> |2> (two drive photons, ~ f^2 e^{2i phi})
 * interfere in c2; the interference residual below is its numerator.
 */

class DegenerateParametersError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class SingularityError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

struct AmplitudeSet
{
    Complex c0;
    Complex c1;
    Complex c2;
};

struct BlockadeResiduals
{
    double real_residual;
    double imag_residual;
};

/// Closed-form steady amplitudes with c0 = 1. Throws
/// DegenerateParametersError when the common denominator
/// 4f^2 - (2 delta - i kappa)(2 delta - i kappa + 2u) has modulus <= 1e-14.
AmplitudeSet amplitudes_closed_form(const SystemParams& p);

/// Same amplitudes obtained by LU-solving the stationary |1>, |2> equations.
AmplitudeSet amplitudes_linear_solve(const SystemParams& p);

/// 2 f^2 e^{2i phi} - g kappa - 2i delta g
Complex interference_residual(const SystemParams& p);

/// Real and imaginary parts of the interference residual:
/// (2 f^2 cos 2phi - g kappa, 2 f^2 sin 2phi - 2 delta g).
BlockadeResiduals blockade_conditions(const SystemParams& p);

/// g* = 2 f^2 (cos 2phi + sin 2phi) / (kappa + 2 delta). Zeroes the sum of
/// the two blockade residuals. Throws SingularityError when
/// |kappa + 2 delta| <= 1e-14.
double optimal_g(double f, double phi, double delta, double kappa);

/// 2|c2|^2 / (|c1|^2 + 2|c2|^2)^2; empty when |c1|^2 + 2|c2|^2 <= 1e-24.
std::optional<double> g2_analytic(const AmplitudeSet& a);

} // namespace blockade

#endif
