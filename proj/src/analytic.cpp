#include "blockade/analytic.hpp"

#include "blockade/lu.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace blockade
{

namespace
{

constexpr double kDenominatorFloor = 1e-14;
constexpr Complex kI{0.0, 1.0};

} // namespace

AmplitudeSet amplitudes_closed_form(const SystemParams& p)
{
    p.validate();
    const Complex one_photon = 2.0 * p.delta - kI * p.kappa;
    const Complex two_photon = one_photon + 2.0 * p.u;
    const Complex denom = 4.0 * p.f * p.f - one_photon * two_photon;
    if (std::abs(denom) <= kDenominatorFloor) {
        std::ostringstream msg;
        msg << "amplitudes_closed_form: vanishing denominator |" << denom << "| for f=" << p.f
            << ", delta=" << p.delta << ", u=" << p.u;
        throw DegenerateParametersError(msg.str());
    }
    const Complex eip = std::exp(kI * p.phi);
    const Complex c1 = 2.0 * p.f * (two_photon * eip - 2.0 * kI * std::conj(eip) * p.g) / denom;
    const Complex c2 = -std::numbers::sqrt2 * interference_residual(p) / denom;
    return {1.0, c1, c2};
}

AmplitudeSet amplitudes_linear_solve(const SystemParams& p)
{
    p.validate();
    const Complex eip = std::exp(kI * p.phi);
    // Rows for d c1/dt = 0 and d c2/dt = 0 with c0 = 1 moved to the right.
    const ComplexMatrix m{
        {p.delta - 0.5 * kI * p.kappa, std::numbers::sqrt2 * p.f * std::conj(eip)},
        {std::numbers::sqrt2 * p.f * eip, 2.0 * p.delta - kI * p.kappa + 2.0 * p.u},
    };
    const std::vector<Complex> rhs{-p.f * eip, -kI * std::numbers::sqrt2 * p.g};
    const double det = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    if (det <= 0.5 * kDenominatorFloor)
        throw DegenerateParametersError("amplitudes_linear_solve: singular 2x2 system");
    try {
        const auto x = lu_solve(m, rhs);
        return {1.0, x[0], x[1]};
    } catch (const SingularMatrixError& e) {
        throw DegenerateParametersError(std::string("amplitudes_linear_solve: ") + e.what());
    }
}

Complex interference_residual(const SystemParams& p)
{
    return 2.0 * p.f * p.f * std::exp(2.0 * kI * p.phi) - p.g * p.kappa - 2.0 * kI * p.delta * p.g;
}

BlockadeResiduals blockade_conditions(const SystemParams& p)
{
    const double two_f2 = 2.0 * p.f * p.f;
    return {two_f2 * std::cos(2.0 * p.phi) - p.g * p.kappa, two_f2 * std::sin(2.0 * p.phi) - 2.0 * p.delta * p.g};
}

double optimal_g(double f, double phi, double delta, double kappa)
{
    const double denom = kappa + 2.0 * delta;
    if (std::abs(denom) <= kDenominatorFloor) {
        std::ostringstream msg;
        msg << "optimal_g: kappa + 2*delta vanishes (kappa=" << kappa << ", delta=" << delta << ")";
        throw SingularityError(msg.str());
    }
    return 2.0 * f * f * (std::cos(2.0 * phi) + std::sin(2.0 * phi)) / denom;
}

std::optional<double> g2_analytic(const AmplitudeSet& a)
{
    const double p1 = std::norm(a.c1);
    const double p2 = std::norm(a.c2);
    const double n = p1 + 2.0 * p2;
    if (n <= 1e-24)
        return std::nullopt;
    return 2.0 * p2 / (n * n);
}

} // namespace blockade
