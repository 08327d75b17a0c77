#ifndef BLOCKADE_STEADY_STATE_HPP
#define BLOCKADE_STEADY_STATE_HPP

#include "blockade/fock.hpp"
#include "blockade/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockade
{

/// Below this mean photon number g2 and its logs are reported undefined.
inline constexpr double kPhotonFloor = 1e-12;

/// Raised when the bordered Liouvillian system is singular or too badly
/// conditioned to trust.
class SolverError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Physicality
{
    double hermiticity_error;
    double trace_error;
    double min_eigenvalue;

    bool ok() const;
};

class DensityMatrix
{
public:
    /// Takes the matrix as-is; call physicality() to audit it.
    explicit DensityMatrix(ComplexMatrix rho);

    std::size_t dim() const { return m_rho.rows(); }
    const ComplexMatrix& matrix() const { return m_rho; }

    Physicality physicality() const;

private:
    ComplexMatrix m_rho;
};

struct Observables
{
    double mean_photon = 0.0;
    std::optional<double> g2;
    std::optional<double> lg_n;
    std::optional<double> lg_g2;
    std::vector<double> populations;
};

/// Column-stacking superoperator: vec(d rho/dt) = L vec(rho) for
/// d rho/dt = -i[H, rho] + (kappa/2)(2 a rho a^dag - a^dag a rho - rho a^dag a).
ComplexMatrix liouvillian(const SystemParams& p, const FockSpace& space);

struct SteadyStateInfo
{
    std::size_t replaced_row;
    double condition_estimate;
    /// ||L vec(rho)||_inf / ||L||_inf
    double relative_residual;
};

/// Solves L vec(rho) = 0 with the trace constraint substituted for the row
/// of L with the smallest absolute row sum. Throws SolverError when the
/// condition estimate exceeds 1e14 or the result is unphysical.
DensityMatrix steady_state(const SystemParams& p, const FockSpace& space, SteadyStateInfo* info = nullptr);

Observables observables(const DensityMatrix& rho);

struct ConvergedSolution
{
    DensityMatrix rho;
    Observables obs;
    std::size_t dim_used;
};

class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(const std::string& what, Observables previous, Observables last, std::size_t last_dim);

    const Observables& previous() const { return m_previous; }
    const Observables& last() const { return m_last; }
    std::size_t last_dim() const { return m_last_dim; }

private:
    Observables m_previous;
    Observables m_last;
    std::size_t m_last_dim;
};

inline constexpr std::size_t kStartDim = 12;
inline constexpr std::size_t kDimStep = 6;
inline constexpr std::size_t kMaxDim = 60;

/// Solves at dim 12, 18, ... until lg N and lg g2 each move by less than
/// tol between consecutive dims. A state whose photon number is below the
/// floor at the first dim is returned immediately.
ConvergedSolution converged_steady_state(const SystemParams& p, double tol = 1e-3, std::size_t max_dim = kMaxDim);

} // namespace blockade

#endif
