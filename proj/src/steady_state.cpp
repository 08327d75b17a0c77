#include "blockade/steady_state.hpp"

#include "blockade/lu.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace blockade
{

namespace
{

constexpr double kMaxCondition = 1e14;
constexpr double kResidualTol = 1e-9;

// -i H - (kappa/2) a^dag a, i.e. -i times the non-Hermitian Hamiltonian.
ComplexMatrix coherent_generator(const SystemParams& p, const FockSpace& space)
{
    ComplexMatrix k = build_h_non(p, space);
    k *= Complex(0.0, -1.0);
    return k;
}

double max_abs(std::span<const Complex> v)
{
    double m = 0.0;
    for (Complex z : v)
        m = std::max(m, std::abs(z));
    return m;
}

// L vec(rho) evaluated in matrix form: K rho + rho K^dag + kappa a rho a^dag.
ComplexMatrix apply_generator(const SystemParams& p, const FockSpace& space, const ComplexMatrix& rho)
{
    const ComplexMatrix k = coherent_generator(p, space);
    const ComplexMatrix a = annihilation(space);
    ComplexMatrix out = k * rho + rho * adjoint(k);
    out += p.kappa * (a * rho * adjoint(a));
    return out;
}

} // namespace

bool Physicality::ok() const
{
    return hermiticity_error <= 1e-10 && trace_error <= 1e-10 && min_eigenvalue >= -1e-8;
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : m_rho(std::move(rho))
{
    if (!m_rho.is_square())
        throw DimensionError("DensityMatrix: matrix not square");
}

Physicality DensityMatrix::physicality() const
{
    const std::size_t d = dim();
    Eigen::MatrixXcd herm(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            herm(i, j) = 0.5 * (m_rho(i, j) + std::conj(m_rho(j, i)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm, Eigen::EigenvaluesOnly);
    return {hermiticity_error(m_rho), std::abs(m_rho.trace() - 1.0), eig.eigenvalues().minCoeff()};
}

ComplexMatrix liouvillian(const SystemParams& p, const FockSpace& space)
{
    const std::size_t d = space.dim();
    const ComplexMatrix k = coherent_generator(p, space);
    const ComplexMatrix a = annihilation(space);
    ComplexMatrix l(d * d, d * d);
    auto idx = [d](std::size_t row, std::size_t col) { return col * d + row; };

    // I (x) K: acts on the row index within each column block.
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t m = 0; m < d; ++m)
                l(idx(i, j), idx(m, j)) += k(i, m);
    // conj(K) (x) I: acts on the column index.
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t m = 0; m < d; ++m) {
            const Complex kc = std::conj(k(j, m));
            if (kc == Complex{})
                continue;
            for (std::size_t i = 0; i < d; ++i)
                l(idx(i, j), idx(i, m)) += kc;
        }
    // kappa conj(a) (x) a: the jump term a rho a^dag; a is real.
    for (std::size_t j = 0; j + 1 < d; ++j)
        for (std::size_t i = 0; i + 1 < d; ++i)
            l(idx(i, j), idx(i + 1, j + 1)) += p.kappa * a(i, i + 1).real() * a(j, j + 1).real();
    return l;
}

DensityMatrix steady_state(const SystemParams& p, const FockSpace& space, SteadyStateInfo* info)
{
    const std::size_t d = space.dim();
    const std::size_t n = d * d;
    ComplexMatrix l = liouvillian(p, space);
    const double l_norm = l.norm_inf();

    std::size_t replaced = 0;
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n; ++r) {
        double sum = 0.0;
        for (Complex z : l.row(r))
            sum += std::abs(z);
        if (sum < smallest) {
            smallest = sum;
            replaced = r;
        }
    }
    for (std::size_t c = 0; c < n; ++c)
        l(replaced, c) = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        l(replaced, i * d + i) = 1.0;

    std::vector<Complex> rhs(n, Complex{});
    rhs[replaced] = 1.0;

    std::vector<Complex> x;
    double cond = 0.0;
    try {
        LuDecomposition lu(std::move(l));
        cond = lu.condition_estimate();
        if (!(cond <= kMaxCondition)) {
            std::ostringstream msg;
            msg << "steady_state: ill-conditioned system (condition estimate " << cond
                << " at dim " << d << "); try a larger truncation or different parameters";
            throw SolverError(msg.str());
        }
        x = lu.solve(rhs);
    } catch (const SingularMatrixError& e) {
        throw SolverError(std::string("steady_state: singular system at dim ") + std::to_string(d) +
                          "; try a larger truncation or different parameters (" + e.what() + ")");
    }

    DensityMatrix rho(unvectorize(x, d));
    if (!rho.matrix().all_finite())
        throw SolverError("steady_state: non-finite solution at dim " + std::to_string(d));

    const double residual = max_abs(vectorize(apply_generator(p, space, rho.matrix()))) / l_norm;
    if (info)
        *info = {replaced, cond, residual};
    if (residual > kResidualTol) {
        std::ostringstream msg;
        msg << "steady_state: residual " << residual << " exceeds tolerance at dim " << d;
        throw SolverError(msg.str());
    }
    const Physicality phys = rho.physicality();
    if (!phys.ok()) {
        std::ostringstream msg;
        msg << "steady_state: unphysical solution at dim " << d << " (hermiticity " << phys.hermiticity_error
            << ", trace error " << phys.trace_error << ", min eigenvalue " << phys.min_eigenvalue << ")";
        throw SolverError(msg.str());
    }
    return rho;
}

Observables observables(const DensityMatrix& rho)
{
    const FockSpace space(rho.dim());
    const ComplexMatrix a = annihilation(space);
    const ComplexMatrix ad = creation(space);
    const ComplexMatrix num = ad * a;
    const ComplexMatrix pairs = ad * ad * a * a;

    Observables obs;
    obs.mean_photon = expectation(num, rho.matrix()).real();
    obs.populations.reserve(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i)
        obs.populations.push_back(rho.matrix()(i, i).real());

    if (obs.mean_photon >= kPhotonFloor) {
        obs.lg_n = std::log10(obs.mean_photon);
        const double g2 = expectation(pairs, rho.matrix()).real() / (obs.mean_photon * obs.mean_photon);
        obs.g2 = g2;
        if (g2 > 0.0)
            obs.lg_g2 = std::log10(g2);
    }
    return obs;
}

ConvergenceError::ConvergenceError(const std::string& what, Observables previous, Observables last,
                                   std::size_t last_dim)
    : std::runtime_error(what), m_previous(std::move(previous)), m_last(std::move(last)), m_last_dim(last_dim)
{
}

namespace
{

bool close(const std::optional<double>& a, const std::optional<double>& b, double tol)
{
    if (a.has_value() != b.has_value())
        return false;
    if (!a)
        return true;
    return std::abs(*a - *b) < tol;
}

} // namespace

ConvergedSolution converged_steady_state(const SystemParams& p, double tol, std::size_t max_dim)
{
    if (!(tol >= 0.0))
        throw std::invalid_argument("converged_steady_state: tol must be non-negative");
    if (max_dim < kStartDim)
        throw std::invalid_argument("converged_steady_state: max_dim must be at least " + std::to_string(kStartDim));

    std::size_t dim = kStartDim;
    DensityMatrix rho = steady_state(p, FockSpace(dim));
    Observables obs = observables(rho);
    if (obs.mean_photon < kPhotonFloor)
        return {std::move(rho), std::move(obs), dim};

    while (dim + kDimStep <= max_dim) {
        const std::size_t next = dim + kDimStep;
        DensityMatrix next_rho = steady_state(p, FockSpace(next));
        Observables next_obs = observables(next_rho);
        const bool done = close(obs.lg_n, next_obs.lg_n, tol) && close(obs.lg_g2, next_obs.lg_g2, tol);
        if (done)
            return {std::move(next_rho), std::move(next_obs), next};
        if (next + kDimStep > max_dim) {
            std::ostringstream msg;
            msg << "converged_steady_state: observables still moving at dim " << next << " (lg N "
                << (obs.lg_n ? *obs.lg_n : NAN) << " -> " << (next_obs.lg_n ? *next_obs.lg_n : NAN) << ", lg g2 "
                << (obs.lg_g2 ? *obs.lg_g2 : NAN) << " -> " << (next_obs.lg_g2 ? *next_obs.lg_g2 : NAN)
                << "); tolerance " << tol;
            throw ConvergenceError(msg.str(), std::move(obs), std::move(next_obs), next);
        }
        dim = next;
        rho = std::move(next_rho);
        obs = std::move(next_obs);
    }
    throw ConvergenceError("converged_steady_state: max_dim leaves no room for a second truncation", obs, obs, dim);
}

} // namespace blockade
