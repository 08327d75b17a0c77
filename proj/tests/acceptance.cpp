#include "blockade/analytic.hpp"
#include "blockade/steady_state.hpp"
#include "blockade/sweep.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace blockade;

namespace
{

constexpr double kPi = std::numbers::pi;

struct Outcome
{
    bool pass;
    std::string detail;
};

struct Criterion
{
    int id;
    const char* name;
    double time_limit_s; // <= 0: no limit
    std::function<Outcome()> check;
};

template <typename... Args>
std::string fmt(const char* f, Args... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::size_t argmax_n(std::span<const SweepRow> rows)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (*rows[i].n_mean > *rows[best].n_mean)
            best = i;
    return best;
}

bool all_ok(const SweepResult& r)
{
    return std::all_of(r.rows.begin(), r.rows.end(), [](const SweepRow& row) { return row.status == RowStatus::ok; });
}

Outcome coherent_limit()
{
    SystemParams p;
    p.f = 0.1;
    const auto obs = converged_steady_state(p).obs;
    const double dn = std::abs(obs.mean_photon - 0.04);
    const double dg = obs.g2 ? std::abs(*obs.g2 - 1.0) : INFINITY;
    return {dn <= 1e-6 && dg <= 1e-3, fmt("N=%.10f |dN|=%.2e g2=%.8f |dg2|=%.2e", obs.mean_photon, dn, *obs.g2, dg)};
}

Outcome vacuum_fixed_point()
{
    SystemParams p;
    p.u = 0.5;
    const auto rho = steady_state(p, FockSpace(kStartDim));
    ComplexMatrix vac(kStartDim, kStartDim);
    vac(0, 0) = 1.0;
    const double dev = (rho.matrix() - vac).max_abs();
    const double n = observables(rho).mean_photon;
    return {dev <= 1e-12 && std::abs(n) < 1e-14, fmt("max|rho-|0><0||=%.2e N=%.2e", dev, n)};
}

Outcome blockade_existence()
{
    SystemParams p;
    p.u = 0.5;
    p.f = 0.1;
    p.phi = kPi / 12.0;
    p.g = optimal_g(p.f, p.phi, p.delta, p.kappa);
    const auto sol = converged_steady_state(p);
    const double g2 = sol.obs.g2.value_or(INFINITY);
    return {std::abs(p.g - 0.0273205) < 1e-7 && g2 < 1.0, fmt("G*=%.7f g2=%.6f dim=%zu", p.g, g2, sol.dim_used)};
}

Outcome analytic_numeric_agreement()
{
    SystemParams base;
    base.u = 0.5;
    base.phi = kPi / 12.0;
    const GridAxis f_axis(Param::f, 0.005, 0.05, 10);
    const GridAxis g_axis(Param::g, -0.02, 0.02, 10);
    SweepOptions opt;
    opt.analytic = true;
    const auto res = run_sweep(base, std::vector<GridAxis>{f_axis, g_axis}, opt);
    double worst = 0.0;
    const SweepRow* worst_row = nullptr;
    int compared = 0, violations = 0;
    for (const auto& row : res.rows) {
        if (row.status != RowStatus::ok || !row.lg_g2 || !row.g2_analytic || *row.g2_analytic <= 0.0)
            continue;
        ++compared;
        const double d = std::abs(std::log10(*row.g2_analytic) - *row.lg_g2);
        if (d > 0.2)
            ++violations;
        if (d > worst) {
            worst = d;
            worst_row = &row;
        }
    }
    std::string where;
    if (worst_row)
        where = fmt(" at F=%.3f G=%.5f", worst_row->params.f, worst_row->params.g);
    return {compared > 0 && violations == 0,
            fmt("compared=%d violations(>0.2)=%d worst|dlg g2|=%.3f", compared, violations, worst) + where};
}

Outcome closed_form_validation()
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        SystemParams p;
        p.f = 2.0 * unit(rng);
        p.g = 4.0 * unit(rng) - 2.0;
        p.delta = 10.0 * unit(rng) - 5.0;
        p.u = 10.0 * unit(rng) - 5.0;
        p.phi = 2.0 * kPi * unit(rng);
        p.kappa = 0.2 + 2.0 * unit(rng);
        const auto a = amplitudes_closed_form(p);
        const auto b = amplitudes_linear_solve(p);
        for (auto [x, y] : {std::pair{a.c1, b.c1}, std::pair{a.c2, b.c2}}) {
            const double scale = std::max({std::abs(x), std::abs(y), 1e-300});
            worst = std::max(worst, std::abs(x - y) / scale);
        }
    }
    return {worst <= 1e-12, fmt("draws=1000 worst relative difference=%.2e", worst)};
}

Outcome exact_cancellation()
{
    SystemParams p;
    p.phi = kPi / 8.0;
    p.delta = 0.5;
    p.f = 0.1;
    p.g = std::numbers::sqrt2 * 0.01;
    const double c2 = std::abs(amplitudes_closed_form(p).c2);
    const auto r = blockade_conditions(p);
    const bool pass = c2 <= 1e-15 && std::abs(r.real_residual) <= 1e-16 && std::abs(r.imag_residual) <= 1e-16;
    return {pass, fmt("|C2|=%.2e residuals=(%.2e, %.2e)", c2, r.real_residual, r.imag_residual)};
}

Outcome resonance_peak()
{
    const auto ps = preset("fig2a");
    const auto res = run_sweep(ps.base, ps.axes);
    if (!all_ok(res))
        return {false, "sweep produced FAIL rows"};
    const double step = ps.axes[1].step();
    bool pass = true;
    double previous_peak = -INFINITY;
    std::ostringstream detail;
    for (std::size_t i = 0; i < ps.axes[0].count(); ++i) {
        const auto slice = res.slice(i);
        const auto& peak = slice[argmax_n(slice)];
        const bool centred = std::abs(peak.params.delta) <= step + 1e-12;
        const bool rising = *peak.n_mean > previous_peak;
        pass = pass && centred && rising;
        previous_peak = *peak.n_mean;
        detail << fmt("F=%.1f: argmax=%+.3f N=%.5f; ", ps.axes[0].value(i), peak.params.delta, *peak.n_mean);
    }
    detail << fmt("step=%.3f", step);
    return {pass, detail.str()};
}

Outcome phase_modulation()
{
    const auto ps = preset("fig2b");
    const auto res = run_sweep(ps.base, ps.axes);
    if (!all_ok(res))
        return {false, "sweep produced FAIL rows"};
    const auto& phi = ps.axes[1];
    const double step = phi.step();
    // Grid index offset corresponding to a shift of pi.
    const auto shift = static_cast<std::size_t>(std::llround(kPi / step));
    bool pass = std::abs(phi.value(shift) - phi.value(0) - kPi) < 1e-9;
    double worst = 0.0, worst_pos = 0.0;
    for (std::size_t i = 0; i < ps.axes[0].count(); ++i) {
        const auto slice = res.slice(i);
        for (std::size_t j = 0; j + shift < slice.size(); ++j) {
            const double a = *slice[j].n_mean, b = *slice[j + shift].n_mean;
            worst = std::max(worst, std::abs(a - b) / std::max(a, b));
        }
        const std::size_t half = shift;
        const auto lower = slice.subspan(0, half + 1);
        const auto upper = slice.subspan(half);
        const double m1 = lower[argmax_n(lower)].params.phi;
        const double m2 = upper[argmax_n(upper)].params.phi;
        worst_pos = std::max({worst_pos, std::abs(m1 + kPi / 2.0), std::abs(m2 - kPi / 2.0)});
    }
    pass = pass && worst <= 1e-6 && worst_pos <= step + 1e-12;
    return {pass, fmt("max relative |N(phi)-N(phi+pi)|=%.2e, max |argmax - (+-pi/2)|=%.4f, step=%.4f", worst,
                      worst_pos, step)};
}

Outcome peak_drift()
{
    const auto ps = preset("fig2c");
    std::size_t idx = ps.axes[0].count();
    for (std::size_t i = 0; i < ps.axes[0].count(); ++i)
        if (ps.axes[0].value(i) == 0.4)
            idx = i;
    if (idx == ps.axes[0].count())
        return {false, "fig2c preset has no G=0.4 curve"};
    const GridAxis one(ps.axes[1]);
    SystemParams base = ps.base;
    base.g = 0.4;
    const auto res = run_sweep(base, std::vector<GridAxis>{one});
    if (!all_ok(res))
        return {false, "sweep produced FAIL rows"};
    const auto& peak = res.rows[argmax_n(res.rows)];
    const double step = one.step();
    return {peak.params.delta <= -step + 1e-12, fmt("G=0.4 argmax delta=%+.3f step=%.3f", peak.params.delta, step)};
}

Outcome kerr_robustness()
{
    const auto ref = preset("fig4a");
    const GridAxis g_axis = ref.axes[1];
    double lo = INFINITY, hi = -INFINITY;
    std::ostringstream detail;
    for (const char* name : {"fig4a", "fig4b", "fig4c", "fig4d"}) {
        SystemParams base = preset(name).base;
        base.f = 0.1;
        const auto res = run_sweep(base, std::vector<GridAxis>{g_axis});
        if (!all_ok(res))
            return {false, std::string(name) + " sweep produced FAIL rows"};
        const auto best = std::min_element(res.rows.begin(), res.rows.end(),
                                           [](const SweepRow& a, const SweepRow& b) { return *a.lg_g2 < *b.lg_g2; });
        lo = std::min(lo, best->params.g);
        hi = std::max(hi, best->params.g);
        detail << fmt("U=%.1f: argmin G=%.4f; ", base.u, best->params.g);
    }
    detail << fmt("spread=%.4f step=%.4f", hi - lo, g_axis.step());
    return {hi - lo <= g_axis.step() + 1e-12, detail.str()};
}

Outcome physicality_suite()
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int bad_phys = 0, bad_conv = 0, failed = 0;
    double worst_herm = 0.0, worst_trace = 0.0, min_eig = INFINITY, worst_dlg = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        SystemParams p;
        p.delta = 10.0 * unit(rng) - 5.0;
        p.u = 5.0 * unit(rng);
        p.g = unit(rng) - 0.5;
        p.f = 0.5 * unit(rng);
        p.phi = 2.0 * kPi * unit(rng);
        try {
            const auto sol = converged_steady_state(p);
            const auto phys = sol.rho.physicality();
            worst_herm = std::max(worst_herm, phys.hermiticity_error);
            worst_trace = std::max(worst_trace, phys.trace_error);
            min_eig = std::min(min_eig, phys.min_eigenvalue);
            if (!phys.ok())
                ++bad_phys;
            if (sol.dim_used > kStartDim && sol.obs.lg_g2) {
                const auto prev = observables(steady_state(p, FockSpace(sol.dim_used - kDimStep)));
                const double d = prev.lg_g2 ? std::abs(*sol.obs.lg_g2 - *prev.lg_g2) : INFINITY;
                worst_dlg = std::max(worst_dlg, d);
                if (!(d < 1e-3))
                    ++bad_conv;
            }
        } catch (const std::exception&) {
            ++failed;
        }
    }
    const bool pass = bad_phys == 0 && bad_conv == 0 && failed == 0;
    return {pass, fmt("draws=200 failed=%d unphysical=%d unconverged=%d herm=%.1e trace=%.1e min_eig=%.1e "
                      "max|dlg g2|=%.1e",
                      failed, bad_phys, bad_conv, worst_herm, worst_trace, min_eig, worst_dlg)};
}

Outcome oracle_equivalence()
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr std::size_t dim = kStartDim;
    double worst_n = 0.0, worst_g2 = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        SystemParams p;
        p.f = 0.02 + 0.08 * unit(rng);
        p.g = 0.1 * unit(rng) - 0.05;
        p.delta = 2.0 * unit(rng) - 1.0;
        p.u = unit(rng);
        p.phi = 2.0 * kPi * unit(rng);
        const auto steady = observables(steady_state(p, FockSpace(dim)));
        const auto evolved = oracle::diagonal_stats(oracle::evolve_from_vacuum(p, dim, 50.0, 0.01));
        worst_n = std::max(worst_n, std::abs(steady.mean_photon - evolved.n));
        worst_g2 = std::max(worst_g2, std::abs(steady.g2.value_or(NAN) - evolved.g2));
    }
    return {worst_n <= 1e-6 && worst_g2 <= 1e-6, fmt("draws=20 max|dN|=%.2e max|dg2|=%.2e", worst_n, worst_g2)};
}

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> all{
        {1, "coherent-state limit", 1.0, coherent_limit},
        {2, "vacuum fixed point", 1.0, vacuum_fixed_point},
        {3, "blockade existence", 5.0, blockade_existence},
        {4, "analytic-numeric agreement", 120.0, analytic_numeric_agreement},
        {5, "closed-form amplitude validation", 1.0, closed_form_validation},
        {6, "exact two-path cancellation", 0.0, exact_cancellation},
        {7, "resonance peak", 120.0, resonance_peak},
        {8, "phase modulation", 0.0, phase_modulation},
        {9, "peak drift", 0.0, peak_drift},
        {10, "Kerr robustness", 600.0, kerr_robustness},
        {11, "physicality suite", 0.0, physicality_suite},
        {12, "oracle equivalence", 0.0, oracle_equivalence},
    };
    return all;
}

bool run_one(const Criterion& c)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0.0 && secs > c.time_limit_s) {
        o.pass = false;
        o.detail += fmt(" [over time limit %.0fs]", c.time_limit_s);
    }
    std::printf("%s %d %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    return o.pass;
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        char* end = nullptr;
        const long id = std::strtol(argv[i], &end, 10);
        if (*end != '\0' || id < 1 || id > static_cast<long>(criteria().size())) {
            std::fprintf(stderr, "usage: %s [criterion-id ...]  (ids 1-%zu)\n", argv[0], criteria().size());
            return 2;
        }
        ids.push_back(static_cast<int>(id));
    }
    bool all_pass = true;
    for (const auto& c : criteria())
        if (ids.empty() || std::find(ids.begin(), ids.end(), c.id) != ids.end())
            all_pass = run_one(c) && all_pass;
    return all_pass ? 0 : 1;
}
