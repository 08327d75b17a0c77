#include "blockade/sweep.hpp"

#include "blockade/analytic.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <numbers>
#include <sstream>
#include <thread>

namespace blockade
{

std::string_view param_name(Param p)
{
    switch (p) {
    case Param::delta: return "delta";
    case Param::u: return "u";
    case Param::g: return "g";
    case Param::f: return "f";
    case Param::phi: return "phi";
    }
    return "?";
}

Param parse_param(std::string_view name)
{
    for (Param p : {Param::delta, Param::u, Param::g, Param::f, Param::phi})
        if (param_name(p) == name)
            return p;
    throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                                "' (expected one of delta, u, g, f, phi)");
}

double get_param(const SystemParams& p, Param which)
{
    switch (which) {
    case Param::delta: return p.delta;
    case Param::u: return p.u;
    case Param::g: return p.g;
    case Param::f: return p.f;
    case Param::phi: return p.phi;
    }
    return 0.0;
}

void set_param(SystemParams& p, Param which, double value)
{
    switch (which) {
    case Param::delta: p.delta = value; break;
    case Param::u: p.u = value; break;
    case Param::g: p.g = value; break;
    case Param::f: p.f = value; break;
    case Param::phi: p.phi = value; break;
    }
}

GridAxis::GridAxis(Param param, double min, double max, std::size_t count) : m_param(param), m_linear(true)
{
    if (count < 2)
        throw std::invalid_argument("GridAxis: count must be >= 2, got " + std::to_string(count));
    if (!(std::isfinite(min) && std::isfinite(max) && min < max))
        throw std::invalid_argument("GridAxis: need finite min < max");
    m_values.resize(count);
    const double step = (max - min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        m_values[i] = min + static_cast<double>(i) * step;
    m_values.back() = max;
}

GridAxis::GridAxis(Param param, std::vector<double> values)
    : m_param(param), m_values(std::move(values)), m_linear(false)
{
    if (m_values.size() < 2)
        throw std::invalid_argument("GridAxis: need at least 2 values");
    for (std::size_t i = 0; i < m_values.size(); ++i) {
        if (!std::isfinite(m_values[i]))
            throw std::invalid_argument("GridAxis: non-finite value");
        if (i > 0 && !(m_values[i - 1] < m_values[i]))
            throw std::invalid_argument("GridAxis: values must be strictly increasing");
    }
}

double GridAxis::step() const
{
    if (m_linear)
        return (max() - min()) / static_cast<double>(count() - 1);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < m_values.size(); ++i)
        best = std::min(best, m_values[i] - m_values[i - 1]);
    return best;
}

namespace
{

std::string format_double(double v)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::string_view context)
{
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+')
        ++first;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || s.empty())
        throw std::invalid_argument("malformed number '" + std::string(s) + "' in " + std::string(context));
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

} // namespace

std::string GridAxis::to_string() const
{
    std::string out(param_name(m_param));
    if (m_linear) {
        out += ":" + format_double(min()) + ":" + format_double(max()) + ":" + std::to_string(count());
        return out;
    }
    out += ":";
    for (std::size_t i = 0; i < m_values.size(); ++i) {
        if (i)
            out += ",";
        out += format_double(m_values[i]);
    }
    return out;
}

GridAxis GridAxis::parse(std::string_view spec)
{
    const auto parts = split(spec, ':');
    const std::string context = "axis '" + std::string(spec) + "'";
    if (parts.size() == 4) {
        const Param p = parse_param(parts[0]);
        const double min = parse_double(parts[1], context);
        const double max = parse_double(parts[2], context);
        std::size_t count = 0;
        auto res = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), count);
        if (res.ec != std::errc() || res.ptr != parts[3].data() + parts[3].size() || parts[3].empty())
            throw std::invalid_argument("malformed count in " + context);
        return GridAxis(p, min, max, count);
    }
    if (parts.size() == 2) {
        std::vector<double> values;
        for (auto v : split(parts[1], ','))
            values.push_back(parse_double(v, context));
        return GridAxis(parse_param(parts[0]), std::move(values));
    }
    throw std::invalid_argument("malformed " + context + " (expected param:min:max:count or param:v1,v2,...)");
}

std::span<const SweepRow> SweepResult::slice(std::size_t i) const
{
    if (axes.size() != 2)
        return rows;
    const std::size_t inner = axes[1].count();
    return std::span<const SweepRow>(rows).subspan(i * inner, inner);
}

namespace
{

SweepRow evaluate_point(const SystemParams& p, double v1, std::optional<double> v2, const SweepOptions& opt)
{
    SweepRow row;
    row.axis1_value = v1;
    row.axis2_value = v2;
    row.params = p;
    try {
        const auto sol = converged_steady_state(p, opt.tol, opt.max_dim);
        row.dim = sol.dim_used;
        row.n_mean = sol.obs.mean_photon;
        row.g2 = sol.obs.g2;
        row.lg_n = sol.obs.lg_n;
        row.lg_g2 = sol.obs.lg_g2;
    } catch (const std::exception& e) {
        row.status = RowStatus::fail;
        row.message = e.what();
        return row;
    }
    if (opt.analytic) {
        try {
            row.g2_analytic = g2_analytic(amplitudes_closed_form(p));
        } catch (const DegenerateParametersError&) {
        }
    }
    return row;
}

unsigned resolve_threads(unsigned requested, std::size_t tasks)
{
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

} // namespace

SweepResult run_sweep(const SystemParams& base, std::span<const GridAxis> axes, const SweepOptions& options)
{
    if (axes.empty() || axes.size() > 2)
        throw std::invalid_argument("run_sweep: need one or two axes");
    if (axes.size() == 2 && axes[0].param() == axes[1].param())
        throw std::invalid_argument("run_sweep: axes must reference distinct parameters");

    SweepResult result;
    result.axes.assign(axes.begin(), axes.end());
    result.metadata.preset = options.preset;
    result.metadata.tol = options.tol;
    result.metadata.timestamp = utc_timestamp();

    const std::size_t inner = axes.size() == 2 ? axes[1].count() : 1;
    const std::size_t total = axes[0].count() * inner;
    result.rows.resize(total);

    auto task = [&](std::size_t k) {
        SystemParams p = base;
        const std::size_t i = k / inner;
        const double v1 = axes[0].value(i);
        set_param(p, axes[0].param(), v1);
        std::optional<double> v2;
        if (axes.size() == 2) {
            v2 = axes[1].value(k % inner);
            set_param(p, axes[1].param(), *v2);
        }
        result.rows[k] = evaluate_point(p, v1, v2, options);
    };

    const unsigned nthreads = resolve_threads(options.threads, total);
    if (nthreads <= 1) {
        for (std::size_t k = 0; k < total; ++k)
            task(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (std::size_t k = next.fetch_add(1); k < total; k = next.fetch_add(1))
                    task(k);
            });
    }

    std::size_t lo = 0, hi = 0;
    for (const auto& row : result.rows) {
        if (row.status != RowStatus::ok)
            continue;
        lo = lo ? std::min(lo, row.dim) : row.dim;
        hi = std::max(hi, row.dim);
    }
    result.metadata.min_dim = lo;
    result.metadata.max_dim = hi;
    return result;
}

namespace
{

constexpr double kPi = std::numbers::pi;

// Fixed parameters of the 2-D heatmaps (F x G plane, resonant drive).
Preset heatmap(std::string name, double phi, double u)
{
    SystemParams base;
    base.delta = 0.0;
    base.u = u;
    base.phi = phi;
    base.f = 0.1;
    return {std::move(name), base, {GridAxis(Param::f, 0.01, 0.3, 101), GridAxis(Param::g, -0.05, 0.2, 101)}};
}

// Photon-number panels: one curve per value of a second parameter.
SystemParams photon_number_base()
{
    SystemParams base;
    base.delta = 0.0;
    base.u = 1.0;
    base.f = 0.1;
    base.phi = kPi / 12.0;
    base.g = optimal_g(base.f, base.phi, base.delta, base.kappa);
    return base;
}

constexpr std::size_t kCurvePoints = 201;

} // namespace

std::vector<std::string> preset_names()
{
    return {"fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c",
            "fig3d", "fig3e", "fig3f", "fig4a", "fig4b", "fig4c", "fig4d"};
}

Preset preset(std::string_view name)
{
    if (name == "fig1a")
        return heatmap("fig1a", kPi / 12.0, 0.5);
    if (name == "fig1b") {
        SystemParams base;
        base.f = 0.1;
        base.u = 0.5;
        return {"fig1b", base, {GridAxis(Param::g, -0.05, 0.05, 101), GridAxis(Param::phi, 0.0, 2.0 * kPi, 101)}};
    }
    if (name == "fig2a")
        return {"fig2a", photon_number_base(),
                {GridAxis(Param::f, {0.1, 0.2, 0.3}), GridAxis(Param::delta, -3.0, 3.0, kCurvePoints)}};
    if (name == "fig2b")
        return {"fig2b", photon_number_base(),
                {GridAxis(Param::g, {0.05, 0.1, 0.2}), GridAxis(Param::phi, -kPi, kPi, kCurvePoints)}};
    if (name == "fig2c")
        return {"fig2c", photon_number_base(),
                {GridAxis(Param::g, {0.05, 0.2, 0.4}), GridAxis(Param::delta, -3.0, 3.0, kCurvePoints)}};
    if (name == "fig2d")
        return {"fig2d", photon_number_base(),
                {GridAxis(Param::u, {0.1, 0.5, 1.0, 2.0}), GridAxis(Param::delta, -3.0, 3.0, kCurvePoints)}};

    if (name.size() == 5 && name.starts_with("fig3")) {
        static constexpr double phases[] = {kPi / 12.0, kPi / 6.0, kPi / 4.0, kPi / 3.0, 5.0 * kPi / 12.0, kPi / 2.0};
        const int idx = name[4] - 'a';
        if (idx >= 0 && idx < 6)
            return heatmap(std::string(name), phases[idx], 0.5);
    }
    if (name.size() == 5 && name.starts_with("fig4")) {
        static constexpr double kerr[] = {0.1, 1.0, 2.0, 5.0};
        const int idx = name[4] - 'a';
        if (idx >= 0 && idx < 4)
            return heatmap(std::string(name), kPi / 12.0, kerr[idx]);
    }

    std::string valid;
    for (const auto& n : preset_names())
        valid += (valid.empty() ? "" : ", ") + n;
    throw UnknownPresetError("unknown preset '" + std::string(name) + "'; valid presets: " + valid);
}

std::vector<std::pair<double, double>> optimal_curve(const GridAxis& f_axis, double phi, double delta, double kappa)
{
    if (f_axis.param() != Param::f)
        throw std::invalid_argument("optimal_curve: axis must sweep f");
    std::vector<std::pair<double, double>> curve;
    curve.reserve(f_axis.count());
    for (double f : f_axis.values())
        curve.emplace_back(f, optimal_g(f, phi, delta, kappa));
    return curve;
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace blockade
