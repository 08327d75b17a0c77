#ifndef BLOCKADE_SWEEP_HPP
#define BLOCKADE_SWEEP_HPP

#include "blockade/model.hpp"
#include "blockade/steady_state.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace blockade
{

enum class Param
{
    delta,
    u,
    g,
    f,
    phi
};

std::string_view param_name(Param p);
/// Throws std::invalid_argument for unknown names.
Param parse_param(std::string_view name);
double get_param(const SystemParams& p, Param which);
void set_param(SystemParams& p, Param which, double value);

/*
 * One sweep axis. Either linearly spaced (min, max, count) or an explicit,
 * strictly increasing list of values (used for the "one curve per value"
 * panels).
 */
class GridAxis
{
public:
    /// Throws std::invalid_argument unless count >= 2 and min < max.
    GridAxis(Param param, double min, double max, std::size_t count);
    /// Throws std::invalid_argument unless values has >= 2 strictly increasing entries.
    GridAxis(Param param, std::vector<double> values);

    Param param() const { return m_param; }
    double min() const { return m_values.front(); }
    double max() const { return m_values.back(); }
    std::size_t count() const { return m_values.size(); }
    bool is_linear() const { return m_linear; }
    double value(std::size_t i) const { return m_values.at(i); }
    const std::vector<double>& values() const { return m_values; }
    /// Spacing of a linear axis; smallest gap of an explicit one.
    double step() const;

    /// "param:min:max:count" or "param:v1,v2,...".
    std::string to_string() const;
    static GridAxis parse(std::string_view spec);

    friend bool operator==(const GridAxis&, const GridAxis&) = default;

private:
    Param m_param;
    std::vector<double> m_values;
    bool m_linear;
};

enum class RowStatus
{
    ok,
    fail
};

struct SweepRow
{
    double axis1_value = 0.0;
    std::optional<double> axis2_value;
    SystemParams params;
    std::size_t dim = 0;
    std::optional<double> n_mean;
    std::optional<double> g2;
    std::optional<double> lg_n;
    std::optional<double> lg_g2;
    std::optional<double> g2_analytic;
    RowStatus status = RowStatus::ok;
    std::string message;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepMetadata
{
    std::string preset;
    std::size_t min_dim = 0;
    std::size_t max_dim = 0;
    std::string timestamp;
    double tol = 1e-3;
};

struct SweepResult
{
    std::vector<GridAxis> axes;
    std::vector<SweepRow> rows;
    SweepMetadata metadata;

    /// Extracts the rows with axis1 == axis1.value(i) (2-D sweeps).
    std::span<const SweepRow> slice(std::size_t i) const;
};

struct SweepOptions
{
    double tol = 1e-3;
    std::size_t max_dim = kMaxDim;
    /// 0 means std::thread::hardware_concurrency().
    unsigned threads = 0;
    bool analytic = false;
    std::string preset;
};

/// Evaluates every grid point (row-major over axis1, axis2) with
/// converged_steady_state. Per-point failures become FAIL rows.
SweepResult run_sweep(const SystemParams& base, std::span<const GridAxis> axes, const SweepOptions& options = {});

struct Preset
{
    std::string name;
    SystemParams base;
    std::vector<GridAxis> axes;
};

class UnknownPresetError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

std::vector<std::string> preset_names();
/// Throws UnknownPresetError listing the valid ids.
Preset preset(std::string_view name);

/// optimal_g sampled along a drive-strength axis: (f, g*) pairs.
std::vector<std::pair<double, double>> optimal_curve(const GridAxis& f_axis, double phi, double delta, double kappa);

/// UTC ISO-8601 timestamp.
std::string utc_timestamp();

} // namespace blockade

#endif
