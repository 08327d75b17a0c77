#include "blockade/cli.hpp"

#include "blockade/analytic.hpp"
#include "blockade/serialize.hpp"
#include "blockade/steady_state.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace blockade::cli
{

namespace
{

using nlohmann::json;

const std::map<std::string, Command> kCommands = {
    {"solve", Command::solve},       {"analytic", Command::analytic}, {"optimal", Command::optimal},
    {"spectrum", Command::spectrum}, {"sweep", Command::sweep},
};

const std::vector<std::string> kConfigKeys = {
    "command", "delta", "u", "g", "f", "phi", "kappa", "preset", "axis1", "axis2", "output",
    "format", "tol", "max-dim", "omega-a", "n-max", "with-analytic", "config",
};

std::string normalize_key(std::string key)
{
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

json parse_config_file(const std::string& contents)
{
    json raw;
    try {
        raw = json::parse(contents);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!raw.is_object())
        throw UsageError("config file must contain a JSON object");
    json cfg = json::object();
    for (auto& [key, value] : raw.items()) {
        const std::string k = normalize_key(key);
        if (std::find(kConfigKeys.begin(), kConfigKeys.end(), k) == kConfigKeys.end())
            throw UsageError("unknown config key '" + key + "'");
        cfg[k] = value;
    }
    return cfg;
}

double config_number(const json& cfg, const std::string& key)
{
    const json& v = cfg.at(key);
    if (!v.is_number())
        throw UsageError("config key '" + key + "' must be a number");
    return v.get<double>();
}

std::string config_string(const json& cfg, const std::string& key)
{
    const json& v = cfg.at(key);
    if (!v.is_string())
        throw UsageError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

// Picks flag value, else config value, else leaves the target untouched.
template <typename T, typename FromConfig>
void merge(const CLI::Option* opt, const T& flag_value, const json& cfg, const std::string& key, FromConfig from_cfg,
           T& target)
{
    if (opt->count() > 0)
        target = flag_value;
    else if (cfg.contains(key))
        target = from_cfg(cfg, key);
}

std::string na(const std::optional<double>& v) { return v ? format_g17(*v) : "NA"; }

json json_or_null(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

struct Output
{
    std::ofstream file;
    std::ostream* stream;
};

Output open_output(const RunConfig& cfg, std::ostream& out)
{
    Output o{{}, &out};
    if (cfg.output_path) {
        o.file.open(*cfg.output_path);
        if (!o.file)
            throw std::ios_base::failure("cannot open output file '" + *cfg.output_path + "'");
        o.stream = &o.file;
    }
    return o;
}

void finish(Output& o, const RunConfig& cfg)
{
    o.stream->flush();
    if (!*o.stream)
        throw std::ios_base::failure("write failed" + (cfg.output_path ? " for '" + *cfg.output_path + "'" : ""));
}

void run_solve(const RunConfig& cfg, std::ostream& out)
{
    const SystemParams p = cfg.resolved_params();
    const auto sol = converged_steady_state(p, cfg.tol, cfg.max_dim);
    const auto& obs = sol.obs;
    if (cfg.format == Format::json) {
        json doc = {
            {"n_mean", obs.mean_photon}, {"g2", json_or_null(obs.g2)},       {"lg_n", json_or_null(obs.lg_n)},
            {"lg_g2", json_or_null(obs.lg_g2)}, {"dim_used", sol.dim_used}, {"populations", obs.populations},
        };
        out << doc.dump(2) << '\n';
        return;
    }
    out << "n_mean " << format_g17(obs.mean_photon) << '\n'
        << "g2 " << na(obs.g2) << '\n'
        << "lg_n " << na(obs.lg_n) << '\n'
        << "lg_g2 " << na(obs.lg_g2) << '\n'
        << "dim_used " << sol.dim_used << '\n';
    for (std::size_t n = 0; n < obs.populations.size(); ++n)
        out << "P(" << n << ") " << format_g17(obs.populations[n]) << '\n';
}

void run_analytic(const RunConfig& cfg, std::ostream& out)
{
    const SystemParams p = cfg.resolved_params();
    const AmplitudeSet amps = amplitudes_closed_form(p);
    const auto g2 = g2_analytic(amps);
    const auto res = blockade_conditions(p);
    const Complex r = interference_residual(p);
    if (cfg.format == Format::json) {
        json doc = {
            {"c1", {amps.c1.real(), amps.c1.imag()}},
            {"c2", {amps.c2.real(), amps.c2.imag()}},
            {"g2_analytic", json_or_null(g2)},
            {"real_residual", res.real_residual},
            {"imag_residual", res.imag_residual},
            {"interference_residual", {r.real(), r.imag()}},
        };
        out << doc.dump(2) << '\n';
        return;
    }
    out << "c1 " << format_g17(amps.c1.real()) << ' ' << format_g17(amps.c1.imag()) << '\n'
        << "c2 " << format_g17(amps.c2.real()) << ' ' << format_g17(amps.c2.imag()) << '\n'
        << "g2_analytic " << na(g2) << '\n'
        << "real_residual " << format_g17(res.real_residual) << '\n'
        << "imag_residual " << format_g17(res.imag_residual) << '\n'
        << "interference_residual " << format_g17(r.real()) << ' ' << format_g17(r.imag()) << '\n';
}

void run_optimal(const RunConfig& cfg, std::ostream& out)
{
    const SystemParams p = cfg.resolved_params();
    const double g = optimal_g(p.f, p.phi, p.delta, p.kappa);
    if (cfg.format == Format::json)
        out << json{{"g_opt", g}}.dump(2) << '\n';
    else
        out << "g_opt " << format_g17(g) << '\n';
}

void run_spectrum(const RunConfig& cfg, std::ostream& out)
{
    const SystemParams p = cfg.resolved_params();
    const auto levels = energy_levels(cfg.omega_a, p.u, cfg.n_max);
    if (cfg.format == Format::json) {
        json arr = json::array();
        for (const auto& l : levels)
            arr.push_back({{"n", l.n}, {"energy", l.energy}});
        out << json{{"levels", arr}}.dump(2) << '\n';
        return;
    }
    out << "n,energy\n";
    for (const auto& l : levels)
        out << l.n << ',' << format_g17(l.energy) << '\n';
}

void run_sweep_command(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    SweepOptions opt;
    opt.tol = cfg.tol;
    opt.max_dim = cfg.max_dim;
    opt.threads = cfg.threads;
    opt.analytic = cfg.with_analytic;
    opt.preset = cfg.preset.value_or("");

    std::vector<GridAxis> axes;
    if (cfg.preset)
        axes = preset(*cfg.preset).axes;
    for (std::size_t i = 0; i < cfg.axes.size(); ++i) {
        if (i < axes.size())
            axes[i] = cfg.axes[i];
        else
            axes.push_back(cfg.axes[i]);
    }
    const SweepResult result = run_sweep(cfg.resolved_params(), axes, opt);
    if (cfg.format == Format::json)
        out << to_json(result).dump(2) << '\n';
    else
        write_csv(result, out);

    const auto failures = std::count_if(result.rows.begin(), result.rows.end(),
                                        [](const SweepRow& r) { return r.status == RowStatus::fail; });
    if (failures > 0)
        err << "sweep: " << failures << " of " << result.rows.size() << " points failed (status FAIL)\n";
}

} // namespace

SystemParams ParamOverrides::apply(SystemParams base) const
{
    if (delta)
        base.delta = *delta;
    if (u)
        base.u = *u;
    if (g)
        base.g = *g;
    if (f)
        base.f = *f;
    if (phi)
        base.phi = *phi;
    if (kappa)
        base.kappa = *kappa;
    return base;
}

SystemParams RunConfig::resolved_params() const
{
    SystemParams base;
    if (command == Command::sweep && preset)
        base = blockade::preset(*preset).base;
    return params.apply(base);
}

std::optional<std::string> config_path(std::span<const std::string> args)
{
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            return args[i + 1];
        if (args[i].starts_with("--config="))
            return args[i].substr(9);
    }
    return std::nullopt;
}

unsigned parse_thread_cap(const char* value)
{
    if (!value || !*value)
        return 0;
    unsigned n = 0;
    const std::string_view s(value);
    auto res = std::from_chars(s.data(), s.data() + s.size(), n);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        return 0;
    return n;
}

RunConfig parse_config(std::span<const std::string> args, const std::optional<std::string>& config_contents)
{
    const json cfg = config_contents ? parse_config_file(*config_contents) : json::object();

    CLI::App app{"Steady-state photon blockade simulator for a driven Kerr cavity with parametric gain", "blockade"};
    std::string command;
    double delta = 0, u = 0, g = 0, f = 0, phi = 0, kappa = 1, tol = 1e-3, omega_a = 1.0;
    std::size_t max_dim = kMaxDim;
    int n_max = 5;
    std::string preset_name, axis1, axis2, output, format, config_file;
    bool with_analytic = false;

    auto* o_command = app.add_option("command", command, "solve | analytic | optimal | spectrum | sweep");
    auto* o_delta = app.add_option("--delta", delta, "detuning (units of kappa)");
    auto* o_u = app.add_option("--u", u, "Kerr strength");
    auto* o_g = app.add_option("--g", g, "parametric gain coefficient");
    auto* o_f = app.add_option("--f", f, "drive strength");
    auto* o_phi = app.add_option("--phi", phi, "drive phase (rad)");
    auto* o_kappa = app.add_option("--kappa", kappa, "cavity decay rate");
    auto* o_preset = app.add_option("--preset", preset_name, "sweep preset id");
    auto* o_axis1 = app.add_option("--axis1", axis1, "first sweep axis, param:min:max:count or param:v1,v2,...");
    auto* o_axis2 = app.add_option("--axis2", axis2, "second sweep axis, same forms as --axis1");
    auto* o_output = app.add_option("-o,--output", output, "output file (default: stdout)");
    auto* o_format = app.add_option("--format", format, "csv | json");
    auto* o_tol = app.add_option("--tol", tol, "truncation convergence tolerance on lg N, lg g2");
    auto* o_max_dim = app.add_option("--max-dim", max_dim, "largest Fock truncation");
    auto* o_omega = app.add_option("--omega-a", omega_a, "cavity frequency for spectrum");
    auto* o_nmax = app.add_option("--n-max", n_max, "highest level for spectrum");
    auto* o_analytic = app.add_flag("--with-analytic", with_analytic, "add analytic g2 to sweep JSON rows");
    app.add_option("--config", config_file, "JSON config file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig rc;
    auto num = [](const json& c, const std::string& k) { return config_number(c, k); };
    auto str = [](const json& c, const std::string& k) { return config_string(c, k); };

    std::string command_name;
    merge(o_command, command, cfg, "command", str, command_name);
    if (command_name.empty())
        throw UsageError("missing command (solve | analytic | optimal | spectrum | sweep)");
    const auto cmd = kCommands.find(command_name);
    if (cmd == kCommands.end())
        throw UsageError("unknown command '" + command_name + "'");
    rc.command = cmd->second;

    auto merge_param = [&](const CLI::Option* opt, double flag, const char* key, std::optional<double>& target) {
        if (opt->count() > 0)
            target = flag;
        else if (cfg.contains(key))
            target = config_number(cfg, key);
    };
    merge_param(o_delta, delta, "delta", rc.params.delta);
    merge_param(o_u, u, "u", rc.params.u);
    merge_param(o_g, g, "g", rc.params.g);
    merge_param(o_f, f, "f", rc.params.f);
    merge_param(o_phi, phi, "phi", rc.params.phi);
    merge_param(o_kappa, kappa, "kappa", rc.params.kappa);

    merge(o_tol, tol, cfg, "tol", num, rc.tol);
    double max_dim_d = static_cast<double>(kMaxDim);
    merge(o_max_dim, static_cast<double>(max_dim), cfg, "max-dim", num, max_dim_d);
    if (!(max_dim_d >= static_cast<double>(kStartDim)) || max_dim_d != std::floor(max_dim_d))
        throw UsageError("--max-dim must be an integer >= " + std::to_string(kStartDim));
    rc.max_dim = static_cast<std::size_t>(max_dim_d);
    merge(o_omega, omega_a, cfg, "omega-a", num, rc.omega_a);
    double n_max_d = 5;
    merge(o_nmax, static_cast<double>(n_max), cfg, "n-max", num, n_max_d);
    if (!(n_max_d >= 0) || n_max_d != std::floor(n_max_d))
        throw UsageError("--n-max must be a non-negative integer");
    rc.n_max = static_cast<int>(n_max_d);
    if (o_analytic->count() > 0)
        rc.with_analytic = with_analytic;
    else if (cfg.contains("with-analytic")) {
        if (!cfg["with-analytic"].is_boolean())
            throw UsageError("config key 'with-analytic' must be a boolean");
        rc.with_analytic = cfg["with-analytic"].get<bool>();
    }

    std::string fmt = "csv";
    merge(o_format, format, cfg, "format", str, fmt);
    if (fmt == "csv")
        rc.format = Format::csv;
    else if (fmt == "json")
        rc.format = Format::json;
    else
        throw UsageError("--format must be csv or json, got '" + fmt + "'");

    std::string out_path;
    merge(o_output, output, cfg, "output", str, out_path);
    if (!out_path.empty())
        rc.output_path = out_path;

    std::string preset_id;
    merge(o_preset, preset_name, cfg, "preset", str, preset_id);
    if (!preset_id.empty())
        rc.preset = preset_id;

    std::string a1, a2;
    merge(o_axis1, axis1, cfg, "axis1", str, a1);
    merge(o_axis2, axis2, cfg, "axis2", str, a2);
    try {
        if (!a1.empty())
            rc.axes.push_back(GridAxis::parse(a1));
        if (!a2.empty()) {
            if (a1.empty() && !rc.preset)
                throw UsageError("--axis2 given without --axis1");
            if (a1.empty())
                rc.axes.push_back(preset(*rc.preset).axes.at(0));
            rc.axes.push_back(GridAxis::parse(a2));
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }

    if (!(rc.tol >= 0.0))
        throw UsageError("--tol must be non-negative");

    if (rc.command == Command::sweep) {
        if (!rc.preset && rc.axes.empty())
            throw UsageError("sweep requires --preset or --axis1");
        try {
            if (rc.preset)
                (void)preset(*rc.preset);
        } catch (const UnknownPresetError& e) {
            throw UsageError(e.what());
        }
        if (rc.axes.size() == 2 && rc.axes[0].param() == rc.axes[1].param())
            throw UsageError("sweep axes must reference distinct parameters");
    } else {
        if (!rc.axes.empty() || rc.preset)
            throw UsageError("--preset/--axis1/--axis2 are only valid with the sweep command");
    }

    try {
        rc.resolved_params().validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return rc;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        Output o = open_output(cfg, out);
        switch (cfg.command) {
        case Command::solve: run_solve(cfg, *o.stream); break;
        case Command::analytic: run_analytic(cfg, *o.stream); break;
        case Command::optimal: run_optimal(cfg, *o.stream); break;
        case Command::spectrum: run_spectrum(cfg, *o.stream); break;
        case Command::sweep: run_sweep_command(cfg, *o.stream, err); break;
        }
        finish(o, cfg);
        return kExitOk;
    } catch (const SingularityError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DegenerateParametersError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SolverError& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitFailure;
    } catch (const ConvergenceError& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::ios_base::failure& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

} // namespace blockade::cli
