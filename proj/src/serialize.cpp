#include "blockade/serialize.hpp"

#include <cstdio>

namespace blockade
{

using nlohmann::json;

std::string format_g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace
{

std::string csv_value(const std::optional<double>& v) { return v ? format_g17(*v) : "NA"; }

const char* status_name(RowStatus s) { return s == RowStatus::ok ? "OK" : "FAIL"; }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& row, const char* key)
{
    const auto it = row.find(key);
    if (it == row.end() || it->is_null())
        return std::nullopt;
    if (!it->is_number())
        throw std::invalid_argument(std::string("sweep JSON: field '") + key + "' is not a number");
    return it->get<double>();
}

double required_number(const json& row, const char* key)
{
    auto v = optional_from(row, key);
    if (!v)
        throw std::invalid_argument(std::string("sweep JSON: missing numeric field '") + key + "'");
    return *v;
}

} // namespace

void write_csv(const SweepResult& result, std::ostream& out)
{
    out << kCsvHeader << '\n';
    const std::string axis1 = result.axes.empty() ? "NA" : std::string(param_name(result.axes[0].param()));
    const std::string axis2 = result.axes.size() < 2 ? "NA" : std::string(param_name(result.axes[1].param()));
    for (const auto& row : result.rows) {
        const bool ok = row.status == RowStatus::ok;
        out << axis1 << ',' << format_g17(row.axis1_value) << ',' << axis2 << ',' << csv_value(row.axis2_value)
            << ',' << format_g17(row.params.delta) << ',' << format_g17(row.params.u) << ','
            << format_g17(row.params.g) << ',' << format_g17(row.params.f) << ',' << format_g17(row.params.phi)
            << ',' << format_g17(row.params.kappa) << ',' << (ok ? std::to_string(row.dim) : "NA") << ','
            << csv_value(row.n_mean) << ',' << csv_value(row.g2) << ',' << csv_value(row.lg_n) << ','
            << csv_value(row.lg_g2) << ',' << status_name(row.status) << '\n';
    }
}

json to_json(const SweepResult& result)
{
    json axes = json::array();
    for (const auto& a : result.axes)
        axes.push_back(a.to_string());
    json doc;
    doc["metadata"] = {
        {"preset", result.metadata.preset},   {"min_dim", result.metadata.min_dim},
        {"max_dim", result.metadata.max_dim}, {"timestamp", result.metadata.timestamp},
        {"tol", result.metadata.tol},         {"axes", axes},
    };
    const std::string axis1 = result.axes.empty() ? "NA" : std::string(param_name(result.axes[0].param()));
    const json axis2 =
        result.axes.size() < 2 ? json(nullptr) : json(std::string(param_name(result.axes[1].param())));

    json rows = json::array();
    for (const auto& row : result.rows) {
        const bool ok = row.status == RowStatus::ok;
        json r = {
            {"axis1_name", axis1},
            {"axis1_value", row.axis1_value},
            {"axis2_name", axis2},
            {"axis2_value", optional_json(row.axis2_value)},
            {"delta", row.params.delta},
            {"u", row.params.u},
            {"g", row.params.g},
            {"f", row.params.f},
            {"phi", row.params.phi},
            {"kappa", row.params.kappa},
            {"dim", ok ? json(row.dim) : json(nullptr)},
            {"n_mean", optional_json(row.n_mean)},
            {"g2", optional_json(row.g2)},
            {"lg_n", optional_json(row.lg_n)},
            {"lg_g2", optional_json(row.lg_g2)},
            {"status", status_name(row.status)},
        };
        if (row.g2_analytic)
            r["g2_analytic"] = *row.g2_analytic;
        if (!row.message.empty())
            r["message"] = row.message;
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

SweepResult sweep_from_json(const json& doc)
{
    if (!doc.is_object() || !doc.contains("metadata") || !doc.contains("rows") || !doc["rows"].is_array())
        throw std::invalid_argument("sweep JSON: expected an object with 'metadata' and 'rows'");
    SweepResult result;
    const json& meta = doc["metadata"];
    result.metadata.preset = meta.value("preset", "");
    result.metadata.min_dim = meta.value("min_dim", std::size_t{0});
    result.metadata.max_dim = meta.value("max_dim", std::size_t{0});
    result.metadata.timestamp = meta.value("timestamp", "");
    result.metadata.tol = meta.value("tol", 1e-3);
    for (const auto& a : meta.value("axes", json::array()))
        result.axes.push_back(GridAxis::parse(a.get<std::string>()));

    for (const auto& r : doc["rows"]) {
        SweepRow row;
        row.axis1_value = required_number(r, "axis1_value");
        row.axis2_value = optional_from(r, "axis2_value");
        row.params.delta = required_number(r, "delta");
        row.params.u = required_number(r, "u");
        row.params.g = required_number(r, "g");
        row.params.f = required_number(r, "f");
        row.params.phi = required_number(r, "phi");
        row.params.kappa = required_number(r, "kappa");
        const auto status = r.value("status", "");
        if (status == "OK")
            row.status = RowStatus::ok;
        else if (status == "FAIL")
            row.status = RowStatus::fail;
        else
            throw std::invalid_argument("sweep JSON: bad status '" + status + "'");
        if (r.contains("dim") && !r["dim"].is_null())
            row.dim = r["dim"].get<std::size_t>();
        row.n_mean = optional_from(r, "n_mean");
        row.g2 = optional_from(r, "g2");
        row.lg_n = optional_from(r, "lg_n");
        row.lg_g2 = optional_from(r, "lg_g2");
        row.g2_analytic = optional_from(r, "g2_analytic");
        row.message = r.value("message", "");
        result.rows.push_back(std::move(row));
    }
    return result;
}

} // namespace blockade
