#ifndef BLOCKADE_SERIALIZE_HPP
#define BLOCKADE_SERIALIZE_HPP

#include "blockade/sweep.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <string_view>

namespace blockade
{

inline constexpr std::string_view kCsvHeader =
    "axis1_name,axis1_value,axis2_name,axis2_value,delta,u,g,f,phi,kappa,dim,n_mean,g2,lg_n,lg_g2,status";

/// Undefined values are written as NA, floats with 17 significant digits.
void write_csv(const SweepResult& result, std::ostream& out);

nlohmann::json to_json(const SweepResult& result);
/// Throws std::invalid_argument on schema violations.
SweepResult sweep_from_json(const nlohmann::json& doc);

std::string format_g17(double v);

} // namespace blockade

#endif
