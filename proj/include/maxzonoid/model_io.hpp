#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxzonoid/alternation.hpp"
#include "maxzonoid/distribution.hpp"

namespace maxzonoid {

using json = nlohmann::json;

inline constexpr std::size_t kDefaultSimulationAtoms = 1000;

/// Model file. Exactly one of the keys "family", "spectral", "polygon",
/// "extremal" must be present; other keys are ignored.
///
///   {"family": {"name": "logistic", "d": 2, "params": {"p": 2}}}
///   {"family": "logistic(d=2,p=2)"}
///   {"spectral": {"reference_norm": "l1", "atoms": [{"point": [1, 0], "mass": 1}, ...]}}
///   {"polygon": {"vertices": [[1, 0], [1, 0.5], [0.5, 1], [0, 1]]}}
///   {"extremal": {"d": 2, "theta": {"1,2": 1.5}}}
///
/// Optional "atoms": m sets the discretization used to simulate analytic families.
std::string model_form(const json& spec);
MaxStableModel model_from_json(const json& spec);
/// As model_from_json, with analytic families discretized for simulation.
MaxStableModel simulation_model_from_json(const json& spec);
ExtremalTable extremal_table_from_json(const json& spec);

json spectral_to_json(const SpectralMeasure& sigma);
SpectralMeasure spectral_from_json(const json& j);
json polygon_to_json(const Polygon2D& polygon);
json extremal_table_to_json(const ExtremalTable& table);

json read_json_file(const std::string& path);

/// Comma-separated table with one header line; '#' lines carry metadata.
struct CsvTable {
    std::vector<std::string> metadata;
    std::vector<std::string> header;
    std::vector<Vec> rows;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const CsvTable& table);

/// Shortest representation that reads back to the same double.
std::string format_double(double v);

SampleMatrix samples_from_csv(const CsvTable& table);

}  // namespace maxzonoid
