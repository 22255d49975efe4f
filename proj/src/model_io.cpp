#include "maxzonoid/model_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "maxzonoid/families.hpp"

namespace maxzonoid {

namespace {

constexpr std::array<const char*, 4> kForms{"family", "spectral", "polygon", "extremal"};

std::string param_text(const json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return format_double(v.get<double>());
    throw std::invalid_argument("model: family parameters must be numbers or strings");
}

FamilySpec family_from_json(const json& f)
{
    if (f.is_string()) return parse_family(f.get<std::string>());
    if (!f.is_object() || !f.contains("name")) throw std::invalid_argument("model: family needs a name");
    const std::string name = f.at("name").get<std::string>();
    std::string text = name + "(d=" + std::to_string(f.value("d", 2)) ;
    if (f.contains("params")) {
        for (const auto& [key, value] : f.at("params").items()) {
            if (key == "A") {
                std::string rows;
                for (const auto& row : value) {
                    if (!rows.empty()) rows += ";";
                    std::string r;
                    for (const auto& x : row) r += (r.empty() ? "" : " ") + param_text(x);
                    rows += r;
                }
                text += ",A=" + rows;
            } else {
                text += "," + key + "=" + param_text(value);
            }
        }
    }
    return parse_family(text + ")");
}

}  // namespace

std::string model_form(const json& spec)
{
    if (!spec.is_object()) throw std::invalid_argument("model: expected a JSON object");
    std::string found;
    for (const char* f : kForms) {
        if (!spec.contains(f)) continue;
        if (!found.empty()) throw std::invalid_argument("model: both '" + found + "' and '" + f + "' given");
        found = f;
    }
    if (found.empty()) throw std::invalid_argument("model: one of family, spectral, polygon, extremal is required");
    return found;
}

json spectral_to_json(const SpectralMeasure& sigma)
{
    json atoms = json::array();
    for (const Atom& a : sigma.atoms()) atoms.push_back({{"point", a.point}, {"mass", a.mass}});
    return {{"reference_norm", std::string(to_string(sigma.reference()))}, {"dimension", sigma.dimension()}, {"atoms", atoms}};
}

SpectralMeasure spectral_from_json(const json& j)
{
    const ReferenceNorm ref = parse_reference_norm(j.value("reference_norm", std::string("l1")));
    if (!j.contains("atoms") || !j.at("atoms").is_array() || j.at("atoms").empty())
        throw std::invalid_argument("model: spectral form needs a nonempty atoms array");
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back({a.at("point").get<Vec>(), a.at("mass").get<double>()});
    const std::size_t d = j.contains("dimension") ? j.at("dimension").get<std::size_t>() : atoms.front().point.size();
    return SpectralMeasure(ref, d, std::move(atoms));
}

json polygon_to_json(const Polygon2D& polygon)
{
    json v = json::array();
    for (const Point2& p : polygon.vertices()) v.push_back({p.x, p.y});
    return {{"vertices", v}};
}

json extremal_table_to_json(const ExtremalTable& table)
{
    json theta = json::object();
    for (std::uint64_t mask = 1; mask < table.theta.size(); ++mask) theta[subset_to_string(mask)] = table.theta[mask];
    return {{"d", table.d}, {"theta", theta}};
}

ExtremalTable extremal_table_from_json(const json& spec)
{
    const json& e = spec.contains("extremal") ? spec.at("extremal") : spec;
    if (!e.contains("d") || !e.contains("theta")) throw std::invalid_argument("model: extremal form needs d and theta");
    const std::size_t d = e.at("d").get<std::size_t>();
    ExtremalTable table(d);
    std::vector<bool> given(table.theta.size(), false);
    for (const auto& [key, value] : e.at("theta").items()) {
        const std::uint64_t mask = parse_subset(key, d);
        if (given[mask]) throw std::invalid_argument("model: subset " + key + " listed twice");
        table[mask] = value.get<double>();
        given[mask] = true;
    }
    for (std::uint64_t mask = 1; mask < table.theta.size(); ++mask) {
        if (given[mask]) continue;
        if (std::has_single_bit(mask)) table[mask] = 1.0;  // unit marginals by default
        else throw std::invalid_argument("model: theta for subset {" + subset_to_string(mask) + "} is missing");
    }
    return table;
}

MaxStableModel model_from_json(const json& spec)
{
    const std::string form = model_form(spec);
    if (form == "family") return MaxStableModel(make_family(family_from_json(spec.at("family"))));
    if (form == "spectral") return MaxStableModel::from_spectral(spectral_from_json(spec.at("spectral")));
    if (form == "polygon") {
        std::vector<Point2> chain;
        for (const auto& v : spec.at("polygon").at("vertices")) {
            if (!v.is_array() || v.size() != 2) throw std::invalid_argument("model: polygon vertices must be pairs");
            chain.push_back({v[0].get<double>(), v[1].get<double>()});
        }
        return MaxStableModel(DependencySet(MaxZonoid(Polygon2D(std::move(chain)))));
    }
    return construct_from_extremal(extremal_table_from_json(spec));
}

MaxStableModel simulation_model_from_json(const json& spec)
{
    return model_from_json(spec).with_discretization(spec.value("atoms", kDefaultSimulationAtoms));
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::string format_double(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

CsvTable read_csv(std::istream& in)
{
    CsvTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            t.metadata.push_back(line.substr(1));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        if (cells.size() != t.header.size())
            throw std::invalid_argument("csv line " + std::to_string(lineno) + ": expected " +
                                        std::to_string(t.header.size()) + " fields");
        Vec row;
        for (const std::string& c : cells) {
            std::string_view s = c;
            while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
            while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
            double v = 0.0;
            if (s == "inf") v = kInf;
            else {
                const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
                if (ec != std::errc{} || ptr != s.data() + s.size())
                    throw std::invalid_argument("csv line " + std::to_string(lineno) + ": bad number '" + c + "'");
            }
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw std::invalid_argument("csv: missing header line");
    return t;
}

CsvTable read_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_csv(in);
}

void write_csv(std::ostream& out, const CsvTable& table)
{
    for (const std::string& m : table.metadata) out << '#' << m << '\n';
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const Vec& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
}

SampleMatrix samples_from_csv(const CsvTable& table)
{
    SampleMatrix s;
    s.cols = table.header.size();
    s.rows = table.rows.size();
    s.data.reserve(s.rows * s.cols);
    for (const Vec& r : table.rows) s.data.insert(s.data.end(), r.begin(), r.end());
    for (const std::string& m : table.metadata) {
        const auto eq = m.find("seed=");
        if (eq != std::string::npos) s.seed = std::stoull(m.substr(eq + 5));
    }
    return s;
}

}  // namespace maxzonoid
