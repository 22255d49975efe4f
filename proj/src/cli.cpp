#include "maxzonoid/cli.hpp"

#include <bit>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "maxzonoid/alternation.hpp"
#include "maxzonoid/dependence.hpp"
#include "maxzonoid/estimate.hpp"
#include "maxzonoid/families.hpp"
#include "maxzonoid/model_io.hpp"

namespace maxzonoid::cli {

namespace {

struct Options {
    std::string model;
    std::string out;
    std::uint64_t seed = 1;
    std::size_t grid = 0;
    long long samples = 0;
    double tol = kKendallTol;

    // eval
    std::string points;
    std::string function = "cdf";
    // measures
    std::size_t max_subset = 0;
    bool monte_carlo = false;
    // spectral
    bool to_atoms = false;
    bool to_polygon = false;
    std::string reference = "l1";
    // estimate / converge
    std::string data;
    std::string tail;
    double threshold = 0.0;
    std::string s_grid;
    // quantile
    double alpha = 0.5;
    std::size_t curve_points = 64;
};

json document(const std::string& op, const json& model)
{
    json doc{{"tool", kToolName}, {"version", kToolVersion}, {"operation", op}};
    if (!model.is_null()) doc["model"] = model;
    return doc;
}

json value_json(const DependenceValue& v)
{
    json j{{"value", v.value}, {"exact", v.exact}};
    if (!v.exact) {
        j["std_error"] = v.std_error;
        j["samples"] = v.samples;
        j["seed"] = v.seed;
    }
    return j;
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot write " + path);
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void write_json(const Options& o, std::ostream& out, const json& doc)
{
    Output sink(o.out, out);
    sink.get() << doc.dump(2) << '\n';
}

void write_table(const Options& o, std::ostream& out, const CsvTable& t)
{
    Output sink(o.out, out);
    write_csv(sink.get(), t);
}

VolumeMethod volume_method(const Options& o, std::size_t d)
{
    if (d == 2 && !o.monte_carlo) return ExactVolume{};
    MonteCarloVolume mc;
    if (o.samples > 0) mc.samples = static_cast<std::size_t>(o.samples);
    mc.seed = o.seed;
    return mc;
}

std::vector<std::string> column_names(std::size_t d, const char* prefix)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < d; ++i) out.push_back(prefix + std::to_string(i + 1));
    return out;
}

int cmd_eval(const Options& o, std::ostream& out)
{
    const json spec = read_json_file(o.model);
    const MaxStableModel model = model_from_json(spec);
    CsvTable in = read_csv_file(o.points);
    CsvTable t;
    t.metadata = {" version=" + std::string(kToolVersion), " function=" + o.function, " model_form=" + model_form(spec)};
    t.header = in.header;
    t.header.push_back(o.function);
    for (Vec row : in.rows) {
        double v = 0.0;
        if (o.function == "cdf") v = cdf(model, row);
        else if (o.function == "copula") v = copula(model, row);
        else if (o.function == "pickands") v = pickands(model, row);
        else if (o.function == "norm") v = model.tail_dependence(row);
        else throw std::invalid_argument("eval: unknown function " + o.function);
        row.push_back(v);
        t.rows.push_back(std::move(row));
    }
    write_table(o, out, t);
    return success;
}

int cmd_measures(const Options& o, std::ostream& out)
{
    const json spec = read_json_file(o.model);
    const MaxStableModel model = model_from_json(spec);
    const std::size_t d = model.dimension();
    const std::size_t cap = o.max_subset == 0 ? d : std::min(o.max_subset, d);
    if (d > kMaxExtremalDim) throw std::invalid_argument("measures: dimension too large for the subset table");
    json doc = document("measures", spec);
    json theta = json::object();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask)
        if (static_cast<std::size_t>(std::popcount(mask)) <= cap)
            theta[subset_to_string(mask)] = extremal_coefficient(model, mask);
    json results{{"theta", theta}};
    const VolumeMethod method = volume_method(o, d);
    results["spearman_rho"] = value_json(spearman_rho(model, method));
    results["multivariate_rho"] = value_json(multivariate_rho(model, method));
    if (d == 2) {
        results["chi"] = chi(model);
        results["kendall_tau"] = {{"value", kendall_tau_2d(model, o.tol)}, {"quadrature_tol", o.tol}};
        results["inverted_pearson"] = value_json(inverted_pearson_2d(model, method));
    }
    doc["results"] = results;
    write_json(o, out, doc);
    return success;
}

int cmd_simulate(const Options& o, std::ostream& out)
{
    const json spec = read_json_file(o.model);
    const MaxStableModel model = simulation_model_from_json(spec);
    const SampleMatrix s = simulate(model, o.samples, o.seed);
    CsvTable t;
    t.metadata = {" seed=" + std::to_string(o.seed), " version=" + std::string(kToolVersion),
                  " model_form=" + model_form(spec), " samples=" + std::to_string(s.rows)};
    if (model.zonoid().is_analytic()) {
        t.metadata.push_back(" atoms=" + std::to_string(model.discrete()->atoms().size()));
        t.metadata.push_back(" discretization_error=" + format_double(model.discretization_error()));
    }
    t.header = column_names(s.cols, "x");
    for (std::size_t i = 0; i < s.rows; ++i) {
        const auto r = s.row(i);
        t.rows.emplace_back(r.begin(), r.end());
    }
    write_table(o, out, t);
    return success;
}

int cmd_spectral(const Options& o, std::ostream& out, std::ostream& err)
{
    if (o.to_atoms == o.to_polygon) throw std::invalid_argument("spectral: give exactly one of --to-atoms, --to-polygon");
    const json spec = read_json_file(o.model);
    const std::string form = model_form(spec);
    const ReferenceNorm ref = parse_reference_norm(o.reference);

    std::optional<SpectralMeasure> sigma;
    std::optional<Polygon2D> polygon;
    double approx_error = 0.0;
    if (form == "spectral") {
        sigma = spectral_from_json(spec.at("spectral"));
    } else if (form == "polygon") {
        std::vector<Point2> chain;
        for (const auto& v : spec.at("polygon").at("vertices")) chain.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        polygon = Polygon2D::general(std::move(chain));
        sigma = spectral_from_polygon_2d(*polygon, ref);
    } else {
        const MaxStableModel model = simulation_model_from_json(spec);
        sigma = model.discrete();
        approx_error = model.discretization_error();
        if (model.dimension() == 2) polygon = to_polygon_2d(model.zonoid(), o.grid == 0 ? kEnvelopeDirections : o.grid);
    }
    const SpectralMeasure rebased = rebase_reference(*sigma, ref);
    const DependencyReport report = validate_dependency(rebased);

    json doc = document("spectral", nullptr);
    doc["source_form"] = form;
    if (o.to_atoms) {
        doc["spectral"] = spectral_to_json(rebased);
    } else {
        if (rebased.dimension() != 2) throw std::invalid_argument("spectral: --to-polygon needs d = 2");
        doc["polygon"] = polygon_to_json(form == "polygon" ? *polygon : polygon_from_spectral_2d(rebased));
    }
    doc["report"] = {{"is_dependency", report.is_dependency},
                     {"marginal_sums", report.marginal_sums},
                     {"total_mass", report.total_mass},
                     {"reference_norm", std::string(to_string(ref))}};
    if (approx_error > 0.0) doc["report"]["discretization_error"] = approx_error;
    write_json(o, out, doc);
    if (!report.is_dependency) {
        err << "spectral: marginal sums differ from 1; not a dependency set\n";
        return validation_failure;
    }
    return success;
}

int cmd_check_theta(const Options& o, std::ostream& out, std::ostream& err)
{
    const json spec = read_json_file(o.model);
    const ExtremalTable table = extremal_table_from_json(spec);
    const ConsistencyResult r = check_extremal_consistency(table);
    json doc = document("check-theta", spec);
    json weights = json::object();
    for (std::uint64_t mask = 1; mask < r.weights.size(); ++mask) weights[subset_to_string(mask)] = r.weights[mask];
    doc["results"] = {{"consistent", r.ok}, {"weights", weights}};
    if (!r.ok) doc["results"]["witness"] = {{"subset", subset_to_string(r.witness)}, {"c", r.witness_value}};
    write_json(o, out, doc);
    if (!r.ok) {
        err << "check-theta: inconsistent table, c_{" << subset_to_string(r.witness)
            << "} = " << format_double(r.witness_value) << " < 0\n";
        return validation_failure;
    }
    return success;
}

int cmd_construct_theta(const Options& o, std::ostream& out)
{
    const json spec = read_json_file(o.model);
    const ExtremalTable table = extremal_table_from_json(spec);
    const MaxStableModel model = construct_from_extremal(table, parse_reference_norm(o.reference));
    double worst = 0.0;
    for (std::uint64_t mask = 1; mask < table.theta.size(); ++mask)
        worst = std::max(worst, std::abs(extremal_coefficient(model, mask) - table[mask]));
    json doc = document("construct-theta", nullptr);
    doc["source"] = spec;
    doc["spectral"] = spectral_to_json(*model.discrete());
    doc["report"] = {{"max_theta_error", worst}};
    write_json(o, out, doc);
    return success;
}

int cmd_estimate(const Options& o, std::ostream& out)
{
    if (o.data.empty() == o.tail.empty()) throw std::invalid_argument("estimate: give exactly one of --data, --tail");
    json doc = document("estimate", nullptr);
    if (!o.tail.empty()) {
        const CsvTable t = read_csv_file(o.tail);
        if (t.header.size() != 3) throw std::invalid_argument("estimate: --tail needs columns u1,u2,value");
        std::vector<DirectionEstimate> est;
        for (const Vec& r : t.rows) est.push_back({{r[0], r[1]}, r[2]});
        const ZonoidEstimate z = estimate_zonoid_2d(est);
        doc["polygon"] = polygon_to_json(z.polygon);
        doc["report"] = {{"clipped", z.clipped}, {"note", z.note}};
        write_json(o, out, doc);
        return success;
    }
    const SampleMatrix s = samples_from_csv(read_csv_file(o.data));
    const SpectralMeasure sigma = empirical_spectral(s, o.threshold, parse_reference_norm(o.reference));
    const SpectralMeasure normalized = normalize_marginals(sigma);
    doc["report"] = {{"threshold", o.threshold},
                     {"rows", s.rows},
                     {"exceedances", std::llround(sigma.total_mass() * static_cast<double>(s.rows) / o.threshold)},
                     {"total_mass", sigma.total_mass()},
                     {"marginal_sums", sigma.marginal_sums()}};
    doc["empirical_spectral"] = spectral_to_json(sigma);
    doc["spectral"] = spectral_to_json(normalized);
    if (s.cols == 2) doc["polygon"] = polygon_to_json(polygon_from_spectral_2d(normalized));
    write_json(o, out, doc);
    return success;
}

int cmd_quantile(const Options& o, std::ostream& out)
{
    const json spec = read_json_file(o.model);
    const MaxStableModel model = model_from_json(spec);
    CsvTable t;
    t.metadata = {" version=" + std::string(kToolVersion), " alpha=" + format_double(o.alpha)};
    t.header = {"x1", "x2"};
    for (const Point2& p : quantile_curve(model, o.alpha, o.curve_points)) t.rows.push_back({p.x, p.y});
    write_table(o, out, t);
    return success;
}

int cmd_converge(const Options& o, std::ostream& out)
{
    const json spec = read_json_file(o.model);
    const MaxStableModel model = model_from_json(spec);
    const SampleMatrix s = samples_from_csv(read_csv_file(o.data));
    Vec grid;
    std::stringstream ss(o.s_grid);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
    if (grid.empty()) throw std::invalid_argument("converge: --s-grid is empty");
    CsvTable t;
    t.metadata = {" version=" + std::string(kToolVersion), " rows=" + std::to_string(s.rows)};
    t.header = {"s", "exceedances", "distance"};
    for (const ConvergencePoint& p : convergence_diagnostic(s, grid, model.zonoid(), o.grid))
        t.rows.push_back({p.s, static_cast<double>(p.exceedances), p.distance});
    write_table(o, out, t);
    return success;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Max-zonoids and simple max-stable laws", kToolName};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool needs_model) {
        auto* m = sub->add_option("--model", o.model, "model specification (JSON)");
        if (needs_model) m->required()->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "output file (default stdout)");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--grid", o.grid, "direction grid size (0 = default)");
        sub->add_option("--samples", o.samples, "sample count");
        sub->add_option("--tol", o.tol, "quadrature tolerance");
    };

    auto* eval = app.add_subcommand("eval", "evaluate cdf, copula, pickands or norm at CSV rows");
    common(eval, true);
    eval->add_option("--points", o.points, "CSV of evaluation points")->required()->check(CLI::ExistingFile);
    eval->add_option("--function", o.function, "cdf | copula | pickands | norm")
        ->check(CLI::IsMember({"cdf", "copula", "pickands", "norm"}));

    auto* measures = app.add_subcommand("measures", "extremal coefficients and dependence measures");
    common(measures, true);
    measures->add_option("--max-subset", o.max_subset, "largest subset size for theta (0 = all)");
    measures->add_flag("--mc", o.monte_carlo, "use Monte Carlo volumes in the plane as well");

    auto* sim = app.add_subcommand("simulate", "exact simulation to CSV");
    common(sim, true);
    sim->get_option("--samples")->required();

    auto* spectral = app.add_subcommand("spectral", "polygon <-> spectral conversion with validation");
    common(spectral, true);
    spectral->add_flag("--to-atoms", o.to_atoms, "emit the spectral form");
    spectral->add_flag("--to-polygon", o.to_polygon, "emit the polygon form (d = 2)");
    spectral->add_option("--reference", o.reference, "reference norm l1 | l2 | linf")
        ->check(CLI::IsMember({"l1", "l2", "linf"}));

    auto* check = app.add_subcommand("check-theta", "consistency of an extremal coefficient table");
    common(check, true);

    auto* construct = app.add_subcommand("construct-theta", "model from a consistent extremal coefficient table");
    common(construct, true);
    construct->add_option("--reference", o.reference, "reference norm l1 | l2 | linf")
        ->check(CLI::IsMember({"l1", "l2", "linf"}));

    auto* estimate = app.add_subcommand("estimate", "empirical spectral measure or planar half-plane estimate");
    common(estimate, false);
    estimate->add_option("--data", o.data, "sample CSV")->check(CLI::ExistingFile);
    estimate->add_option("--tail", o.tail, "CSV u1,u2,value of tail dependence estimates")->check(CLI::ExistingFile);
    estimate->add_option("--threshold,-s", o.threshold, "threshold s on the reference norm");
    estimate->add_option("--reference", o.reference, "reference norm l1 | l2 | linf")
        ->check(CLI::IsMember({"l1", "l2", "linf"}));

    auto* quantile = app.add_subcommand("quantile", "planar quantile curve {F = alpha}");
    common(quantile, true);
    quantile->add_option("--alpha", o.alpha, "level in (0,1)")->required();
    quantile->add_option("--points", o.curve_points, "number of equispaced polar angles");

    auto* converge = app.add_subcommand("converge", "Hausdorff distance of sigma_s zonoids to a target");
    common(converge, true);
    converge->add_option("--data", o.data, "sample CSV")->required()->check(CLI::ExistingFile);
    converge->add_option("--s-grid", o.s_grid, "increasing thresholds, comma separated")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return success;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return success;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return success;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return usage_error;
    }

    try {
        if (*eval) return cmd_eval(o, out);
        if (*measures) return cmd_measures(o, out);
        if (*sim) return cmd_simulate(o, out);
        if (*spectral) return cmd_spectral(o, out, err);
        if (*check) return cmd_check_theta(o, out, err);
        if (*construct) return cmd_construct_theta(o, out);
        if (*estimate) return cmd_estimate(o, out);
        if (*quantile) return cmd_quantile(o, out);
        if (*converge) return cmd_converge(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return validation_failure;
    }
    return usage_error;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{kToolName};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace maxzonoid::cli
