#include "maxzonoid/families.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace maxzonoid {

namespace {

std::string fmt_double(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

double parse_double(std::string_view s, std::string_view key)
{
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("family: cannot parse value '" + std::string(s) + "' for " + std::string(key));
    return v;
}

double lp_norm(std::span<const double> x, double p)
{
    double m = 0.0;
    for (double v : x) m = std::max(m, v);
    if (m == 0.0 || std::isinf(p)) return m;
    if (p == 1.0) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    double s = 0.0;
    for (double v : x) s += std::pow(v / m, p);
    return m * std::pow(s, 1.0 / p);
}

/// Power mean with p <= 0 on the open orthant, 0 when a coordinate vanishes.
double negative_power_norm(std::span<const double> x, double p)
{
    double m = kInf;
    for (double v : x) m = std::min(m, v);
    if (m == 0.0 || p == 0.0) return 0.0;
    if (std::isinf(p)) return m;
    double s = 0.0;
    for (double v : x) s += std::pow(v / m, p);
    return m * std::pow(s, 1.0 / p);
}

AnalyticNorm logistic_norm(std::size_t d, double p)
{
    AnalyticNorm n;
    n.dim = d;
    n.label = "logistic(p=" + fmt_double(p) + ")";
    n.value = [p](std::span<const double> x) { return lp_norm(x, p); };
    n.gradient = [p](std::span<const double> x) {
        Vec g(x.size(), 1.0);
        const double r = lp_norm(x, p);
        if (r == 0.0 || p == 1.0) return g;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (std::isinf(p)) g[i] = x[i] == r ? 1.0 : 0.0;
            else g[i] = std::pow(x[i] / r, p - 1.0);
        }
        return g;
    };
    return n;
}

AnalyticNorm neg_logistic_norm(double lambda, double p)
{
    AnalyticNorm n;
    n.dim = 2;
    n.label = "neg_logistic(lambda=" + fmt_double(lambda) + ",p=" + fmt_double(p) + ")";
    n.value = [lambda, p](std::span<const double> x) { return x[0] + x[1] - lambda * negative_power_norm(x, p); };
    n.gradient = [lambda, p](std::span<const double> x) {
        Vec g{1.0, 1.0};
        if (p == 0.0 || lambda == 0.0) return g;
        if (x[0] == 0.0 || x[1] == 0.0) {
            // the vanishing coordinate carries the whole derivative of the power mean
            if (x[0] == 0.0 && x[1] > 0.0) g[0] = 1.0 - lambda;
            if (x[1] == 0.0 && x[0] > 0.0) g[1] = 1.0 - lambda;
            return g;
        }
        if (std::isinf(p)) {
            if (x[0] < x[1]) g[0] = 1.0 - lambda;
            if (x[1] < x[0]) g[1] = 1.0 - lambda;
            return g;
        }
        const double r = negative_power_norm(x, p);
        for (std::size_t i = 0; i < 2; ++i) g[i] = 1.0 - lambda * std::pow(x[i] / r, p - 1.0);
        return g;
    };
    return n;
}

AnalyticNorm husler_reiss_norm(double lambda)
{
    AnalyticNorm n;
    n.dim = 2;
    n.label = "husler_reiss(lambda=" + fmt_double(lambda) + ")";
    n.value = [lambda](std::span<const double> x) {
        if (x[0] == 0.0) return x[1];
        if (x[1] == 0.0) return x[0];
        if (lambda == 0.0) return std::max(x[0], x[1]);
        if (std::isinf(lambda)) return x[0] + x[1];
        const double l = std::log(x[0] / x[1]) / (2.0 * lambda);
        return x[0] * normal_cdf(lambda + l) + x[1] * normal_cdf(lambda - l);
    };
    n.gradient = [lambda](std::span<const double> x) {
        if (x[0] == 0.0 && x[1] == 0.0) return Vec{1.0, 1.0};
        if (x[0] == 0.0) return Vec{std::isinf(lambda) ? 1.0 : (lambda == 0.0 ? 0.0 : 0.0), 1.0};
        if (x[1] == 0.0) return Vec{1.0, std::isinf(lambda) ? 1.0 : 0.0};
        if (lambda == 0.0) {
            if (x[0] == x[1]) return Vec{1.0, 1.0};
            return x[0] > x[1] ? Vec{1.0, 0.0} : Vec{0.0, 1.0};
        }
        if (std::isinf(lambda)) return Vec{1.0, 1.0};
        const double l = std::log(x[0] / x[1]) / (2.0 * lambda);
        return Vec{normal_cdf(lambda + l), normal_cdf(lambda - l)};
    };
    return n;
}

void require(bool ok, const std::string& what)
{
    if (!ok) throw std::invalid_argument("family: " + what);
}

}  // namespace

std::string to_string(const FamilySpec& spec)
{
    std::ostringstream os;
    const std::string d = "d=" + std::to_string(spec.dim);
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, family::Independence>) os << "independence(" << d << ")";
            else if constexpr (std::is_same_v<T, family::CompleteDependence>) os << "dependence(" << d << ")";
            else if constexpr (std::is_same_v<T, family::Logistic>) os << "logistic(" << d << ",p=" << fmt_double(f.p) << ")";
            else if constexpr (std::is_same_v<T, family::NegLogistic>)
                os << "neg_logistic(" << d << ",lambda=" << fmt_double(f.lambda) << ",p=" << fmt_double(f.p) << ")";
            else if constexpr (std::is_same_v<T, family::HuslerReiss>)
                os << "husler_reiss(" << d << ",lambda=" << fmt_double(f.lambda) << ")";
            else if constexpr (std::is_same_v<T, family::MarshallOlkin>)
                os << "marshall_olkin(" << d << ",alpha1=" << fmt_double(f.alpha1) << ",alpha2=" << fmt_double(f.alpha2) << ")";
            else {
                os << "matrix_weights(" << d << ",A=";
                for (std::size_t i = 0; i < f.rows.size(); ++i) {
                    if (i) os << ";";
                    for (std::size_t j = 0; j < f.rows[i].size(); ++j) os << (j ? " " : "") << fmt_double(f.rows[i][j]);
                }
                os << ")";
            }
        },
        spec.family);
    return os.str();
}

FamilySpec parse_family(std::string_view text)
{
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')')
        throw std::invalid_argument("family: expected name(key=value,...) but got '" + std::string(text) + "'");
    const std::string name(text.substr(0, open));
    std::string_view body = text.substr(open + 1, text.size() - open - 2);
    std::map<std::string, std::string> kv;
    while (!body.empty()) {
        const auto comma = body.find(',');
        const std::string_view item = body.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("family: malformed parameter '" + std::string(item) + "'");
        kv[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    auto take = [&](const std::string& key) -> double {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::invalid_argument("family " + name + ": missing parameter " + key);
        const double v = parse_double(it->second, key);
        kv.erase(it);
        return v;
    };
    FamilySpec spec;
    if (kv.count("d")) {
        const double d = take("d");
        require(d >= 1.0 && d == std::floor(d), "d must be a positive integer");
        spec.dim = static_cast<std::size_t>(d);
    }
    if (name == "independence") spec.family = family::Independence{};
    else if (name == "dependence") spec.family = family::CompleteDependence{};
    else if (name == "logistic") spec.family = family::Logistic{take("p")};
    else if (name == "neg_logistic") {
        const double lambda = take("lambda");
        spec.family = family::NegLogistic{lambda, take("p")};
    } else if (name == "husler_reiss") spec.family = family::HuslerReiss{take("lambda")};
    else if (name == "marshall_olkin") {
        const double a1 = take("alpha1");
        spec.family = family::MarshallOlkin{a1, take("alpha2")};
    } else if (name == "matrix_weights") {
        auto it = kv.find("A");
        if (it == kv.end()) throw std::invalid_argument("family matrix_weights: missing parameter A");
        family::MatrixWeights mw;
        std::string_view rows = it->second;
        while (!rows.empty()) {
            const auto semi = rows.find(';');
            std::istringstream is{std::string(rows.substr(0, semi))};
            Vec row;
            std::string tok;
            while (is >> tok) row.push_back(parse_double(tok, "A"));
            mw.rows.push_back(std::move(row));
            if (semi == std::string_view::npos) break;
            rows.remove_prefix(semi + 1);
        }
        kv.erase(it);
        if (!mw.rows.empty()) spec.dim = mw.rows.front().size();
        spec.family = std::move(mw);
    } else {
        throw std::invalid_argument("family: unknown family '" + name + "'");
    }
    if (!kv.empty()) throw std::invalid_argument("family " + name + ": unexpected parameter " + kv.begin()->first);
    return spec;
}

DependencySet make_family(const FamilySpec& spec)
{
    const std::size_t d = spec.dim;
    require(d >= 1, "dimension must be positive");
    return std::visit(
        [&](const auto& f) -> DependencySet {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, family::Independence>) {
                std::vector<Atom> atoms;
                for (std::size_t i = 0; i < d; ++i) {
                    Vec e(d, 0.0);
                    e[i] = 1.0;
                    atoms.push_back({e, 1.0});
                }
                return DependencySet(MaxZonoid(SpectralMeasure(ReferenceNorm::l1, d, std::move(atoms))));
            } else if constexpr (std::is_same_v<T, family::CompleteDependence>) {
                std::vector<Atom> atoms{{Vec(d, 1.0 / static_cast<double>(d)), static_cast<double>(d)}};
                return DependencySet(MaxZonoid(SpectralMeasure(ReferenceNorm::l1, d, std::move(atoms))));
            } else if constexpr (std::is_same_v<T, family::Logistic>) {
                require(f.p >= 1.0, "logistic needs p >= 1");
                return DependencySet(MaxZonoid(logistic_norm(d, f.p)));
            } else if constexpr (std::is_same_v<T, family::NegLogistic>) {
                require(d == 2, "neg_logistic is planar (d = 2)");
                require(f.lambda >= 0.0 && f.lambda <= 1.0, "neg_logistic needs lambda in [0,1]");
                require(f.p <= 0.0, "neg_logistic needs p in [-inf, 0]");
                return DependencySet(MaxZonoid(neg_logistic_norm(f.lambda, f.p)));
            } else if constexpr (std::is_same_v<T, family::HuslerReiss>) {
                require(d == 2, "husler_reiss is planar (d = 2)");
                require(f.lambda >= 0.0, "husler_reiss needs lambda in [0, inf]");
                return DependencySet(MaxZonoid(husler_reiss_norm(f.lambda)));
            } else if constexpr (std::is_same_v<T, family::MarshallOlkin>) {
                require(d == 2, "marshall_olkin is planar (d = 2)");
                require(f.alpha1 >= 0.0 && f.alpha1 <= 1.0 && f.alpha2 >= 0.0 && f.alpha2 <= 1.0,
                        "marshall_olkin needs alpha1, alpha2 in [0,1]");
                return DependencySet(MaxZonoid(Polygon2D({{1.0, 0.0}, {1.0, f.alpha2}, {f.alpha1, 1.0}, {0.0, 1.0}})));
            } else {
                require(!f.rows.empty(), "matrix_weights needs at least one row");
                Vec colsum(d, 0.0);
                std::vector<WeightedPoint> pts;
                for (const Vec& row : f.rows) {
                    require(row.size() == d, "matrix_weights rows must have d entries");
                    double rs = 0.0;
                    for (std::size_t j = 0; j < d; ++j) {
                        require(row[j] >= 0.0 && std::isfinite(row[j]), "matrix_weights entries must be nonnegative");
                        colsum[j] += row[j];
                        rs += row[j];
                    }
                    require(rs > 0.0, "matrix_weights rows must not vanish");
                    pts.push_back({row, 1.0});
                }
                for (std::size_t j = 0; j < d; ++j)
                    require(std::abs(colsum[j] - 1.0) <= 1e-9,
                            "matrix_weights column " + std::to_string(j + 1) + " sums to " + fmt_double(colsum[j]));
                return DependencySet(MaxZonoid(spectral_from_points(pts, d, ReferenceNorm::l1)));
            }
        },
        spec.family);
}

namespace {

/// Lawson-Hanson active set solver for min |Ax - b| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
{
    // Lawson-Hanson on the normal equations; the passive block is solved by LDLT
    const Eigen::Index n = a.cols();
    const Eigen::MatrixXd gram = a.transpose() * a;
    const Eigen::VectorXd rhs = a.transpose() * b;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    const double tol = 1e-12 * std::max(1.0, gram.cwiseAbs().maxCoeff()) * static_cast<double>(n);
    auto solve_passive = [&](std::vector<Eigen::Index>& idx) {
        idx.clear();
        for (Eigen::Index j = 0; j < n; ++j)
            if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
        const auto k = static_cast<Eigen::Index>(idx.size());
        Eigen::MatrixXd gp(k, k);
        Eigen::VectorXd rp(k);
        for (Eigen::Index r = 0; r < k; ++r) {
            rp[r] = rhs[idx[static_cast<std::size_t>(r)]];
            for (Eigen::Index c = 0; c < k; ++c) gp(r, c) = gram(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
        }
        return Eigen::VectorXd(gp.ldlt().solve(rp));
    };
    std::vector<Eigen::Index> idx;
    for (int outer = 0; outer < 3 * n; ++outer) {
        const Eigen::VectorXd w = rhs - gram * x;
        Eigen::Index best = -1;
        double wmax = tol;
        for (Eigen::Index j = 0; j < n; ++j)
            if (!passive[static_cast<std::size_t>(j)] && w[j] > wmax) {
                wmax = w[j];
                best = j;
            }
        if (best < 0) break;
        passive[static_cast<std::size_t>(best)] = true;
        for (int inner = 0; inner < 3 * n; ++inner) {
            const Eigen::VectorXd zp = solve_passive(idx);
            bool all_positive = true;
            for (Eigen::Index k = 0; k < zp.size(); ++k) all_positive = all_positive && zp[k] > 0.0;
            if (all_positive) {
                x.setZero();
                for (std::size_t k = 0; k < idx.size(); ++k) x[idx[k]] = zp[static_cast<Eigen::Index>(k)];
                break;
            }
            double alpha = 1.0;
            for (std::size_t k = 0; k < idx.size(); ++k) {
                const double z = zp[static_cast<Eigen::Index>(k)];
                if (z <= 0.0) alpha = std::min(alpha, x[idx[k]] / (x[idx[k]] - z));
            }
            for (std::size_t k = 0; k < idx.size(); ++k) {
                const Eigen::Index j = idx[k];
                x[j] += alpha * (zp[static_cast<Eigen::Index>(k)] - x[j]);
                if (x[j] <= 1e-15) {
                    x[j] = 0.0;
                    passive[static_cast<std::size_t>(j)] = false;
                }
            }
        }
    }
    return x;
}

/// All compositions of `total` into d nonnegative parts.
void compositions(std::size_t d, std::size_t total, std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() + 1 == d) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (std::size_t k = 0; k <= total; ++k) {
        cur.push_back(k);
        compositions(d, total - k, cur, out);
        cur.pop_back();
    }
}

std::vector<Vec> simplex_lattice(std::size_t d, std::size_t levels, bool chebyshev)
{
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> cur;
    compositions(d, levels, cur, comps);
    std::vector<Vec> pts;
    for (const auto& c : comps) {
        Vec p(d);
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double u = static_cast<double>(c[i]) / static_cast<double>(levels);
            p[i] = chebyshev ? 0.5 * (1.0 - std::cos(std::numbers::pi * u)) : u;
            s += p[i];
        }
        for (double& v : p) v /= s;
        pts.push_back(std::move(p));
    }
    return pts;
}

double binomial(std::size_t n, std::size_t k)
{
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

SpectralMeasure renormalize_marginals(const SpectralMeasure& s)
{
    const Vec marg = s.marginal_sums();
    std::vector<WeightedPoint> pts;
    for (const Atom& a : s.atoms()) {
        WeightedPoint w{a.point, a.mass};
        for (std::size_t i = 0; i < w.point.size(); ++i) w.point[i] /= marg[i];
        pts.push_back(std::move(w));
    }
    return spectral_from_points(pts, s.dimension(), s.reference());
}

}  // namespace

Discretization discretize(const DependencySet& k, std::size_t m)
{
    if (m < 2) throw std::invalid_argument("discretize: need at least two atoms");
    const std::size_t d = k.dimension();
    const MaxZonoid& z = k.zonoid();
    std::optional<SpectralMeasure> result;
    const std::optional<SpectralMeasure> exact = z.spectral(ReferenceNorm::l1);
    if (exact && exact->atoms().size() <= m) {
        result = *exact;
    } else if (d == 1) {
        result = SpectralMeasure(ReferenceNorm::l1, 1, {{{1.0}, 1.0}});
    } else if (d == 2) {
        std::vector<Point2> normals;
        std::vector<double> offsets;
        // an odd node count keeps the symmetric direction t = 1/2
        const std::size_t nodes = m % 2 == 1 || m == 2 ? m : m - 1;
        for (std::size_t j = 0; j < nodes; ++j) {
            const double t = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(nodes - 1)));
            const Vec n{1.0 - t, t};
            normals.push_back({n[0], n[1]});
            offsets.push_back(z.support(n));
        }
        const Polygon2D env = halfplane_envelope(normals, offsets, 1.0, 1.0);
        result = renormalize_marginals(spectral_from_polygon_2d(env, ReferenceNorm::l1));
    } else {
        std::size_t levels = 1;
        while (binomial(levels + d - 1, d - 1) < static_cast<double>(m)) ++levels;
        const std::vector<Vec> atoms = simplex_lattice(d, levels, true);
        const std::vector<Vec> fit = simplex_lattice(d, 2 * levels, false);
        Eigen::MatrixXd a(static_cast<Eigen::Index>(fit.size()), static_cast<Eigen::Index>(atoms.size()));
        Eigen::VectorXd b(static_cast<Eigen::Index>(fit.size()));
        for (std::size_t r = 0; r < fit.size(); ++r) {
            b[static_cast<Eigen::Index>(r)] = z.support(fit[r]);
            for (std::size_t c = 0; c < atoms.size(); ++c) {
                double v = 0.0;
                for (std::size_t i = 0; i < d; ++i) v = std::max(v, atoms[c][i] * fit[r][i]);
                a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
            }
        }
        const Eigen::VectorXd w = nnls(a, b);
        std::vector<Atom> out;
        for (std::size_t c = 0; c < atoms.size(); ++c)
            if (w[static_cast<Eigen::Index>(c)] > 0.0) out.push_back({atoms[c], w[static_cast<Eigen::Index>(c)]});
        result = renormalize_marginals(SpectralMeasure(ReferenceNorm::l1, d, std::move(out)));
    }

    Discretization disc{*result, 0.0};
    const MaxZonoid approx(disc.measure);
    const std::size_t grid = d == 2 ? 4 * m : default_grid(d);
    for (const Vec& u : orthant_directions(d, grid))
        disc.max_support_error = std::max(disc.max_support_error, std::abs(z.support(u) - approx.support(u)));
    return disc;
}

}  // namespace maxzonoid
