#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "maxzonoid/geometry.hpp"

namespace maxzonoid {

namespace family {
struct Independence {};
struct CompleteDependence {};
/// l_p norm, p in [1, inf]; logistic parameter alpha = 1/p.
struct Logistic {
    double p = 2.0;
};
/// |x|_1 - lambda * |x|_p with lambda in [0,1] and p in [-inf, 0]; planar only.
struct NegLogistic {
    double lambda = 0.5;
    double p = -1.0;
};
/// lambda in [0, inf]; planar only.
struct HuslerReiss {
    double lambda = 1.0;
};
/// conv{0, e1, e2, (alpha1, 1), (1, alpha2)}; planar only.
struct MarshallOlkin {
    double alpha1 = 0.5;
    double alpha2 = 0.5;
};
/// Rows of a nonnegative m x d matrix with unit column sums;
/// |x|_K = sum_i max_j a_ij x_j.
struct MatrixWeights {
    std::vector<Vec> rows;
};
}  // namespace family

struct FamilySpec {
    std::variant<family::Independence, family::CompleteDependence, family::Logistic, family::NegLogistic,
                 family::HuslerReiss, family::MarshallOlkin, family::MatrixWeights>
        family;
    std::size_t dim = 2;
};

/// Canonical text form, e.g. "logistic(d=3,p=2)" or "matrix_weights(d=2,A=1 0;0 1)".
std::string to_string(const FamilySpec& spec);
FamilySpec parse_family(std::string_view text);

/// Checks parameter ranges and builds the dependency set.
DependencySet make_family(const FamilySpec& spec);

struct Discretization {
    SpectralMeasure measure;
    /// Largest |h_K - h_discrete| observed on the evaluation grid.
    double max_support_error = 0.0;
};

inline constexpr std::size_t kDefaultAtoms = 1000;

/// Discrete spectral measure on the l1 simplex approximating a dependency set.
///
/// Planar bodies: supporting-line envelope at normals (1 - t_k, t_k) for
/// Chebyshev-Lobatto nodes t_k, whose edges give atoms at (t_k, 1 - t_k).
/// Higher dimensions: nonnegative least squares over Chebyshev-spaced simplex
/// points. Marginal sums are renormalized to 1 in both cases. Bodies that
/// already have at most m atoms are returned exactly.
Discretization discretize(const DependencySet& k, std::size_t m = kDefaultAtoms);

}  // namespace maxzonoid
