#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxzonoid/distribution.hpp"

namespace maxzonoid {

using LatticeFunction = std::function<double(std::span<const double>)>;

struct AlternationWitness {
    Vec base;
    std::vector<Vec> points;
    double difference = 0.0;
};

struct AlternationResult {
    bool ok = true;
    std::optional<AlternationWitness> witness;
    std::size_t evaluations = 0;
};

inline constexpr std::size_t kAlternationBudget = 10'000'000;
inline constexpr double kAlternationTol = 1e-9;

/// Successive differences under coordinatewise maximum,
///   Delta_{x_n} ... Delta_{x_1} f(x) = sum_{S} (-1)^|S| f(x v max_{i in S} x_i),
/// over every base x in `lattice` and every set of 1..max_order distinct
/// lattice points. Reports the first difference above kAlternationTol.
/// Throws std::length_error when the evaluation count would exceed `budget`.
AlternationResult check_alternation(const LatticeFunction& f, std::span<const Vec> lattice, std::size_t max_order,
                                    std::size_t budget = kAlternationBudget);

/// Closure of a point set under coordinatewise maxima (points deduplicated).
std::vector<Vec> max_closure(std::span<const Vec> points);

/// theta_A for every subset A of {1..d}, indexed by bitmask; theta[0] = 0.
struct ExtremalTable {
    std::size_t d = 0;
    std::vector<double> theta;

    explicit ExtremalTable(std::size_t dim);
    double& operator[](std::uint64_t mask) { return theta.at(mask); }
    double operator[](std::uint64_t mask) const { return theta.at(mask); }

    static ExtremalTable from_model(const MaxStableModel& model);
};

inline constexpr std::size_t kMaxExtremalDim = 20;
inline constexpr double kConsistencyTol = 1e-9;

struct ConsistencyResult {
    bool ok = true;
    /// c_B indexed by bitmask; theta_A = sum over B meeting A of c_B.
    std::vector<double> weights;
    std::uint64_t witness = 0;
    double witness_value = 0.0;
};

/// Moebius inversion of g(C) = theta_full - theta_{complement of C}. The
/// table is consistent iff every c_B >= -kConsistencyTol; the witness is the
/// negative weight with the smallest mask.
ConsistencyResult check_extremal_consistency(const ExtremalTable& table);

/// One atom e_B/|e_B| with mass c_B |e_B| per subset with c_B > 0.
MaxStableModel construct_from_extremal(const ExtremalTable& table, ReferenceNorm ref = ReferenceNorm::l1);

/// "1,3" <-> bitmask 0b101.
std::string subset_to_string(std::uint64_t mask);
std::uint64_t parse_subset(std::string_view text, std::size_t d);

}  // namespace maxzonoid
