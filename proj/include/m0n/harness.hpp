#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "m0n/rational.hpp"
#include "m0n/skeleton.hpp"
#include "m0n/tree.hpp"
#include "m0n/trop.hpp"

namespace m0n {

struct CompareOptions {
    int base_i = 0, base_j = 0;   // 0,0: defaults to (1, n)
    int poly_samples = 10;
    int max_terms = 5;
    std::uint64_t seed = 1;
};

/// Result of comparing the section valuation of a metric tree against the
/// skeleton valuation of the corresponding stratum point.
struct ComparisonReport {
    int n = 0;
    std::vector<Split> cone;
    std::vector<Rational> lengths;            // alpha per split, canonical order
    struct GeneratorPair {
        std::string symbol;
        Rational section;
        Rational skeleton;
    };
    std::vector<GeneratorPair> generator_pairs;
    bool pass = false;
    std::string detail;                       // first failure, empty when passing
    std::uint64_t seed = 0;
};

/// Checks, over exact rationals:
///   - every cross-ratio over all leaf quadruples has equal weight on both sides,
///   - every local generator weighs alpha(s) on both sides,
///   - sampled Laurent polynomials in the generators evaluate equally
///     (section side expands generators into Pluecker monomials first).
ComparisonReport compare_point(const MarkedMetricTree& t, const CompareOptions& opt = {});

/// Commutativity of the forgetful square for the last leaf of t (t has n+1
/// leaves): the canonical tropical point of forget_leaf(t, n+1) equals the one
/// computed from the restricted distance matrix, and forget_stratum of t's
/// stratum point equals the stratum point of the stabilized tree.
bool check_diagram(const MarkedMetricTree& t);

struct FiberReport {
    int attachments = 0;
    int failures = 0;
    std::vector<std::string> failure_details;
};

/// Sweeps the fiber over a base tree: attaches leaf n+1 at every internal
/// vertex, on every internal edge (splitting its length over the grid), and on
/// every leaf edge (new cherry edge lengths from the grid); each attachment
/// must pass compare_point and forget back to the base.
FiberReport fiber_sweep(const MarkedMetricTree& base, const std::vector<Rational>& grid,
                        std::uint64_t seed = 1);

struct SweepConfig {
    int n_from = 4;
    int n_to = 5;
    int samples_per_cone = 5;
    int poly_samples = 10;
    std::vector<Rational> grid = {Rational(1), Rational(1, 2), Rational(7, 3)};
    std::uint64_t seed = 1;
    int jobs = 1;
};

struct SweepSummary {
    struct PerN {
        int n = 0;
        int cones = 0;
        int points = 0;
        int failures = 0;
    };
    std::vector<PerN> per_n;
    std::uint64_t seed = 0;
    std::vector<ComparisonReport> failure_reports;

    int total_failures() const;
};

/// Deterministic given the seed: per-cone seeds are derived from (seed, n,
/// cone index) before any parallel fan-out, and results are merged in cone
/// order regardless of the job count.
SweepSummary run_suite(const SweepConfig& cfg);

/// Deterministic helper: length vectors and polynomial samples come from this.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

} // namespace m0n
