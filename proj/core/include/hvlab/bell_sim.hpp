#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hvlab/angles.hpp"
#include "hvlab/hv_core.hpp"

namespace hvlab {

/// How the source draws the station-A direction.
///
/// Projection is the contextual rule a classical simulation of the vector
/// model must use: the direction comes from the two-point set
/// {alpha, alpha + pi/2} with equal weight, alpha being station A's analyzer
/// angle. NaiveUniform is the non-contextual control: uniform on [0, pi).
enum class SamplingSemantics { Projection, NaiveUniform };

constexpr const char* to_string(SamplingSemantics semantics) {
    return semantics == SamplingSemantics::Projection ? "projection" : "naive-uniform";
}

/// Joint detection tallies of a two-station run. +/- are the transmitted and
/// reflected analyzer outputs. With the default unit-integral source each
/// interval contributes at most one joint event per side, so the four cells
/// sum to at most n_intervals.
struct CoincidenceCounts {
    std::int64_t n_pp = 0;
    std::int64_t n_pm = 0;
    std::int64_t n_mp = 0;
    std::int64_t n_mm = 0;
    std::int64_t n_intervals = 0;

    std::int64_t total_joint() const { return n_pp + n_pm + n_mp + n_mm; }
    double fraction_pp() const {
        return n_intervals > 0 ? static_cast<double>(n_pp) / static_cast<double>(n_intervals) : 0.0;
    }
    void merge_from(const CoincidenceCounts& other) {
        n_pp += other.n_pp;
        n_pm += other.n_pm;
        n_mp += other.n_mp;
        n_mm += other.n_mm;
        n_intervals += other.n_intervals;
    }
};

struct RunConfig {
    BellState state = BellState::PsiMinus;
    SamplingSemantics semantics = SamplingSemantics::Projection;
    double alpha = 0.0;
    double beta = 0.0;
    std::int64_t n_intervals = 1'000'000;
    std::uint64_t seed = 0;
    GeneratorConfig generator;
    Discipline discipline = Discipline::Accumulator;

    void validate() const;  // throws ConfigError
};

/// Transmitted/reflected integrals of a constant-direction interval with
/// modulus integral m at a two-output analyzer: (m cos^2(v - angle),
/// m sin^2(v - angle)). Closed form of project() + modulus_integral().
std::pair<double, double> analyzer_masses(double m, double v, double angle);

/// Station-B masses for an entangled partner of a constant-direction
/// interval; closed form of partner_hv() followed by analyzer_masses().
std::pair<double, double> partner_analyzer_masses(BellState state, double m, double v,
                                                  double beta);

/// Runs a two-station experiment and tallies the 2x2 joint outcomes.
CoincidenceCounts run_bell(const RunConfig& cfg, int partitions = 1);

/// Correlation estimator E = (pp + mm - pm - mp) / (pp + mm + pm + mp).
/// Throws StatisticsError when there are no joint events.
double correlation(const CoincidenceCounts& counts);
double correlation_stderr(const CoincidenceCounts& counts);

/// Analyzer-angle quadruple; defaults are the canonical settings
/// (0, pi/4, pi/8, 3pi/8) that maximize the vector-model CHSH value.
struct ChshAngles {
    double a = 0.0;
    double a_prime = kPi / 4.0;
    double b = kPi / 8.0;
    double b_prime = 3.0 * kPi / 8.0;
};

struct ChshEstimate {
    double s = 0.0;
    std::array<double, 4> e{};   // E(a,b), E(a,b'), E(a',b), E(a',b')
    std::array<double, 4> se{};  // standard errors of the four estimates
};

ChshEstimate chsh_from_runs(const std::array<CoincidenceCounts, 4>& runs);

/// Four-run CHSH estimate S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')|.
/// Each run uses a seed derived from (cfg.seed, run index).
ChshEstimate chsh(const RunConfig& cfg_base, const ChshAngles& angles, int partitions = 1);

struct MalusResult {
    std::int64_t n_intervals = 0;
    std::int64_t n_subset = 0;       // intervals detected after the first analyzer
    std::int64_t n_transmitted = 0;  // of those, detected after the second
    double fraction() const {
        return n_subset > 0 ? static_cast<double>(n_transmitted) / static_cast<double>(n_subset)
                            : 0.0;
    }
    void merge_from(const MalusResult& other) {
        n_intervals += other.n_intervals;
        n_subset += other.n_subset;
        n_transmitted += other.n_transmitted;
    }
};

/// Single-beam chain: source, analyzer at alpha, detector (defines the
/// conditioning subset), analyzer at beta, detector. Under Projection
/// semantics the conditioned fraction follows cos^2(alpha - beta).
MalusResult run_malus(const RunConfig& cfg, int partitions = 1);

struct SweepPoint {
    double delta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    CoincidenceCounts counts;
    double measured = 0.0;
    double analytic = 0.0;
    double stderr_measured = 0.0;
};

/// One run per grid value, with beta = alpha - delta; the analytic column
/// is the closed-form coincidence fraction.
std::vector<SweepPoint> sweep_coincidence(const RunConfig& cfg, std::span<const double> deltas,
                                          int partitions = 1);

/// Closed-form ++ coincidence fraction under Projection semantics:
///   psi-minus: sin^2(a-b)/2   phi-plus: cos^2(a-b)/2
///   psi-plus:  sin^2(a+b)/2   phi-minus: cos^2(a+b)/2
double coincidence_fraction(BellState state, double alpha, double beta);

/// Semantics-aware variant (unit-integral source): uniform non-contextual
/// sampling halves every correlation, so its ++ fraction is
/// (1 + correlation/2)/4.
double coincidence_fraction(BellState state, SamplingSemantics semantics, double alpha,
                            double beta);

/// Closed-form correlation under Projection semantics (e.g. -cos 2(a-b)
/// for psi-minus).
double correlation_law(BellState state, double alpha, double beta);

double chsh_law(BellState state, const ChshAngles& angles);

}  // namespace hvlab
