#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hvlab/bell_state.hpp"
#include "hvlab/rng.hpp"

namespace hvlab {

/// One sampled value of the transverse hidden-variable vector,
/// V = f e_x + g e_y. Units are scaled so the detection threshold u = 1.
struct Sample {
    double f = 0.0;
    double g = 0.0;
};

/// The hidden-variable trajectory of one i-interval: a fixed-step sampled
/// sequence of transverse components. The interval duration is
/// dt * samples.size(); the generator always produces duration 1.
struct IntervalHV {
    std::vector<Sample> samples;
    double dt = 1.0;

    double duration() const { return dt * static_cast<double>(samples.size()); }
};

enum class AngleMode { Fixed, Uniform };
enum class ModulusMode { FixedIntegral, UniformIntegral };
enum class Waveform { Constant, Harmonic };

/// Source configuration for interval generation.
///
/// UniformIntegral draws the modulus integral m uniformly from [lo, hi];
/// the ensemble mean (lo+hi)/2 must equal the threshold u = 1, enforced by
/// validate(). Harmonic modulates the modulus sinusoidally while preserving
/// the drawn integral; it needs at least two samples per cycle.
struct GeneratorConfig {
    AngleMode angle_mode = AngleMode::Uniform;
    double fixed_angle = 0.0;

    ModulusMode modulus_mode = ModulusMode::FixedIntegral;
    double fixed_integral = 1.0;
    double uniform_lo = 0.5;
    double uniform_hi = 1.5;

    int samples_per_interval = 1;
    Waveform waveform = Waveform::Constant;
    int harmonic_cycles = 1;

    void validate() const;  // throws ConfigError
};

/// Per-interval random draw of the source: a direction in [0, pi) and a
/// modulus integral. generate_interval() consumes exactly these draws, so
/// closed-form consumers stay in lockstep with sampled ones.
struct IntervalDraw {
    double angle = 0.0;
    double modulus = 1.0;
};

IntervalDraw draw_interval(Rng& rng, const GeneratorConfig& cfg);

/// Realizes one interval trajectory. The returned interval has duration 1,
/// modulus integral equal to the drawn m (1e-12 relative) and a constant
/// direction equal to the drawn angle.
IntervalHV generate_interval(Rng& rng, const GeneratorConfig& cfg);

/// Same realization for an already-drawn (angle, modulus); shares the
/// waveform code path with generate_interval.
IntervalHV realize_interval(const IntervalDraw& draw, const GeneratorConfig& cfg);

/// Time integral of the squared modulus: sum of (f^2 + g^2) * dt. This is
/// the quantity compared against the detection threshold.
double modulus_integral(const IntervalHV& hv);

/// Direction of a constant-direction interval, in [0, pi); uses the first
/// sample with nonzero modulus.
double hv_angle(const IntervalHV& hv);

struct ProjectionResult {
    IntervalHV parallel;
    IntervalHV orthogonal;
};

/// Two-output analyzer at angle alpha: splits each sample into components
/// parallel and orthogonal to e_alpha. Sample-wise the squared moduli add
/// up to the input's, so the two output integrals sum to the input integral.
ProjectionResult project(const IntervalHV& hv, double alpha);

/// Station-B hidden variable for an entangled pair, given station A's.
/// Per sample (f, g) ->
///   psi-minus: (g, -f)   phi-plus: (f, g)
///   psi-plus:  (g, f)    phi-minus: (f, -g)
/// All four preserve the modulus of every sample.
IntervalHV partner_hv(const IntervalHV& hv, BellState state);

/// Angle-level counterpart of partner_hv for constant-direction intervals:
///   psi-minus: v - pi/2   phi-plus: v
///   psi-plus:  pi/2 - v   phi-minus: -v          (all mod pi)
double partner_angle(BellState state, double v);

enum class Discipline { Accumulator, Bernoulli };

/// Threshold-u particle detector.
///
/// Accumulator integrates incoming modulus and fires a count each time the
/// running sum crosses the threshold, carrying the remainder; deterministic,
/// long-run rate <m>/u exactly. Bernoulli fires a single count with
/// probability min(1, m/u); memoryless.
struct DetectorState {
    Discipline discipline = Discipline::Accumulator;
    double threshold = 1.0;  // u; unit scaling keeps this at 1
    double residual = 0.0;   // Accumulator only; stays in [0, threshold)
};

int detect(DetectorState& det, double m, Rng& rng);

}  // namespace hvlab
