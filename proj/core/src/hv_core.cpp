#include "hvlab/hv_core.hpp"

#include <cmath>
#include <string>

#include "hvlab/angles.hpp"
#include "hvlab/errors.hpp"

namespace hvlab {

void GeneratorConfig::validate() const {
    if (samples_per_interval < 1)
        throw ConfigError("generator: samples_per_interval must be >= 1");
    switch (modulus_mode) {
        case ModulusMode::FixedIntegral:
            if (!(fixed_integral >= 0.0) || !std::isfinite(fixed_integral))
                throw ConfigError("generator: fixed integral must be finite and >= 0");
            break;
        case ModulusMode::UniformIntegral:
            if (!(uniform_lo >= 0.0) || !(uniform_hi >= uniform_lo))
                throw ConfigError("generator: uniform integral needs 0 <= lo <= hi");
            // <m> must equal the threshold u = 1.
            if (std::abs(uniform_lo + uniform_hi - 2.0) > 1e-12)
                throw ConfigError("generator: uniform integral mean must be 1 (lo + hi = 2)");
            break;
    }
    if (waveform == Waveform::Harmonic) {
        if (harmonic_cycles < 1)
            throw ConfigError("generator: harmonic cycles must be >= 1");
        if (samples_per_interval < 2 * harmonic_cycles)
            throw ConfigError("generator: harmonic waveform needs >= 2 samples per cycle");
    }
    if (angle_mode == AngleMode::Fixed && !std::isfinite(fixed_angle))
        throw ConfigError("generator: fixed angle must be finite");
}

IntervalDraw draw_interval(Rng& rng, const GeneratorConfig& cfg) {
    IntervalDraw d;
    switch (cfg.angle_mode) {
        case AngleMode::Fixed: d.angle = wrap_pi(cfg.fixed_angle); break;
        case AngleMode::Uniform: d.angle = rng.uniform_angle(); break;
    }
    switch (cfg.modulus_mode) {
        case ModulusMode::FixedIntegral:
            d.modulus = cfg.fixed_integral;
            break;
        case ModulusMode::UniformIntegral:
            d.modulus = cfg.uniform_lo + rng.uniform() * (cfg.uniform_hi - cfg.uniform_lo);
            break;
    }
    return d;
}

IntervalHV realize_interval(const IntervalDraw& draw, const GeneratorConfig& cfg) {
    cfg.validate();
    const int n = cfg.samples_per_interval;
    const double dt = 1.0 / static_cast<double>(n);
    const double c = std::cos(draw.angle);
    const double s = std::sin(draw.angle);

    IntervalHV hv;
    hv.dt = dt;
    hv.samples.resize(static_cast<std::size_t>(n));

    if (cfg.waveform == Waveform::Constant) {
        const double amplitude = std::sqrt(draw.modulus);  // V^2 * T = m with T = 1
        for (auto& sample : hv.samples) {
            sample.f = amplitude * c;
            sample.g = amplitude * s;
        }
        return hv;
    }

    // Harmonic: V_k = A |sin(2 pi cycles t_k)| with A fixed so the modulus
    // integral equals the drawn m exactly.
    const double omega = 2.0 * kPi * static_cast<double>(cfg.harmonic_cycles);
    std::vector<double> envelope(hv.samples.size());
    double weight = 0.0;
    for (std::size_t k = 0; k < envelope.size(); ++k) {
        const double t = (static_cast<double>(k) + 0.5) * dt;
        envelope[k] = std::sin(omega * t);
        weight += envelope[k] * envelope[k] * dt;
    }
    const double amplitude2 = draw.modulus / weight;
    for (std::size_t k = 0; k < envelope.size(); ++k) {
        const double v = std::sqrt(amplitude2) * std::abs(envelope[k]);
        hv.samples[k].f = v * c;
        hv.samples[k].g = v * s;
    }
    return hv;
}

IntervalHV generate_interval(Rng& rng, const GeneratorConfig& cfg) {
    cfg.validate();
    return realize_interval(draw_interval(rng, cfg), cfg);
}

double modulus_integral(const IntervalHV& hv) {
    double sum = 0.0;
    for (const auto& sample : hv.samples) sum += sample.f * sample.f + sample.g * sample.g;
    return sum * hv.dt;
}

double hv_angle(const IntervalHV& hv) {
    for (const auto& sample : hv.samples) {
        if (sample.f != 0.0 || sample.g != 0.0)
            return wrap_pi(std::atan2(sample.g, sample.f));
    }
    return 0.0;
}

ProjectionResult project(const IntervalHV& hv, double alpha) {
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    ProjectionResult out;
    out.parallel.dt = hv.dt;
    out.orthogonal.dt = hv.dt;
    out.parallel.samples.resize(hv.samples.size());
    out.orthogonal.samples.resize(hv.samples.size());
    for (std::size_t k = 0; k < hv.samples.size(); ++k) {
        const double p = hv.samples[k].f * c + hv.samples[k].g * s;
        const double o = -hv.samples[k].f * s + hv.samples[k].g * c;
        out.parallel.samples[k] = {p * c, p * s};
        out.orthogonal.samples[k] = {-o * s, o * c};
    }
    return out;
}

IntervalHV partner_hv(const IntervalHV& hv, BellState state) {
    IntervalHV out;
    out.dt = hv.dt;
    out.samples.resize(hv.samples.size());
    for (std::size_t k = 0; k < hv.samples.size(); ++k) {
        const double f = hv.samples[k].f;
        const double g = hv.samples[k].g;
        switch (state) {
            case BellState::PsiMinus: out.samples[k] = {g, -f}; break;
            case BellState::PhiPlus: out.samples[k] = {f, g}; break;
            case BellState::PsiPlus: out.samples[k] = {g, f}; break;
            case BellState::PhiMinus: out.samples[k] = {f, -g}; break;
        }
    }
    return out;
}

double partner_angle(BellState state, double v) {
    switch (state) {
        case BellState::PsiMinus: return wrap_pi(v - kHalfPi);
        case BellState::PhiPlus: return wrap_pi(v);
        case BellState::PsiPlus: return wrap_pi(kHalfPi - v);
        case BellState::PhiMinus: return wrap_pi(-v);
    }
    return wrap_pi(v);
}

int detect(DetectorState& det, double m, Rng& rng) {
    if (!(m >= 0.0) || !std::isfinite(m))
        throw ConfigError("detect: modulus integral must be finite and >= 0, got " +
                          std::to_string(m));
    switch (det.discipline) {
        case Discipline::Accumulator: {
            det.residual += m;
            // Unit-mass inputs can land an ulp below the threshold after the
            // squared-modulus round trip; the slack keeps threshold-exact
            // crossings deterministic without affecting sub-threshold masses.
            const double slack = det.threshold * 1e-12;
            double fired = std::floor((det.residual + slack) / det.threshold);
            det.residual -= fired * det.threshold;
            if (det.residual < 0.0) det.residual = 0.0;
            if (det.residual >= det.threshold) {  // floor lost to rounding
                det.residual -= det.threshold;
                fired += 1.0;
            }
            return static_cast<int>(fired);
        }
        case Discipline::Bernoulli: {
            const double p = std::min(1.0, m / det.threshold);
            return rng.uniform() < p ? 1 : 0;
        }
    }
    return 0;
}

std::optional<BellState> parse_bell_state(std::string_view name) {
    for (BellState state : kAllBellStates)
        if (name == to_string(state)) return state;
    return std::nullopt;
}

}  // namespace hvlab
