#include <doctest.h>

#include <cmath>
#include <vector>

#include "hvlab/angles.hpp"
#include "hvlab/errors.hpp"
#include "hvlab/hv_core.hpp"

using namespace hvlab;

namespace {

bool angles_close(double a, double b, double tol = 1e-9) {
    return direction_distance(a, b) < tol;
}

GeneratorConfig fixed_source(double angle, double integral = 1.0, int samples = 1) {
    GeneratorConfig cfg;
    cfg.angle_mode = AngleMode::Fixed;
    cfg.fixed_angle = angle;
    cfg.modulus_mode = ModulusMode::FixedIntegral;
    cfg.fixed_integral = integral;
    cfg.samples_per_interval = samples;
    return cfg;
}

}  // namespace

TEST_CASE("wrap_pi reduces directions into [0, pi)") {
    CHECK(wrap_pi(0.0) == 0.0);
    CHECK(wrap_pi(kPi) == doctest::Approx(0.0));
    CHECK(wrap_pi(-kHalfPi) == doctest::Approx(kHalfPi));
    CHECK(wrap_pi(3.0 * kHalfPi) == doctest::Approx(kHalfPi));
    CHECK(wrap_pi(-1e-18) < kPi);
    CHECK(wrap_pi(-1e-18) >= 0.0);
}

TEST_CASE("generate_interval: aligned unit source gives the unit sample") {
    Rng rng(1, 0);
    const IntervalHV hv = generate_interval(rng, fixed_source(0.0));
    REQUIRE(hv.samples.size() == 1);
    CHECK(hv.dt == 1.0);
    CHECK(hv.samples[0].f == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hv.samples[0].g == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("generate_interval: vertical source, four samples") {
    Rng rng(1, 0);
    const IntervalHV hv = generate_interval(rng, fixed_source(kHalfPi, 1.0, 4));
    REQUIRE(hv.samples.size() == 4);
    CHECK(hv.dt == doctest::Approx(0.25));
    for (const Sample& s : hv.samples) {
        CHECK(std::abs(s.f) < 1e-12);
        CHECK(s.g == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("generate_interval: uniform angles average cos^2 to one half") {
    GeneratorConfig cfg;  // uniform angle, fixed unit integral
    double sum = 0.0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) {
        Rng rng = Rng::for_interval(11, i, StreamDomain::Generic);
        const IntervalHV hv = generate_interval(rng, cfg);
        const double v = hv_angle(hv);
        sum += std::cos(v) * std::cos(v);
    }
    CHECK(std::abs(sum / n - 0.5) < 0.002);
}

TEST_CASE("generate_interval: modulus integral equals the drawn value") {
    GeneratorConfig cfg;
    cfg.modulus_mode = ModulusMode::UniformIntegral;
    cfg.samples_per_interval = 8;
    for (int i = 0; i < 200; ++i) {
        Rng draw_rng = Rng::for_interval(3, i, StreamDomain::Generic);
        Rng gen_rng = Rng::for_interval(3, i, StreamDomain::Generic);
        const IntervalDraw draw = draw_interval(draw_rng, cfg);
        const IntervalHV hv = generate_interval(gen_rng, cfg);
        CHECK(modulus_integral(hv) ==
              doctest::Approx(draw.modulus).epsilon(1e-12));
        CHECK(angles_close(hv_angle(hv), draw.angle));
    }
}

TEST_CASE("generate_interval: harmonic waveform preserves the integral") {
    GeneratorConfig cfg = fixed_source(0.7, 1.3, 16);
    cfg.waveform = Waveform::Harmonic;
    cfg.harmonic_cycles = 2;
    Rng rng(5, 0);
    const IntervalHV hv = generate_interval(rng, cfg);
    CHECK(modulus_integral(hv) == doctest::Approx(1.3).epsilon(1e-12));
    // modulated, not constant
    const double m0 = hv.samples[0].f * hv.samples[0].f + hv.samples[0].g * hv.samples[0].g;
    const double m2 = hv.samples[2].f * hv.samples[2].f + hv.samples[2].g * hv.samples[2].g;
    CHECK(std::abs(m0 - m2) > 1e-6);
    for (const Sample& s : hv.samples) {
        if (s.f == 0.0 && s.g == 0.0) continue;
        CHECK(angles_close(wrap_pi(std::atan2(s.g, s.f)), 0.7, 1e-12));
    }
}

TEST_CASE("generator configuration errors") {
    GeneratorConfig cfg;
    cfg.samples_per_interval = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = GeneratorConfig{};
    cfg.fixed_integral = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = GeneratorConfig{};
    cfg.modulus_mode = ModulusMode::UniformIntegral;
    cfg.uniform_lo = 0.2;
    cfg.uniform_hi = 1.0;  // mean != 1
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = GeneratorConfig{};
    cfg.waveform = Waveform::Harmonic;
    cfg.harmonic_cycles = 4;
    cfg.samples_per_interval = 4;  // fewer than 2 samples per cycle
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("modulus_integral matches a brute-force loop") {
    IntervalHV unit;
    unit.dt = 1.0;
    unit.samples = {{1.0, 0.0}};
    CHECK(modulus_integral(unit) == 1.0);

    IntervalHV diag;
    diag.dt = 0.5;
    diag.samples = {{1.0, 1.0}};
    CHECK(modulus_integral(diag) == 1.0);

    Rng rng(17, 0);
    IntervalHV random_hv;
    random_hv.dt = 1.0 / 16.0;
    for (int k = 0; k < 16; ++k)
        random_hv.samples.push_back({rng.uniform() * 2.0 - 1.0, rng.uniform() * 2.0 - 1.0});
    double expected = 0.0;
    for (const Sample& s : random_hv.samples)
        expected += (s.f * s.f + s.g * s.g) * random_hv.dt;
    CHECK(modulus_integral(random_hv) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("project: aligned and diagonal analyzers") {
    IntervalHV hv;
    hv.dt = 1.0;
    hv.samples = {{1.0, 0.0}};

    const ProjectionResult aligned = project(hv, 0.0);
    CHECK(modulus_integral(aligned.parallel) == doctest::Approx(1.0));
    CHECK(modulus_integral(aligned.orthogonal) == doctest::Approx(0.0).scale(1.0));

    const ProjectionResult diagonal = project(hv, kPi / 4.0);
    CHECK(modulus_integral(diagonal.parallel) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(modulus_integral(diagonal.orthogonal) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("project: Malus kernel, Pythagoras and idempotence") {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(23, static_cast<std::uint64_t>(trial));
        const double v = rng.uniform_angle();
        const double m = 0.25 + 2.0 * rng.uniform();
        const double alpha = rng.uniform_angle();
        GeneratorConfig cfg = fixed_source(v, m, 4);
        Rng gen_rng(29, static_cast<std::uint64_t>(trial));
        const IntervalHV hv = generate_interval(gen_rng, cfg);

        const ProjectionResult split = project(hv, alpha);
        const double parallel = modulus_integral(split.parallel);
        const double orthogonal = modulus_integral(split.orthogonal);
        const double c = std::cos(v - alpha);

        // Malus kernel: parallel integral is m cos^2(v - alpha)
        CHECK(parallel == doctest::Approx(m * c * c).epsilon(1e-12));
        // Pythagoras
        CHECK(parallel + orthogonal == doctest::Approx(modulus_integral(hv)).epsilon(1e-12));
        // idempotence
        const ProjectionResult again = project(split.parallel, alpha);
        CHECK(modulus_integral(again.parallel) == doctest::Approx(parallel).epsilon(1e-12));
        CHECK(modulus_integral(again.orthogonal) ==
              doctest::Approx(0.0).scale(std::max(1.0, m)).epsilon(1e-12));
    }
}

TEST_CASE("detect: accumulator carries residual deterministically") {
    DetectorState det;  // accumulator, threshold 1
    Rng rng(1, 0);
    CHECK(detect(det, 0.5, rng) == 0);
    CHECK(detect(det, 0.5, rng) == 1);
    CHECK(detect(det, 0.5, rng) == 0);
    CHECK(det.residual == doctest::Approx(0.5));
    CHECK(detect(det, 2.5, rng) == 3);
    CHECK(det.residual < det.threshold);
    CHECK(det.residual >= 0.0);
}

TEST_CASE("detect: accumulator total equals floor of the summed mass") {
    // dyadic masses keep the arithmetic exact
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng(31, static_cast<std::uint64_t>(trial));
        DetectorState det;
        double total_mass = 0.0;
        std::int64_t counts = 0;
        for (int k = 0; k < 1000; ++k) {
            const double m = static_cast<double>(rng.next_u32() % 193) / 64.0;
            total_mass += m;
            counts += detect(det, m, rng);
        }
        CHECK(static_cast<double>(counts) == std::floor(total_mass));
    }
}

TEST_CASE("detect: bernoulli is exact at the threshold and unbiased below") {
    DetectorState det{Discipline::Bernoulli};
    Rng rng(7, 0);
    for (int k = 0; k < 1000; ++k) CHECK(detect(det, 1.0, rng) == 1);

    std::int64_t fired = 0;
    const int n = 1'000'000;
    for (int k = 0; k < n; ++k) fired += detect(det, 0.25, rng);
    CHECK(std::abs(static_cast<double>(fired) / n - 0.25) < 0.0015);

    for (int k = 0; k < 1000; ++k) CHECK(detect(det, 0.0, rng) == 0);
}

TEST_CASE("detect: negative mass is rejected") {
    DetectorState acc;
    DetectorState bern{Discipline::Bernoulli};
    Rng rng(1, 0);
    CHECK_THROWS_AS(detect(acc, -0.1, rng), ConfigError);
    CHECK_THROWS_AS(detect(bern, -0.1, rng), ConfigError);
}

TEST_CASE("partner_hv: the four partner rules") {
    IntervalHV hv;
    hv.dt = 1.0;
    hv.samples = {{1.0, 0.0}};

    const IntervalHV psi_minus = partner_hv(hv, BellState::PsiMinus);
    CHECK(psi_minus.samples[0].f == 0.0);
    CHECK(psi_minus.samples[0].g == -1.0);

    const IntervalHV phi_plus = partner_hv(hv, BellState::PhiPlus);
    CHECK(phi_plus.samples[0].f == 1.0);
    CHECK(phi_plus.samples[0].g == 0.0);

    IntervalHV generic;
    generic.dt = 0.5;
    generic.samples = {{0.3, -0.8}, {0.1, 0.4}};
    const IntervalHV psi_plus = partner_hv(generic, BellState::PsiPlus);
    CHECK(psi_plus.samples[0].f == -0.8);
    CHECK(psi_plus.samples[0].g == 0.3);
    const IntervalHV phi_minus = partner_hv(generic, BellState::PhiMinus);
    CHECK(phi_minus.samples[1].f == 0.1);
    CHECK(phi_minus.samples[1].g == -0.4);
}

TEST_CASE("partner_hv preserves moduli and shifts the angle by pi/2") {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(37, static_cast<std::uint64_t>(trial));
        GeneratorConfig cfg = fixed_source(rng.uniform_angle(), 0.5 + rng.uniform(), 3);
        Rng gen_rng(41, static_cast<std::uint64_t>(trial));
        const IntervalHV hv = generate_interval(gen_rng, cfg);
        const IntervalHV partner = partner_hv(hv, BellState::PsiMinus);

        CHECK(modulus_integral(partner) ==
              doctest::Approx(modulus_integral(hv)).epsilon(1e-12));
        // angle relation checked through atan2
        CHECK(angles_close(hv_angle(partner), wrap_pi(hv_angle(hv) - kHalfPi)));
        CHECK(angles_close(hv_angle(partner), partner_angle(BellState::PsiMinus, hv_angle(hv))));
    }
}

TEST_CASE("partner_hv involution: applying psi-minus twice negates components") {
    Rng rng(43, 0);
    GeneratorConfig cfg = fixed_source(1.1, 0.9, 4);
    const IntervalHV hv = generate_interval(rng, cfg);
    const IntervalHV twice = partner_hv(partner_hv(hv, BellState::PsiMinus), BellState::PsiMinus);
    for (std::size_t k = 0; k < hv.samples.size(); ++k) {
        CHECK(twice.samples[k].f == doctest::Approx(-hv.samples[k].f).epsilon(1e-15));
        CHECK(twice.samples[k].g == doctest::Approx(-hv.samples[k].g).epsilon(1e-15));
    }
    // moduli and projection integrals are untouched
    CHECK(modulus_integral(twice) == doctest::Approx(modulus_integral(hv)).epsilon(1e-12));
    for (double alpha : {0.0, 0.4, kHalfPi, 2.2}) {
        CHECK(modulus_integral(project(twice, alpha).parallel) ==
              doctest::Approx(modulus_integral(project(hv, alpha).parallel)).epsilon(1e-12));
    }
}

TEST_CASE("partner_angle matches the sample-level map for every state") {
    for (BellState state : kAllBellStates) {
        for (int trial = 0; trial < 50; ++trial) {
            Rng rng(47, static_cast<std::uint64_t>(trial));
            const double v = rng.uniform_angle();
            GeneratorConfig cfg = fixed_source(v);
            Rng gen_rng(53, static_cast<std::uint64_t>(trial));
            const IntervalHV hv = generate_interval(gen_rng, cfg);
            CHECK(angles_close(hv_angle(partner_hv(hv, state)), partner_angle(state, v), 1e-9));
        }
    }
}

TEST_CASE("ensemble half transmission: mean transmitted integral is <m>/2 for any analyzer") {
    GeneratorConfig cfg;  // uniform angle
    cfg.modulus_mode = ModulusMode::UniformIntegral;
    const int n = 200'000;
    for (double alpha : {0.0, 0.3, kPi / 4.0, 1.2, 2.9}) {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            Rng rng = Rng::for_interval(59, i, StreamDomain::Generic);
            const IntervalDraw draw = draw_interval(rng, cfg);
            const double c = std::cos(draw.angle - alpha);
            const double transmitted = draw.modulus * c * c;
            sum += transmitted;
            sum_sq += transmitted * transmitted;
        }
        const double mean = sum / n;
        const double variance = sum_sq / n - mean * mean;
        const double sigma = std::sqrt(variance / n);
        CHECK(std::abs(mean - 0.5) < 3.0 * sigma);
    }
}
