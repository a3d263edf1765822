#include "hvlab/bell_sim.hpp"

#include <cmath>

#include "hvlab/angles.hpp"
#include "hvlab/errors.hpp"
#include "hvlab/runner.hpp"

namespace hvlab {

void RunConfig::validate() const {
    if (n_intervals < 1) throw ConfigError("run: n_intervals must be >= 1");
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw ConfigError("run: analyzer angles must be finite");
    generator.validate();
}

std::pair<double, double> analyzer_masses(double m, double v, double angle) {
    const double c = std::cos(v - angle);
    const double s = std::sin(v - angle);
    return {m * c * c, m * s * s};
}

std::pair<double, double> partner_analyzer_masses(BellState state, double m, double v,
                                                  double beta) {
    // partner_hv maps the direction v to v - pi/2, v, pi/2 - v or -v; folding
    // the shift into the projection kernel keeps aligned settings exact:
    //   cos(v - pi/2 - beta) = sin(v - beta), cos(pi/2 - v - beta) = sin(v + beta).
    const bool flip = state == BellState::PsiMinus || state == BellState::PsiPlus;
    const double effective_beta =
        (state == BellState::PsiPlus || state == BellState::PhiMinus) ? -beta : beta;
    auto [t, r] = analyzer_masses(m, v, effective_beta);
    if (flip) return {r, t};
    return {t, r};
}

namespace {

// Both output channels of one station for one interval. Under Bernoulli the
// two channels share a single uniform draw: the transmitted channel fires on
// x < m_t/u and the reflected one on x >= 1 - m_r/u, so each channel keeps
// its Bernoulli(min(1, m/u)) marginal while at most one fires whenever
// m_t + m_r <= u. Independent draws would let both channels of a station
// fire in the same interval even for a unit-integral source.
std::pair<bool, bool> station_joint(DetectorState& det_t, DetectorState& det_r, double m_t,
                                    double m_r, Rng& rng) {
    if (det_t.discipline == Discipline::Bernoulli) {
        const double x = rng.uniform();
        const bool t = x < std::min(1.0, m_t / det_t.threshold);
        const bool r = x >= 1.0 - std::min(1.0, m_r / det_r.threshold);
        return {t, r};
    }
    return {detect(det_t, m_t, rng) > 0, detect(det_r, m_r, rng) > 0};
}

double draw_station_a_angle(Rng& rng, const RunConfig& cfg) {
    if (cfg.semantics == SamplingSemantics::Projection)
        return rng.uniform() < 0.5 ? cfg.alpha : cfg.alpha + kHalfPi;
    return rng.uniform_angle();
}

double draw_modulus(Rng& rng, const GeneratorConfig& gen) {
    if (gen.modulus_mode == ModulusMode::UniformIntegral)
        return gen.uniform_lo + rng.uniform() * (gen.uniform_hi - gen.uniform_lo);
    return gen.fixed_integral;
}

}  // namespace

CoincidenceCounts run_bell(const RunConfig& cfg, int partitions) {
    cfg.validate();
    auto worker = [&cfg](std::int64_t begin, std::int64_t end) {
        CoincidenceCounts counts;
        DetectorState det_a_t{cfg.discipline};
        DetectorState det_a_r{cfg.discipline};
        DetectorState det_b_t{cfg.discipline};
        DetectorState det_b_r{cfg.discipline};
        for (std::int64_t i = begin; i < end; ++i) {
            Rng rng = Rng::for_interval(cfg.seed, i, StreamDomain::BellInterval);
            const double v = draw_station_a_angle(rng, cfg);
            const double m = draw_modulus(rng, cfg.generator);
            const auto [ma_t, ma_r] = analyzer_masses(m, v, cfg.alpha);
            const auto [mb_t, mb_r] = partner_analyzer_masses(cfg.state, m, v, cfg.beta);
            const auto [a_plus, a_minus] = station_joint(det_a_t, det_a_r, ma_t, ma_r, rng);
            const auto [b_plus, b_minus] = station_joint(det_b_t, det_b_r, mb_t, mb_r, rng);
            counts.n_pp += a_plus && b_plus;
            counts.n_pm += a_plus && b_minus;
            counts.n_mp += a_minus && b_plus;
            counts.n_mm += a_minus && b_minus;
        }
        counts.n_intervals = end - begin;
        return counts;
    };
    return run_partitioned<CoincidenceCounts>(cfg.n_intervals, partitions, worker);
}

double correlation(const CoincidenceCounts& counts) {
    const std::int64_t total = counts.total_joint();
    if (total == 0) throw StatisticsError("correlation: no joint events");
    return static_cast<double>(counts.n_pp + counts.n_mm - counts.n_pm - counts.n_mp) /
           static_cast<double>(total);
}

double correlation_stderr(const CoincidenceCounts& counts) {
    const std::int64_t total = counts.total_joint();
    if (total == 0) throw StatisticsError("correlation: no joint events");
    const double e = correlation(counts);
    const double var = std::max(0.0, 1.0 - e * e);
    return std::sqrt(var / static_cast<double>(total));
}

ChshEstimate chsh_from_runs(const std::array<CoincidenceCounts, 4>& runs) {
    ChshEstimate est;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        est.e[k] = correlation(runs[k]);
        est.se[k] = correlation_stderr(runs[k]);
    }
    est.s = std::abs(est.e[0] - est.e[1] + est.e[2] + est.e[3]);
    return est;
}

ChshEstimate chsh(const RunConfig& cfg_base, const ChshAngles& angles, int partitions) {
    const std::array<std::pair<double, double>, 4> settings = {{
        {angles.a, angles.b},
        {angles.a, angles.b_prime},
        {angles.a_prime, angles.b},
        {angles.a_prime, angles.b_prime},
    }};
    std::array<CoincidenceCounts, 4> runs;
    for (std::size_t k = 0; k < settings.size(); ++k) {
        RunConfig cfg = cfg_base;
        cfg.alpha = settings[k].first;
        cfg.beta = settings[k].second;
        cfg.seed = derive_seed(cfg_base.seed, k);
        runs[k] = run_bell(cfg, partitions);
    }
    return chsh_from_runs(runs);
}

MalusResult run_malus(const RunConfig& cfg, int partitions) {
    cfg.validate();
    auto worker = [&cfg](std::int64_t begin, std::int64_t end) {
        MalusResult result;
        DetectorState det_first{cfg.discipline};
        DetectorState det_second{cfg.discipline};
        for (std::int64_t i = begin; i < end; ++i) {
            Rng rng = Rng::for_interval(cfg.seed, i, StreamDomain::MalusInterval);
            const double v = draw_station_a_angle(rng, cfg);
            const double m = draw_modulus(rng, cfg.generator);
            const auto [m_alpha, m_alpha_r] = analyzer_masses(m, v, cfg.alpha);
            (void)m_alpha_r;  // single-beam chain: the reflected output is discarded
            if (detect(det_first, m_alpha, rng) < 1) continue;
            ++result.n_subset;
            // The transmitted beam points along e_alpha; its integral is m_alpha.
            const auto [m_beta, m_beta_r] = analyzer_masses(m_alpha, cfg.alpha, cfg.beta);
            (void)m_beta_r;
            if (detect(det_second, m_beta, rng) >= 1) ++result.n_transmitted;
        }
        result.n_intervals = end - begin;
        return result;
    };
    return run_partitioned<MalusResult>(cfg.n_intervals, partitions, worker);
}

std::vector<SweepPoint> sweep_coincidence(const RunConfig& cfg, std::span<const double> deltas,
                                          int partitions) {
    if (deltas.empty()) throw ConfigError("sweep: empty delta grid");
    std::vector<SweepPoint> points;
    points.reserve(deltas.size());
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        RunConfig point_cfg = cfg;
        point_cfg.beta = cfg.alpha - deltas[k];
        point_cfg.seed = derive_seed(cfg.seed, k);
        SweepPoint point;
        point.delta = deltas[k];
        point.alpha = point_cfg.alpha;
        point.beta = point_cfg.beta;
        point.counts = run_bell(point_cfg, partitions);
        point.measured = point.counts.fraction_pp();
        point.analytic = coincidence_fraction(cfg.state, point_cfg.alpha, point_cfg.beta);
        const double n = static_cast<double>(point.counts.n_intervals);
        point.stderr_measured = std::sqrt(std::max(0.0, point.measured * (1.0 - point.measured)) / n);
        points.push_back(point);
    }
    return points;
}

double coincidence_fraction(BellState state, double alpha, double beta) {
    switch (state) {
        case BellState::PsiMinus: {
            const double s = std::sin(alpha - beta);
            return 0.5 * s * s;
        }
        case BellState::PhiPlus: {
            const double c = std::cos(alpha - beta);
            return 0.5 * c * c;
        }
        case BellState::PsiPlus: {
            const double s = std::sin(alpha + beta);
            return 0.5 * s * s;
        }
        case BellState::PhiMinus: {
            const double c = std::cos(alpha + beta);
            return 0.5 * c * c;
        }
    }
    return 0.0;
}

double coincidence_fraction(BellState state, SamplingSemantics semantics, double alpha,
                            double beta) {
    if (semantics == SamplingSemantics::Projection)
        return coincidence_fraction(state, alpha, beta);
    return 0.25 * (1.0 + 0.5 * correlation_law(state, alpha, beta));
}

double correlation_law(BellState state, double alpha, double beta) {
    switch (state) {
        case BellState::PsiMinus: return -std::cos(2.0 * (alpha - beta));
        case BellState::PhiPlus: return std::cos(2.0 * (alpha - beta));
        case BellState::PsiPlus: return -std::cos(2.0 * (alpha + beta));
        case BellState::PhiMinus: return std::cos(2.0 * (alpha + beta));
    }
    return 0.0;
}

double chsh_law(BellState state, const ChshAngles& angles) {
    return std::abs(correlation_law(state, angles.a, angles.b) -
                    correlation_law(state, angles.a, angles.b_prime) +
                    correlation_law(state, angles.a_prime, angles.b) +
                    correlation_law(state, angles.a_prime, angles.b_prime));
}

}  // namespace hvlab
