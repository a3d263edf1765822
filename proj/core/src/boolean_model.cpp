#include "hvlab/boolean_model.hpp"

#include <array>
#include <cmath>

#include "hvlab/angles.hpp"
#include "hvlab/errors.hpp"
#include "hvlab/runner.hpp"

namespace hvlab {

int transmit(const BooleanAnalyzer& analyzer, const Token& token) {
    return wrap_pi(token.lambda - analyzer.alpha) < kHalfPi ? 1 : 0;
}

double boolean_partner(double lambda, BellState state) {
    switch (state) {
        case BellState::PsiMinus: return wrap_pi(lambda - kHalfPi);
        case BellState::PhiPlus: return wrap_pi(lambda);
        case BellState::PsiPlus: return wrap_pi(lambda + kHalfPi);
        case BellState::PhiMinus: return wrap_pi(-lambda);
    }
    return wrap_pi(lambda);
}

CoincidenceCounts run_boolean_bell(const RunConfig& cfg, int partitions) {
    if (cfg.n_intervals < 1) throw ConfigError("run: n_intervals must be >= 1");
    const BooleanAnalyzer station_a{cfg.alpha};
    const BooleanAnalyzer station_b{cfg.beta};
    auto worker = [&cfg, station_a, station_b](std::int64_t begin, std::int64_t end) {
        CoincidenceCounts counts;
        for (std::int64_t i = begin; i < end; ++i) {
            Rng rng = Rng::for_interval(cfg.seed, i, StreamDomain::BooleanInterval);
            const Token token{rng.uniform_angle()};
            const Token partner{boolean_partner(token.lambda, cfg.state)};
            const bool a_plus = transmit(station_a, token) == 1;
            const bool b_plus = transmit(station_b, partner) == 1;
            counts.n_pp += a_plus && b_plus;
            counts.n_pm += a_plus && !b_plus;
            counts.n_mp += !a_plus && b_plus;
            counts.n_mm += !a_plus && !b_plus;
        }
        counts.n_intervals = end - begin;
        return counts;
    };
    return run_partitioned<CoincidenceCounts>(cfg.n_intervals, partitions, worker);
}

namespace {

// Overlap length (radians) of the half-open arcs [a, a+pi/2) and
// [b, b+pi/2) on the mod-pi circle: pi/2 minus the circle distance of the
// arc starts. Saw-tooth in a - b.
double arc_overlap(double a, double b) { return kHalfPi - direction_distance(a, b); }

}  // namespace

double boolean_overlap(double alpha, double beta) { return arc_overlap(alpha, beta) / kPi; }

double boolean_coincidence_fraction(BellState state, double alpha, double beta) {
    // P(++) = |{lambda in A's arc : partner(lambda) in B's arc}| / pi. The
    // partner preimage of [beta, beta+pi/2) is again a quarter arc:
    //   psi-minus / psi-plus: start beta + pi/2
    //   phi-plus:             start beta
    //   phi-minus:            start -beta - pi/2 (arc reflected)
    switch (state) {
        case BellState::PsiMinus:
        case BellState::PsiPlus:
            return arc_overlap(alpha, beta + kHalfPi) / kPi;
        case BellState::PhiPlus:
            return arc_overlap(alpha, beta) / kPi;
        case BellState::PhiMinus:
            return arc_overlap(alpha, -beta - kHalfPi) / kPi;
    }
    return 0.0;
}

double boolean_correlation_law(BellState state, double alpha, double beta) {
    return 4.0 * boolean_coincidence_fraction(state, alpha, beta) - 1.0;
}

ChshEstimate boolean_chsh(const RunConfig& cfg_base, const ChshAngles& angles, int partitions) {
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
        runs[k] = run_boolean_bell(cfg, partitions);
    }
    return chsh_from_runs(runs);
}

double boolean_chsh_law(BellState state, const ChshAngles& angles) {
    return std::abs(boolean_correlation_law(state, angles.a, angles.b) -
                    boolean_correlation_law(state, angles.a, angles.b_prime) +
                    boolean_correlation_law(state, angles.a_prime, angles.b) +
                    boolean_correlation_law(state, angles.a_prime, angles.b_prime));
}

}  // namespace hvlab
