#include "hvlab/bell_algebra.hpp"

#include <cmath>
#include <tuple>

#include "hvlab/angles.hpp"
#include "hvlab/errors.hpp"

namespace hvlab {

BellVector4 bell_vector(BellState state, double f_a, double g_a, double f_b, double g_b) {
    switch (state) {
        case BellState::PsiMinus:
            return {{f_a * g_b, -f_a * f_b, g_a * g_b, -g_a * f_b}};
        case BellState::PsiPlus:
            return {{f_a * g_b, f_a * f_b, g_a * g_b, g_a * f_b}};
        case BellState::PhiPlus:
            return {{f_a * f_b, f_a * g_b, g_a * f_b, g_a * g_b}};
        case BellState::PhiMinus:
            return {{f_a * f_b, -f_a * g_b, g_a * f_b, -g_a * g_b}};
    }
    return {};
}

double dot(const BellVector4& u, const BellVector4& v) {
    return u.c[0] * v.c[0] + u.c[1] * v.c[1] + u.c[2] * v.c[2] + u.c[3] * v.c[3];
}

GramEstimate gram_average(std::uint64_t seed, std::int64_t n_draws, const GeneratorConfig& cfg) {
    if (n_draws < 10'000)
        throw StatisticsError("gram_average: ensemble too small (needs >= 10^4 draws)");
    cfg.validate();

    GramEstimate est;
    est.n_draws = n_draws;
    for (std::int64_t i = 0; i < n_draws; ++i) {
        Rng rng = Rng::for_interval(seed, i, StreamDomain::GramDraw);
        const IntervalDraw a = draw_interval(rng, cfg);
        const IntervalDraw b = draw_interval(rng, cfg);
        const double va = std::sqrt(a.modulus);
        const double vb = std::sqrt(b.modulus);
        const double f_a = va * std::cos(a.angle);
        const double g_a = va * std::sin(a.angle);
        const double f_b = vb * std::cos(b.angle);
        const double g_b = vb * std::sin(b.angle);

        const std::array<BellVector4, 4> vectors = {
            bell_vector(BellState::PsiMinus, f_a, g_a, f_b, g_b),
            bell_vector(BellState::PsiPlus, f_a, g_a, f_b, g_b),
            bell_vector(BellState::PhiPlus, f_a, g_a, f_b, g_b),
            bell_vector(BellState::PhiMinus, f_a, g_a, f_b, g_b),
        };
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = r; c < 4; ++c) est.mean_dot[r][c] += dot(vectors[r], vectors[c]);
        est.fg_mean_a += f_a * g_a;
        est.fg_mean_b += f_b * g_b;
    }
    const double n = static_cast<double>(n_draws);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = r; c < 4; ++c) {
            est.mean_dot[r][c] /= n;
            est.mean_dot[c][r] = est.mean_dot[r][c];
        }
    est.fg_mean_a /= n;
    est.fg_mean_b /= n;
    return est;
}

BeamsplitterOutputs beamsplitter(const IntervalHV& a, const IntervalHV& b) {
    if (a.samples.size() != b.samples.size() || a.dt != b.dt)
        throw ConfigError("beamsplitter: input shapes must match");
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    BeamsplitterOutputs out;
    out.c.dt = a.dt;
    out.d.dt = a.dt;
    out.c.samples.resize(a.samples.size());
    out.d.samples.resize(a.samples.size());
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
        out.c.samples[k] = {(a.samples[k].f + b.samples[k].f) * inv_sqrt2,
                            (a.samples[k].g + b.samples[k].g) * inv_sqrt2};
        out.d.samples[k] = {(a.samples[k].f - b.samples[k].f) * inv_sqrt2,
                            (a.samples[k].g - b.samples[k].g) * inv_sqrt2};
    }
    return out;
}

namespace {

// Unit-modulus copy of a stream; zero samples stay zero. The phi-minus and
// psi-plus closed forms assume f^2 + g^2 = 1 at each sample.
IntervalHV normalize_samples(const IntervalHV& hv) {
    IntervalHV out;
    out.dt = hv.dt;
    out.samples.resize(hv.samples.size());
    for (std::size_t k = 0; k < hv.samples.size(); ++k) {
        const double f = hv.samples[k].f;
        const double g = hv.samples[k].g;
        const double v = std::sqrt(f * f + g * g);
        out.samples[k] = v > 0.0 ? Sample{f / v, g / v} : Sample{0.0, 0.0};
    }
    return out;
}

}  // namespace

HomOutputs hom_outputs(BellState state, const IntervalHV& hv) {
    switch (state) {
        case BellState::PhiPlus: {
            const double m = modulus_integral(hv);
            return {2.0 * m, 0.0, m};
        }
        case BellState::PsiMinus: {
            const double m = modulus_integral(hv);
            return {m, m, m};
        }
        case BellState::PhiMinus: {
            const IntervalHV unit = normalize_samples(hv);
            double f2 = 0.0;
            double g2 = 0.0;
            for (const auto& s : unit.samples) {
                f2 += s.f * s.f;
                g2 += s.g * s.g;
            }
            f2 *= unit.dt;
            g2 *= unit.dt;
            return {2.0 * f2, 2.0 * g2, f2 + g2};
        }
        case BellState::PsiPlus: {
            const IntervalHV unit = normalize_samples(hv);
            const double m = modulus_integral(unit);
            double cross = 0.0;
            for (const auto& s : unit.samples) cross += s.f * s.f * s.g * s.g;
            cross *= 2.0 * unit.dt;
            return {m + cross, m - cross, m};
        }
    }
    return {};
}

std::pair<double, double> apply_routing_rule(double m_c, double m_d) {
    if (!(m_c >= 0.0) || !(m_d >= 0.0))
        throw ConfigError("routing rule: output integrals must be >= 0");
    const double total = m_c + m_d;
    return m_c >= m_d ? std::make_pair(total, 0.0) : std::make_pair(0.0, total);
}

double hom_classifier(BellState state, std::uint64_t seed, std::int64_t n_intervals,
                      const GeneratorConfig& cfg, Discipline discipline) {
    if (n_intervals < 1) throw ConfigError("hom_classifier: n_intervals must be >= 1");
    cfg.validate();
    const bool routed = state == BellState::PhiMinus || state == BellState::PsiPlus;
    DetectorState det_c{discipline};
    DetectorState det_d{discipline};
    std::int64_t simultaneous = 0;
    for (std::int64_t i = 0; i < n_intervals; ++i) {
        Rng rng = Rng::for_interval(seed, i, StreamDomain::HomInterval);
        const IntervalHV hv = realize_interval(draw_interval(rng, cfg), cfg);
        HomOutputs out = hom_outputs(state, hv);
        double m_c = out.m_c;
        double m_d = out.m_d;
        if (routed) std::tie(m_c, m_d) = apply_routing_rule(m_c, m_d);
        const bool fired_c = detect(det_c, m_c, rng) > 0;
        const bool fired_d = detect(det_d, m_d, rng) > 0;
        simultaneous += fired_c && fired_d;
    }
    return static_cast<double>(simultaneous) / static_cast<double>(n_intervals);
}

std::string four_party_basis_label(int index) {
    std::string label(4, 'x');
    for (int party = 0; party < 4; ++party)
        if (index & (8 >> party)) label[static_cast<std::size_t>(party)] = 'y';
    return label;
}

FourPartyTensor four_party_product(PairGrouping grouping, const BellVector4& first,
                                   const BellVector4& second) {
    FourPartyTensor out;
    for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int b3 = 0; b3 < 2; ++b3)
                for (int b4 = 0; b4 < 2; ++b4) {
                    const int idx = 8 * b1 + 4 * b2 + 2 * b3 + b4;
                    switch (grouping) {
                        case PairGrouping::Pair12_34:
                            out.c[idx] = first.c[2 * b1 + b2] * second.c[2 * b3 + b4];
                            break;
                        case PairGrouping::Pair14_23:
                            out.c[idx] = first.c[2 * b1 + b4] * second.c[2 * b2 + b3];
                            break;
                    }
                }
    return out;
}

SwapIdentityReport swap_identity_check(double f1, double g1, double f2, double g2, double f3,
                                       double g3, double f4, double g4) {
    SwapIdentityReport report;
    report.lhs = four_party_product(PairGrouping::Pair12_34,
                                    bell_vector(BellState::PsiMinus, f1, g1, f2, g2),
                                    bell_vector(BellState::PsiMinus, f3, g3, f4, g4));

    const FourPartyTensor psi_plus = four_party_product(
        PairGrouping::Pair14_23, bell_vector(BellState::PsiPlus, f1, g1, f4, g4),
        bell_vector(BellState::PsiPlus, f2, g2, f3, g3));
    const FourPartyTensor psi_minus = four_party_product(
        PairGrouping::Pair14_23, bell_vector(BellState::PsiMinus, f1, g1, f4, g4),
        bell_vector(BellState::PsiMinus, f2, g2, f3, g3));
    const FourPartyTensor phi_plus = four_party_product(
        PairGrouping::Pair14_23, bell_vector(BellState::PhiPlus, f1, g1, f4, g4),
        bell_vector(BellState::PhiPlus, f2, g2, f3, g3));
    const FourPartyTensor phi_minus = four_party_product(
        PairGrouping::Pair14_23, bell_vector(BellState::PhiMinus, f1, g1, f4, g4),
        bell_vector(BellState::PhiMinus, f2, g2, f3, g3));

    for (int idx = 0; idx < 16; ++idx) {
        report.rhs.c[idx] = 0.5 * (-psi_plus.c[idx] + psi_minus.c[idx] - phi_plus.c[idx] -
                                   phi_minus.c[idx]);
        report.diff[idx] = report.lhs.c[idx] - report.rhs.c[idx];
        report.max_abs_diff = std::max(report.max_abs_diff, std::abs(report.diff[idx]));
    }
    return report;
}

double qm_swap_identity_residual() {
    constexpr double r = 0.70710678118654752440;  // 1/sqrt(2)
    // Two-qubit amplitudes over |b1 b2>, b = 0 for x, 1 for y.
    const std::array<double, 4> psi_minus = {0.0, r, -r, 0.0};
    const std::array<double, 4> psi_plus = {0.0, r, r, 0.0};
    const std::array<double, 4> phi_plus = {r, 0.0, 0.0, r};
    const std::array<double, 4> phi_minus = {r, 0.0, 0.0, -r};

    double residual = 0.0;
    for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int b3 = 0; b3 < 2; ++b3)
                for (int b4 = 0; b4 < 2; ++b4) {
                    const double lhs = psi_minus[2 * b1 + b2] * psi_minus[2 * b3 + b4];
                    const double rhs =
                        0.5 * (psi_plus[2 * b1 + b4] * psi_plus[2 * b2 + b3] -
                               psi_minus[2 * b1 + b4] * psi_minus[2 * b2 + b3] -
                               phi_plus[2 * b1 + b4] * phi_plus[2 * b2 + b3] +
                               phi_minus[2 * b1 + b4] * phi_minus[2 * b2 + b3]);
                    residual = std::max(residual, std::abs(lhs - rhs));
                }
    return residual;
}

}  // namespace hvlab
