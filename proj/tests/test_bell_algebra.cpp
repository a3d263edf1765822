#include <doctest.h>

#include <array>
#include <cmath>

#include "hvlab/angles.hpp"
#include "hvlab/bell_algebra.hpp"
#include "hvlab/errors.hpp"

using namespace hvlab;

namespace {

IntervalHV make_hv(std::vector<Sample> samples, double dt = 1.0) {
    IntervalHV hv;
    hv.samples = std::move(samples);
    hv.dt = dt;
    return hv;
}

IntervalHV random_hv(std::uint64_t seed, int samples = 4) {
    Rng rng(seed, 0);
    IntervalHV hv;
    hv.dt = 1.0 / samples;
    for (int k = 0; k < samples; ++k)
        hv.samples.push_back({2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0});
    return hv;
}

}  // namespace

TEST_CASE("bell_vector: quoted coefficient patterns") {
    const BellVector4 psi_minus = bell_vector(BellState::PsiMinus, 1.0, 0.0, 0.0, 1.0);
    CHECK(psi_minus.c == std::array<double, 4>{1.0, 0.0, 0.0, 0.0});

    const BellVector4 phi_plus = bell_vector(BellState::PhiPlus, 1.0, 0.0, 1.0, 0.0);
    CHECK(phi_plus.c == std::array<double, 4>{1.0, 0.0, 0.0, 0.0});

    const BellVector4 generic = bell_vector(BellState::PsiMinus, 2.0, 3.0, 5.0, 7.0);
    CHECK(generic.c == std::array<double, 4>{14.0, -10.0, 21.0, -15.0});
}

TEST_CASE("bell_vector: norm factorizes for every state") {
    Rng rng(229, 0);
    for (int draw = 0; draw < 500; ++draw) {
        const double f_a = 2.0 * rng.uniform() - 1.0;
        const double g_a = 2.0 * rng.uniform() - 1.0;
        const double f_b = 2.0 * rng.uniform() - 1.0;
        const double g_b = 2.0 * rng.uniform() - 1.0;
        const double factor = (f_a * f_a + g_a * g_a) * (f_b * f_b + g_b * g_b);
        for (BellState state : kAllBellStates) {
            const BellVector4 vec = bell_vector(state, f_a, g_a, f_b, g_b);
            CHECK(vec.norm_squared() == doctest::Approx(factor).epsilon(1e-12));
            CHECK(dot(vec, vec) >= 0.0);
        }
    }
}

TEST_CASE("dot: closed form for the psi pair and exact cross-parity orthogonality") {
    Rng rng(233, 0);
    for (int draw = 0; draw < 500; ++draw) {
        const double f = 2.0 * rng.uniform() - 1.0;
        const double g = 2.0 * rng.uniform() - 1.0;
        const double fp = 2.0 * rng.uniform() - 1.0;
        const double gp = 2.0 * rng.uniform() - 1.0;

        const double psi_dot = dot(bell_vector(BellState::PsiPlus, f, g, fp, gp),
                                   bell_vector(BellState::PsiMinus, f, g, fp, gp));
        CHECK(psi_dot == doctest::Approx((f * f + g * g) * (gp * gp - fp * fp))
                             .epsilon(1e-12)
                             .scale(1.0));

        // different letter and different parity: orthogonal without averaging
        CHECK(dot(bell_vector(BellState::PsiPlus, f, g, fp, gp),
                  bell_vector(BellState::PhiMinus, f, g, fp, gp)) ==
              doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(dot(bell_vector(BellState::PsiMinus, f, g, fp, gp),
                  bell_vector(BellState::PhiPlus, f, g, fp, gp)) ==
              doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("gram_average: identity matrix at one million draws") {
    GeneratorConfig gen;
    gen.modulus_mode = ModulusMode::UniformIntegral;
    const GramEstimate est = gram_average(239, 1'000'000, gen);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            const double expected = r == c ? 1.0 : 0.0;
            CHECK(std::abs(est.mean_dot[r][c] - expected) < 0.01);
        }
    CHECK(std::abs(est.fg_mean_a) < 0.005);
    CHECK(std::abs(est.fg_mean_b) < 0.005);
}

TEST_CASE("gram_average rejects tiny ensembles") {
    CHECK_THROWS_AS(gram_average(1, 100, GeneratorConfig{}), StatisticsError);
}

TEST_CASE("beamsplitter: difference and sum ports") {
    const IntervalHV a = make_hv({{0.6, -0.2}, {0.1, 0.9}}, 0.5);
    const BeamsplitterOutputs equal = beamsplitter(a, a);
    for (const Sample& s : equal.d.samples) {
        CHECK(s.f == 0.0);
        CHECK(s.g == 0.0);
    }

    IntervalHV negated = a;
    for (Sample& s : negated.samples) {
        s.f = -s.f;
        s.g = -s.g;
    }
    const BeamsplitterOutputs opposite = beamsplitter(a, negated);
    for (const Sample& s : opposite.c.samples) {
        CHECK(s.f == 0.0);
        CHECK(s.g == 0.0);
    }
}

TEST_CASE("beamsplitter: energy conservation and involution") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const IntervalHV a = random_hv(241 + seed);
        const IntervalHV b = random_hv(311 + seed);
        const BeamsplitterOutputs out = beamsplitter(a, b);
        CHECK(modulus_integral(out.c) + modulus_integral(out.d) ==
              doctest::Approx(modulus_integral(a) + modulus_integral(b)).epsilon(1e-12));

        const BeamsplitterOutputs back = beamsplitter(out.c, out.d);
        for (std::size_t k = 0; k < a.samples.size(); ++k) {
            CHECK(back.c.samples[k].f == doctest::Approx(a.samples[k].f).epsilon(1e-12).scale(1.0));
            CHECK(back.c.samples[k].g == doctest::Approx(a.samples[k].g).epsilon(1e-12).scale(1.0));
            CHECK(back.d.samples[k].f == doctest::Approx(b.samples[k].f).epsilon(1e-12).scale(1.0));
            CHECK(back.d.samples[k].g == doctest::Approx(b.samples[k].g).epsilon(1e-12).scale(1.0));
        }
    }

    IntervalHV mismatched = random_hv(1, 3);
    CHECK_THROWS_AS(beamsplitter(random_hv(2, 4), mismatched), ConfigError);
}

TEST_CASE("hom_outputs: closed forms at the reference inputs") {
    const IntervalHV horizontal = make_hv({{1.0, 0.0}});
    const HomOutputs bunched = hom_outputs(BellState::PhiPlus, horizontal);
    CHECK(bunched.m_c == doctest::Approx(2.0));
    CHECK(bunched.m_d == doctest::Approx(0.0).scale(1.0));

    const double r = 1.0 / std::sqrt(2.0);
    const IntervalHV diagonal = make_hv({{r, r}});
    const HomOutputs split = hom_outputs(BellState::PsiMinus, diagonal);
    CHECK(split.m_c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(split.m_d == doctest::Approx(1.0).epsilon(1e-12));

    const HomOutputs sorted = hom_outputs(BellState::PhiMinus, horizontal);
    CHECK(sorted.m_c == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sorted.m_d == doctest::Approx(0.0).scale(1.0));

    // psi-plus on the diagonal input: cross term 2 f^2 g^2 = 1/2
    const HomOutputs plus = hom_outputs(BellState::PsiPlus, diagonal);
    CHECK(plus.m_c == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(plus.m_d == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("hom_outputs: conservation holds for every state and input") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const IntervalHV hv = random_hv(401 + seed, 6);
        for (BellState state : kAllBellStates) {
            const HomOutputs out = hom_outputs(state, hv);
            CHECK(out.m_c + out.m_d ==
                  doctest::Approx(2.0 * out.m).epsilon(1e-12).scale(1.0));
            CHECK(out.m_c >= -1e-15);
            CHECK(out.m_d >= -1e-15);
        }
    }
}

TEST_CASE("hom_outputs agrees with the explicit beam-splitter for the tidy states") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const IntervalHV hv = random_hv(501 + seed, 5);
        const HomOutputs bunched = hom_outputs(BellState::PhiPlus, hv);
        const BeamsplitterOutputs phi = beamsplitter(hv, partner_hv(hv, BellState::PhiPlus));
        CHECK(bunched.m_c == doctest::Approx(modulus_integral(phi.c)).epsilon(1e-12).scale(1.0));
        CHECK(bunched.m_d == doctest::Approx(modulus_integral(phi.d)).epsilon(1e-12).scale(1.0));

        const HomOutputs split = hom_outputs(BellState::PsiMinus, hv);
        const BeamsplitterOutputs psi = beamsplitter(hv, partner_hv(hv, BellState::PsiMinus));
        CHECK(split.m_c == doctest::Approx(modulus_integral(psi.c)).epsilon(1e-12).scale(1.0));
        CHECK(split.m_d == doctest::Approx(modulus_integral(psi.d)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("apply_routing_rule") {
    CHECK(apply_routing_rule(1.5, 0.5) == std::pair{2.0, 0.0});
    CHECK(apply_routing_rule(0.3, 1.7) == std::pair{0.0, 2.0});
    // tie-break routes to C; never apply this to psi-minus
    CHECK(apply_routing_rule(1.0, 1.0) == std::pair{2.0, 0.0});
    CHECK_THROWS_AS(apply_routing_rule(-0.1, 1.0), ConfigError);
}

TEST_CASE("hom_classifier isolates psi-minus") {
    GeneratorConfig source;  // unit integral, uniform direction
    CHECK(hom_classifier(BellState::PsiMinus, 601, 10'000, source) == 1.0);
    CHECK(hom_classifier(BellState::PhiPlus, 602, 10'000, source) == 0.0);
    CHECK(hom_classifier(BellState::PhiMinus, 603, 10'000, source) == 0.0);
    CHECK(hom_classifier(BellState::PsiPlus, 604, 10'000, source) == 0.0);

    // bernoulli detectors agree on the signature
    CHECK(hom_classifier(BellState::PsiMinus, 605, 10'000, source, Discipline::Bernoulli) == 1.0);
    CHECK(hom_classifier(BellState::PsiPlus, 606, 10'000, source, Discipline::Bernoulli) == 0.0);
}

TEST_CASE("four-party basis labels and placement") {
    CHECK(four_party_basis_label(0) == "xxxx");
    CHECK(four_party_basis_label(5) == "xyxy");
    CHECK(four_party_basis_label(15) == "yyyy");

    // a single coefficient placed through the (1,4)(2,3) grouping lands on
    // the party-major slot
    BellVector4 first{};   // parties (1,4)
    BellVector4 second{};  // parties (2,3)
    first.c[0 * 2 + 1] = 1.0;   // e_x1 e_y4
    second.c[1 * 2 + 0] = 1.0;  // e_y2 e_x3
    const FourPartyTensor tensor = four_party_product(PairGrouping::Pair14_23, first, second);
    for (int idx = 0; idx < 16; ++idx)
        CHECK(tensor.c[idx] == (idx == (0 * 8 + 1 * 4 + 0 * 2 + 1) ? 1.0 : 0.0));
}

TEST_CASE("swap_identity_check: zero inputs and report structure") {
    const SwapIdentityReport zero = swap_identity_check(0, 0, 0, 0, 0, 0, 0, 0);
    CHECK(zero.max_abs_diff == 0.0);
    for (int idx = 0; idx < 16; ++idx) {
        CHECK(zero.lhs.c[idx] == 0.0);
        CHECK(zero.rhs.c[idx] == 0.0);
    }
}

TEST_CASE("swap_identity_check: diff column is lhs minus rhs") {
    Rng rng(607, 0);
    for (int draw = 0; draw < 20; ++draw) {
        std::array<double, 8> v;
        for (double& x : v) x = 2.0 * rng.uniform() - 1.0;
        const SwapIdentityReport report =
            swap_identity_check(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]);
        double max_abs = 0.0;
        for (int idx = 0; idx < 16; ++idx) {
            CHECK(report.diff[idx] ==
                  doctest::Approx(report.lhs.c[idx] - report.rhs.c[idx]).epsilon(1e-15).scale(1.0));
            max_abs = std::max(max_abs, std::abs(report.diff[idx]));
        }
        CHECK(report.max_abs_diff == doctest::Approx(max_abs).epsilon(1e-15).scale(1.0));
    }
}

TEST_CASE("qm swap identity holds exactly") {
    CHECK(qm_swap_identity_residual() < 1e-12);
}
