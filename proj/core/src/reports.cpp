#include "hvlab/reports.hpp"

#include <cmath>

#include "hvlab/angles.hpp"
#include "hvlab/bell_algebra.hpp"
#include "hvlab/errors.hpp"
#include "hvlab/version.hpp"

namespace hvlab {

namespace {

constexpr const char* to_string(Discipline d) {
    return d == Discipline::Accumulator ? "accumulator" : "bernoulli";
}

double binomial_stderr(double p, double n) {
    return n > 0.0 ? std::sqrt(std::max(0.0, p * (1.0 - p)) / n) : 0.0;
}

// Keys are the CLI long option names so the manifest replays via --config.
void describe_generator(RunManifest& manifest, const GeneratorConfig& gen) {
    if (gen.modulus_mode == ModulusMode::FixedIntegral) {
        manifest.set("modulus", "fixed");
        manifest.set("modulus-integral", gen.fixed_integral);
    } else {
        manifest.set("modulus", "uniform");
        manifest.set("modulus-lo", gen.uniform_lo);
        manifest.set("modulus-hi", gen.uniform_hi);
    }
    manifest.set("samples", gen.samples_per_interval);
    manifest.set("waveform", gen.waveform == Waveform::Constant ? "constant" : "harmonic");
    if (gen.waveform == Waveform::Harmonic) manifest.set("cycles", gen.harmonic_cycles);
}

RunManifest base_manifest(const char* subcommand, std::uint64_t seed, int partitions) {
    RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.version = kVersion;
    manifest.seed = seed;
    manifest.partitions = partitions;
    return manifest;
}

}  // namespace

Table bell_report(const BellCmd& cmd) {
    Table table;
    table.columns = {"state",  "semantics", "discipline", "delta", "alpha",       "beta",
                     "n",      "n_pp",      "n_pm",       "n_mp",  "n_mm",        "fraction_pp",
                     "analytic_pp", "stderr_pp"};

    auto push = [&](double delta, double alpha, double beta, const CoincidenceCounts& counts) {
        const double measured = counts.fraction_pp();
        const double analytic =
            coincidence_fraction(cmd.run.state, cmd.run.semantics, alpha, beta);
        table.push_row({std::string(to_string(cmd.run.state)),
                        std::string(to_string(cmd.run.semantics)),
                        std::string(to_string(cmd.run.discipline)), delta, alpha, beta,
                        counts.n_intervals, counts.n_pp, counts.n_pm, counts.n_mp, counts.n_mm,
                        measured, analytic,
                        binomial_stderr(measured, static_cast<double>(counts.n_intervals))});
    };

    if (cmd.delta_grid) {
        const auto points = sweep_coincidence(cmd.run, *cmd.delta_grid, cmd.partitions);
        for (const auto& point : points) push(point.delta, point.alpha, point.beta, point.counts);
    } else {
        const CoincidenceCounts counts = run_bell(cmd.run, cmd.partitions);
        push(cmd.run.alpha - cmd.run.beta, cmd.run.alpha, cmd.run.beta, counts);
    }
    return table;
}

RunManifest bell_manifest(const BellCmd& cmd) {
    RunManifest manifest = base_manifest("bell", cmd.run.seed, cmd.partitions);
    manifest.set("state", to_string(cmd.run.state));
    manifest.set("semantics", to_string(cmd.run.semantics));
    manifest.set("discipline", to_string(cmd.run.discipline));
    manifest.set("n", cmd.run.n_intervals);
    manifest.set("alpha", cmd.run.alpha);
    if (cmd.delta_grid) {
        if (!cmd.delta_grid_text.empty()) {
            manifest.set("delta-grid", cmd.delta_grid_text);
        } else {
            std::string grid;
            for (double delta : *cmd.delta_grid) {
                if (!grid.empty()) grid += ' ';
                grid += format_double_exact(delta);
            }
            manifest.set("delta_values", grid);
        }
    } else {
        manifest.set("beta", cmd.run.beta);
    }
    describe_generator(manifest, cmd.run.generator);
    return manifest;
}

Table chsh_report(const ChshCmd& cmd) {
    Table table;
    table.columns = {"model", "discipline", "a",    "a_prime", "b",    "b_prime",
                     "e_ab",  "e_ab_prime", "e_a_prime_b", "e_a_prime_b_prime",
                     "se_ab", "se_ab_prime", "se_a_prime_b", "se_a_prime_b_prime",
                     "s",     "s_analytic"};

    auto push = [&](const char* model, const ChshEstimate& est, double analytic) {
        table.push_row({std::string(model), std::string(to_string(cmd.run.discipline)),
                        cmd.angles.a, cmd.angles.a_prime, cmd.angles.b, cmd.angles.b_prime,
                        est.e[0], est.e[1], est.e[2], est.e[3], est.se[0], est.se[1], est.se[2],
                        est.se[3], est.s, analytic});
    };

    RunConfig projection = cmd.run;
    projection.semantics = SamplingSemantics::Projection;
    push("vector-projection", chsh(projection, cmd.angles, cmd.partitions),
         chsh_law(cmd.run.state, cmd.angles));

    // Uniform non-contextual sampling halves every correlation, so the
    // control's analytic value is half the projection one.
    RunConfig naive = cmd.run;
    naive.semantics = SamplingSemantics::NaiveUniform;
    push("vector-naive-uniform", chsh(naive, cmd.angles, cmd.partitions),
         0.5 * chsh_law(cmd.run.state, cmd.angles));

    push("boolean", boolean_chsh(cmd.run, cmd.angles, cmd.partitions),
         boolean_chsh_law(cmd.run.state, cmd.angles));
    return table;
}

RunManifest chsh_manifest(const ChshCmd& cmd) {
    RunManifest manifest = base_manifest("chsh", cmd.run.seed, cmd.partitions);
    manifest.set("state", to_string(cmd.run.state));
    manifest.set("discipline", to_string(cmd.run.discipline));
    manifest.set("n", cmd.run.n_intervals);
    manifest.set("a", cmd.angles.a);
    manifest.set("a-prime", cmd.angles.a_prime);
    manifest.set("b", cmd.angles.b);
    manifest.set("b-prime", cmd.angles.b_prime);
    describe_generator(manifest, cmd.run.generator);
    return manifest;
}

Table malus_report(const MalusCmd& cmd) {
    Table table;
    table.columns = {"semantics", "discipline", "alpha", "beta",     "n",
                     "n_subset",  "n_transmitted", "fraction", "analytic", "stderr"};
    const MalusResult result = run_malus(cmd.run, cmd.partitions);
    const double delta = cmd.run.alpha - cmd.run.beta;
    const double analytic = std::cos(delta) * std::cos(delta);
    table.push_row({std::string(to_string(cmd.run.semantics)),
                    std::string(to_string(cmd.run.discipline)), cmd.run.alpha, cmd.run.beta,
                    result.n_intervals, result.n_subset, result.n_transmitted, result.fraction(),
                    analytic,
                    binomial_stderr(result.fraction(), static_cast<double>(result.n_subset))});
    return table;
}

RunManifest malus_manifest(const MalusCmd& cmd) {
    RunManifest manifest = base_manifest("malus", cmd.run.seed, cmd.partitions);
    manifest.set("semantics", to_string(cmd.run.semantics));
    manifest.set("discipline", to_string(cmd.run.discipline));
    manifest.set("n", cmd.run.n_intervals);
    manifest.set("alpha", cmd.run.alpha);
    manifest.set("beta", cmd.run.beta);
    describe_generator(manifest, cmd.run.generator);
    return manifest;
}

Table boolean_report(const BooleanCmd& cmd) {
    Table table;
    table.columns = {"state", "delta", "alpha", "beta", "n",          "n_pp",
                     "n_pm",  "n_mp",  "n_mm",  "fraction_pp", "analytic_pp", "stderr_pp"};

    auto push = [&](double delta, const RunConfig& run) {
        const CoincidenceCounts counts = run_boolean_bell(run, cmd.partitions);
        const double measured = counts.fraction_pp();
        table.push_row({std::string(to_string(run.state)), delta, run.alpha, run.beta,
                        counts.n_intervals, counts.n_pp, counts.n_pm, counts.n_mp, counts.n_mm,
                        measured, boolean_coincidence_fraction(run.state, run.alpha, run.beta),
                        binomial_stderr(measured, static_cast<double>(counts.n_intervals))});
    };

    if (cmd.delta_grid) {
        // one run per grid point, beta = alpha - delta
        for (std::size_t k = 0; k < cmd.delta_grid->size(); ++k) {
            RunConfig run = cmd.run;
            run.seed = derive_seed(cmd.run.seed, k);
            run.beta = cmd.run.alpha - (*cmd.delta_grid)[k];
            push((*cmd.delta_grid)[k], run);
        }
    } else {
        push(cmd.run.alpha - cmd.run.beta, cmd.run);
    }
    return table;
}

RunManifest boolean_manifest(const BooleanCmd& cmd) {
    RunManifest manifest = base_manifest("boolean", cmd.run.seed, cmd.partitions);
    manifest.set("state", to_string(cmd.run.state));
    manifest.set("n", cmd.run.n_intervals);
    manifest.set("alpha", cmd.run.alpha);
    if (cmd.delta_grid) {
        if (!cmd.delta_grid_text.empty()) {
            manifest.set("delta-grid", cmd.delta_grid_text);
        } else {
            std::string grid;
            for (double delta : *cmd.delta_grid) {
                if (!grid.empty()) grid += ' ';
                grid += format_double_exact(delta);
            }
            manifest.set("delta_values", grid);
        }
    } else {
        manifest.set("beta", cmd.run.beta);
    }
    return manifest;
}

Table gram_report(const GramCmd& cmd) {
    Table table;
    table.columns = {"statistic", "row", "col", "value", "analytic"};
    const GramEstimate est = gram_average(cmd.seed, cmd.n_draws, cmd.generator);
    const std::array<BellState, 4> order = {BellState::PsiMinus, BellState::PsiPlus,
                                            BellState::PhiPlus, BellState::PhiMinus};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            table.push_row({std::string("gram"), std::string(to_string(order[r])),
                            std::string(to_string(order[c])), est.mean_dot[r][c],
                            r == c ? 1.0 : 0.0});
    table.push_row({std::string("fg_mean"), std::string("party-a"), std::string(""),
                    est.fg_mean_a, 0.0});
    table.push_row({std::string("fg_mean"), std::string("party-b"), std::string(""),
                    est.fg_mean_b, 0.0});
    return table;
}

RunManifest gram_manifest(const GramCmd& cmd) {
    RunManifest manifest = base_manifest("gram", cmd.seed, 1);
    manifest.set("n", cmd.n_draws);
    describe_generator(manifest, cmd.generator);
    return manifest;
}

Table hom_report(const HomCmd& cmd) {
    Table table;
    table.columns = {"state",      "f",           "g",          "m",
                     "m_c",        "m_d",         "m_c_routed", "m_d_routed",
                     "routing",    "cd_fraction", "cd_expected", "n"};

    IntervalHV reference;
    reference.dt = 1.0;
    reference.samples = {{std::cos(cmd.input_angle), std::sin(cmd.input_angle)}};

    GeneratorConfig ensemble;  // unit-integral source, uniform direction
    ensemble.angle_mode = AngleMode::Uniform;
    ensemble.modulus_mode = ModulusMode::FixedIntegral;
    ensemble.fixed_integral = 1.0;

    auto push = [&](BellState state) {
        const HomOutputs out = hom_outputs(state, reference);
        const bool routed = state == BellState::PhiMinus || state == BellState::PsiPlus;
        double m_c_routed = out.m_c;
        double m_d_routed = out.m_d;
        if (routed) std::tie(m_c_routed, m_d_routed) = apply_routing_rule(out.m_c, out.m_d);
        const double fraction =
            hom_classifier(state, cmd.seed, cmd.n_intervals, ensemble, cmd.discipline);
        table.push_row({std::string(to_string(state)), reference.samples[0].f,
                        reference.samples[0].g, out.m, out.m_c, out.m_d, m_c_routed, m_d_routed,
                        std::string(routed ? "yes" : "no"), fraction,
                        state == BellState::PsiMinus ? 1.0 : 0.0, cmd.n_intervals});
    };

    if (cmd.state) {
        push(*cmd.state);
    } else {
        for (BellState state : kAllBellStates) push(state);
    }
    return table;
}

RunManifest hom_manifest(const HomCmd& cmd) {
    RunManifest manifest = base_manifest("hom", cmd.seed, 1);
    manifest.set("n", cmd.n_intervals);
    manifest.set("input-angle", cmd.input_angle);
    if (cmd.state) manifest.set("state", to_string(*cmd.state));
    manifest.set("discipline", to_string(cmd.discipline));
    return manifest;
}

Table swap_report(const SwapCmd& cmd) {
    Table table;
    table.columns = {"regime", "basis", "coeff", "mean_lhs", "mean_rhs", "mean_diff",
                     "max_abs_diff"};
    if (cmd.n_draws < 1) throw ConfigError("swap: n_draws must be >= 1");

    struct Accumulated {
        std::array<double, 16> lhs{};
        std::array<double, 16> rhs{};
        std::array<double, 16> diff{};
        std::array<double, 16> max_abs{};
    };

    auto run_regime = [&](const char* name, bool constrained) {
        Accumulated acc;
        double regime_max = 0.0;
        for (std::int64_t k = 0; k < cmd.n_draws; ++k) {
            Rng rng = Rng::for_interval(cmd.seed, k, StreamDomain::SwapDraw);
            const double v1 = rng.uniform_angle();
            const double v2 = rng.uniform_angle();
            const double v3 = rng.uniform_angle();
            const double v4 = rng.uniform_angle();
            double f1 = std::cos(v1), g1 = std::sin(v1);
            double f2 = std::cos(v2), g2 = std::sin(v2);
            double f3 = std::cos(v3), g3 = std::sin(v3);
            double f4 = std::cos(v4), g4 = std::sin(v4);
            if (constrained) {
                // pairs (1,2) and (3,4) entangled per the psi-minus partner rule
                f2 = g1;
                g2 = -f1;
                f4 = g3;
                g4 = -f3;
            }
            const SwapIdentityReport report =
                swap_identity_check(f1, g1, f2, g2, f3, g3, f4, g4);
            for (int idx = 0; idx < 16; ++idx) {
                acc.lhs[idx] += report.lhs.c[idx];
                acc.rhs[idx] += report.rhs.c[idx];
                acc.diff[idx] += report.diff[idx];
                acc.max_abs[idx] = std::max(acc.max_abs[idx], std::abs(report.diff[idx]));
            }
            regime_max = std::max(regime_max, report.max_abs_diff);
        }
        const double n = static_cast<double>(cmd.n_draws);
        for (int idx = 0; idx < 16; ++idx)
            table.push_row({std::string(name), four_party_basis_label(idx),
                            static_cast<std::int64_t>(idx), acc.lhs[idx] / n, acc.rhs[idx] / n,
                            acc.diff[idx] / n, acc.max_abs[idx]});
        table.push_row({std::string(name), std::string("all"), static_cast<std::int64_t>(-1),
                        0.0, 0.0, 0.0, regime_max});
    };

    run_regime("unconstrained", false);
    run_regime("psi-minus-constrained", true);
    table.push_row({std::string("qm-oracle"), std::string("all"),
                    static_cast<std::int64_t>(-1), 0.0, 0.0, 0.0, qm_swap_identity_residual()});
    return table;
}

RunManifest swap_manifest(const SwapCmd& cmd) {
    RunManifest manifest = base_manifest("swap", cmd.seed, 1);
    manifest.set("n", cmd.n_draws);
    return manifest;
}

}  // namespace hvlab
