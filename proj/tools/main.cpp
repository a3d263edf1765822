// hvlab: hidden-variable models of the two-station polarization-correlation
// experiment. Subcommands run the vector and Boolean models, the Bell-vector
// algebra checks, and the acceptance suite; results are CSV tables stamped
// with a manifest hash so every published number is reproducible.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hvlab/acceptance.hpp"
#include "hvlab/angle_expr.hpp"
#include "hvlab/errors.hpp"
#include "hvlab/manifest.hpp"
#include "hvlab/reports.hpp"
#include "hvlab/runner.hpp"
#include "hvlab/version.hpp"

namespace {

using namespace hvlab;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAcceptance = 3;

struct CommonOpts {
    std::string seed_text;
    bool allow_env_seed = false;
    std::int64_t n = 1'000'000;
    int partitions = default_partitions();
    std::string out_path;
    std::string json_path;
    std::string manifest_path;
    std::string config_path;
};

std::uint64_t parse_seed(const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError("seed must be an unsigned decimal integer, got '" + text + "'");
    return std::strtoull(text.c_str(), nullptr, 10);
}

std::uint64_t resolve_seed(const CommonOpts& opts) {
    if (!opts.seed_text.empty()) return parse_seed(opts.seed_text);
    if (opts.allow_env_seed) {
        if (const char* env = std::getenv("HVLAB_SEED")) return parse_seed(env);
    }
    throw ConfigError("--seed is required (or set HVLAB_SEED and pass --allow-env-seed)");
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed_text, "64-bit run seed; no silent time-based seeding");
    cmd->add_flag("--allow-env-seed", opts.allow_env_seed,
                  "honor HVLAB_SEED when --seed is absent");
    cmd->add_option("--n", opts.n, "intervals (or draws) per run")->capture_default_str();
    cmd->add_option("--partitions", opts.partitions, "parallel partitions")
        ->capture_default_str();
    cmd->add_option("--out", opts.out_path, "CSV output file (default: stdout)");
    cmd->add_option("--json", opts.json_path, "also write a JSON mirror to this file");
    cmd->add_option("--manifest", opts.manifest_path, "write the resolved run manifest here");
    cmd->add_option("--config", opts.config_path,
                    "TOML-style key = value file (a manifest replays directly); "
                    "command-line flags win");
}

// Values from --config fill in exactly the options the user did not pass on
// the command line; run manifests replay through this path.
class ConfigFile {
public:
    ConfigFile(CLI::App* cmd, const std::string& path) : cmd_(cmd) {
        if (path.empty()) return;
        std::ifstream file(path);
        if (!file) throw ConfigError("cannot read config file '" + path + "'");
        std::ostringstream buffer;
        buffer << file.rdbuf();
        entries_ = RunManifest::parse_text(buffer.str());
        const auto sub = entries_.find("subcommand");
        if (sub != entries_.end() && sub->second != cmd->get_name())
            throw ConfigError("config file belongs to subcommand '" + sub->second + "', not '" +
                              cmd->get_name() + "'");
    }

    void merge(const std::string& option, std::string& target) const {
        if (const std::string* value = lookup(option)) target = *value;
    }
    void merge(const std::string& option, std::int64_t& target) const {
        if (const std::string* value = lookup(option)) target = parse_integer(option, *value);
    }
    void merge(const std::string& option, int& target) const {
        if (const std::string* value = lookup(option))
            target = static_cast<int>(parse_integer(option, *value));
    }
    void merge(const std::string& option, double& target) const {
        if (const std::string* value = lookup(option)) {
            try {
                target = std::stod(*value);
            } catch (const std::exception&) {
                throw ConfigError("config: bad number for " + option + ": '" + *value + "'");
            }
        }
    }

private:
    static std::int64_t parse_integer(const std::string& option, const std::string& value) {
        try {
            return std::stoll(value);
        } catch (const std::exception&) {
            throw ConfigError("config: bad integer for " + option + ": '" + value + "'");
        }
    }

    const std::string* lookup(const std::string& option) const {
        if (entries_.empty() || cmd_->count(option) > 0) return nullptr;  // flags win
        const auto it = entries_.find(option.substr(2));
        return it == entries_.end() ? nullptr : &it->second;
    }

    CLI::App* cmd_;
    std::map<std::string, std::string> entries_;
};

void merge_common(const ConfigFile& config, CommonOpts& opts) {
    config.merge("--seed", opts.seed_text);
    config.merge("--n", opts.n);
    config.merge("--partitions", opts.partitions);
}

struct AngleOpts {
    std::string alpha = "0";
    std::string beta = "0";
    std::string delta_grid;
};

struct ModelOpts {
    std::string state = "psi-minus";
    std::string semantics = "projection";
    std::string discipline = "accumulator";
};

struct GeneratorOpts {
    int samples = 1;
    std::string waveform = "constant";
    int cycles = 1;
    std::string modulus = "fixed";
    double modulus_integral = 1.0;
    double modulus_lo = 0.5;
    double modulus_hi = 1.5;
};

void add_generator(CLI::App* cmd, GeneratorOpts& opts) {
    cmd->add_option("--samples", opts.samples, "samples per interval")->capture_default_str();
    cmd->add_option("--waveform", opts.waveform, "constant | harmonic")->capture_default_str();
    cmd->add_option("--cycles", opts.cycles, "harmonic cycles per interval")
        ->capture_default_str();
    cmd->add_option("--modulus", opts.modulus, "fixed | uniform modulus integral")
        ->capture_default_str();
    cmd->add_option("--modulus-integral", opts.modulus_integral, "fixed modulus integral")
        ->capture_default_str();
    cmd->add_option("--modulus-lo", opts.modulus_lo, "uniform modulus lower bound")
        ->capture_default_str();
    cmd->add_option("--modulus-hi", opts.modulus_hi, "uniform modulus upper bound")
        ->capture_default_str();
}

void merge_generator(const ConfigFile& config, GeneratorOpts& opts) {
    config.merge("--samples", opts.samples);
    config.merge("--waveform", opts.waveform);
    config.merge("--cycles", opts.cycles);
    config.merge("--modulus", opts.modulus);
    config.merge("--modulus-integral", opts.modulus_integral);
    config.merge("--modulus-lo", opts.modulus_lo);
    config.merge("--modulus-hi", opts.modulus_hi);
}

GeneratorConfig make_generator(const GeneratorOpts& opts) {
    GeneratorConfig cfg;
    cfg.samples_per_interval = opts.samples;
    if (opts.waveform == "harmonic")
        cfg.waveform = Waveform::Harmonic;
    else if (opts.waveform != "constant")
        throw ConfigError("unknown waveform '" + opts.waveform + "'");
    cfg.harmonic_cycles = opts.cycles;
    if (opts.modulus == "uniform")
        cfg.modulus_mode = ModulusMode::UniformIntegral;
    else if (opts.modulus != "fixed")
        throw ConfigError("unknown modulus mode '" + opts.modulus + "'");
    cfg.fixed_integral = opts.modulus_integral;
    cfg.uniform_lo = opts.modulus_lo;
    cfg.uniform_hi = opts.modulus_hi;
    return cfg;
}

BellState parse_state(const std::string& name) {
    if (const auto state = parse_bell_state(name)) return *state;
    throw ConfigError("unknown state '" + name +
                      "' (psi-minus, psi-plus, phi-plus, phi-minus)");
}

SamplingSemantics parse_semantics(const std::string& name) {
    if (name == "projection") return SamplingSemantics::Projection;
    if (name == "naive-uniform") return SamplingSemantics::NaiveUniform;
    throw ConfigError("unknown semantics '" + name + "' (projection, naive-uniform)");
}

Discipline parse_discipline(const std::string& name) {
    if (name == "accumulator") return Discipline::Accumulator;
    if (name == "bernoulli") return Discipline::Bernoulli;
    throw ConfigError("unknown discipline '" + name + "' (accumulator, bernoulli)");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot open output file '" + path + "'");
    file << content;
    if (!file) throw ConfigError("failed writing '" + path + "'");
}

// Runs the producer, then writes CSV/JSON/manifest only after everything
// succeeded so that errors never leave partial output files behind.
template <typename Producer>
void emit(const CommonOpts& opts, RunManifest manifest, Producer&& producer) {
    const auto start = std::chrono::steady_clock::now();
    const Table table = producer();
    const auto elapsed = std::chrono::steady_clock::now() - start;
    manifest.duration_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();

    const std::string hash = manifest.hash();
    const std::string csv = to_csv(table, hash);
    if (opts.out_path.empty())
        std::cout << csv;
    else
        write_file(opts.out_path, csv);
    if (!opts.json_path.empty()) write_file(opts.json_path, to_json(table, hash));
    if (!opts.manifest_path.empty()) write_file(opts.manifest_path, manifest.to_file_text());
}

RunConfig make_run(const ModelOpts& model, const AngleOpts& angles, const GeneratorOpts& gen,
                   const CommonOpts& common) {
    RunConfig run;
    run.state = parse_state(model.state);
    run.semantics = parse_semantics(model.semantics);
    run.discipline = parse_discipline(model.discipline);
    run.alpha = parse_angle_expr(angles.alpha);
    run.beta = parse_angle_expr(angles.beta);
    run.n_intervals = common.n;
    run.seed = resolve_seed(common);
    run.generator = make_generator(gen);
    return run;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hidden-variable simulator for two-station polarization correlations"};
    app.set_version_flag("--version", hvlab::kVersion);
    app.require_subcommand(1);

    int exit_code = kExitOk;

    // bell: two-station coincidence runs, single setting or a delta grid
    auto* bell = app.add_subcommand("bell", "two-station coincidence run or sweep");
    CommonOpts bell_common;
    ModelOpts bell_model;
    AngleOpts bell_angles;
    GeneratorOpts bell_gen;
    add_common(bell, bell_common);
    add_generator(bell, bell_gen);
    bell->add_option("--state", bell_model.state, "Bell state")->capture_default_str();
    bell->add_option("--semantics", bell_model.semantics, "projection | naive-uniform")
        ->capture_default_str();
    bell->add_option("--discipline", bell_model.discipline, "accumulator | bernoulli")
        ->capture_default_str();
    bell->add_option("--alpha", bell_angles.alpha, "station-A analyzer angle (pi expressions)")
        ->capture_default_str();
    auto* bell_beta = bell->add_option("--beta", bell_angles.beta, "station-B analyzer angle")
                          ->capture_default_str();
    auto* bell_grid = bell->add_option("--delta-grid", bell_angles.delta_grid,
                                       "start:stop:step sweep of delta = alpha - beta");
    bell_grid->excludes(bell_beta);
    bell->callback([&] {
        const ConfigFile config(bell, bell_common.config_path);
        merge_common(config, bell_common);
        merge_generator(config, bell_gen);
        config.merge("--state", bell_model.state);
        config.merge("--semantics", bell_model.semantics);
        config.merge("--discipline", bell_model.discipline);
        config.merge("--alpha", bell_angles.alpha);
        config.merge("--beta", bell_angles.beta);
        if (bell->count("--beta") == 0) config.merge("--delta-grid", bell_angles.delta_grid);

        BellCmd cmd;
        cmd.run = make_run(bell_model, bell_angles, bell_gen, bell_common);
        cmd.partitions = bell_common.partitions;
        if (!bell_angles.delta_grid.empty()) {
            cmd.delta_grid = parse_angle_grid(bell_angles.delta_grid);
            cmd.delta_grid_text = bell_angles.delta_grid;
        }
        emit(bell_common, bell_manifest(cmd), [&] { return bell_report(cmd); });
    });

    // chsh: four-run estimate for all three models
    auto* chsh_cmd = app.add_subcommand("chsh", "CHSH S for vector, control and Boolean models");
    CommonOpts chsh_common;
    ModelOpts chsh_model;
    GeneratorOpts chsh_gen;
    std::string angle_a = "0";
    std::string angle_a_prime = "pi/4";
    std::string angle_b = "pi/8";
    std::string angle_b_prime = "3*pi/8";
    add_common(chsh_cmd, chsh_common);
    add_generator(chsh_cmd, chsh_gen);
    chsh_cmd->add_option("--state", chsh_model.state, "Bell state")->capture_default_str();
    chsh_cmd->add_option("--discipline", chsh_model.discipline, "accumulator | bernoulli")
        ->capture_default_str();
    chsh_cmd->add_option("--a", angle_a, "first A setting")->capture_default_str();
    chsh_cmd->add_option("--a-prime", angle_a_prime, "second A setting")->capture_default_str();
    chsh_cmd->add_option("--b", angle_b, "first B setting")->capture_default_str();
    chsh_cmd->add_option("--b-prime", angle_b_prime, "second B setting")->capture_default_str();
    chsh_cmd->callback([&] {
        const ConfigFile config(chsh_cmd, chsh_common.config_path);
        merge_common(config, chsh_common);
        merge_generator(config, chsh_gen);
        config.merge("--state", chsh_model.state);
        config.merge("--discipline", chsh_model.discipline);
        config.merge("--a", angle_a);
        config.merge("--a-prime", angle_a_prime);
        config.merge("--b", angle_b);
        config.merge("--b-prime", angle_b_prime);

        ChshCmd cmd;
        AngleOpts no_angles;
        cmd.run = make_run(chsh_model, no_angles, chsh_gen, chsh_common);
        cmd.angles = ChshAngles{parse_angle_expr(angle_a), parse_angle_expr(angle_a_prime),
                                parse_angle_expr(angle_b), parse_angle_expr(angle_b_prime)};
        cmd.partitions = chsh_common.partitions;
        emit(chsh_common, chsh_manifest(cmd), [&] { return chsh_report(cmd); });
    });

    // malus: single-beam two-analyzer chain
    auto* malus = app.add_subcommand("malus", "conditioned two-analyzer transmission");
    CommonOpts malus_common;
    ModelOpts malus_model;
    AngleOpts malus_angles;
    GeneratorOpts malus_gen;
    add_common(malus, malus_common);
    add_generator(malus, malus_gen);
    malus->add_option("--semantics", malus_model.semantics, "projection | naive-uniform")
        ->capture_default_str();
    malus->add_option("--discipline", malus_model.discipline, "accumulator | bernoulli")
        ->capture_default_str();
    malus->add_option("--alpha", malus_angles.alpha, "first analyzer angle")
        ->capture_default_str();
    malus->add_option("--beta", malus_angles.beta, "second analyzer angle")
        ->capture_default_str();
    malus->callback([&] {
        const ConfigFile config(malus, malus_common.config_path);
        merge_common(config, malus_common);
        merge_generator(config, malus_gen);
        config.merge("--semantics", malus_model.semantics);
        config.merge("--discipline", malus_model.discipline);
        config.merge("--alpha", malus_angles.alpha);
        config.merge("--beta", malus_angles.beta);

        MalusCmd cmd;
        cmd.run = make_run(malus_model, malus_angles, malus_gen, malus_common);
        cmd.partitions = malus_common.partitions;
        emit(malus_common, malus_manifest(cmd), [&] { return malus_report(cmd); });
    });

    // boolean: the set-membership comparator model
    auto* boolean_cmd = app.add_subcommand("boolean", "Boolean-model coincidence run or sweep");
    CommonOpts boolean_common;
    std::string boolean_state = "psi-minus";
    AngleOpts boolean_angles;
    add_common(boolean_cmd, boolean_common);
    boolean_cmd->add_option("--state", boolean_state, "Bell state")->capture_default_str();
    boolean_cmd->add_option("--alpha", boolean_angles.alpha, "station-A analyzer angle")
        ->capture_default_str();
    auto* boolean_beta = boolean_cmd
                             ->add_option("--beta", boolean_angles.beta,
                                          "station-B analyzer angle")
                             ->capture_default_str();
    auto* boolean_grid = boolean_cmd->add_option("--delta-grid", boolean_angles.delta_grid,
                                                 "start:stop:step sweep");
    boolean_grid->excludes(boolean_beta);
    boolean_cmd->callback([&] {
        const ConfigFile config(boolean_cmd, boolean_common.config_path);
        merge_common(config, boolean_common);
        config.merge("--state", boolean_state);
        config.merge("--alpha", boolean_angles.alpha);
        config.merge("--beta", boolean_angles.beta);
        if (boolean_cmd->count("--beta") == 0)
            config.merge("--delta-grid", boolean_angles.delta_grid);

        BooleanCmd cmd;
        cmd.run.state = parse_state(boolean_state);
        cmd.run.alpha = parse_angle_expr(boolean_angles.alpha);
        cmd.run.beta = parse_angle_expr(boolean_angles.beta);
        cmd.run.n_intervals = boolean_common.n;
        cmd.run.seed = resolve_seed(boolean_common);
        cmd.partitions = boolean_common.partitions;
        if (!boolean_angles.delta_grid.empty()) {
            cmd.delta_grid = parse_angle_grid(boolean_angles.delta_grid);
            cmd.delta_grid_text = boolean_angles.delta_grid;
        }
        emit(boolean_common, boolean_manifest(cmd), [&] { return boolean_report(cmd); });
    });

    // gram: averaged pairwise products of the four Bell vectors
    auto* gram = app.add_subcommand("gram", "averaged Bell-vector Gram matrix");
    CommonOpts gram_common;
    GeneratorOpts gram_gen;
    gram_gen.modulus = "uniform";
    add_common(gram, gram_common);
    add_generator(gram, gram_gen);
    gram->callback([&] {
        const ConfigFile config(gram, gram_common.config_path);
        merge_common(config, gram_common);
        merge_generator(config, gram_gen);

        GramCmd cmd;
        cmd.seed = resolve_seed(gram_common);
        cmd.n_draws = gram_common.n;
        cmd.generator = make_generator(gram_gen);
        emit(gram_common, gram_manifest(cmd), [&] { return gram_report(cmd); });
    });

    // hom: beam-splitter interference outputs and the coincidence classifier
    auto* hom = app.add_subcommand("hom", "beam-splitter outputs and C&D classifier");
    CommonOpts hom_common;
    hom_common.n = 10'000;
    std::string hom_state;
    std::string hom_angle = "pi/8";
    std::string hom_discipline = "accumulator";
    add_common(hom, hom_common);
    hom->add_option("--state", hom_state, "restrict to one Bell state (default: all four)");
    hom->add_option("--input-angle", hom_angle, "direction of the reference input")
        ->capture_default_str();
    hom->add_option("--discipline", hom_discipline, "accumulator | bernoulli")
        ->capture_default_str();
    hom->callback([&] {
        const ConfigFile config(hom, hom_common.config_path);
        merge_common(config, hom_common);
        config.merge("--state", hom_state);
        config.merge("--input-angle", hom_angle);
        config.merge("--discipline", hom_discipline);

        HomCmd cmd;
        cmd.seed = resolve_seed(hom_common);
        cmd.n_intervals = hom_common.n;
        cmd.input_angle = parse_angle_expr(hom_angle);
        cmd.discipline = parse_discipline(hom_discipline);
        if (!hom_state.empty()) cmd.state = parse_state(hom_state);
        emit(hom_common, hom_manifest(cmd), [&] { return hom_report(cmd); });
    });

    // swap: four-party decomposition discrepancy report
    auto* swap = app.add_subcommand("swap", "pair-swap decomposition coefficient report");
    CommonOpts swap_common;
    swap_common.n = 100;
    add_common(swap, swap_common);
    swap->callback([&] {
        const ConfigFile config(swap, swap_common.config_path);
        merge_common(config, swap_common);

        SwapCmd cmd;
        cmd.seed = resolve_seed(swap_common);
        cmd.n_draws = swap_common.n;
        emit(swap_common, swap_manifest(cmd), [&] { return swap_report(cmd); });
    });

    // accept: run the acceptance suite
    auto* accept = app.add_subcommand("accept", "run the acceptance suite");
    std::string accept_seed = "7";
    std::int64_t accept_n = 1'000'000;
    int accept_partitions = default_partitions();
    accept->add_option("--seed", accept_seed, "suite seed")->capture_default_str();
    accept->add_option("--n", accept_n, "intervals per statistical point")
        ->capture_default_str();
    accept->add_option("--partitions", accept_partitions, "parallel partitions")
        ->capture_default_str();
    accept->callback([&] {
        AcceptanceOptions options;
        options.seed = parse_seed(accept_seed);
        options.n_intervals = accept_n;
        options.partitions = accept_partitions;
        options.log = &std::cout;
        const auto results = run_acceptance(options);
        if (!all_passed(results)) exit_code = kExitAcceptance;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    } catch (const hvlab::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hvlab::StatisticsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return exit_code;
}
