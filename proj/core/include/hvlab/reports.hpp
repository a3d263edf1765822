#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hvlab/bell_sim.hpp"
#include "hvlab/boolean_model.hpp"
#include "hvlab/manifest.hpp"
#include "hvlab/table.hpp"

namespace hvlab {

// Table producers behind the CLI subcommands. Each command struct is the
// fully resolved invocation; the matching *_manifest builder is the single
// source of the hashed configuration, so CSVs produced here are byte-stable
// across partition counts.

struct BellCmd {
    RunConfig run;
    std::optional<std::vector<double>> delta_grid;  // grid mode: beta = alpha - delta
    std::string delta_grid_text;                    // original start:stop:step, if any
    int partitions = 1;
};

Table bell_report(const BellCmd& cmd);
RunManifest bell_manifest(const BellCmd& cmd);

struct ChshCmd {
    RunConfig run;  // alpha/beta ignored; angles below are used
    ChshAngles angles;
    int partitions = 1;
};

/// One row per model: vector-projection, vector-naive-uniform, boolean.
Table chsh_report(const ChshCmd& cmd);
RunManifest chsh_manifest(const ChshCmd& cmd);

struct MalusCmd {
    RunConfig run;
    int partitions = 1;
};

Table malus_report(const MalusCmd& cmd);
RunManifest malus_manifest(const MalusCmd& cmd);

struct BooleanCmd {
    RunConfig run;
    std::optional<std::vector<double>> delta_grid;
    std::string delta_grid_text;
    int partitions = 1;
};

Table boolean_report(const BooleanCmd& cmd);
RunManifest boolean_manifest(const BooleanCmd& cmd);

struct GramCmd {
    std::uint64_t seed = 0;
    std::int64_t n_draws = 1'000'000;
    GeneratorConfig generator;  // modulus mode feeds <V^2> = 1 draws
};

Table gram_report(const GramCmd& cmd);
RunManifest gram_manifest(const GramCmd& cmd);

struct HomCmd {
    std::uint64_t seed = 0;
    std::int64_t n_intervals = 10'000;
    double input_angle = kPi / 8.0;  // direction of the unit reference input
    std::optional<BellState> state;  // absent: all four states
    Discipline discipline = Discipline::Accumulator;
};

Table hom_report(const HomCmd& cmd);
RunManifest hom_manifest(const HomCmd& cmd);

struct SwapCmd {
    std::uint64_t seed = 0;
    std::int64_t n_draws = 100;
};

Table swap_report(const SwapCmd& cmd);
RunManifest swap_manifest(const SwapCmd& cmd);

}  // namespace hvlab
