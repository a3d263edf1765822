#pragma once

#include <cstdint>

#include "hvlab/bell_sim.hpp"

namespace hvlab {

/// A token of the Boolean comparator model: a single scalar hidden variable,
/// uniform on [0, pi) at generation.
struct Token {
    double lambda = 0.0;
};

/// Set-membership analyzer: transmits exactly the tokens whose lambda lies in
/// the half-open arc [alpha, alpha + pi/2) mod pi, reflects the rest.
struct BooleanAnalyzer {
    double alpha = 0.0;
};

int transmit(const BooleanAnalyzer& analyzer, const Token& token);

/// Partner token value at station B:
///   psi-minus: lambda - pi/2   phi-plus: lambda
///   psi-plus:  lambda + pi/2   phi-minus: -lambda      (all mod pi)
double boolean_partner(double lambda, BellState state);

/// Two-station Boolean run: one lambda per interval, joint transmit/reflect
/// tally at angles (alpha, beta). Semantics, generator and discipline fields
/// of the config are not used; detection is the set-membership indicator.
CoincidenceCounts run_boolean_bell(const RunConfig& cfg, int partitions = 1);

/// Normalized overlap length of the two transmission arcs, in [0, 1/2];
/// saw-tooth in the angle difference. Exact law for the single-beam
/// two-analyzer chain.
double boolean_overlap(double alpha, double beta);

/// Closed-form ++ coincidence fraction of the Boolean model; for psi-minus
/// and delta = alpha - beta in [0, pi/2] this is delta / pi.
double boolean_coincidence_fraction(BellState state, double alpha, double beta);

/// Closed-form correlation: marginals are exactly 1/2 and P(++) = P(--), so
/// E = 4 P(++) - 1; for psi-minus on [0, pi/2] this is 4 delta / pi - 1.
double boolean_correlation_law(BellState state, double alpha, double beta);

ChshEstimate boolean_chsh(const RunConfig& cfg_base, const ChshAngles& angles,
                          int partitions = 1);

double boolean_chsh_law(BellState state, const ChshAngles& angles);

}  // namespace hvlab
