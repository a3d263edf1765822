#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "hvlab/hv_core.hpp"

namespace hvlab {

/// Two-party hidden-variable product vector on the ordered tensor basis
/// (e_xA e_xB, e_xA e_yB, e_yA e_xB, e_yA e_yB). Built bilinearly from the
/// two parties' transverse components; the squared norm factorizes as
/// (f_A^2 + g_A^2)(f_B^2 + g_B^2) for every state.
struct BellVector4 {
    std::array<double, 4> c{};

    double norm_squared() const {
        return c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
    }
};

BellVector4 bell_vector(BellState state, double f_a, double g_a, double f_b, double g_b);

/// Euclidean inner product of coefficient quadruples. Pairs with different
/// letter and different parity (psi+/phi-, psi-/phi+) are orthogonal for
/// every input; the remaining pairs are orthogonal only on ensemble average.
double dot(const BellVector4& u, const BellVector4& v);

struct GramEstimate {
    // Mean pairwise dots, state order (psi-, psi+, phi+, phi-).
    std::array<std::array<double, 4>, 4> mean_dot{};
    double fg_mean_a = 0.0;  // <f_A g_A> estimator
    double fg_mean_b = 0.0;
    std::int64_t n_draws = 0;
};

/// Averages all pairwise dots of the four Bell vectors over an ensemble of
/// independent two-party draws (f = V cos v, g = V sin v, v uniform on
/// [0, pi), <V^2> = 1 per cfg's modulus mode). Tends to the identity matrix.
/// Throws StatisticsError below 10^4 draws.
GramEstimate gram_average(std::uint64_t seed, std::int64_t n_draws, const GeneratorConfig& cfg);

struct BeamsplitterOutputs {
    IntervalHV c;
    IntervalHV d;
};

/// Balanced beam splitter as a change of basis: per sample
/// C = (A + B)/sqrt(2), D = (A - B)/sqrt(2). Requires equal shapes.
BeamsplitterOutputs beamsplitter(const IntervalHV& a, const IntervalHV& b);

/// Closed-form interference outputs when the two inputs form a Bell pair
/// built from one (f, g) stream.
///
///   phi-plus:  (2m, 0)
///   psi-minus: (m, m)
///   phi-minus: (2 int f^2, 2 int g^2)        on the unit-modulus stream
///   psi-plus:  (m +/- 2 int f^2 g^2)         on the unit-modulus stream
///
/// For phi-minus and psi-plus the samples are first normalized to unit
/// modulus (the closed forms assume f^2 + g^2 = 1); `m` reports the modulus
/// integral of the stream the forms were evaluated on. Conservation
/// m_c + m_d = 2m holds for every state.
struct HomOutputs {
    double m_c = 0.0;
    double m_d = 0.0;
    double m = 0.0;
};

HomOutputs hom_outputs(BellState state, const IntervalHV& hv);

/// The extra beam-splitter instruction for the two untidy states: the output
/// with the smaller integral follows the larger one, forcing 2-and-0
/// bunching. Ties route to C. Must not be applied to psi-minus, whose
/// simultaneous C and D detections are the classifying signature.
std::pair<double, double> apply_routing_rule(double m_c, double m_d);

/// Fraction of intervals with simultaneous C and D detections over a random
/// ensemble; the routing rule is applied to phi-minus and psi-plus outputs.
/// With a unit-integral source this is 1 for psi-minus and 0 otherwise.
double hom_classifier(BellState state, std::uint64_t seed, std::int64_t n_intervals,
                      const GeneratorConfig& cfg,
                      Discipline discipline = Discipline::Accumulator);

/// Four-party coefficient tensor on the basis {x,y}^4 in party-major order:
/// index = 8 b1 + 4 b2 + 2 b3 + b4 with b = 0 for x, 1 for y.
struct FourPartyTensor {
    std::array<double, 16> c{};
};

std::string four_party_basis_label(int index);

enum class PairGrouping { Pair12_34, Pair14_23 };

/// Product of two pair vectors placed on the four-party basis; the grouping
/// selects which party indices the first/second factors live on.
FourPartyTensor four_party_product(PairGrouping grouping, const BellVector4& first,
                                   const BellVector4& second);

/// Per-coefficient comparison of the pair-swap decomposition
///   LHS = Psi12- Psi34-
///   RHS = 1/2 (-Psi14+ Psi23+ + Psi14- Psi23- - Phi14+ Phi23+ - Phi14- Phi23-)
/// evaluated on the given component values. Reports the difference; does not
/// assert equality.
struct SwapIdentityReport {
    FourPartyTensor lhs;
    FourPartyTensor rhs;
    std::array<double, 16> diff{};
    double max_abs_diff = 0.0;
};

SwapIdentityReport swap_identity_check(double f1, double g1, double f2, double g2, double f3,
                                       double g3, double f4, double g4);

/// Residual of the quantum-amplitude counterpart of the swap decomposition
///   |psi12-> |psi34-> = 1/2 (|psi14+>|psi23+> - |psi14->|psi23->
///                            - |phi14+>|phi23+> + |phi14->|phi23->)
/// on the 16-dimensional four-qubit amplitude vector; the fixed reference
/// point the hidden-variable reports are compared against.
double qm_swap_identity_residual();

}  // namespace hvlab
