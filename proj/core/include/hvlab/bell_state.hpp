#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace hvlab {

/// The four maximally entangled two-party states. Each one fixes how the
/// partner hidden variable at station B is derived from station A's.
enum class BellState {
    PsiMinus,
    PsiPlus,
    PhiPlus,
    PhiMinus,
};

inline constexpr std::array<BellState, 4> kAllBellStates = {
    BellState::PsiMinus,
    BellState::PsiPlus,
    BellState::PhiPlus,
    BellState::PhiMinus,
};

constexpr const char* to_string(BellState state) {
    switch (state) {
        case BellState::PsiMinus: return "psi-minus";
        case BellState::PsiPlus: return "psi-plus";
        case BellState::PhiPlus: return "phi-plus";
        case BellState::PhiMinus: return "phi-minus";
    }
    return "?";
}

std::optional<BellState> parse_bell_state(std::string_view name);

}  // namespace hvlab
