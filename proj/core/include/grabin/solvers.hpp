#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grabin/game.hpp"

namespace grabin {

/// Winning regions and positional strategies of a solved SynthesisGame.
struct Solution {
    std::vector<char> system_wins;             // per vertex
    std::vector<std::uint32_t> system_choice;  // per System vertex index (v - num_env_vertices), output letter or kNoState
    std::vector<std::uint32_t> env_choice;     // per Environment vertex, input letter or kNoState

    bool system_wins_at(unsigned v) const { return system_wins[v] != 0; }
};

/// Recursive attractor-based solver. Among equally good moves the smallest letter is chosen.
Solution solve_zielonka(const SynthesisGame& game);

/// Small progress measures lifting; returns the System winning region only.
/// Independent of the Zielonka implementation and used to cross-check it.
std::vector<char> solve_progress_measures(const SynthesisGame& game);

struct CertificationResult {
    bool ok = true;
    std::string message;
    std::vector<unsigned> cycle;  // offending cycle, vertex ids, when !ok

    explicit operator bool() const { return ok; }
};

/// Thrown when a strategy is not defined exactly on its owner's winning vertices, or
/// chooses a move that leaves the owner's region.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Fixes each player's strategy inside its winning region and checks that the opponent
/// cannot close a losing cycle there: no odd-max cycle in the System region, no even-max
/// cycle in the Environment region.
CertificationResult certify_strategy(const SynthesisGame& game, const Solution& solution);

}  // namespace grabin
