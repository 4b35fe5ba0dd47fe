#pragma once

#include <string>
#include <string_view>

#include "grabin/automaton.hpp"

namespace grabin {

/// Reader and writer for the subset of the Hanoi Omega-Automata format used here:
/// explicit state-based acceptance, deterministic and total automata, and the
/// acceptance names `Buchi`, `co-Buchi`, `Rabin 1`, `parity max even <n>` and `safety`.
///
/// For `Rabin 1`, set 0 is Q \ F (the Fin set) and set 1 is G (the Inf set).
/// For `safety`, set 0 (if declared) marks the absorbing failure states.
struct HoaAutomaton {
    Automaton automaton;
    ApTable aps;
    std::string name;
};

/// Throws SyntaxError, UnsupportedFeature or ValidationError.
HoaAutomaton parse_hoa(std::string_view text);

std::string emit_hoa(const Automaton& aut, const ApTable& aps, std::string_view name = {});

/// Canonical `Acceptance:` condition for `parity max even <n>`.
std::string parity_max_even_condition(unsigned num_colours);

}  // namespace grabin
