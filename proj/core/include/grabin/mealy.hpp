#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "grabin/automaton.hpp"

namespace grabin {

/// Finite-state transducer: reads an input letter, emits an output letter and moves on.
class MealyMachine {
public:
    struct Step {
        unsigned target = 0;
        Letter output = 0;

        friend bool operator==(const Step&, const Step&) = default;
    };

    /// `steps[state * 2^|inputs| + input]`; must be total.
    MealyMachine(ApTable inputs, ApTable outputs, unsigned initial, std::vector<Step> steps);

    const ApTable& inputs() const { return inputs_; }
    const ApTable& outputs() const { return outputs_; }
    unsigned num_states() const { return static_cast<unsigned>(steps_.size() / inputs_.num_letters()); }
    unsigned initial() const { return initial_; }
    const Step& step(unsigned state, Letter input) const { return steps_[state * inputs_.num_letters() + input]; }

    friend bool operator==(const MealyMachine&, const MealyMachine&) = default;

private:
    ApTable inputs_;
    ApTable outputs_;
    unsigned initial_;
    std::vector<Step> steps_;
};

/// `{"inputs": [...], "outputs": [...], "states": n, "initial": 0, "transitions":
/// [{"from": s, "on": [...], "to": t, "out": [...]}, ...]}`. Letters are name arrays
/// sorted lexicographically; transitions are ordered by state, then input letter.
std::string emit_machine_json(const MealyMachine& machine);

/// Throws SyntaxError on malformed JSON or a non-total / out-of-range machine.
MealyMachine parse_machine_json(std::string_view text);

std::string emit_machine_dot(const MealyMachine& machine);

}  // namespace grabin
