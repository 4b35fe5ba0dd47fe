#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grabin/automaton.hpp"
#include "grabin/ltl.hpp"

namespace grabin {

/// Assumption/guarantee specification split into the four automaton families:
/// Buchi assumptions (A), co-Buchi assumptions (B), Buchi guarantees (C) and
/// co-Buchi guarantees (D). All automata run over `aps()`, which lists the inputs
/// first and then the outputs.
class NormalizedSpec {
public:
    NormalizedSpec(std::vector<std::string> inputs, std::vector<std::string> outputs);

    static NormalizedSpec from_conjuncts(std::vector<std::string> inputs, std::vector<std::string> outputs,
                                         const std::vector<ClassifiedConjunct>& conjuncts);

    void add(const ClassifiedConjunct& conjunct);

    const std::vector<std::string>& inputs() const { return inputs_; }
    const std::vector<std::string>& outputs() const { return outputs_; }
    const ApTable& aps() const { return aps_; }
    unsigned num_inputs() const { return static_cast<unsigned>(inputs_.size()); }
    unsigned num_outputs() const { return static_cast<unsigned>(outputs_.size()); }

    const std::vector<Automaton>& buchi_assumptions() const { return a_; }
    const std::vector<Automaton>& cobuchi_assumptions() const { return b_; }
    const std::vector<Automaton>& buchi_guarantees() const { return c_; }
    const std::vector<Automaton>& cobuchi_guarantees() const { return d_; }

    /// A, B, C, D concatenated; this is the component order of product states.
    std::vector<const Automaton*> components() const;

private:
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
    ApTable aps_;
    std::vector<Automaton> a_;
    std::vector<Automaton> b_;
    std::vector<Automaton> c_;
    std::vector<Automaton> d_;
};

/// Round-robin counters over the Buchi assumptions (w) and guarantees (r), plus the flag
/// recording that every Buchi assumption was serviced since the last co-Buchi guarantee
/// violation was charged (v). Counter value i >= 1 waits for automaton i (1-based).
struct ControlState {
    unsigned w = 0;
    unsigned r = 0;
    bool v = false;

    friend bool operator==(const ControlState&, const ControlState&) = default;
};

/// Flags describe the source state; the new flag reads the updated w counter.
ControlState control_successor(ControlState current, std::span<const bool> a_accepting,
                               std::span<const bool> c_accepting, std::span<const bool> d_rejecting);

struct ProductState {
    std::vector<unsigned> components;  // A, B, C, D order
    ControlState control;

    friend bool operator==(const ProductState&, const ProductState&) = default;
};

/// Colour in {0..4}: 4 on a co-Buchi assumption violation, 3 on a co-Buchi guarantee
/// violation while the flag is set, 2 when the guarantee counter is 0, 1 when the
/// assumption counter is 0, otherwise 0.
unsigned colour_of(const ProductState& state, const NormalizedSpec& spec);

struct ProductOptions {
    std::uint64_t max_raw_states = 10'000'000;
};

/// Deterministic max-even parity automaton over the reachable part of the product.
class ParityAutomaton {
public:
    unsigned num_states() const { return static_cast<unsigned>(states_.size()); }
    std::uint32_t num_letters() const { return num_letters_; }
    unsigned num_aps() const { return num_aps_; }
    unsigned initial() const { return 0; }
    std::uint32_t step(unsigned state, Letter letter) const { return next_[std::size_t{state} * num_letters_ + letter]; }
    unsigned colour(unsigned state) const { return colours_[state]; }
    const std::vector<unsigned>& colours() const { return colours_; }
    const ProductState& state(unsigned index) const { return states_[index]; }
    std::uint64_t raw_bound() const { return raw_bound_; }

    /// Explicit automaton with `parity max even 5` acceptance; guards are minterm sums.
    Automaton to_automaton() const;

    bool accepts(const Lasso& lasso) const;

private:
    friend ParityAutomaton build_product(const NormalizedSpec&, const ProductOptions&);

    unsigned num_aps_ = 0;
    std::uint32_t num_letters_ = 1;
    std::uint64_t raw_bound_ = 0;
    std::vector<ProductState> states_;
    std::vector<unsigned> colours_;
    std::vector<std::uint32_t> next_;
};

/// Size of the full product state space, saturating at UINT64_MAX.
std::uint64_t raw_state_bound(const NormalizedSpec& spec);

/// Breadth-first construction from (initial components, 0, 0, false). Throws
/// CapacityExceeded when raw_state_bound exceeds the configured limit.
ParityAutomaton build_product(const NormalizedSpec& spec, const ProductOptions& options = {});

}  // namespace grabin
