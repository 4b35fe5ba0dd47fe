#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grabin/mealy.hpp"
#include "grabin/solvers.hpp"
#include "grabin/spec.hpp"

namespace grabin {

struct SynthesisStats {
    unsigned product_states = 0;
    std::uint64_t raw_bound = 0;
    unsigned game_vertices = 0;
    unsigned system_region_env_vertices = 0;
    std::vector<unsigned> colours_used;  // sorted
    double solve_seconds = 0.0;
};

struct Realizable {
    MealyMachine machine;
};

/// Environment strategy restricted to the Environment-winning vertices reachable from
/// the initial vertex when the Environment follows it and the System plays anything.
struct Unrealizable {
    struct Move {
        unsigned vertex;  // Environment vertex (parity automaton state)
        unsigned colour;
        Letter input;
    };
    std::vector<Move> counterstrategy;  // sorted by vertex
};

struct SynthesisOutcome {
    std::variant<Realizable, Unrealizable> result;
    SynthesisStats stats;

    bool realizable() const { return std::holds_alternative<Realizable>(result); }
    const MealyMachine& machine() const { return std::get<Realizable>(result).machine; }
    const Unrealizable& unrealizable() const { return std::get<Unrealizable>(result); }
};

/// Machine states are the Environment vertices reachable under the System strategy,
/// numbered in breadth-first order from the initial vertex. Throws NotRealizable.
MealyMachine extract_mealy(const SynthesisGame& game, const Solution& solution, const ApTable& inputs,
                           const ApTable& outputs);

struct Violation {
    Lasso lasso;  // letters over inputs followed by outputs
    std::string describe(const ApTable& aps) const;
};

/// nullopt iff every word the machine can produce is accepted by `pa`. Throws
/// IncompatibleAlphabets when the machine's proposition count does not match.
std::optional<Violation> verify_mealy(const MealyMachine& machine, const ParityAutomaton& pa);

/// Rejects machines whose proposition names differ from the spec, then verifies.
std::optional<Violation> verify_mealy(const MealyMachine& machine, const NormalizedSpec& spec,
                                      const ParityAutomaton& pa);

/// Some assumption automaton rejects, or every guarantee automaton accepts.
bool lasso_oracle(const NormalizedSpec& spec, const Lasso& lasso);

/// Calls `visit` on every lasso with |stem| <= max_stem and 1 <= |loop| <= max_loop.
template <class Visit>
void for_each_lasso(std::uint32_t num_letters, unsigned max_stem, unsigned max_loop, Visit&& visit);

struct DifferentialReport {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::optional<Lasso> first_mismatch;
};

/// Compares lasso_oracle with the product automaton's verdict on every lasso within
/// the bounds. Throws Error when the spec has more than `max_aps` propositions.
DifferentialReport differential_test(const NormalizedSpec& spec, unsigned max_stem, unsigned max_loop,
                                     unsigned max_aps = 3);

struct SynthesisOptions {
    ProductOptions product;
    bool cross_check = true;  // progress measures and strategy certification
};

/// Normalize, build product and game, solve, extract and verify. Throws
/// NormalizationError, CapacityExceeded, CertificationFailure.
SynthesisOutcome synthesize(const SpecProblem& spec, const SynthesisOptions& options = {});
SynthesisOutcome synthesize(const NormalizedSpec& spec, const SynthesisOptions& options = {});

/// `{"inputs": [...], "moves": [{"vertex": v, "colour": c, "input": [...]}, ...]}`.
std::string emit_counterstrategy_json(const Unrealizable& outcome, const ApTable& inputs);

template <class Visit>
void for_each_lasso(std::uint32_t num_letters, unsigned max_stem, unsigned max_loop, Visit&& visit)
{
    Lasso lasso;
    // Odometer over words of a fixed length.
    auto words = [num_letters](unsigned length, auto&& body) {
        std::vector<Letter> word(length, 0);
        while (true) {
            body(word);
            unsigned i = 0;
            while (i < length && ++word[i] == num_letters)
                word[i++] = 0;
            if (i == length)
                return;
        }
    };
    for (unsigned s = 0; s <= max_stem; ++s)
        words(s, [&](const std::vector<Letter>& stem) {
            lasso.stem = stem;
            for (unsigned l = 1; l <= max_loop; ++l)
                words(l, [&](const std::vector<Letter>& loop) {
                    lasso.loop = loop;
                    visit(static_cast<const Lasso&>(lasso));
                });
        });
}

}  // namespace grabin
