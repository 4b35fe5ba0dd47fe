#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "grabin/automaton.hpp"

namespace grabin {

/// The LTL shapes accepted by the front end. Everything else must be given as HOA.
struct Pattern {
    enum class Kind {
        StateInit,     // b             (first letter satisfies b)
        Always,        // G b
        Recurrence,    // G F b
        Persistence,   // F G b
        NextResponse,  // G (b1 -> X b2)
        Response,      // G (b1 -> F b2)
    };
    Kind kind = Kind::StateInit;
    BoolExpr first;
    BoolExpr second;  // only for the two response kinds

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Parses `pattern ('&' pattern)*`. A top-level conjunction that contains temporal
/// operators is split into one Pattern per conjunct; a purely propositional formula
/// stays a single StateInit.
///
/// Precedence from tightest: unary (`!`, `X`, `F`, `G`), `U`, `&`, `|`, `->`, `<->`.
/// `->` associates to the right. Identifiers made only of the letters G, F and X are
/// read as operator sequences, so `GF p` and `G F p` are the same formula.
///
/// Throws SyntaxError, or UnsupportedFeature naming the offending operator.
std::vector<Pattern> parse_ltl(std::string_view text, const ApTable& aps);

std::string print_pattern(const Pattern& pattern, const ApTable& aps);

/// Deterministic, total automaton accepting exactly the words satisfying `pattern`.
Automaton compile_pattern(const Pattern& pattern, unsigned num_aps);

enum class Role { Assumption, Guarantee };
enum class ConjunctKind { Buchi, CoBuchi };

struct ClassifiedConjunct {
    Automaton automaton;
    Role role;
    ConjunctKind kind;
};

/// Brings a Rabin-index-1 conjunct into Buchi/co-Buchi form. Safety becomes Buchi over
/// the safe states, one-pair Rabin is split into its co-Buchi and Buchi parts (in that
/// order). Throws WrongAcceptanceKind for parity and the generalized conditions.
std::vector<ClassifiedConjunct> normalize(const Automaton& aut, Role role);

}  // namespace grabin
