#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "grabin/ltl.hpp"
#include "grabin/product.hpp"

namespace grabin {

/// Where a conjunct comes from: an LTL pattern string, inline HOA text or an HOA file.
struct ConjunctSource {
    enum class Kind { Ltl, Hoa, HoaFile };
    Kind kind = Kind::Ltl;
    std::string text;  // formula, HOA text or path

    friend bool operator==(const ConjunctSource&, const ConjunctSource&) = default;
};

struct SpecProblem {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<ConjunctSource> assumptions;
    std::vector<ConjunctSource> guarantees;
    std::filesystem::path base_dir;  // relative `hoa_file` paths resolve against this

    /// Inputs followed by outputs. Throws Error on overlapping or malformed names.
    ApTable aps() const;
};

/// `{"inputs": [...], "outputs": [...], "assumptions": [{"ltl": ...} | {"hoa": ...} |
/// {"hoa_file": ...}], "guarantees": [...]}`. Throws SyntaxError.
SpecProblem parse_spec_json(std::string_view text, std::filesystem::path base_dir = {});

/// Reads and parses a spec file; `hoa_file` entries resolve relative to its directory.
SpecProblem load_spec_file(const std::filesystem::path& path);

/// One conjunct compiled to a deterministic automaton over `spec.aps()`, before
/// Buchi/co-Buchi normalization.
struct CompiledConjunct {
    Automaton automaton;
    Role role;
    std::string label;  // printed pattern or HOA name, for diagnostics
};

/// LTL conjuncts may expand into several patterns, each gets its own entry. HOA
/// propositions are matched to the spec by name. Throws NormalizationError when an HOA
/// automaton mentions an unknown proposition, plus the parser errors.
std::vector<CompiledConjunct> compile_conjuncts(const SpecProblem& spec);

/// compile_conjuncts followed by normalize(). Throws NormalizationError.
NormalizedSpec normalize_spec(const SpecProblem& spec);

}  // namespace grabin
