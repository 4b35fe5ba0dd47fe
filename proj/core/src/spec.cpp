#include "grabin/spec.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "grabin/hoa.hpp"

namespace grabin {

ApTable SpecProblem::aps() const
{
    std::vector<std::string> names = inputs;
    names.insert(names.end(), outputs.begin(), outputs.end());
    for (const auto& in : inputs)
        for (const auto& out : outputs)
            if (in == out)
                throw Error("proposition '" + in + "' is both an input and an output");
    return ApTable(std::move(names));
}

namespace {

std::vector<std::string> name_list(const nlohmann::json& doc, const char* key)
{
    if (!doc.contains(key))
        return {};
    const auto& value = doc.at(key);
    if (!value.is_array())
        throw SyntaxError(0, std::string("spec: '") + key + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& v : value) {
        if (!v.is_string())
            throw SyntaxError(0, std::string("spec: '") + key + "' must be an array of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::vector<ConjunctSource> conjunct_list(const nlohmann::json& doc, const char* key)
{
    if (!doc.contains(key))
        return {};
    const auto& value = doc.at(key);
    if (!value.is_array())
        throw SyntaxError(0, std::string("spec: '") + key + "' must be an array");
    std::vector<ConjunctSource> out;
    for (const auto& entry : value) {
        // A bare string is shorthand for {"ltl": ...}.
        if (entry.is_string()) {
            out.push_back({ConjunctSource::Kind::Ltl, entry.get<std::string>()});
            continue;
        }
        if (!entry.is_object() || entry.size() != 1)
            throw SyntaxError(0, std::string("spec: each entry of '") + key +
                                     "' must be an object with exactly one of ltl, hoa, hoa_file");
        const auto& [field, text] = *entry.items().begin();
        if (!text.is_string())
            throw SyntaxError(0, "spec: '" + field + "' must be a string");
        ConjunctSource source;
        if (field == "ltl")
            source.kind = ConjunctSource::Kind::Ltl;
        else if (field == "hoa")
            source.kind = ConjunctSource::Kind::Hoa;
        else if (field == "hoa_file")
            source.kind = ConjunctSource::Kind::HoaFile;
        else
            throw SyntaxError(0, "spec: unknown conjunct field '" + field + "'");
        source.text = text.get<std::string>();
        out.push_back(std::move(source));
    }
    return out;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Automaton from_hoa(const HoaAutomaton& hoa, const ApTable& aps, std::string_view where)
{
    std::vector<unsigned> mapping;
    for (const auto& name : hoa.aps.names()) {
        auto index = aps.find(name);
        if (!index)
            throw NormalizationError(std::string(where) + ": proposition '" + name +
                                     "' is neither an input nor an output");
        mapping.push_back(*index);
    }
    return hoa.automaton.remap_aps(mapping, aps.size());
}

}  // namespace

SpecProblem parse_spec_json(std::string_view text, std::filesystem::path base_dir)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(0, std::string("spec: ") + e.what());
    }
    if (!doc.is_object())
        throw SyntaxError(0, "spec: top level must be an object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "inputs" && key != "outputs" && key != "assumptions" && key != "guarantees" &&
            key != "name" && key != "comment")
            throw SyntaxError(0, "spec: unknown field '" + key + "'");
    }
    SpecProblem spec;
    spec.inputs = name_list(doc, "inputs");
    spec.outputs = name_list(doc, "outputs");
    spec.assumptions = conjunct_list(doc, "assumptions");
    spec.guarantees = conjunct_list(doc, "guarantees");
    spec.base_dir = std::move(base_dir);
    try {
        (void)spec.aps();
    } catch (const SyntaxError&) {
        throw;
    } catch (const Error& e) {
        throw SyntaxError(0, std::string("spec: ") + e.what());
    }
    return spec;
}

SpecProblem load_spec_file(const std::filesystem::path& path)
{
    return parse_spec_json(read_file(path), path.parent_path());
}

std::vector<CompiledConjunct> compile_conjuncts(const SpecProblem& spec)
{
    const ApTable aps = spec.aps();
    std::vector<CompiledConjunct> out;
    auto compile = [&](const ConjunctSource& source, Role role) {
        switch (source.kind) {
        case ConjunctSource::Kind::Ltl:
            for (const auto& pattern : parse_ltl(source.text, aps))
                out.push_back({compile_pattern(pattern, aps.size()), role, print_pattern(pattern, aps)});
            break;
        case ConjunctSource::Kind::Hoa: {
            auto hoa = parse_hoa(source.text);
            out.push_back({from_hoa(hoa, aps, "inline HOA"), role, hoa.name.empty() ? "inline HOA" : hoa.name});
            break;
        }
        case ConjunctSource::Kind::HoaFile: {
            std::filesystem::path path = source.text;
            if (path.is_relative())
                path = spec.base_dir / path;
            auto hoa = parse_hoa(read_file(path));
            out.push_back({from_hoa(hoa, aps, path.string()), role, hoa.name.empty() ? path.string() : hoa.name});
            break;
        }
        }
    };
    for (const auto& a : spec.assumptions)
        compile(a, Role::Assumption);
    for (const auto& g : spec.guarantees)
        compile(g, Role::Guarantee);
    return out;
}

NormalizedSpec normalize_spec(const SpecProblem& spec)
{
    NormalizedSpec normalized(spec.inputs, spec.outputs);
    for (const auto& conjunct : compile_conjuncts(spec)) {
        try {
            for (const auto& part : normalize(conjunct.automaton, conjunct.role))
                normalized.add(part);
        } catch (const WrongAcceptanceKind& e) {
            throw WrongAcceptanceKind(conjunct.label + ": " + e.what());
        }
    }
    return normalized;
}

}  // namespace grabin
