#include "grabin/mealy.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace grabin {

MealyMachine::MealyMachine(ApTable inputs, ApTable outputs, unsigned initial, std::vector<Step> steps)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), initial_(initial), steps_(std::move(steps))
{
    for (const auto& name : inputs_.names())
        if (outputs_.find(name))
            throw Error("proposition '" + name + "' is both an input and an output");
    if (steps_.empty() || steps_.size() % inputs_.num_letters() != 0)
        throw Error("Mealy machine transition table is not total");
    if (initial_ >= num_states())
        throw Error("Mealy machine initial state out of range");
    for (const auto& s : steps_) {
        if (s.target >= num_states())
            throw Error("Mealy machine transition target out of range");
        if (s.output >= outputs_.num_letters())
            throw Error("Mealy machine output letter out of range");
    }
}

namespace {

nlohmann::ordered_json sorted_names(const ApTable& table, Letter letter)
{
    auto names = table.letter_names(letter);
    std::sort(names.begin(), names.end());
    return nlohmann::ordered_json(names);
}

std::vector<std::string> string_array(const nlohmann::json& value, const char* what)
{
    if (!value.is_array())
        throw SyntaxError(0, std::string("machine JSON: '") + what + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& v : value) {
        if (!v.is_string())
            throw SyntaxError(0, std::string("machine JSON: '") + what + "' must be an array of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

unsigned unsigned_field(const nlohmann::json& obj, const char* key)
{
    if (!obj.contains(key) || !obj.at(key).is_number_unsigned())
        throw SyntaxError(0, std::string("machine JSON: missing or invalid '") + key + "'");
    return obj.at(key).get<unsigned>();
}

}  // namespace

std::string emit_machine_json(const MealyMachine& machine)
{
    nlohmann::ordered_json doc;
    doc["inputs"] = machine.inputs().names();
    doc["outputs"] = machine.outputs().names();
    doc["states"] = machine.num_states();
    doc["initial"] = machine.initial();
    nlohmann::ordered_json transitions = nlohmann::ordered_json::array();
    for (unsigned s = 0; s < machine.num_states(); ++s) {
        for (Letter x = 0; x < machine.inputs().num_letters(); ++x) {
            const auto& step = machine.step(s, x);
            nlohmann::ordered_json t;
            t["from"] = s;
            t["on"] = sorted_names(machine.inputs(), x);
            t["to"] = step.target;
            t["out"] = sorted_names(machine.outputs(), step.output);
            transitions.push_back(std::move(t));
        }
    }
    doc["transitions"] = std::move(transitions);
    return doc.dump(2) + "\n";
}

MealyMachine parse_machine_json(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(0, std::string("machine JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw SyntaxError(0, "machine JSON: top level must be an object");
    for (const char* key : {"inputs", "outputs", "transitions"})
        if (!doc.contains(key))
            throw SyntaxError(0, std::string("machine JSON: missing '") + key + "'");
    ApTable inputs(string_array(doc.at("inputs"), "inputs"));
    ApTable outputs(string_array(doc.at("outputs"), "outputs"));
    const unsigned states = unsigned_field(doc, "states");
    const unsigned initial = unsigned_field(doc, "initial");
    if (states == 0)
        throw SyntaxError(0, "machine JSON: a machine needs at least one state");

    const std::uint32_t letters = inputs.num_letters();
    std::vector<MealyMachine::Step> steps(std::size_t{states} * letters);
    std::vector<char> seen(steps.size(), 0);
    const auto& transitions = doc.at("transitions");
    if (!transitions.is_array())
        throw SyntaxError(0, "machine JSON: 'transitions' must be an array");
    for (const auto& t : transitions) {
        if (!t.is_object() || !t.contains("on") || !t.contains("out"))
            throw SyntaxError(0, "machine JSON: malformed transition");
        const unsigned from = unsigned_field(t, "from");
        const unsigned to = unsigned_field(t, "to");
        if (from >= states || to >= states)
            throw SyntaxError(0, "machine JSON: transition state out of range");
        Letter on = 0;
        Letter out = 0;
        try {
            on = inputs.letter_from_names(string_array(t.at("on"), "on"));
            out = outputs.letter_from_names(string_array(t.at("out"), "out"));
        } catch (const SyntaxError&) {
            throw;
        } catch (const Error& e) {
            throw SyntaxError(0, std::string("machine JSON: ") + e.what());
        }
        const std::size_t slot = std::size_t{from} * letters + on;
        if (seen[slot])
            throw SyntaxError(0, "machine JSON: duplicate transition from state " + std::to_string(from));
        seen[slot] = 1;
        steps[slot] = MealyMachine::Step{to, out};
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw SyntaxError(0, "machine JSON: transition table is not total");
    try {
        return MealyMachine(std::move(inputs), std::move(outputs), initial, std::move(steps));
    } catch (const SyntaxError&) {
        throw;
    } catch (const Error& e) {
        throw SyntaxError(0, std::string("machine JSON: ") + e.what());
    }
}

std::string emit_machine_dot(const MealyMachine& machine)
{
    auto label = [](const ApTable& table, Letter letter) {
        auto names = table.letter_names(letter);
        std::sort(names.begin(), names.end());
        std::string out = "{";
        for (std::size_t i = 0; i < names.size(); ++i)
            out += (i ? "," : "") + names[i];
        return out + "}";
    };
    std::ostringstream os;
    os << "digraph mealy {\n";
    os << "  rankdir=LR;\n";
    os << "  init [shape=point];\n";
    for (unsigned s = 0; s < machine.num_states(); ++s)
        os << "  s" << s << " [shape=circle,label=\"" << s << "\"];\n";
    os << "  init -> s" << machine.initial() << ";\n";
    for (unsigned s = 0; s < machine.num_states(); ++s) {
        for (Letter x = 0; x < machine.inputs().num_letters(); ++x) {
            const auto& step = machine.step(s, x);
            os << "  s" << s << " -> s" << step.target << " [label=\"" << label(machine.inputs(), x) << " / "
               << label(machine.outputs(), step.output) << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace grabin
