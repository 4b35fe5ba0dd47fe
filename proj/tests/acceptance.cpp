// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "grabin/hoa.hpp"
#include "grabin/synthesis.hpp"
#include "support/specs.hpp"

using namespace grabin;
namespace o = oracle;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = GRABIN_CORPUS_DIR;

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (ok)
            detail = why;
        ok = false;
    }
};

struct CorpusEntry {
    std::string name;
    SpecProblem problem;
    bool realizable;
};

std::vector<CorpusEntry> load_corpus()
{
    std::vector<CorpusEntry> out;
    for (const auto& entry : fs::directory_iterator(kCorpus)) {
        if (entry.path().extension() != ".json")
            continue;
        auto expected_path = entry.path();
        expected_path.replace_extension(".expected");
        std::ifstream in(expected_path);
        std::string verdict;
        in >> verdict;
        out.push_back({entry.path().stem().string(), load_spec_file(entry.path()), verdict == "realizable"});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

// Random specs with up to 3 propositions, 2 conjuncts per side and 3-state components.
std::vector<o::RandomSpec> random_specs(unsigned seed, unsigned count)
{
    std::mt19937 rng(seed);
    std::vector<o::RandomSpec> out;
    while (out.size() < count) {
        auto spec = o::random_spec(rng, 3, 2, 3);
        out.push_back(std::move(spec));
    }
    return out;
}

// Product of component sizes times the counter ranges and the flag, computed from scratch.
std::uint64_t expected_bound(const NormalizedSpec& spec)
{
    std::uint64_t bound = 2;
    bound *= spec.buchi_assumptions().size() + 1;
    bound *= spec.buchi_guarantees().size() + 1;
    for (const auto* list : {&spec.buchi_assumptions(), &spec.cobuchi_assumptions(), &spec.buchi_guarantees(),
                             &spec.cobuchi_guarantees()})
        for (const auto& aut : *list)
            bound *= aut.num_states();
    return bound;
}

bool colours_within(const ParityAutomaton& pa, unsigned max)
{
    return std::all_of(pa.colours().begin(), pa.colours().end(), [max](unsigned c) { return c <= max; });
}

Outcome colour_range(const std::vector<CorpusEntry>& corpus)
{
    Outcome out;
    for (const auto& entry : corpus)
        if (!colours_within(build_product(normalize_spec(entry.problem)), 4))
            out.fail(entry.name + " uses a colour above 4");
    unsigned i = 0;
    for (const auto& raw : random_specs(1, 500)) {
        if (!colours_within(build_product(testing_support::normalized(raw)), 4))
            out.fail("random spec " + std::to_string(i) + " uses a colour above 4");
        ++i;
    }
    return out;
}

Outcome buchi_only_colours()
{
    Outcome out;
    std::mt19937 rng(2);
    unsigned checked = 0;
    for (unsigned round = 0; checked < 300 && round < 20000; ++round) {
        const auto spec = testing_support::normalized(o::random_spec(rng, 3, 2, 3));
        if (!spec.cobuchi_assumptions().empty() || !spec.cobuchi_guarantees().empty())
            continue;
        ++checked;
        if (!colours_within(build_product(spec), 2))
            out.fail("a Buchi-only spec uses colour 3 or 4");
    }
    if (checked < 300)
        out.fail("only " + std::to_string(checked) + " Buchi-only specs generated");
    return out;
}

Outcome state_bound(const std::vector<CorpusEntry>& corpus)
{
    Outcome out;
    auto check = [&](const NormalizedSpec& spec, const std::string& label) {
        const auto bound = expected_bound(spec);
        if (raw_state_bound(spec) != bound)
            out.fail(label + ": raw bound " + std::to_string(raw_state_bound(spec)) + " != " + std::to_string(bound));
        const auto pa = build_product(spec);
        if (pa.num_states() > bound)
            out.fail(label + ": " + std::to_string(pa.num_states()) + " reachable states exceed the bound");
    };
    for (const auto& entry : corpus)
        check(normalize_spec(entry.problem), entry.name);
    unsigned i = 0;
    for (const auto& raw : random_specs(3, 500))
        check(testing_support::normalized(raw), "random spec " + std::to_string(i++));
    const auto gf = testing_support::ltl_spec({"r"}, {"g"}, {"GF r"}, {"GF g"});
    if (raw_state_bound(gf) != 32 || build_product(gf).raw_bound() != 32)
        out.fail("GF r -> GF g raw bound is not 32");
    return out;
}

Outcome differential(const std::vector<CorpusEntry>& corpus)
{
    Outcome out;
    std::uint64_t lassos = 0;
    auto run = [&](const NormalizedSpec& spec, const std::function<bool(const Lasso&)>& truth,
                   const std::string& label) {
        const auto pa = build_product(spec);
        for_each_lasso(pa.num_letters(), 2, 3, [&](const Lasso& l) {
            ++lassos;
            const bool expected = truth(l);
            if (pa.accepts(l) != expected || lasso_oracle(spec, l) != expected)
                out.fail(label + ": product and oracle disagree");
        });
    };
    for (const auto& entry : corpus) {
        const auto conjuncts = compile_conjuncts(entry.problem);
        run(normalize_spec(entry.problem),
            [&](const Lasso& l) {
                for (const auto& c : conjuncts)
                    if (c.role == Role::Assumption && !o::accepted(c.automaton, l))
                        return true;
                for (const auto& c : conjuncts)
                    if (c.role == Role::Guarantee && !o::accepted(c.automaton, l))
                        return false;
                return true;
            },
            entry.name);
    }
    unsigned i = 0;
    for (const auto& raw : random_specs(4, 500)) {
        run(testing_support::normalized(raw), [&](const Lasso& l) { return o::spec_holds(raw, l); },
            "random spec " + std::to_string(i++));
    }
    if (out.ok)
        out.detail = std::to_string(lassos) + " lassos, 0 mismatches";
    return out;
}

Outcome solvers()
{
    Outcome out;
    std::mt19937 rng(5);
    for (int round = 0; round < 1000; ++round) {
        const auto game = o::random_game(rng, 50, 2, 2, 4);
        const auto s = solve_zielonka(game);
        if (solve_progress_measures(game) != s.system_wins)
            out.fail("game " + std::to_string(round) + ": solvers disagree");
        const auto cert = certify_strategy(game, s);
        if (!cert.ok)
            out.fail("game " + std::to_string(round) + ": " + cert.message);
    }
    for (const auto& raw : random_specs(6, 200)) {
        const auto spec = testing_support::normalized(raw);
        const auto game = build_game(build_product(spec), spec.num_inputs(), spec.num_outputs());
        const auto s = solve_zielonka(game);
        if (solve_progress_measures(game) != s.system_wins || !certify_strategy(game, s).ok)
            out.fail("a synthesis game fails the cross-check");
    }
    return out;
}

Outcome corpus_verdicts(const std::vector<CorpusEntry>& corpus)
{
    Outcome out;
    for (const auto& entry : corpus) {
        const auto result = synthesize(entry.problem);
        if (result.realizable() != entry.realizable) {
            out.fail(entry.name + ": wrong verdict");
            continue;
        }
        if (!result.realizable()) {
            // Every reachable Environment move withholds all inputs for the single-input G r spec.
            if (entry.name == "input_always")
                for (const auto& move : result.unrealizable().counterstrategy)
                    if (move.input != 0)
                        out.fail("input_always: counterstrategy sets r");
        } else {
            const auto spec = normalize_spec(entry.problem);
            if (verify_mealy(result.machine(), spec, build_product(spec)))
                out.fail(entry.name + ": machine fails verification");
        }
    }
    if (out.ok)
        out.detail = std::to_string(corpus.size()) + " specs";
    return out;
}

Outcome round_trips(const std::vector<CorpusEntry>& corpus)
{
    Outcome out;
    std::mt19937 rng(7);
    const ApTable aps({"a", "b"});
    const auto lassos = o::all_lassos(4, 1, 2);
    for (int round = 0; round < 300; ++round) {
        const auto aut = o::random_conjunct(rng, 2, 4);
        const auto back = parse_hoa(emit_hoa(aut, aps, "x"));
        if (back.automaton.table() != aut.table() || back.aps != aps)
            out.fail("HOA round trip changes the transition table");
        for (const auto& l : lassos)
            if (eval_lasso(back.automaton, l) != o::accepted(aut, l)) {
                out.fail("HOA round trip changes the language");
                break;
            }
    }
    for (const auto& entry : fs::directory_iterator(kCorpus)) {
        if (entry.path().extension() != ".hoa")
            continue;
        std::ifstream in(entry.path());
        const std::string text((std::istreambuf_iterator<char>(in)), {});
        const auto first = parse_hoa(text);
        const auto emitted = emit_hoa(first.automaton, first.aps, first.name);
        const auto second = parse_hoa(emitted);
        if (second.automaton.table() != first.automaton.table() || second.aps != first.aps ||
            second.automaton.initial() != first.automaton.initial() ||
            emit_hoa(second.automaton, second.aps, second.name) != emitted)
            out.fail(entry.path().filename().string() + ": HOA round trip differs");
    }
    for (const auto& entry : corpus) {
        const auto pa = build_product(normalize_spec(entry.problem));
        const auto aut = pa.to_automaton();
        const auto back = parse_hoa(emit_hoa(aut, normalize_spec(entry.problem).aps()));
        if (back.automaton.table() != aut.table())
            out.fail(entry.name + ": product HOA round trip differs");
        const auto result = synthesize(entry.problem);
        if (result.realizable()) {
            const auto text = emit_machine_json(result.machine());
            if (!(parse_machine_json(text) == result.machine()) || emit_machine_json(parse_machine_json(text)) != text)
                out.fail(entry.name + ": machine JSON round trip differs");
        }
    }
    for (int round = 0; round < 300; ++round) {
        const unsigned n = 1 + rng() % 5;
        std::vector<MealyMachine::Step> steps(n * 4);
        for (auto& s : steps)
            s = {static_cast<unsigned>(rng() % n), static_cast<Letter>(rng() % 2)};
        const MealyMachine m(ApTable({"x", "z"}), ApTable({"y"}), static_cast<unsigned>(rng() % n), steps);
        if (!(parse_machine_json(emit_machine_json(m)) == m))
            out.fail("random machine JSON round trip differs");
    }
    return out;
}

}  // namespace

int main()
{
    std::vector<CorpusEntry> corpus;
    try {
        corpus = load_corpus();
    } catch (const std::exception& e) {
        std::cout << "FAIL corpus could not be loaded: " << e.what() << "\n";
        return 1;
    }

    struct Criterion {
        const char* name;
        double budget_seconds;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria = {
        {"1 colours lie in 0..4", 10, [&] { return colour_range(corpus); }},
        {"2 Buchi-only specs use colours 0..2", 5, buchi_only_colours},
        {"3 reachable states within the raw bound; GF r -> GF g bound is 32", 5, [&] { return state_bound(corpus); }},
        {"4 product agrees with the lasso semantics", 120, [&] { return differential(corpus); }},
        {"5 Zielonka agrees with progress measures and certifies", 60, solvers},
        {"6 corpus verdicts and machine verification", 10, [&] { return corpus_verdicts(corpus); }},
        {"7 HOA and machine JSON round trips", 5, [&] { return round_trips(corpus); }},
    };

    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome.fail(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.budget_seconds)
            outcome.fail("took longer than " + std::to_string(static_cast<int>(c.budget_seconds)) + " s");
        all = all && outcome.ok;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (outcome.ok ? "PASS " : "FAIL ") << c.name << " (" << seconds << " s)";
        if (!outcome.detail.empty())
            line << ": " << outcome.detail;
        std::cout << line.str() << "\n";
    }
    return all ? 0 : 1;
}
