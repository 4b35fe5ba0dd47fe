#include "grabin/synthesis.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "cycles.hpp"

namespace grabin {

MealyMachine extract_mealy(const SynthesisGame& game, const Solution& solution, const ApTable& inputs,
                           const ApTable& outputs)
{
    if (inputs.size() != game.num_input_bits() || outputs.size() != game.num_output_bits())
        throw IncompatibleAlphabets("machine propositions do not match the game");
    if (!solution.system_wins_at(game.initial()))
        throw NotRealizable("the Environment wins from the initial vertex");

    const unsigned n0 = game.num_env_vertices();
    const std::uint32_t in_letters = game.num_input_letters();
    std::vector<unsigned> id(n0, kNoState);
    std::vector<unsigned> order{game.initial()};
    id[game.initial()] = 0;
    std::vector<MealyMachine::Step> steps;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const unsigned q = order[i];
        for (Letter x = 0; x < in_letters; ++x) {
            const unsigned v1 = game.successor(q, x);
            const std::uint32_t y = solution.system_choice[v1 - n0];
            if (y == kNoState)
                throw CertificationFailure("System strategy undefined at a winning vertex");
            const unsigned next = game.successor(v1, y);
            if (!solution.system_wins_at(next))
                throw CertificationFailure("System strategy leaves the winning region");
            if (id[next] == kNoState) {
                id[next] = static_cast<unsigned>(order.size());
                order.push_back(next);
            }
            steps.push_back({id[next], y});
        }
    }
    return MealyMachine(inputs, outputs, 0, std::move(steps));
}

std::string Violation::describe(const ApTable& aps) const
{
    std::ostringstream os;
    os << "stem:";
    for (Letter l : lasso.stem)
        os << ' ' << aps.format_letter(l);
    os << "\nloop:";
    for (Letter l : lasso.loop)
        os << ' ' << aps.format_letter(l);
    return os.str();
}

std::optional<Violation> verify_mealy(const MealyMachine& machine, const ParityAutomaton& pa)
{
    const unsigned in_bits = machine.inputs().size();
    if (in_bits + machine.outputs().size() != pa.num_aps())
        throw IncompatibleAlphabets("machine has " + std::to_string(in_bits + machine.outputs().size()) +
                                    " propositions, the automaton " + std::to_string(pa.num_aps()));
    const std::uint32_t in_letters = machine.inputs().num_letters();

    // Product graph over (machine state, automaton state); one edge per input letter.
    std::unordered_map<std::uint64_t, unsigned> index;
    std::vector<std::pair<unsigned, unsigned>> nodes;
    detail::Adjacency adj;
    std::vector<std::vector<Letter>> edge_letters;
    std::vector<unsigned> colour;
    auto intern = [&](unsigned m, unsigned q) {
        const std::uint64_t key = std::uint64_t{m} * pa.num_states() + q;
        auto [it, inserted] = index.emplace(key, static_cast<unsigned>(nodes.size()));
        if (inserted) {
            nodes.emplace_back(m, q);
            adj.emplace_back();
            edge_letters.emplace_back();
            colour.push_back(pa.colour(q));
        }
        return it->second;
    };
    intern(machine.initial(), pa.initial());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto [m, q] = nodes[i];
        for (Letter x = 0; x < in_letters; ++x) {
            const auto& step = machine.step(m, x);
            const Letter letter = x | (step.output << in_bits);
            const unsigned target = intern(step.target, pa.step(q, letter));
            adj[i].push_back(target);
            edge_letters[i].push_back(letter);
        }
    }

    const std::vector<char> active(nodes.size(), 1);
    const auto cycle = detail::find_parity_cycle(adj, colour, active, 1);
    if (!cycle)
        return std::nullopt;

    auto letter_between = [&](unsigned from, unsigned to) {
        const auto it = std::find(adj[from].begin(), adj[from].end(), to);
        return edge_letters[from][static_cast<std::size_t>(it - adj[from].begin())];
    };
    Violation violation;
    const auto stem = detail::shortest_path(adj, active, 0, cycle->front());
    for (std::size_t i = 0; i + 1 < stem->size(); ++i)
        violation.lasso.stem.push_back(letter_between((*stem)[i], (*stem)[i + 1]));
    for (std::size_t i = 0; i < cycle->size(); ++i)
        violation.lasso.loop.push_back(letter_between((*cycle)[i], (*cycle)[(i + 1) % cycle->size()]));
    return violation;
}

std::optional<Violation> verify_mealy(const MealyMachine& machine, const NormalizedSpec& spec,
                                      const ParityAutomaton& pa)
{
    if (machine.inputs().names() != spec.inputs() || machine.outputs().names() != spec.outputs())
        throw IncompatibleAlphabets("machine propositions differ from the specification's inputs and outputs");
    return verify_mealy(machine, pa);
}

bool lasso_oracle(const NormalizedSpec& spec, const Lasso& lasso)
{
    for (const auto* family : {&spec.buchi_assumptions(), &spec.cobuchi_assumptions()})
        for (const auto& a : *family)
            if (!eval_lasso(a, lasso))
                return true;
    for (const auto* family : {&spec.buchi_guarantees(), &spec.cobuchi_guarantees()})
        for (const auto& g : *family)
            if (!eval_lasso(g, lasso))
                return false;
    return true;
}

DifferentialReport differential_test(const NormalizedSpec& spec, unsigned max_stem, unsigned max_loop,
                                     unsigned max_aps)
{
    if (spec.aps().size() > max_aps)
        throw Error("differential test limited to " + std::to_string(max_aps) + " propositions, spec has " +
                    std::to_string(spec.aps().size()));
    const auto pa = build_product(spec);
    DifferentialReport report;
    for_each_lasso(pa.num_letters(), max_stem, max_loop, [&](const Lasso& lasso) {
        ++report.checked;
        if (pa.accepts(lasso) != lasso_oracle(spec, lasso)) {
            if (report.mismatches++ == 0)
                report.first_mismatch = lasso;
        }
    });
    return report;
}

namespace {

std::vector<Unrealizable::Move> counterstrategy_slice(const SynthesisGame& game, const Solution& solution)
{
    std::vector<char> seen(game.num_env_vertices(), 0);
    std::deque<unsigned> queue{game.initial()};
    seen[game.initial()] = 1;
    std::vector<Unrealizable::Move> moves;
    while (!queue.empty()) {
        const unsigned q = queue.front();
        queue.pop_front();
        const std::uint32_t x = solution.env_choice[q];
        if (x == kNoState)
            throw CertificationFailure("Environment strategy undefined at a winning vertex");
        moves.push_back({q, game.colour(q), x});
        const unsigned v1 = game.successor(q, x);
        for (Letter y = 0; y < game.num_output_letters(); ++y) {
            const unsigned next = game.successor(v1, y);
            if (solution.system_wins_at(next))
                throw CertificationFailure("Environment strategy leaves its winning region");
            if (!seen[next]) {
                seen[next] = 1;
                queue.push_back(next);
            }
        }
    }
    std::sort(moves.begin(), moves.end(), [](const auto& a, const auto& b) { return a.vertex < b.vertex; });
    return moves;
}

}  // namespace

SynthesisOutcome synthesize(const NormalizedSpec& spec, const SynthesisOptions& options)
{
    const auto pa = build_product(spec, options.product);
    const auto game = build_game(pa, spec.num_inputs(), spec.num_outputs());

    const auto start = std::chrono::steady_clock::now();
    const auto solution = solve_zielonka(game);
    const auto stop = std::chrono::steady_clock::now();

    if (options.cross_check) {
        if (solve_progress_measures(game) != solution.system_wins)
            throw CertificationFailure("Zielonka and progress measures disagree on the winning regions");
        if (auto cert = certify_strategy(game, solution); !cert)
            throw CertificationFailure("strategy certification failed: " + cert.message);
    }

    SynthesisStats stats;
    stats.product_states = pa.num_states();
    stats.raw_bound = pa.raw_bound();
    stats.game_vertices = game.num_vertices();
    for (unsigned q = 0; q < game.num_env_vertices(); ++q)
        stats.system_region_env_vertices += solution.system_wins_at(q) ? 1 : 0;
    const std::set<unsigned> used(pa.colours().begin(), pa.colours().end());
    stats.colours_used.assign(used.begin(), used.end());
    stats.solve_seconds = std::chrono::duration<double>(stop - start).count();

    if (!solution.system_wins_at(game.initial()))
        return {Unrealizable{counterstrategy_slice(game, solution)}, std::move(stats)};

    const ApTable inputs(spec.inputs());
    const ApTable outputs(spec.outputs());
    const bool no_guarantees = spec.buchi_guarantees().empty() && spec.cobuchi_guarantees().empty();
    MealyMachine machine =
        no_guarantees ? MealyMachine(inputs, outputs, 0, std::vector<MealyMachine::Step>(inputs.num_letters()))
                      : extract_mealy(game, solution, inputs, outputs);
    if (auto violation = verify_mealy(machine, pa))
        throw CertificationFailure("extracted machine violates the specification\n" +
                                   violation->describe(spec.aps()));
    return {Realizable{std::move(machine)}, std::move(stats)};
}

SynthesisOutcome synthesize(const SpecProblem& spec, const SynthesisOptions& options)
{
    return synthesize(normalize_spec(spec), options);
}

std::string emit_counterstrategy_json(const Unrealizable& outcome, const ApTable& inputs)
{
    nlohmann::ordered_json doc;
    doc["inputs"] = inputs.names();
    nlohmann::ordered_json moves = nlohmann::ordered_json::array();
    for (const auto& move : outcome.counterstrategy) {
        auto names = inputs.letter_names(move.input);
        std::sort(names.begin(), names.end());
        nlohmann::ordered_json m;
        m["vertex"] = move.vertex;
        m["colour"] = move.colour;
        m["input"] = names;
        moves.push_back(std::move(m));
    }
    doc["moves"] = std::move(moves);
    return doc.dump(2) + "\n";
}

}  // namespace grabin
