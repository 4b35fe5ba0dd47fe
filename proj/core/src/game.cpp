#include "grabin/game.hpp"

#include <nlohmann/json.hpp>

namespace grabin {

SynthesisGame::SynthesisGame(unsigned num_input_bits, unsigned num_output_bits, std::vector<unsigned> env_colours,
                             std::vector<std::uint32_t> system_moves)
    : input_bits_(num_input_bits), output_bits_(num_output_bits), env_colours_(std::move(env_colours)),
      system_moves_(std::move(system_moves))
{
    if (input_bits_ + output_bits_ > kMaxAps)
        throw Error("game alphabet too large");
    if (env_colours_.empty())
        throw Error("game needs at least one Environment vertex");
    const std::size_t expected = std::size_t{num_env_vertices()} * num_input_letters() * num_output_letters();
    if (system_moves_.size() != expected)
        throw Error("System move table has the wrong size");
    for (auto target : system_moves_)
        if (target >= num_env_vertices())
            throw Error("System move leads outside the Environment vertices");
}

unsigned SynthesisGame::successor(unsigned v, Letter letter) const
{
    if (is_env(v))
        return num_env_vertices() + v * num_input_letters() + letter;
    const std::size_t sys = v - num_env_vertices();
    return system_moves_[sys * num_output_letters() + letter];
}

SynthesisGame build_game(const ParityAutomaton& pa, unsigned num_inputs, unsigned num_outputs)
{
    if (num_inputs + num_outputs != pa.num_aps())
        throw Error("input/output split does not cover the automaton alphabet");
    const std::uint32_t in_letters = std::uint32_t{1} << num_inputs;
    const std::uint32_t out_letters = std::uint32_t{1} << num_outputs;
    std::vector<std::uint32_t> moves;
    moves.reserve(std::size_t{pa.num_states()} * in_letters * out_letters);
    for (unsigned q = 0; q < pa.num_states(); ++q)
        for (Letter x = 0; x < in_letters; ++x)
            for (Letter y = 0; y < out_letters; ++y)
                moves.push_back(pa.step(q, x | (y << num_inputs)));
    return SynthesisGame(num_inputs, num_outputs, pa.colours(), std::move(moves));
}

std::string dump_game_json(const SynthesisGame& game)
{
    nlohmann::json vertices = nlohmann::json::array();
    for (unsigned v = 0; v < game.num_vertices(); ++v) {
        nlohmann::json edges = nlohmann::json::array();
        for (Letter l = 0; l < game.num_moves(v); ++l)
            edges.push_back({{"letter", l}, {"to", game.successor(v, l)}});
        vertices.push_back({{"id", v},
                            {"owner", game.is_env(v) ? "environment" : "system"},
                            {"colour", game.colour(v)},
                            {"edges", std::move(edges)}});
    }
    nlohmann::json doc = {{"input_bits", game.num_input_bits()},
                          {"output_bits", game.num_output_bits()},
                          {"initial", game.initial()},
                          {"vertices", std::move(vertices)}};
    return doc.dump(1);
}

}  // namespace grabin
