#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grabin/product.hpp"

namespace grabin {

enum class Player { Environment, System };

/// Bipartite labelled parity game derived from a parity automaton.
///
/// Environment vertices (one per automaton state) choose an input letter and lead to
/// the System vertex (state, input). System vertices choose an output letter and step
/// the automaton on input | output << num_inputs. Environment vertices carry the
/// automaton colour, System vertices colour 0. The System wins a play iff the largest
/// colour seen infinitely often is even.
///
/// Vertex ids: Environment vertex q is `q`; System vertex (q, x) is
/// `num_env_vertices() + q * num_input_letters() + x`.
class SynthesisGame {
public:
    SynthesisGame(unsigned num_input_bits, unsigned num_output_bits, std::vector<unsigned> env_colours,
                  std::vector<std::uint32_t> system_moves);

    unsigned num_input_bits() const { return input_bits_; }
    unsigned num_output_bits() const { return output_bits_; }
    std::uint32_t num_input_letters() const { return std::uint32_t{1} << input_bits_; }
    std::uint32_t num_output_letters() const { return std::uint32_t{1} << output_bits_; }

    unsigned num_env_vertices() const { return static_cast<unsigned>(env_colours_.size()); }
    unsigned num_system_vertices() const { return num_env_vertices() * num_input_letters(); }
    unsigned num_vertices() const { return num_env_vertices() + num_system_vertices(); }
    unsigned initial() const { return 0; }

    bool is_env(unsigned v) const { return v < num_env_vertices(); }
    Player owner(unsigned v) const { return is_env(v) ? Player::Environment : Player::System; }
    unsigned colour(unsigned v) const { return is_env(v) ? env_colours_[v] : 0; }
    unsigned num_moves(unsigned v) const { return is_env(v) ? num_input_letters() : num_output_letters(); }

    /// Successor of `v` when its owner picks `letter` (input letter at Environment
    /// vertices, output letter at System vertices).
    unsigned successor(unsigned v, Letter letter) const;

    /// Environment vertex and input letter of a System vertex.
    unsigned env_vertex_of(unsigned v) const { return (v - num_env_vertices()) / num_input_letters(); }
    Letter input_of(unsigned v) const { return (v - num_env_vertices()) % num_input_letters(); }

    const std::vector<unsigned>& env_colours() const { return env_colours_; }
    const std::vector<std::uint32_t>& system_moves() const { return system_moves_; }

private:
    unsigned input_bits_;
    unsigned output_bits_;
    std::vector<unsigned> env_colours_;
    std::vector<std::uint32_t> system_moves_;  // [(q * inputs + x) * outputs + y] -> q'
};

SynthesisGame build_game(const ParityAutomaton& pa, unsigned num_inputs, unsigned num_outputs);

/// Debug dump: vertices with owner and colour plus labelled edges. Not a stable format.
std::string dump_game_json(const SynthesisGame& game);

}  // namespace grabin
