#include <doctest.h>

#include <random>

#include "grabin/solvers.hpp"
#include "support/specs.hpp"

using namespace grabin;
using testing_support::ltl_spec;

namespace {

std::vector<char> all(unsigned n, char value) { return std::vector<char>(n, value); }

// System attractor of `target` in `game`, computed by plain fixpoint iteration.
std::vector<char> system_attractor(const SynthesisGame& game, std::vector<char> attr)
{
    for (bool changed = true; changed;) {
        changed = false;
        for (unsigned v = 0; v < game.num_vertices(); ++v) {
            if (attr[v])
                continue;
            bool any = false, every = true;
            for (Letter l = 0; l < game.num_moves(v); ++l) {
                const bool in = attr[game.successor(v, l)];
                any = any || in;
                every = every && in;
            }
            if (game.is_env(v) ? every : any) {
                attr[v] = 1;
                changed = true;
            }
        }
    }
    return attr;
}

}  // namespace

TEST_SUITE("zielonka") {
    TEST_CASE("single even self-loop") {
        const SynthesisGame game(0, 0, {0}, {0});
        const auto s = solve_zielonka(game);
        CHECK(s.system_wins == all(2, 1));
        CHECK(s.system_choice == std::vector<std::uint32_t>{0});
        CHECK(s.env_choice == std::vector<std::uint32_t>{kNoState});
        CHECK(certify_strategy(game, s).ok);
        CHECK(solve_progress_measures(game) == s.system_wins);
    }

    TEST_CASE("single odd self-loop") {
        const SynthesisGame game(0, 0, {1}, {0});
        const auto s = solve_zielonka(game);
        CHECK(s.system_wins == all(2, 0));
        CHECK(s.env_choice == std::vector<std::uint32_t>{0});
        CHECK(s.system_choice == std::vector<std::uint32_t>{kNoState});
        CHECK(certify_strategy(game, s).ok);
        CHECK(solve_progress_measures(game) == s.system_wins);
    }

    TEST_CASE("guarantee G r with r an input: the Environment withholds r") {
        const auto spec = ltl_spec({"r"}, {"g"}, {}, {"G r"});
        const auto game = build_game(build_product(spec), 1, 1);
        const auto s = solve_zielonka(game);
        CHECK_FALSE(s.system_wins_at(game.initial()));
        CHECK(s.env_choice[game.initial()] == 0);
        CHECK(solve_progress_measures(game) == s.system_wins);
        CHECK(certify_strategy(game, s).ok);
    }

    TEST_CASE("smallest winning output is chosen") {
        // Two outputs from the only System vertex: 0 stays on colour 1, 1 moves to colour 2.
        const SynthesisGame game(0, 1, {1, 2}, {0, 1, 1, 1});
        const auto s = solve_zielonka(game);
        CHECK(s.system_wins_at(0));
        CHECK(s.system_choice[0] == 1);
        CHECK(s.system_choice[1] == 0);
    }

    TEST_CASE("agrees with progress measures and certifies on 1000 random games") {
        std::mt19937 rng(20240611);
        unsigned system_initial = 0;
        for (int round = 0; round < 1000; ++round) {
            const auto game = oracle::random_game(rng, 50, 2, 2, 4);
            const auto s = solve_zielonka(game);
            REQUIRE(s.system_wins.size() == game.num_vertices());
            REQUIRE(solve_progress_measures(game) == s.system_wins);
            const auto cert = certify_strategy(game, s);
            REQUIRE_MESSAGE(cert.ok, cert.message);
            system_initial += s.system_wins_at(0);
        }
        // The suite exercises both outcomes.
        CHECK(system_initial > 100);
        CHECK(system_initial < 900);
    }

    TEST_CASE("matches exhaustive positional strategy search on tiny games") {
        std::mt19937 rng(77);
        for (int round = 0; round < 300; ++round) {
            const auto game = oracle::random_game(rng, 4, 1, 1, 4);
            const auto expected = oracle::brute_force_system_region(game);
            REQUIRE(solve_zielonka(game).system_wins == expected);
            REQUIRE(solve_progress_measures(game) == expected);
        }
    }
}

TEST_SUITE("certify") {
    TEST_CASE("corrupted strategies are caught") {
        std::mt19937 rng(4242);
        int corrupted = 0;
        for (int round = 0; round < 5000 && corrupted < 50; ++round) {
            const auto game = oracle::random_game(rng, 12, 1, 2, 4);
            auto s = solve_zielonka(game);
            const unsigned n0 = game.num_env_vertices();
            for (unsigned v = n0; v < game.num_vertices(); ++v) {
                if (!s.system_wins_at(v))
                    continue;
                for (Letter y = 0; y < game.num_output_letters(); ++y) {
                    if (s.system_wins_at(game.successor(v, y)))
                        continue;
                    auto bad = s;
                    bad.system_choice[v - n0] = y;
                    bool caught = false;
                    try {
                        caught = !certify_strategy(game, bad).ok;
                    } catch (const ShapeError&) {
                        caught = true;
                    }
                    CHECK(caught);
                    ++corrupted;
                    break;
                }
            }
        }
        CHECK(corrupted >= 50);
    }

    TEST_CASE("claiming a losing region yields a counterexample cycle") {
        // One Environment vertex of colour 1 on a self-loop, wrongly labelled System-won.
        const SynthesisGame game(0, 0, {1}, {0});
        Solution s;
        s.system_wins = {1, 1};
        s.system_choice = {0};
        s.env_choice = {kNoState};
        const auto cert = certify_strategy(game, s);
        CHECK_FALSE(cert.ok);
        CHECK_FALSE(cert.cycle.empty());
    }

    TEST_CASE("undefined strategies inside a region are shape errors") {
        const SynthesisGame game(0, 0, {0}, {0});
        auto s = solve_zielonka(game);
        s.system_choice[0] = kNoState;
        CHECK_THROWS_AS(certify_strategy(game, s), ShapeError);
    }
}

TEST_SUITE("monotonicity") {
    TEST_CASE("a new System-winning sink only grows the System region") {
        std::mt19937 rng(1001);
        for (int round = 0; round < 200; ++round) {
            const auto game = oracle::random_game(rng, 20, 1, 1, 4);
            const auto before = solve_zielonka(game).system_wins;
            const unsigned n0 = game.num_env_vertices();
            const std::uint32_t ins = game.num_input_letters(), outs = game.num_output_letters();

            // Append sink s = n0 (colour 2, self-loops) and let System vertices of the
            // Environment region escape there on output 0.
            auto colours = game.env_colours();
            colours.push_back(2);
            std::vector<std::uint32_t> moves;
            for (unsigned q = 0; q < n0; ++q)
                for (Letter x = 0; x < ins; ++x)
                    for (Letter y = 0; y < outs; ++y) {
                        const unsigned v1 = game.successor(q, x);
                        const bool escape = !before[v1] && y == 0 && (rng() % 3 == 0);
                        moves.push_back(escape ? n0 : game.successor(v1, y));
                    }
            for (std::uint32_t i = 0; i < ins * outs; ++i)
                moves.push_back(n0);
            const SynthesisGame bigger(game.num_input_bits(), game.num_output_bits(), colours, moves);
            const auto after = solve_zielonka(bigger);
            REQUIRE(solve_progress_measures(bigger) == after.system_wins);

            std::vector<char> sink(bigger.num_vertices(), 0);
            sink[n0] = 1;
            const auto attr = system_attractor(bigger, sink);
            for (unsigned q = 0; q < n0; ++q) {
                if (before[q])
                    CHECK(after.system_wins_at(q));
                if (attr[q])
                    CHECK(after.system_wins_at(q));
            }
        }
    }
}
