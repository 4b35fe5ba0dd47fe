#include <doctest.h>

#include <random>

#include "grabin/hoa.hpp"
#include "support/oracles.hpp"

using namespace grabin;

namespace {

// Two-state GF-p tracker: state 1 is entered on letters with p, state 0 otherwise.
Automaton gf_tracker(Acceptance acceptance)
{
    return Automaton::from_table(1, 0, {0, 1, 0, 1}, std::move(acceptance));
}

constexpr Letter kEmpty = 0;
constexpr Letter kP = 1;

}  // namespace

TEST_SUITE("ap-table") {
    TEST_CASE("letters follow the table order") {
        ApTable aps({"p", "q", "r"});
        CHECK(aps.num_letters() == 8);
        CHECK(aps.letter_from_names({"r", "p"}) == 0b101);
        CHECK(aps.format_letter(0b110) == "{q,r}");
        CHECK(aps.letter_names(0) == std::vector<std::string>{});
        CHECK(aps.index_of("q") == 1);
        CHECK_FALSE(aps.find("s").has_value());
    }

    TEST_CASE("names are validated") {
        CHECK_THROWS_AS(ApTable({"p", "p"}), Error);
        CHECK_THROWS_AS(ApTable({"1p"}), Error);
        CHECK_THROWS_AS(ApTable({""}), Error);
        CHECK_THROWS_AS(ApTable({"a-b"}), Error);
        std::vector<std::string> many;
        for (unsigned i = 0; i <= kMaxAps; ++i)
            many.push_back("p" + std::to_string(i));
        CHECK_THROWS_AS(ApTable{many}, Error);
        CHECK_NOTHROW(ApTable({"_x", "Y2"}));
        CHECK_THROWS_AS(ApTable({"p"}).letter_from_names({"q"}), Error);
    }
}

TEST_SUITE("validate") {
    TEST_CASE("single true self-loop is valid") {
        Automaton a(2, 0, {{Edge{BoolExpr::constant(true), 0}}}, acc::Buchi{{0}});
        CHECK(validate(a).empty());
    }

    TEST_CASE("overlapping guards are nondeterministic at {p,q}") {
        const auto p = BoolExpr::var(0);
        const auto q = BoolExpr::var(1);
        Automaton a(2, 0, {{Edge{p, 0}, Edge{BoolExpr::disj(p, q), 0}}}, acc::Buchi{{0}});
        const auto issues = validate(a);
        REQUIRE_FALSE(issues.empty());
        bool found = false;
        for (const auto& i : issues)
            if (i.kind == ValidationIssue::Kind::NondeterministicEdge && i.state == 0 && i.letter == 0b11)
                found = true;
        CHECK(found);
        CHECK_THROWS_AS(ensure_valid(a), ValidationError);
    }

    TEST_CASE("uncovered letter is a missing edge at (1, {})") {
        const auto p = BoolExpr::var(0);
        Automaton a(1, 0, {{Edge{BoolExpr::constant(true), 1}}, {Edge{p, 0}}}, acc::Buchi{{0}});
        const auto issues = validate(a);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].kind == ValidationIssue::Kind::MissingEdge);
        CHECK(issues[0].state == 1);
        CHECK(issues[0].letter == 0);
    }

    TEST_CASE("range errors") {
        const auto t = BoolExpr::constant(true);
        CHECK_FALSE(validate(Automaton(1, 0, {{Edge{t, 3}}}, acc::Buchi{{0}})).empty());
        CHECK_FALSE(validate(Automaton(1, 0, {{Edge{t, 0}}}, acc::Buchi{{4}})).empty());
        CHECK_FALSE(validate(Automaton(1, 0, {{Edge{BoolExpr::var(2), 0}, Edge{BoolExpr::negate(BoolExpr::var(2)), 0}}},
                                       acc::Buchi{{0}}))
                         .empty());
        // Safety failure states must be absorbing.
        CHECK_FALSE(validate(Automaton(1, 0, {{Edge{t, 1}}, {Edge{t, 0}}}, acc::Safety{{1}})).empty());
        // One colour per state.
        CHECK_FALSE(validate(Automaton(1, 0, {{Edge{t, 0}}}, acc::Parity{{0, 1}})).empty());
    }
}

TEST_SUITE("eval-lasso") {
    TEST_CASE("all-accepting Buchi accepts everything") {
        const auto a = gf_tracker(acc::Buchi{{0, 1}});
        for (const auto& l : oracle::all_lassos(2, 2, 3))
            CHECK(eval_lasso(a, l));
    }

    TEST_CASE("GF-p tracker") {
        const Lasso alternating{{}, {kP, kEmpty}};
        CHECK(eval_lasso(gf_tracker(acc::Buchi{{1}}), alternating));
        CHECK_FALSE(eval_lasso(gf_tracker(acc::CoBuchi{{0}}), alternating));
        CHECK(infinity_set(gf_tracker(acc::Buchi{{1}}), alternating) == StateSet{0, 1});
        CHECK_FALSE(eval_lasso(gf_tracker(acc::Buchi{{1}}), Lasso{{kP, kP}, {kEmpty}}));
    }

    TEST_CASE("Rabin with empty G rejects everything") {
        const auto a = gf_tracker(acc::OnePairRabin{{0, 1}, {}});
        for (const auto& l : oracle::all_lassos(2, 2, 3))
            CHECK_FALSE(eval_lasso(a, l));
    }

    TEST_CASE("safety accepts iff the failure sink is never entered") {
        // State 1 is the sink, entered on p.
        const auto a = Automaton::from_table(1, 0, {0, 1, 1, 1}, acc::Safety{{1}});
        CHECK(eval_lasso(a, Lasso{{}, {kEmpty}}));
        CHECK_FALSE(eval_lasso(a, Lasso{{kP}, {kEmpty}}));
        CHECK(eval_lasso(a.with_acceptance(acc::Safety{}), Lasso{{kP}, {kEmpty}}));
    }

    TEST_CASE("empty loop is rejected") {
        CHECK_THROWS_AS(eval_lasso(gf_tracker(acc::Buchi{{1}}), Lasso{{kP}, {}}), Error);
    }

    TEST_CASE("matches the brute-force oracle on random automata for every acceptance kind") {
        std::mt19937 rng(7);
        for (int round = 0; round < 60; ++round) {
            const unsigned n = 1 + rng() % 4;
            std::vector<Acceptance> kinds{
                acc::Buchi{oracle::random_subset(rng, n)},
                acc::CoBuchi{oracle::random_subset(rng, n)},
                acc::OnePairRabin{oracle::random_subset(rng, n), oracle::random_subset(rng, n)},
                acc::GeneralizedBuchi{{oracle::random_subset(rng, n), oracle::random_subset(rng, n)}},
                acc::Streett{{{oracle::random_subset(rng, n), oracle::random_subset(rng, n)}}},
                acc::Muller{{oracle::random_subset(rng, n), oracle::random_subset(rng, n), {0}}},
            };
            std::vector<unsigned> colours(n);
            for (auto& c : colours)
                c = rng() % 5;
            kinds.push_back(acc::Parity{colours});
            for (const auto& kind : kinds) {
                const auto a = oracle::random_automaton(rng, 1, n, kind);
                for (const auto& l : oracle::all_lassos(2, 2, 3))
                    REQUIRE(eval_lasso(a, l) == oracle::accepted(a, l));
            }
        }
    }

    TEST_CASE("rotation and unrolling invariance") {
        std::mt19937 rng(11);
        for (int round = 0; round < 40; ++round) {
            const unsigned n = 1 + rng() % 4;
            std::vector<unsigned> colours(n);
            for (auto& c : colours)
                c = rng() % 5;
            const auto a = oracle::random_automaton(rng, 2, n, acc::Parity{colours});
            for (const auto& l : oracle::all_lassos(4, 1, 3)) {
                const bool verdict = eval_lasso(a, l);
                CHECK(eval_lasso(a, Lasso{l.stem, [&] {
                                              auto twice = l.loop;
                                              twice.insert(twice.end(), l.loop.begin(), l.loop.end());
                                              return twice;
                                          }()}) == verdict);
                for (std::size_t split = 1; split < l.loop.size(); ++split) {
                    Lasso rotated;
                    rotated.stem = l.stem;
                    rotated.stem.insert(rotated.stem.end(), l.loop.begin(), l.loop.begin() + split);
                    rotated.loop.assign(l.loop.begin() + split, l.loop.end());
                    rotated.loop.insert(rotated.loop.end(), l.loop.begin(), l.loop.begin() + split);
                    CHECK(eval_lasso(a, rotated) == verdict);
                }
            }
        }
    }
}

TEST_SUITE("decompose-rabin") {
    TEST_CASE("F = Q, G = {1}") {
        const auto parts = decompose_rabin(gf_tracker(acc::OnePairRabin{{0, 1}, {1}}));
        CHECK(std::get<acc::CoBuchi>(parts.co_buchi.acceptance()).rejecting.empty());
        CHECK(std::get<acc::Buchi>(parts.buchi.acceptance()).accepting == StateSet{1});
        CHECK(parts.co_buchi.table() == parts.buchi.table());
        for (const auto& l : oracle::all_lassos(2, 2, 3))
            CHECK(eval_lasso(parts.co_buchi, l));
    }

    TEST_CASE("wrong kind") {
        CHECK_THROWS_AS(decompose_rabin(gf_tracker(acc::Buchi{{1}})), WrongAcceptanceKind);
    }

    TEST_CASE("200 random three-state Rabin automata") {
        std::mt19937 rng(2024);
        const auto lassos = oracle::all_lassos(2, 2, 3);
        for (int round = 0; round < 200; ++round) {
            const auto a = oracle::random_automaton(
                rng, 1, 3, acc::OnePairRabin{oracle::random_subset(rng, 3), oracle::random_subset(rng, 3)});
            const auto parts = decompose_rabin(a);
            for (const auto& l : lassos)
                REQUIRE(oracle::accepted(a, l) == (eval_lasso(parts.co_buchi, l) && eval_lasso(parts.buchi, l)));
        }
    }
}

TEST_SUITE("hoa") {
    const char* kMinimal = R"(HOA: v1
States: 1
Start: 0
AP: 1 "p"
acc-name: Buchi
Acceptance: 1 Inf(0)
--BODY--
State: 0 {0}
[t] 0
--END--
)";

    TEST_CASE("minimal Buchi document") {
        const auto h = parse_hoa(kMinimal);
        CHECK(h.automaton.num_states() == 1);
        CHECK(std::get<acc::Buchi>(h.automaton.acceptance()).accepting == StateSet{0});
        CHECK(h.aps.names() == std::vector<std::string>{"p"});
    }

    TEST_CASE("unsupported acceptance names and features") {
        std::string doc = kMinimal;
        auto replace = [](std::string text, const std::string& from, const std::string& to) {
            text.replace(text.find(from), from.size(), to);
            return text;
        };
        CHECK_THROWS_AS(parse_hoa(replace(doc, "acc-name: Buchi", "acc-name: Streett 1")), UnsupportedFeature);
        CHECK_THROWS_AS(parse_hoa(replace(doc, "Start: 0\n", "Start: 0\nAlias: @a 0\n")), UnsupportedFeature);
        CHECK_THROWS_AS(parse_hoa(replace(doc, "Start: 0", "Start: 0&1")), UnsupportedFeature);
        CHECK_THROWS_AS(parse_hoa(replace(doc, "Acceptance: 1 Inf(0)", "Acceptance: 1 Fin(0)")), SyntaxError);
        CHECK_THROWS_AS(parse_hoa(replace(doc, "HOA: v1", "HOA: v2")), UnsupportedFeature);
        CHECK_THROWS_AS(parse_hoa(replace(doc, "--END--", "")), SyntaxError);
        CHECK_THROWS_AS(parse_hoa(replace(doc, "[t] 0", "[0 &] 0")), SyntaxError);
    }

    TEST_CASE("syntax errors carry the line") {
        std::string doc = kMinimal;
        doc.replace(doc.find("[t] 0"), 5, "[t] x");
        try {
            parse_hoa(doc);
            FAIL("expected a syntax error");
        } catch (const SyntaxError& e) {
            CHECK(e.line() == 9);
        }
    }

    TEST_CASE("nondeterministic edges fail validation") {
        std::string doc = kMinimal;
        doc.replace(doc.find("[t] 0"), 5, "[t] 0\n[0] 0");
        CHECK_THROWS_AS(parse_hoa(doc), ValidationError);
    }

    TEST_CASE("round trip of every supported acceptance kind") {
        const ApTable aps({"p"});
        std::vector<Automaton> autos{
            gf_tracker(acc::Buchi{{1}}),
            gf_tracker(acc::CoBuchi{{0}}),
            gf_tracker(acc::OnePairRabin{{1}, {1}}),
            gf_tracker(acc::Parity{{1, 2}, 3}),
            Automaton::from_table(1, 0, {0, 1, 1, 1}, acc::Safety{{1}}),
            gf_tracker(acc::Safety{}),
        };
        for (const auto& a : autos) {
            const auto text = emit_hoa(a, aps, "x");
            const auto back = parse_hoa(text);
            CHECK(back.automaton.num_states() == a.num_states());
            CHECK(back.automaton.initial() == a.initial());
            CHECK(back.automaton.table() == a.table());
            CHECK(acceptance_name(back.automaton.acceptance()) == acceptance_name(a.acceptance()));
            CHECK(back.aps == aps);
            CHECK(back.name == "x");
            for (const auto& l : oracle::all_lassos(2, 2, 3))
                CHECK(eval_lasso(back.automaton, l) == eval_lasso(a, l));
            CHECK(emit_hoa(back.automaton, back.aps, "x") == text);
        }
    }

    TEST_CASE("safety header and guard grammar") {
        const auto text = emit_hoa(Automaton::from_table(2, 0, {0, 1, 0, 1, 1, 1, 1, 1}, acc::Safety{{1}}),
                                   ApTable({"p", "q"}));
        CHECK(text.find("acc-name: safety") != std::string::npos);
        std::size_t pos = 0;
        while ((pos = text.find('[', pos)) != std::string::npos) {
            const auto end = text.find(']', pos);
            for (char c : text.substr(pos + 1, end - pos - 1))
                CHECK(std::string("t!&|() 0123456789").find(c) != std::string::npos);
            pos = end;
        }
    }

    TEST_CASE("parity condition text") {
        CHECK(parity_max_even_condition(1) == "Inf(0)");
        CHECK(parity_max_even_condition(5) == "Inf(4) | (Fin(3) & (Inf(2) | (Fin(1) & Inf(0))))");
        CHECK_NOTHROW(parse_hoa("HOA: v1\nStates: 1\nStart: 0\nAP: 0\nacc-name: parity max even 2\nAcceptance: 2  Fin(1)&Inf(0)\n--BODY--\nState: 0 {0}\n[t] 0\n--END--\n"));
    }
}
