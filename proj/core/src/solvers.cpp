#include "grabin/solvers.hpp"

#include <algorithm>
#include <deque>

#include "cycles.hpp"

namespace grabin {

namespace {

// Vertex ownership in Zielonka's terms: player 0 wins on even colours (System),
// player 1 on odd colours (Environment).
int parity_player(const SynthesisGame& g, unsigned v) { return g.is_env(v) ? 1 : 0; }

class Zielonka {
public:
    explicit Zielonka(const SynthesisGame& game) : g_(game), n_(game.num_vertices()), strategy_(n_, kNoState)
    {
        std::vector<unsigned> count(n_ + 1, 0);
        for (unsigned v = 0; v < n_; ++v)
            for (Letter l = 0; l < g_.num_moves(v); ++l)
                ++count[g_.successor(v, l) + 1];
        for (unsigned v = 0; v < n_; ++v)
            count[v + 1] += count[v];
        pred_offset_ = count;
        preds_.resize(count[n_]);
        for (unsigned v = 0; v < n_; ++v)
            for (Letter l = 0; l < g_.num_moves(v); ++l)
                preds_[count[g_.successor(v, l)]++] = v;
    }

    Solution run()
    {
        std::vector<char> all(n_, 1);
        std::vector<char> winner(n_, 0);  // 0: System, 1: Environment
        solve(all, winner);
        Solution sol;
        sol.system_wins.resize(n_);
        sol.system_choice.assign(g_.num_system_vertices(), kNoState);
        sol.env_choice.assign(g_.num_env_vertices(), kNoState);
        for (unsigned v = 0; v < n_; ++v) {
            sol.system_wins[v] = winner[v] == 0 ? 1 : 0;
            if (g_.is_env(v) && winner[v] == 1)
                sol.env_choice[v] = strategy_[v];
            else if (!g_.is_env(v) && winner[v] == 0)
                sol.system_choice[v - g_.num_env_vertices()] = strategy_[v];
        }
        return sol;
    }

private:
    // Smallest letter at `v` whose successor lies in `target`.
    std::uint32_t first_move_into(unsigned v, const std::vector<char>& target) const
    {
        for (Letter l = 0; l < g_.num_moves(v); ++l)
            if (target[g_.successor(v, l)])
                return l;
        return kNoState;
    }

    // Attractor of `target` for `player` inside `sub`. Records the attracting move of
    // every player vertex added outside the target.
    std::vector<char> attractor(const std::vector<char>& sub, const std::vector<char>& target, int player)
    {
        std::vector<char> attr(n_, 0);
        std::vector<unsigned> remaining(n_, 0);
        std::deque<unsigned> queue;
        for (unsigned v = 0; v < n_; ++v) {
            if (!sub[v])
                continue;
            if (target[v]) {
                attr[v] = 1;
                queue.push_back(v);
            } else if (parity_player(g_, v) != player) {
                for (Letter l = 0; l < g_.num_moves(v); ++l)
                    remaining[v] += sub[g_.successor(v, l)] ? 1 : 0;
            }
        }
        while (!queue.empty()) {
            unsigned w = queue.front();
            queue.pop_front();
            for (unsigned i = pred_offset_[w]; i < pred_offset_[w + 1]; ++i) {
                unsigned v = preds_[i];
                if (!sub[v] || attr[v])
                    continue;
                if (parity_player(g_, v) == player) {
                    attr[v] = 1;
                    strategy_[v] = first_move_into(v, attr);
                    queue.push_back(v);
                } else if (--remaining[v] == 0) {
                    attr[v] = 1;
                    queue.push_back(v);
                }
            }
        }
        return attr;
    }

    void solve(const std::vector<char>& sub, std::vector<char>& winner)
    {
        unsigned top = 0;
        bool empty = true;
        for (unsigned v = 0; v < n_; ++v) {
            if (sub[v]) {
                empty = false;
                top = std::max(top, g_.colour(v));
            }
        }
        if (empty)
            return;
        const int p = static_cast<int>(top % 2);
        const int opp = 1 - p;

        std::vector<char> heads(n_, 0);
        for (unsigned v = 0; v < n_; ++v)
            heads[v] = sub[v] && g_.colour(v) == top;
        std::vector<char> attr = attractor(sub, heads, p);

        std::vector<char> rest(n_, 0);
        for (unsigned v = 0; v < n_; ++v)
            rest[v] = sub[v] && !attr[v];
        solve(rest, winner);

        std::vector<char> opp_region(n_, 0);
        bool opp_wins_somewhere = false;
        for (unsigned v = 0; v < n_; ++v) {
            if (rest[v] && winner[v] == opp) {
                opp_region[v] = 1;
                opp_wins_somewhere = true;
            }
        }

        if (!opp_wins_somewhere) {
            for (unsigned v = 0; v < n_; ++v) {
                if (!sub[v])
                    continue;
                winner[v] = static_cast<char>(p);
                if (heads[v] && parity_player(g_, v) == p)
                    strategy_[v] = first_move_into(v, sub);
            }
            return;
        }

        std::vector<char> lost = attractor(sub, opp_region, opp);
        std::vector<char> remainder(n_, 0);
        for (unsigned v = 0; v < n_; ++v) {
            remainder[v] = sub[v] && !lost[v];
            if (lost[v])
                winner[v] = static_cast<char>(opp);
        }
        solve(remainder, winner);
    }

    const SynthesisGame& g_;
    unsigned n_;
    std::vector<std::uint32_t> strategy_;
    std::vector<unsigned> pred_offset_;
    std::vector<unsigned> preds_;
};

// Progress measure tuples have one component per odd colour 1, 3, ...; higher colours
// are more significant. The game is solved one strongly connected component at a time,
// successors first. Edges leaving the component lead to vertices whose winner is known,
// which act as sinks: measure 0 when the System wins there, top otherwise. Component j
// (colour 2j+1) is then bounded by the number of vertices of that colour inside the
// component, since every cycle stays within one.
class ProgressMeasures {
public:
    explicit ProgressMeasures(const SynthesisGame& game) : g_(game), n_(game.num_vertices())
    {
        unsigned top = 0;
        for (unsigned v = 0; v < n_; ++v)
            top = std::max(top, g_.colour(v));
        k_ = (top + 1) / 2;
        bound_.assign(k_, 0);
        rho_.assign(std::size_t{n_} * k_, 0);
        top_.assign(n_, 0);
        detail::Adjacency adj(n_);
        preds_.resize(n_);
        for (unsigned v = 0; v < n_; ++v)
            for (Letter l = 0; l < g_.num_moves(v); ++l) {
                adj[v].push_back(g_.successor(v, l));
                preds_[g_.successor(v, l)].push_back(v);
            }
        comp_ = detail::scc_ids(adj, std::vector<char>(n_, 1));
    }

    std::vector<char> run()
    {
        // Tarjan numbers components in completion order, so successors come first.
        int num_comps = 0;
        for (int c : comp_)
            num_comps = std::max(num_comps, c + 1);
        std::vector<std::vector<unsigned>> members(static_cast<std::size_t>(num_comps));
        for (unsigned v = 0; v < n_; ++v)
            members[static_cast<std::size_t>(comp_[v])].push_back(v);

        std::vector<char> queued(n_, 0);
        std::vector<unsigned> candidate(k_), best(k_);
        for (int c = 0; c < num_comps; ++c) {
            const auto& vs = members[static_cast<std::size_t>(c)];
            current_ = c;
            std::fill(bound_.begin(), bound_.end(), 0);
            for (unsigned v : vs)
                if (g_.colour(v) % 2 == 1)
                    ++bound_[g_.colour(v) / 2];
            std::deque<unsigned> queue(vs.begin(), vs.end());
            for (unsigned v : vs)
                queued[v] = 1;
            while (!queue.empty()) {
                unsigned v = queue.front();
                queue.pop_front();
                queued[v] = 0;
                if (top_[v])
                    continue;
                // System (even) minimises, Environment (odd) maximises.
                const bool minimise = !g_.is_env(v);
                bool best_top = false;
                bool have = false;
                for (Letter l = 0; l < g_.num_moves(v); ++l) {
                    bool cand_top = prog(v, g_.successor(v, l), candidate);
                    if (!have || better(cand_top, candidate, best_top, best, minimise)) {
                        best_top = cand_top;
                        best = candidate;
                        have = true;
                    }
                }
                if (!greater(best_top, best, false, measure(v)))
                    continue;
                top_[v] = best_top ? 1 : 0;
                std::copy(best.begin(), best.end(), rho_.begin() + std::size_t{v} * k_);
                for (unsigned u : preds_[v]) {
                    if (comp_[u] == c && !queued[u] && !top_[u]) {
                        queued[u] = 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        std::vector<char> wins(n_);
        for (unsigned v = 0; v < n_; ++v)
            wins[v] = top_[v] ? 0 : 1;
        return wins;
    }

private:
    std::vector<unsigned> measure(unsigned v) const
    {
        return {rho_.begin() + std::size_t{v} * k_, rho_.begin() + std::size_t{v + 1} * k_};
    }

    // Least measure m with m >=_c rho(w) (even c) or m >_c rho(w) (odd c). Returns true for top.
    bool prog(unsigned v, unsigned w, std::vector<unsigned>& out) const
    {
        if (top_[w])
            return true;
        const bool exit = comp_[w] != current_;
        const unsigned c = g_.colour(v);
        for (unsigned j = 0; j < k_; ++j)
            out[j] = (!exit && 2 * j + 1 >= c) ? rho_[std::size_t{w} * k_ + j] : 0;
        if (c % 2 == 0)
            return false;
        for (unsigned j = c / 2; j < k_; ++j) {
            if (out[j] < bound_[j]) {
                ++out[j];
                return false;
            }
            out[j] = 0;
        }
        return true;
    }

    static bool greater(bool a_top, const std::vector<unsigned>& a, bool b_top, const std::vector<unsigned>& b)
    {
        if (a_top || b_top)
            return a_top && !b_top;
        for (std::size_t j = a.size(); j-- > 0;)
            if (a[j] != b[j])
                return a[j] > b[j];
        return false;
    }

    static bool better(bool a_top, const std::vector<unsigned>& a, bool b_top, const std::vector<unsigned>& b,
                       bool minimise)
    {
        return minimise ? greater(b_top, b, a_top, a) : greater(a_top, a, b_top, b);
    }

    const SynthesisGame& g_;
    unsigned n_;
    unsigned k_ = 0;
    std::vector<unsigned> bound_;
    std::vector<unsigned> rho_;
    std::vector<char> top_;
    std::vector<std::vector<unsigned>> preds_;
    std::vector<int> comp_;
    int current_ = 0;
};

}  // namespace

Solution solve_zielonka(const SynthesisGame& game) { return Zielonka(game).run(); }

std::vector<char> solve_progress_measures(const SynthesisGame& game) { return ProgressMeasures(game).run(); }

CertificationResult certify_strategy(const SynthesisGame& game, const Solution& solution)
{
    const unsigned n = game.num_vertices();
    const unsigned n0 = game.num_env_vertices();
    if (solution.system_wins.size() != n || solution.system_choice.size() != game.num_system_vertices() ||
        solution.env_choice.size() != n0)
        throw ShapeError("solution does not match the game's vertex counts");

    std::vector<unsigned> colour(n);
    for (unsigned v = 0; v < n; ++v)
        colour[v] = game.colour(v);

    // Each player's strategy must be defined exactly on its winning vertices and stay inside.
    auto choice_of = [&](unsigned v) {
        return game.is_env(v) ? solution.env_choice[v] : solution.system_choice[v - n0];
    };
    for (unsigned v = 0; v < n; ++v) {
        const bool owner_wins = game.is_env(v) ? !solution.system_wins_at(v) : solution.system_wins_at(v);
        const std::uint32_t choice = choice_of(v);
        if (!owner_wins) {
            if (choice != kNoState)
                throw ShapeError("strategy defined on vertex " + std::to_string(v) + " outside its owner's region");
            continue;
        }
        if (choice == kNoState || choice >= game.num_moves(v))
            throw ShapeError("strategy undefined on winning vertex " + std::to_string(v));
        if (solution.system_wins_at(game.successor(v, choice)) != solution.system_wins_at(v))
            throw ShapeError("strategy at vertex " + std::to_string(v) + " leaves its winning region");
    }

    for (int side = 0; side < 2; ++side) {
        const bool system_side = side == 0;
        std::vector<char> region(n, 0);
        for (unsigned v = 0; v < n; ++v)
            region[v] = solution.system_wins_at(v) == system_side ? 1 : 0;
        detail::Adjacency adj(n);
        for (unsigned v = 0; v < n; ++v) {
            if (!region[v])
                continue;
            const bool fixed = game.is_env(v) != system_side;
            if (fixed) {
                adj[v].push_back(game.successor(v, choice_of(v)));
                continue;
            }
            for (Letter l = 0; l < game.num_moves(v); ++l) {
                unsigned w = game.successor(v, l);
                if (!region[w]) {
                    CertificationResult bad;
                    bad.ok = false;
                    bad.message = std::string(system_side ? "Environment" : "System") + " can leave the " +
                                  (system_side ? "System" : "Environment") + " region at vertex " + std::to_string(v);
                    bad.cycle = {v, w};
                    return bad;
                }
                adj[v].push_back(w);
            }
        }
        // The opponent wins on cycles whose maximal colour has the opponent's parity.
        if (auto cycle = detail::find_parity_cycle(adj, colour, region, system_side ? 1u : 0u)) {
            CertificationResult bad;
            bad.ok = false;
            bad.message = std::string("losing cycle inside the ") + (system_side ? "System" : "Environment") + " region";
            bad.cycle = std::move(*cycle);
            return bad;
        }
    }
    return {};
}

}  // namespace grabin
