#include "cycles.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace grabin::detail {

std::vector<int> scc_ids(const Adjacency& adj, const std::vector<char>& active)
{
    // Iterative Tarjan.
    const std::size_t n = adj.size();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<unsigned> stack;
    std::vector<std::pair<unsigned, std::size_t>> call;
    int counter = 0;
    int comps = 0;
    for (unsigned root = 0; root < n; ++root) {
        if (!active[root] || index[root] != -1)
            continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [v, next] = call.back();
            if (next < adj[v].size()) {
                unsigned w = adj[v][next++];
                if (!active[w])
                    continue;
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const unsigned done = v;
            call.pop_back();
            if (!call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                unsigned w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = comps;
                } while (w != done);
                ++comps;
            }
        }
    }
    return comp;
}

std::optional<std::vector<unsigned>> shortest_path(const Adjacency& adj, const std::vector<char>& active,
                                                   unsigned from, unsigned to)
{
    const std::size_t n = adj.size();
    std::vector<unsigned> parent(n, static_cast<unsigned>(-1));
    std::vector<char> seen(n, 0);
    std::deque<unsigned> queue{from};
    seen[from] = 1;
    while (!queue.empty()) {
        unsigned v = queue.front();
        queue.pop_front();
        if (v == to) {
            std::vector<unsigned> path{to};
            while (path.back() != from)
                path.push_back(parent[path.back()]);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (unsigned w : adj[v]) {
            if (!active[w] || seen[w])
                continue;
            seen[w] = 1;
            parent[w] = v;
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

std::optional<std::vector<unsigned>> find_parity_cycle(const Adjacency& adj, const std::vector<unsigned>& colour,
                                                       const std::vector<char>& active, unsigned parity)
{
    const std::size_t n = adj.size();
    std::set<unsigned> candidates;
    for (std::size_t v = 0; v < n; ++v)
        if (active[v] && colour[v] % 2 == parity)
            candidates.insert(colour[v]);
    for (unsigned d : candidates) {
        std::vector<char> sub(n, 0);
        for (std::size_t v = 0; v < n; ++v)
            sub[v] = active[v] && colour[v] <= d;
        const auto comp = scc_ids(adj, sub);
        std::vector<unsigned> comp_size(n, 0);
        for (std::size_t v = 0; v < n; ++v)
            if (sub[v])
                ++comp_size[comp[v]];
        for (unsigned u = 0; u < n; ++u) {
            if (!sub[u] || colour[u] != d)
                continue;
            const bool self_loop = std::find(adj[u].begin(), adj[u].end(), u) != adj[u].end();
            if (comp_size[comp[u]] < 2 && !self_loop)
                continue;
            std::vector<char> same(n, 0);
            for (std::size_t v = 0; v < n; ++v)
                same[v] = sub[v] && comp[v] == comp[u];
            // Cycle u -> w ... -> u through a successor inside the component.
            for (unsigned w : adj[u]) {
                if (!same[w])
                    continue;
                if (w == u)
                    return std::vector<unsigned>{u};
                if (auto path = shortest_path(adj, same, w, u)) {
                    std::vector<unsigned> cycle{u};
                    cycle.insert(cycle.end(), path->begin(), path->end() - 1);
                    return cycle;
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace grabin::detail
