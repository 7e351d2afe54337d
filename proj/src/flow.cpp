#include "om/detail/flow.hpp"

#include "om/errors.hpp"

#include <algorithm>
#include <limits>

namespace om::detail {

namespace {

// Dinic's algorithm.  Node layout: 0 = source, 1..m = rows, m+1..m+n = cols,
// m+n+1 = sink.  Deterministic: adjacency lists are built in input order.
class Dinic {
public:
    explicit Dinic(std::size_t nodes) : adj_(nodes), level_(nodes), iter_(nodes) {}

    std::size_t add_edge(std::size_t from, std::size_t to, BigInt cap) {
        adj_[from].push_back({to, adj_[to].size(), std::move(cap)});
        adj_[to].push_back({from, adj_[from].size() - 1, BigInt(0)});
        return adj_[from].size() - 1;
    }

    BigInt max_flow(std::size_t s, std::size_t t) {
        BigInt total = 0;
        while (bfs(s, t)) {
            std::fill(iter_.begin(), iter_.end(), std::size_t{0});
            while (true) {
                const BigInt pushed = dfs(s, t, BigInt(-1));
                if (pushed == 0) break;
                total += pushed;
            }
        }
        return total;
    }

    BigInt residual(std::size_t from, std::size_t index) const {
        return adj_[from][index].cap;
    }

    // Nodes reachable from s in the final residual graph.
    std::vector<char> reachable(std::size_t s) const {
        std::vector<char> seen(adj_.size(), 0);
        std::vector<std::size_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (const Edge& e : adj_[u]) {
                if (e.cap > 0 && !seen[e.to]) {
                    seen[e.to] = 1;
                    stack.push_back(e.to);
                }
            }
        }
        return seen;
    }

private:
    struct Edge {
        std::size_t to;
        std::size_t rev;
        BigInt cap;
    };

    bool bfs(std::size_t s, std::size_t t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::vector<std::size_t> queue{s};
        level_[s] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t u = queue[head];
            for (const Edge& e : adj_[u]) {
                if (e.cap > 0 && level_[e.to] < 0) {
                    level_[e.to] = level_[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    // limit < 0 means unbounded.
    BigInt dfs(std::size_t u, std::size_t t, BigInt limit) {
        if (u == t) return limit < 0 ? BigInt(0) : limit; // handled by caller for source
        for (std::size_t& i = iter_[u]; i < adj_[u].size(); ++i) {
            Edge& e = adj_[u][i];
            if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
            BigInt pass = e.cap;
            if (limit >= 0 && limit < pass) pass = limit;
            const BigInt got = (e.to == t) ? pass : dfs(e.to, t, pass);
            if (got > 0) {
                e.cap -= got;
                adj_[e.to][e.rev].cap += got;
                return got;
            }
        }
        return BigInt(0);
    }

    std::vector<std::vector<Edge>> adj_;
    std::vector<int> level_;
    std::vector<std::size_t> iter_;
};

} // namespace

BipartiteFlowResult bipartite_feasible(const std::vector<BigInt>& a,
                                       const std::vector<BigInt>& b,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    BigInt supply = 0;
    for (const BigInt& v : a) {
        if (v < 0) fail(errc::invariant_violation, "negative supply in feasibility graph");
        supply += v;
    }
    for (const BigInt& v : b) {
        if (v < 0) fail(errc::invariant_violation, "negative demand in feasibility graph");
    }

    const std::size_t source = 0;
    const std::size_t sink = m + n + 1;
    Dinic net(m + n + 2);
    for (std::size_t i = 0; i < m; ++i) net.add_edge(source, 1 + i, a[i]);

    std::vector<std::size_t> edge_handle(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto [i, j] = edges[k];
        if (i >= m || j >= n) fail(errc::dimension_mismatch, "relation index out of range");
        // `supply` caps any single edge; this stands in for an infinite capacity.
        edge_handle[k] = net.add_edge(1 + i, 1 + m + j, supply);
    }
    for (std::size_t j = 0; j < n; ++j) net.add_edge(1 + m + j, sink, b[j]);

    const BigInt value = net.max_flow(source, sink);

    BipartiteFlowResult out;
    out.saturated = (value == supply);
    out.edge_flow.resize(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto [i, j] = edges[k];
        out.edge_flow[k] = supply - net.residual(1 + i, edge_handle[k]);
    }
    if (!out.saturated) {
        const std::vector<char> seen = net.reachable(source);
        for (std::size_t i = 0; i < m; ++i)
            if (seen[1 + i]) out.cut_rows.push_back(i);
    }
    return out;
}

ForcedCutResult forced_min_surplus(const std::vector<BigInt>& a,
                                   const std::vector<BigInt>& b,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                   std::size_t forced) {
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    if (forced >= m) fail(errc::dimension_mismatch, "forced row out of range");
    BigInt total_a = 0, total_b = 0;
    for (const BigInt& v : a) total_a += v;
    for (const BigInt& v : b) total_b += v;
    // Any finite cut stays below this, so the forced arc is never cut.
    const BigInt huge = total_a + total_b + 1;

    const std::size_t source = 0;
    const std::size_t sink = m + n + 1;
    Dinic net(m + n + 2);
    for (std::size_t i = 0; i < m; ++i)
        net.add_edge(source, 1 + i, i == forced ? huge : a[i]);
    for (const auto& [i, j] : edges) {
        if (i >= m || j >= n) fail(errc::dimension_mismatch, "relation index out of range");
        net.add_edge(1 + i, 1 + m + j, huge);
    }
    for (std::size_t j = 0; j < n; ++j) net.add_edge(1 + m + j, sink, b[j]);

    const BigInt cut = net.max_flow(source, sink);

    ForcedCutResult out;
    // cut = a(A^c) + b(N(A)) over the minimising A (which contains `forced`),
    // so the surplus b(N(A)) - a(A) is cut - total_a.
    out.surplus = cut - total_a;
    const std::vector<char> seen = net.reachable(source);
    for (std::size_t i = 0; i < m; ++i)
        if (seen[1 + i]) out.min_rows.push_back(i);
    return out;
}

} // namespace om::detail
