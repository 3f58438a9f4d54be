#pragma once

#include "ikit/common.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace ikit {

class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64) {
        if (n < 0) throw InputError("negative vertex count");
        adj_.assign(static_cast<std::size_t>(n), std::vector<std::uint64_t>(words_, 0));
    }
    Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
        for (auto [u, v] : edges) add_edge(u, v);
    }

    int vertex_count() const { return n_; }

    void add_edge(int u, int v) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InputError("edge endpoint out of range");
        if (u == v) throw InputError("self-loops are not allowed");
        set_bit(u, v);
        set_bit(v, u);
    }

    bool adjacent(int u, int v) const {
        return (adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v) / 64] >> (static_cast<unsigned>(v) % 64)) & 1U;
    }

    int degree(int u) const {
        int d = 0;
        for (auto w : adj_[static_cast<std::size_t>(u)]) d += std::popcount(w);
        return d;
    }

    const std::vector<std::uint64_t>& row(int u) const { return adj_[static_cast<std::size_t>(u)]; }
    std::size_t row_words() const { return words_; }

    // Sorted (u < v) edge list.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (adjacent(u, v)) out.emplace_back(u, v);
        return out;
    }

    std::size_t edge_count() const {
        std::size_t c = 0;
        for (int u = 0; u < n_; ++u) c += static_cast<std::size_t>(degree(u));
        return c / 2;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    void set_bit(int u, int v) {
        adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (static_cast<unsigned>(v) % 64);
    }

    int n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::vector<std::uint64_t>> adj_;
};

struct MulticoloredGraph {
    Graph graph;
    std::vector<std::vector<int>> classes;

    void validate() const {
        std::vector<int> owner(static_cast<std::size_t>(graph.vertex_count()), -1);
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (int v : classes[c]) {
                if (v < 0 || v >= graph.vertex_count()) throw InputError("class member out of range");
                if (owner[static_cast<std::size_t>(v)] >= 0) throw InputError("color classes overlap at vertex " + std::to_string(v));
                owner[static_cast<std::size_t>(v)] = static_cast<int>(c);
            }
        for (int v = 0; v < graph.vertex_count(); ++v)
            if (owner[static_cast<std::size_t>(v)] < 0) throw InputError("vertex " + std::to_string(v) + " has no color class");
        for (const auto& cls : classes)
            for (std::size_t i = 0; i < cls.size(); ++i)
                for (std::size_t j = i + 1; j < cls.size(); ++j)
                    if (graph.adjacent(cls[i], cls[j]))
                        throw InputError("color class is not independent: edge " + std::to_string(cls[i]) + "-" +
                                         std::to_string(cls[j]));
    }
};

struct Hypergraph {
    int vertex_count = 0;
    std::vector<std::vector<int>> hyperedges;

    void validate() const {
        if (vertex_count < 0) throw InputError("negative vertex count");
        for (const auto& e : hyperedges) {
            if (e.empty()) throw InputError("hyperedges must be nonempty");
            for (int v : e)
                if (v < 0 || v >= vertex_count) throw InputError("hyperedge member out of range");
        }
    }
};

// Literals are DIMACS style: +v / -v with v in 1..variable_count.
struct CnfFormula {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;

    void validate() const {
        if (variable_count < 0) throw InputError("negative variable count");
        for (const auto& c : clauses) {
            std::set<int> vars;
            for (int lit : c) {
                int v = lit < 0 ? -lit : lit;
                if (lit == 0 || v > variable_count) throw InputError("literal out of range");
                if (!vars.insert(v).second) throw InputError("variable repeated within a clause");
            }
        }
    }

    bool satisfied_by(const std::vector<bool>& assignment) const {
        for (const auto& c : clauses) {
            bool sat = false;
            for (int lit : c) {
                bool val = assignment[static_cast<std::size_t>((lit < 0 ? -lit : lit) - 1)];
                if ((lit > 0) == val) {
                    sat = true;
                    break;
                }
            }
            if (!sat) return false;
        }
        return true;
    }
};

inline bool is_clique(const Graph& g, const std::vector<int>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i] == vs[j] || !g.adjacent(vs[i], vs[j])) return false;
    return true;
}

inline bool is_vertex_cover(const Graph& g, const std::vector<int>& cover) {
    std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : cover) in[static_cast<std::size_t>(v)] = 1;
    for (auto [u, v] : g.edges())
        if (!in[static_cast<std::size_t>(u)] && !in[static_cast<std::size_t>(v)]) return false;
    return true;
}

inline bool is_dominating_set(const Graph& g, const std::vector<int>& d) {
    std::vector<char> dom(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : d) {
        dom[static_cast<std::size_t>(v)] = 1;
        for (int u = 0; u < g.vertex_count(); ++u)
            if (g.adjacent(u, v)) dom[static_cast<std::size_t>(u)] = 1;
    }
    return std::all_of(dom.begin(), dom.end(), [](char c) { return c != 0; });
}

inline bool is_hitting_set(const Hypergraph& h, const std::vector<int>& s) {
    for (const auto& e : h.hyperedges) {
        bool hit = std::any_of(e.begin(), e.end(), [&](int v) { return std::find(s.begin(), s.end(), v) != s.end(); });
        if (!hit) return false;
    }
    return true;
}

inline std::optional<std::vector<int>> solve_clique(const Graph& g, int k) {
    if (k <= 0) return std::vector<int>{};
    int n = g.vertex_count();
    std::vector<int> cand;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) >= k - 1) cand.push_back(v);
    std::vector<int> chosen;
    std::function<bool(const std::vector<int>&)> extend = [&](const std::vector<int>& pool) -> bool {
        if (static_cast<int>(chosen.size()) == k) return true;
        if (static_cast<int>(chosen.size() + pool.size()) < k) return false;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            int v = pool[i];
            std::vector<int> next;
            for (std::size_t j = i + 1; j < pool.size(); ++j)
                if (g.adjacent(v, pool[j])) next.push_back(pool[j]);
            chosen.push_back(v);
            if (extend(next)) return true;
            chosen.pop_back();
            if (static_cast<int>(chosen.size() + pool.size() - i - 1) < k) break;
        }
        return false;
    };
    if (extend(cand)) return chosen;
    return std::nullopt;
}

// One vertex per class, pairwise adjacent; result is indexed by class.
inline std::optional<std::vector<int>> solve_multicolored_clique(const MulticoloredGraph& mg) {
    mg.validate();
    std::size_t k = mg.classes.size();
    const Graph& g = mg.graph;
    std::vector<int> pick(k, -1);
    std::vector<char> done(k, 0);
    std::function<bool(std::size_t)> search = [&](std::size_t placed) -> bool {
        if (placed == k) return true;
        // Branch on the class with the fewest vertices adjacent to everything chosen so far.
        std::size_t best = k;
        std::vector<int> best_cands;
        for (std::size_t c = 0; c < k; ++c) {
            if (done[c]) continue;
            std::vector<int> cands;
            for (int v : mg.classes[c]) {
                bool ok = true;
                for (std::size_t d = 0; d < k && ok; ++d)
                    if (done[d] && !g.adjacent(v, pick[d])) ok = false;
                if (ok) cands.push_back(v);
            }
            if (best == k || cands.size() < best_cands.size()) {
                best = c;
                best_cands = std::move(cands);
                if (best_cands.empty()) return false;
            }
        }
        std::sort(best_cands.begin(), best_cands.end());
        done[best] = 1;
        for (int v : best_cands) {
            pick[best] = v;
            if (search(placed + 1)) return true;
        }
        done[best] = 0;
        pick[best] = -1;
        return false;
    };
    if (search(0)) return pick;
    return std::nullopt;
}

// Bounded search tree: degree-one vertices pull in their neighbour, otherwise
// branch on the endpoints of the lowest uncovered edge.
inline std::optional<std::vector<int>> solve_vertex_cover(const Graph& g, int s) {
    if (s < 0) return std::nullopt;
    int n = g.vertex_count();
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    std::vector<int> cover;
    auto live_neighbours = [&](int v) {
        std::vector<int> out;
        for (int u = 0; u < n; ++u)
            if (!removed[static_cast<std::size_t>(u)] && g.adjacent(u, v)) out.push_back(u);
        return out;
    };
    std::function<bool(int)> go = [&](int budget) -> bool {
        int eu = -1, ev = -1;
        for (int u = 0; u < n && eu < 0; ++u) {
            if (removed[static_cast<std::size_t>(u)]) continue;
            auto nb = live_neighbours(u);
            if (!nb.empty()) {
                eu = u;
                ev = nb.front();
            }
        }
        if (eu < 0) return true;
        if (budget == 0) return false;
        for (int u = 0; u < n; ++u) {
            if (removed[static_cast<std::size_t>(u)]) continue;
            auto nb = live_neighbours(u);
            if (nb.size() == 1) {
                int w = nb.front();
                removed[static_cast<std::size_t>(w)] = 1;
                cover.push_back(w);
                bool ok = go(budget - 1);
                if (!ok) {
                    cover.pop_back();
                    removed[static_cast<std::size_t>(w)] = 0;
                }
                return ok;
            }
        }
        for (int pickv : {eu, ev}) {
            removed[static_cast<std::size_t>(pickv)] = 1;
            cover.push_back(pickv);
            if (go(budget - 1)) return true;
            cover.pop_back();
            removed[static_cast<std::size_t>(pickv)] = 0;
        }
        return false;
    };
    if (!go(s)) return std::nullopt;
    std::sort(cover.begin(), cover.end());
    return cover;
}

namespace detail {

// Visits subsets of {0..n-1} of size 0..k in size-then-lexicographic order.
inline std::optional<std::vector<int>> first_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& ok) {
    std::vector<int> cur;
    for (int size = 0; size <= std::min(k, n); ++size) {
        cur.resize(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) cur[static_cast<std::size_t>(i)] = i;
        while (true) {
            if (ok(cur)) return cur;
            int i = size - 1;
            while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - size + i) --i;
            if (i < 0) break;
            ++cur[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline std::optional<std::vector<int>> solve_dominating_set(const Graph& g, int k) {
    return detail::first_subset(g.vertex_count(), k, [&](const std::vector<int>& s) { return is_dominating_set(g, s); });
}

inline std::optional<std::vector<int>> solve_hitting_set(const Hypergraph& h, int k) {
    h.validate();
    return detail::first_subset(h.vertex_count, k, [&](const std::vector<int>& s) { return is_hitting_set(h, s); });
}

inline std::optional<std::vector<bool>> solve_sat_brute(const CnfFormula& f) {
    f.validate();
    if (f.variable_count > 20) throw ResourceError("solve_sat_brute: more than 20 variables");
    std::uint64_t total = std::uint64_t{1} << f.variable_count;
    std::vector<bool> a(static_cast<std::size_t>(f.variable_count));
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        for (int v = 0; v < f.variable_count; ++v) a[static_cast<std::size_t>(v)] = (bits >> v) & 1U;
        if (f.satisfied_by(a)) return a;
    }
    return std::nullopt;
}

}  // namespace ikit
