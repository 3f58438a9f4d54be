#pragma once

// Independent brute-force oracles used by the tests. Nothing here calls the
// library's solvers; only value types and single-step transitions are shared.

#include "ikit/automata.hpp"
#include "ikit/solvers.hpp"
#include "ikit/tables.hpp"

#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using namespace ikit;

inline int step_run(const Dfa& d, int q, const Word& w) {
    for (const auto& s : w) q = d.next(q, d.symbol_index(s));
    return q;
}

inline bool dfa_accepts(const Dfa& d, const Word& w) { return d.is_final(step_run(d, d.initial(), w)); }

inline bool nfa_accepts(const Nfa& n, const Word& w) {
    std::set<int> cur{n.initial()};
    for (const auto& s : w) {
        std::set<int> nxt;
        for (int q : cur)
            for (int t : n.next(q, n.symbol_index(s))) nxt.insert(t);
        cur = nxt;
    }
    for (int q : cur)
        if (n.is_final(q)) return true;
    return false;
}

inline bool automaton_accepts(const Automaton& a, const Word& w) {
    if (auto* d = std::get_if<Dfa>(&a)) return dfa_accepts(*d, w);
    return nfa_accepts(std::get<Nfa>(a), w);
}

// All words over sigma of length <= max_len, shortest first then lexicographic by symbol index.
inline void for_each_word(const std::vector<Symbol>& sigma, int max_len, const std::function<void(const Word&)>& f) {
    for (int len = 0; len <= max_len; ++len) {
        std::vector<int> idx(static_cast<std::size_t>(len), 0);
        while (true) {
            Word w;
            for (int i : idx) w.push_back(sigma[static_cast<std::size_t>(i)]);
            f(w);
            int p = len - 1;
            while (p >= 0 && ++idx[static_cast<std::size_t>(p)] == static_cast<int>(sigma.size())) idx[static_cast<std::size_t>(p--)] = 0;
            if (p < 0) break;
        }
    }
}

inline std::optional<Word> common_word(const std::vector<Automaton>& as, int max_len) {
    std::optional<Word> found;
    const auto& sigma = base_of(as.front()).alphabet();
    for_each_word(sigma, max_len, [&](const Word& w) {
        if (found) return;
        for (const auto& a : as)
            if (!automaton_accepts(a, w)) return;
        found = w;
    });
    return found;
}

inline bool in_chain(const Word& w, const std::vector<Word>& words) {
    // dynamic programming over (position, chain index)
    std::size_t n = w.size(), m = words.size();
    std::vector<std::vector<char>> ok(n + 1, std::vector<char>(m + 1, 0));
    for (std::size_t j = 0; j <= m; ++j) ok[n][j] = 1;
    for (std::size_t p = n + 1; p-- > 0;)
        for (std::size_t j = m; j-- > 0;) {
            if (ok[p][j + 1]) {
                ok[p][j] = 1;
                continue;
            }
            const auto& u = words[j];
            if (p + u.size() <= n && std::equal(u.begin(), u.end(), w.begin() + static_cast<std::ptrdiff_t>(p)) && ok[p + u.size()][j])
                ok[p][j] = 1;
        }
    for (std::size_t j = 0; j <= m; ++j)
        if (ok[0][j]) return true;
    return false;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::vector<int>> subsets(int n, int max_size) {
    std::vector<std::vector<int>> out;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        std::vector<int> s;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1U) s.push_back(v);
        if (static_cast<int>(s.size()) <= max_size) out.push_back(s);
    }
    return out;
}

inline bool has_clique(const Graph& g, int k) {
    for (const auto& s : subsets(g.vertex_count(), k)) {
        if (static_cast<int>(s.size()) != k) continue;
        bool ok = true;
        for (std::size_t i = 0; i < s.size() && ok; ++i)
            for (std::size_t j = i + 1; j < s.size() && ok; ++j) ok = g.adjacent(s[i], s[j]);
        if (ok) return true;
    }
    return k == 0;
}

inline bool has_vertex_cover(const Graph& g, int k) {
    for (const auto& s : subsets(g.vertex_count(), k)) {
        std::set<int> in(s.begin(), s.end());
        bool ok = true;
        for (auto [u, v] : g.edges()) ok = ok && (in.count(u) || in.count(v));
        if (ok) return true;
    }
    return false;
}

inline bool has_dominating_set(const Graph& g, int k) {
    for (const auto& s : subsets(g.vertex_count(), k)) {
        std::set<int> in(s.begin(), s.end());
        bool ok = true;
        for (int v = 0; v < g.vertex_count() && ok; ++v) {
            bool dom = in.count(v) > 0;
            for (int u : s) dom = dom || g.adjacent(u, v);
            ok = dom;
        }
        if (ok) return true;
    }
    return false;
}

inline bool has_hitting_set(const Hypergraph& h, int k) {
    for (const auto& s : subsets(h.vertex_count, k)) {
        std::set<int> in(s.begin(), s.end());
        bool ok = true;
        for (const auto& e : h.hyperedges) {
            bool hit = false;
            for (int v : e) hit = hit || in.count(v);
            ok = ok && hit;
        }
        if (ok) return true;
    }
    return false;
}

inline bool satisfiable(const CnfFormula& f) {
    for (std::uint32_t mask = 0; mask < (1U << f.variable_count); ++mask) {
        bool all = true;
        for (const auto& c : f.clauses) {
            bool sat = false;
            for (int lit : c) {
                bool val = mask >> (std::abs(lit) - 1) & 1U;
                sat = sat || (lit > 0) == val;
            }
            all = all && sat;
        }
        if (all) return true;
    }
    return false;
}

inline bool has_multicolored_clique(const MulticoloredGraph& mg) {
    std::vector<int> pick;
    std::function<bool(std::size_t)> go = [&](std::size_t c) {
        if (c == mg.classes.size()) return true;
        for (int v : mg.classes[c]) {
            bool ok = true;
            for (int u : pick) ok = ok && mg.graph.adjacent(u, v);
            if (!ok) continue;
            pick.push_back(v);
            if (go(c + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return go(0);
}

// Compatibility straight from the definition, independent of rows_compatible.
inline bool compatible(const Table& t1, const std::vector<Cell>& r1, const Table& t2, const std::vector<Cell>& r2) {
    for (std::size_t i = 0; i < t1.labels.size(); ++i)
        for (std::size_t j = 0; j < t2.labels.size(); ++j) {
            if (t1.labels[i] != t2.labels[j]) continue;
            const auto& l = t1.labels[i];
            const auto& a1 = t1.alphabets.at(l);
            const auto& a2 = t2.alphabets.at(l);
            bool v1_outside = !r1[i] || std::find(a2.begin(), a2.end(), *r1[i]) == a2.end();
            bool v2_outside = !r2[j] || std::find(a1.begin(), a1.end(), *r2[j]) == a1.end();
            bool equal = r1[i] && r2[j] && *r1[i] == *r2[j];
            if (!(equal || v1_outside || v2_outside)) return false;
        }
    return true;
}

inline bool tnej(const std::vector<Table>& ts) {
    std::vector<std::size_t> pick;
    std::function<bool(std::size_t)> go = [&](std::size_t t) {
        if (t == ts.size()) return true;
        for (std::size_t r = 0; r < ts[t].rows.size(); ++r) {
            bool ok = true;
            for (std::size_t u = 0; u < t && ok; ++u) ok = compatible(ts[u], ts[u].rows[pick[u]], ts[t], ts[t].rows[r]);
            if (!ok) continue;
            pick.push_back(r);
            if (go(t + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return go(0);
}

}  // namespace oracle
