#pragma once

#include "ikit/automata.hpp"
#include "ikit/solvers.hpp"
#include "ikit/structure.hpp"
#include "ikit/tables.hpp"

#include <map>
#include <random>

namespace ikit::gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline std::vector<Symbol> letters(int count) {
    if (count < 1 || count > 26) throw InputError("letter count must lie in 1..26");
    std::vector<Symbol> out;
    for (int i = 0; i < count; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

inline std::vector<int> random_finals(Rng& rng, int n, double p) {
    std::vector<int> f;
    for (int q = 0; q < n; ++q)
        if (coin(rng, p)) f.push_back(q);
    return f;
}

inline Dfa random_dfa(Rng& rng, const std::vector<Symbol>& sigma, int states, double final_prob = 0.3) {
    if (states < 1) throw InputError("states must be positive");
    std::vector<int> delta;
    for (int i = 0; i < states * static_cast<int>(sigma.size()); ++i) delta.push_back(uniform(rng, 0, states - 1));
    return Dfa(sigma, states, delta, 0, random_finals(rng, states, final_prob));
}

inline Nfa random_nfa(Rng& rng, const std::vector<Symbol>& sigma, int states, double edge_prob = 0.25, double final_prob = 0.3) {
    std::vector<std::vector<int>> delta(static_cast<std::size_t>(states) * sigma.size());
    for (auto& succ : delta)
        for (int t = 0; t < states; ++t)
            if (coin(rng, edge_prob)) succ.push_back(t);
    return Nfa(sigma, states, std::move(delta), 0, random_finals(rng, states, final_prob));
}

// Tail of length tail, then a cycle of length cycle.
inline Dfa random_unary_dfa(Rng& rng, int tail, int cycle, double final_prob = 0.4, const Symbol& sym = "a") {
    if (cycle < 1 || tail < 0) throw InputError("unary shape needs cycle >= 1 and tail >= 0");
    int n = tail + cycle;
    std::vector<int> delta;
    for (int q = 0; q < n; ++q) delta.push_back(q + 1 < n ? q + 1 : tail);
    return Dfa({sym}, n, delta, 0, random_finals(rng, n, final_prob));
}

// Product of one unary tail+cycle automaton per letter; each letter only moves its own coordinate.
inline Dfa commutative_dfa(Rng& rng, const std::vector<Symbol>& sigma, int max_states, double final_prob = 0.35) {
    if (max_states < 1) throw InputError("max_states must be positive");
    std::vector<int> tails, cycles, sizes;
    int budget = max_states;
    for (std::size_t a = 0; a < sigma.size(); ++a) {
        int size = uniform(rng, 1, budget);
        int tail = uniform(rng, 0, size - 1);
        tails.push_back(tail);
        cycles.push_back(size - tail);
        sizes.push_back(size);
        budget = std::max(1, budget / size);
    }
    int n = 1;
    for (int s : sizes) n *= s;
    std::vector<int> delta(static_cast<std::size_t>(n) * sigma.size());
    for (int q = 0; q < n; ++q) {
        int rest = q, stride = 1;
        for (std::size_t a = 0; a < sigma.size(); ++a) {
            int coord = rest % sizes[a];
            rest /= sizes[a];
            int nc = coord + 1 < sizes[a] ? coord + 1 : tails[a];
            delta[static_cast<std::size_t>(q) * sigma.size() + a] = q + (nc - coord) * stride;
            stride *= sizes[a];
        }
    }
    return Dfa(sigma, n, delta, 0, random_finals(rng, n, final_prob));
}

// Simple cycles (length 0 = a transient state) joined by forward bridges, then completed with a sink.
inline Dfa polycyclic_dfa(Rng& rng, const std::vector<Symbol>& sigma, int cycles, int max_cycle = 3, double final_prob = 0.3) {
    if (cycles < 1) throw InputError("cycles must be positive");
    int s = static_cast<int>(sigma.size());
    std::vector<std::vector<int>> comp;
    int n = 0;
    for (int c = 0; c < cycles; ++c) {
        int len = uniform(rng, 0, max_cycle);
        std::vector<int> members;
        for (int i = 0; i < std::max(len, 1); ++i) members.push_back(n++);
        comp.push_back(members);
        comp.back().push_back(len == 0 ? -1 : 0);  // trailing marker: -1 transient
    }
    std::vector<int> delta(static_cast<std::size_t>(n) * static_cast<std::size_t>(s), PartialDfa::none);
    auto set = [&](int q, int a, int t) { delta[static_cast<std::size_t>(q) * static_cast<std::size_t>(s) + static_cast<std::size_t>(a)] = t; };
    auto free_letters = [&](int q) {
        std::vector<int> out;
        for (int a = 0; a < s; ++a)
            if (delta[static_cast<std::size_t>(q) * static_cast<std::size_t>(s) + static_cast<std::size_t>(a)] == PartialDfa::none) out.push_back(a);
        return out;
    };
    for (auto& c : comp) {
        bool transient = c.back() == -1;
        c.pop_back();
        if (transient) continue;
        for (std::size_t i = 0; i < c.size(); ++i) set(c[i], uniform(rng, 0, s - 1), c[(i + 1) % c.size()]);
    }
    for (int c = 0; c + 1 < cycles; ++c) {
        int bridges = uniform(rng, 1, 2);
        for (int b = 0; b < bridges; ++b) {
            int from = comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(comp[static_cast<std::size_t>(c)].size()) - 1))];
            auto fl = free_letters(from);
            if (fl.empty()) continue;
            int target_comp = b == 0 ? c + 1 : uniform(rng, c + 1, cycles - 1);
            const auto& tc = comp[static_cast<std::size_t>(target_comp)];
            set(from, fl[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(fl.size()) - 1))],
                tc[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(tc.size()) - 1))]);
        }
    }
    auto finals = random_finals(rng, n, final_prob);
    if (finals.empty()) finals.push_back(n - 1);
    return PartialDfa(sigma, n, delta, 0, finals).complete();
}

// Reachable part, then Moore partition refinement.
inline Dfa minimize(const Dfa& d) {
    int s = d.alphabet_size();
    std::vector<int> id(static_cast<std::size_t>(d.state_count()), -1), order{d.initial()};
    id[static_cast<std::size_t>(d.initial())] = 0;
    for (std::size_t h = 0; h < order.size(); ++h)
        for (int a = 0; a < s; ++a) {
            int t = d.next(order[h], a);
            if (id[static_cast<std::size_t>(t)] < 0) {
                id[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
                order.push_back(t);
            }
        }
    std::size_t n = order.size();
    std::vector<int> block(n);
    for (std::size_t i = 0; i < n; ++i) block[i] = d.is_final(order[i]) ? 1 : 0;
    std::size_t count = 0;
    while (true) {
        std::map<std::vector<int>, int> sig;
        std::vector<int> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<int> key{block[i]};
            for (int a = 0; a < s; ++a) key.push_back(block[static_cast<std::size_t>(id[static_cast<std::size_t>(d.next(order[i], a))])]);
            next[i] = sig.emplace(key, static_cast<int>(sig.size())).first->second;
        }
        block = next;
        if (sig.size() == count) break;
        count = sig.size();
    }
    // renumber blocks in BFS order so the initial state is 0
    std::vector<int> ren(count, -1);
    int m = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (ren[static_cast<std::size_t>(block[i])] < 0) ren[static_cast<std::size_t>(block[i])] = m++;
    std::vector<int> delta(static_cast<std::size_t>(m) * static_cast<std::size_t>(s));
    std::vector<int> finals;
    for (std::size_t i = 0; i < n; ++i) {
        int b = ren[static_cast<std::size_t>(block[i])];
        for (int a = 0; a < s; ++a)
            delta[static_cast<std::size_t>(b) * static_cast<std::size_t>(s) + static_cast<std::size_t>(a)] =
                ren[static_cast<std::size_t>(block[static_cast<std::size_t>(id[static_cast<std::size_t>(d.next(order[i], a))])])];
        if (d.is_final(order[i])) finals.push_back(b);
    }
    return Dfa(d.alphabet(), m, delta, 0, detail::sorted_unique(finals));
}

// Language of `d` intersected with words[0]^* ... words[m-1]^*.
inline Dfa restrict_to_chain(const Dfa& d, const std::vector<Word>& words) {
    auto chain = detail::build_chain(d, words, std::vector<ChainMode>(words.size(), ChainMode::star));
    int acc = chain.accepting.front();
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<std::pair<int, std::vector<int>>> states{{d.initial(), chain.closure({chain.start})}};
    ids[states.front()] = 0;
    std::vector<int> delta, finals;
    for (std::size_t h = 0; h < states.size(); ++h) {
        auto [q, set] = states[h];
        if (d.is_final(q) && std::binary_search(set.begin(), set.end(), acc)) finals.push_back(static_cast<int>(h));
        for (int a = 0; a < d.alphabet_size(); ++a) {
            std::pair<int, std::vector<int>> nxt{d.next(q, a), chain.step(set, a)};
            auto it = ids.find(nxt);
            if (it == ids.end()) {
                it = ids.emplace(nxt, static_cast<int>(states.size())).first;
                states.push_back(nxt);
            }
            delta.push_back(it->second);
        }
    }
    return Dfa(d.alphabet(), static_cast<int>(states.size()), delta, 0, finals);
}

// Random DFA cut down to the word chain and minimized; resampled until it has at most max_states states.
inline Dfa chain_bounded_dfa(Rng& rng, const std::vector<Symbol>& sigma, const std::vector<Word>& words, int max_states,
                             int attempts = 100000) {
    for (int t = 0; t < attempts; ++t) {
        auto d = minimize(restrict_to_chain(random_dfa(rng, sigma, uniform(rng, 1, 4), 0.4), words));
        if (d.state_count() > max_states) continue;
        if (trim(d).is_empty_language() && coin(rng, 0.8)) continue;
        return d;
    }
    throw ResourceError("chain_bounded_dfa: no sample within the attempt budget");
}

inline Graph random_graph(Rng& rng, int n, double p) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng, p)) g.add_edge(u, v);
    return g;
}

inline MulticoloredGraph random_multicolored(Rng& rng, int classes, int max_per_class, double p) {
    MulticoloredGraph mg;
    int n = 0;
    for (int c = 0; c < classes; ++c) {
        int size = uniform(rng, 1, max_per_class);
        mg.classes.emplace_back();
        for (int i = 0; i < size; ++i) mg.classes.back().push_back(n++);
    }
    mg.graph = Graph(n);
    for (std::size_t a = 0; a < mg.classes.size(); ++a)
        for (std::size_t b = a + 1; b < mg.classes.size(); ++b)
            for (int u : mg.classes[a])
                for (int v : mg.classes[b])
                    if (coin(rng, p)) mg.graph.add_edge(u, v);
    return mg;
}

inline Hypergraph random_hypergraph(Rng& rng, int n, int edges, int max_edge) {
    Hypergraph h{n, {}};
    for (int e = 0; e < edges; ++e) {
        int size = uniform(rng, 1, std::min(max_edge, n));
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(static_cast<std::size_t>(size));
        std::sort(all.begin(), all.end());
        h.hyperedges.push_back(all);
    }
    return h;
}

inline CnfFormula random_cnf(Rng& rng, int vars, int clauses, int max_len = 3) {
    CnfFormula f{vars, {}};
    for (int c = 0; c < clauses; ++c) {
        int len = uniform(rng, 1, std::min(max_len, vars));
        std::vector<int> vs(static_cast<std::size_t>(vars));
        std::iota(vs.begin(), vs.end(), 1);
        std::shuffle(vs.begin(), vs.end(), rng);
        std::vector<int> clause;
        for (int i = 0; i < len; ++i) clause.push_back(coin(rng, 0.5) ? vs[static_cast<std::size_t>(i)] : -vs[static_cast<std::size_t>(i)]);
        f.clauses.push_back(clause);
    }
    return f;
}

// Binary table over a random subset of the label pool.
inline Table random_binary_table(Rng& rng, const std::vector<std::string>& pool, int max_cols, int max_rows, double null_prob = 0.25) {
    std::vector<std::string> labels = pool;
    std::shuffle(labels.begin(), labels.end(), rng);
    labels.resize(static_cast<std::size_t>(uniform(rng, 1, std::min<int>(max_cols, static_cast<int>(pool.size())))));
    std::vector<std::vector<std::string>> rows;
    int r = uniform(rng, 1, max_rows);
    for (int i = 0; i < r; ++i) {
        std::vector<std::string> row;
        for (std::size_t c = 0; c < labels.size(); ++c) row.push_back(coin(rng, null_prob) ? "*" : (coin(rng, 0.5) ? "1" : "0"));
        rows.push_back(row);
    }
    return Table::binary(labels, rows);
}

inline std::vector<Table> random_binary_tables(Rng& rng, int count, int max_cols, int max_rows, int labels = 4) {
    std::vector<std::string> pool;
    for (int i = 0; i < labels; ++i) pool.push_back(std::string(1, static_cast<char>('A' + i)));
    std::vector<Table> out;
    for (int i = 0; i < count; ++i) out.push_back(random_binary_table(rng, pool, max_cols, max_rows));
    return out;
}

// Tables sharing one alphabet per label, over larger alphabets.
inline std::vector<Table> random_tables(Rng& rng, int count, int max_cols, int max_rows, int labels = 3, int alphabet = 3) {
    std::map<std::string, std::vector<std::string>> alpha;
    std::vector<std::string> pool;
    for (int i = 0; i < labels; ++i) {
        std::string l(1, static_cast<char>('A' + i));
        pool.push_back(l);
        for (int s = 0; s < alphabet; ++s) alpha[l].push_back(std::string(1, static_cast<char>('p' + s)));
    }
    std::vector<Table> out;
    for (int i = 0; i < count; ++i) {
        Table t;
        t.labels = pool;
        std::shuffle(t.labels.begin(), t.labels.end(), rng);
        t.labels.resize(static_cast<std::size_t>(uniform(rng, 1, std::min(max_cols, labels))));
        for (const auto& l : t.labels) t.alphabets[l] = alpha[l];
        int r = uniform(rng, 1, max_rows);
        for (int k = 0; k < r; ++k) {
            std::vector<Cell> row;
            for (const auto& l : t.labels)
                row.push_back(coin(rng, 0.25) ? Cell{} : Cell{alpha[l][static_cast<std::size_t>(uniform(rng, 0, alphabet - 1))]});
            t.rows.push_back(row);
        }
        out.push_back(t);
    }
    return out;
}

}  // namespace ikit::gen
