#pragma once

#include "ikit/intersection.hpp"
#include "ikit/number_theory.hpp"
#include "ikit/solvers.hpp"
#include "ikit/structure.hpp"
#include "ikit/tables.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ikit {

namespace detail {

// Unary cycle of the given length over one symbol; state z is final iff accept(z).
template <class F>
inline Dfa unary_cycle(const Symbol& sym, int length, F accept) {
    std::vector<int> delta, finals;
    for (int z = 0; z < length; ++z) {
        delta.push_back((z + 1) % length);
        if (accept(z)) finals.push_back(z);
    }
    return Dfa({sym}, length, delta, 0, finals);
}

inline Dfa single_state(const std::vector<Symbol>& alphabet, bool accept) {
    return Dfa(alphabet, 1, std::vector<int>(alphabet.size(), 0), 0, accept ? std::vector<int>{0} : std::vector<int>{});
}

inline std::vector<Symbol> vertex_alphabet(int n) {
    std::vector<Symbol> out;
    for (int v = 0; v < n; ++v) out.push_back(std::to_string(v));
    return out;
}

}  // namespace detail

inline std::vector<Dfa> sat3_to_unary_dfas(const CnfFormula& f) {
    f.validate();
    for (const auto& c : f.clauses)
        if (c.size() > 3) throw InputError("clause has more than three literals");
    const Symbol sym = "0";
    std::vector<Dfa> out;
    auto primes = first_n_primes(static_cast<std::size_t>(f.variable_count));
    for (auto p : primes) out.push_back(detail::unary_cycle(sym, static_cast<int>(p), [](int z) { return z <= 1; }));
    for (const auto& c : f.clauses) {
        // residue 0 encodes false, 1 encodes true
        CongruenceSystem falsify;
        int period = 1;
        for (int lit : c) {
            auto p = primes[static_cast<std::size_t>(std::abs(lit) - 1)];
            falsify.push_back({lit > 0 ? 0 : 1, p, std::nullopt});
            period *= static_cast<int>(p);
        }
        int bad = 0;
        if (!falsify.empty()) bad = static_cast<int>(crt_solve(falsify)->residue);
        out.push_back(detail::unary_cycle(sym, period, [&](int z) { return !c.empty() && z != bad; }));
    }
    if (out.empty()) out.push_back(detail::single_state({sym}, true));
    return out;
}

struct CliqueUnaryReduction {
    std::vector<Dfa> dfas;
    std::vector<std::uint64_t> moduli;
    std::optional<bool> direct;  // set when k < 2
};

inline CliqueUnaryReduction clique_to_unary_dfas(const Graph& g, int k) {
    if (k < 0) throw InputError("k must be nonnegative");
    const Symbol sym = "a";
    int n = g.vertex_count();
    CliqueUnaryReduction out;
    if (k < 2) {
        bool yes = k == 0 || n >= 1;
        out.direct = yes;
        out.dfas.push_back(detail::single_state({sym}, yes));
        return out;
    }
    out.moduli = coprime_moduli(static_cast<std::uint64_t>(std::max(n, 1)), static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            int mi = static_cast<int>(out.moduli[static_cast<std::size_t>(i)]);
            int mj = static_cast<int>(out.moduli[static_cast<std::size_t>(j)]);
            out.dfas.push_back(detail::unary_cycle(sym, mi * mj, [&](int z) {
                int u = z % mi, v = z % mj;
                return u < n && v < n && g.adjacent(u, v);
            }));
        }
    return out;
}

struct BoundedReduction {
    std::vector<Dfa> dfas;
    std::uint64_t ell = 0;
    BoundMode mode = BoundMode::at_most;
    std::optional<bool> direct;
};

inline BoundedReduction hittingset_to_commutative_bdfa(const Hypergraph& hg, int k) {
    hg.validate();
    if (hg.vertex_count < 1) throw InputError("hypergraph needs at least one vertex");
    if (k < 0) throw InputError("k must be nonnegative");
    auto sigma = detail::vertex_alphabet(hg.vertex_count);
    BoundedReduction out;
    out.ell = static_cast<std::uint64_t>(k);
    out.mode = BoundMode::at_most;
    for (const auto& e : hg.hyperedges) {
        std::vector<int> delta(2 * sigma.size());
        for (std::size_t a = 0; a < sigma.size(); ++a) {
            bool hit = std::find(e.begin(), e.end(), static_cast<int>(a)) != e.end();
            delta[a] = hit ? 1 : 0;
            delta[sigma.size() + a] = 1;
        }
        out.dfas.emplace_back(sigma, 2, delta, 0, std::vector<int>{1});
    }
    if (out.dfas.empty()) out.dfas.push_back(detail::single_state(sigma, true));
    return out;
}

// States (x, b) with x = 0 for the start marker and x = v + 1 for vertex v; (0, 1) doubles as the dead sink.
inline BoundedReduction hittingset_to_strictbounded_bdfa(const Hypergraph& hg, int k) {
    hg.validate();
    if (hg.vertex_count < 1) throw InputError("hypergraph needs at least one vertex");
    if (k < 0) throw InputError("k must be nonnegative");
    int n = hg.vertex_count;
    auto sigma = detail::vertex_alphabet(n);
    BoundedReduction out;
    out.ell = static_cast<std::uint64_t>(k);
    out.mode = BoundMode::exact;
    if (n < k) out.direct = solve_hitting_set(hg, k).has_value();
    auto id = [](int x, int b) { return x * 2 + b; };
    const int dead = id(0, 1);
    auto build = [&](const std::vector<int>* e) {
        int states = 2 * (n + 1);
        std::vector<int> delta(static_cast<std::size_t>(states) * sigma.size(), dead);
        std::vector<int> finals;
        for (int x = 0; x <= n; ++x)
            for (int b = 0; b < 2; ++b) {
                int q = id(x, b);
                if (q == dead) continue;
                if (x >= 1 && (b == 1 || !e)) finals.push_back(q);
                for (int v = 0; v < n; ++v) {
                    if (v + 1 <= x) continue;
                    bool hit = e && std::find(e->begin(), e->end(), v) != e->end();
                    delta[static_cast<std::size_t>(q) * sigma.size() + static_cast<std::size_t>(v)] = id(v + 1, (b || hit) ? 1 : 0);
                }
            }
        if (!e) finals.push_back(id(0, 0));
        return Dfa(sigma, states, delta, id(0, 0), finals);
    };
    for (const auto& e : hg.hyperedges) out.dfas.push_back(build(&e));
    if (out.dfas.empty()) out.dfas.push_back(build(nullptr));
    return out;
}

inline Symbol domset_letter(int position, int vertex) { return "a_" + std::to_string(position) + "^" + std::to_string(vertex); }

// Non-dominated vertices, 1-based.
inline std::vector<int> non_dominated(const Graph& g, int v) {
    std::vector<int> out;
    for (int u = 1; u <= g.vertex_count(); ++u)
        if (u != v && !g.adjacent(u - 1, v - 1)) out.push_back(u);
    return out;
}

// Vertices are 1..n here; graph vertex v-1 is vertex v.
inline std::vector<Nfa> domset_to_nfas(const Graph& g, int k) {
    int n = g.vertex_count();
    if (n < 1) throw InputError("graph needs at least one vertex");
    if (k < 1 || k > n) throw InputError("k must lie in 1..n");
    std::vector<Symbol> sigma;
    for (int j = 1; j <= n; ++j)
        for (int u = 1; u <= n; ++u) sigma.push_back(domset_letter(j, u));
    auto letter = [&](int j, int u) { return (j - 1) * n + (u - 1); };
    int states = 1 + n * n;
    auto strand = [&](int v, int j) { return 1 + (v - 1) * n + (j - 1); };
    std::vector<Nfa> out;
    for (int i = 1; i <= k; ++i) {
        std::vector<std::vector<int>> delta(static_cast<std::size_t>(states) * sigma.size());
        std::vector<int> finals;
        for (int v = 1; v <= n; ++v) {
            auto nd = non_dominated(g, v);
            for (int j = 1; j <= n; ++j) {
                int from = j == 1 ? 0 : strand(v, j - 1);
                std::vector<int> reads = j == i ? std::vector<int>{v} : nd;
                for (int u : reads)
                    delta[static_cast<std::size_t>(from) * sigma.size() + static_cast<std::size_t>(letter(j, u))].push_back(strand(v, j));
            }
            finals.push_back(strand(v, n));
        }
        out.emplace_back(sigma, states, std::move(delta), 0, finals);
    }
    return out;
}

struct VertexClass {
    bool cycle = false;
    int N = 0;  // 0 for tail vertices
    bool operator==(const VertexClass&) const = default;
};

namespace detail {

inline int last_nonzero(const std::vector<int>& exps) {
    for (std::size_t j = exps.size(); j > 0; --j)
        if (exps[j - 1] != 0) return static_cast<int>(j - 1);
    return -1;
}

inline int run_exponents(const Dfa& d, const std::vector<std::vector<int>>& enc, const std::vector<int>& exps, int upto) {
    int q = d.initial();
    for (int j = 0; j < upto; ++j)
        if (exps[static_cast<std::size_t>(j)] > 0) q = d.orbit(q, enc[static_cast<std::size_t>(j)])->at(exps[static_cast<std::size_t>(j)]);
    return q;
}

}  // namespace detail

inline VertexClass classify_vertex(const Dfa& dfa, const std::vector<Word>& words, const std::vector<int>& exps) {
    if (exps.size() != words.size()) throw InputError("exponent vector length must equal word count");
    for (int r : exps)
        if (r < 0 || r > dfa.state_count()) throw InputError("exponents must lie in 0..state_count");
    int j = detail::last_nonzero(exps);
    if (j < 0) throw InputError("classify_vertex needs a nonzero exponent vector");
    std::vector<std::vector<int>> enc;
    for (const auto& w : words) enc.push_back(dfa.encode(w));
    int target = detail::run_exponents(dfa, enc, exps, j + 1);
    auto o = dfa.orbit(target, enc[static_cast<std::size_t>(j)]);
    if (o->tail == 0) return {true, o->cycle};
    return {false, 0};
}

enum class SparseVertexKind { regular, final_marker, dummy };

struct SparseVertex {
    SparseVertexKind kind = SparseVertexKind::regular;
    int sub = 0;
    int automaton = -1;
    int position = -1;           // index into the sub-instance's blocks
    std::vector<int> exponents;  // length m, zero off-pattern
    VertexClass cls;
    int state = -1;
};

struct SparseSubInstance {
    std::vector<int> pattern;  // 0/1 per word
    std::vector<int> blocks;   // word indices with pattern bit set
};

struct SparseReductionInstance {
    std::vector<Dfa> automata;
    std::vector<Word> words;
    bool epsilon = false;
    MulticoloredGraph graph;
    std::vector<SparseVertex> vertex_data;
    std::vector<SparseSubInstance> subs;
};

namespace detail {

inline bool equations_compatible(const SparseVertex& u, int ru, const SparseVertex& v, int rv) {
    if (u.cls.cycle && v.cls.cycle) return (ru - rv) % static_cast<int>(std::gcd(u.cls.N, v.cls.N)) == 0;
    if (!u.cls.cycle && !v.cls.cycle) return ru == rv;
    if (!u.cls.cycle) return equations_compatible(v, rv, u, ru);
    return (rv - ru) % u.cls.N == 0 && rv >= ru;
}

inline bool sparse_adjacent(const SparseVertex& u, const SparseVertex& v, int last, const std::vector<Dfa>& dfas) {
    using K = SparseVertexKind;
    if (u.kind == K::dummy || v.kind == K::dummy) return true;
    if (u.kind == K::final_marker || v.kind == K::final_marker) {
        const SparseVertex& r = u.kind == K::final_marker ? v : u;
        if (r.kind != K::regular) return false;
        return r.position < last || dfas[static_cast<std::size_t>(r.automaton)].is_final(r.state);
    }
    if (u.automaton != v.automaton) {
        if (u.position != v.position) return true;  // different blocks never conflict
        std::size_t j = static_cast<std::size_t>(detail::last_nonzero(u.exponents));
        return equations_compatible(u, u.exponents[j], v, v.exponents[j]);
    }
    int d = std::abs(u.position - v.position);
    if (d >= 2) return true;
    if (d == 0) return false;
    // adjacent blocks: the later vertex extends the earlier one's exponent prefix
    const SparseVertex& a = u.position < v.position ? u : v;
    const SparseVertex& b = u.position < v.position ? v : u;
    std::size_t upto = static_cast<std::size_t>(detail::last_nonzero(a.exponents)) + 1;
    return std::equal(a.exponents.begin(), a.exponents.begin() + static_cast<std::ptrdiff_t>(upto), b.exponents.begin());
}

}  // namespace detail

// One sub-instance per nonzero pattern (or the listed patterns only), combined by disjoint union with padded classes.
inline SparseReductionInstance sparse_to_mcclique(const std::vector<Dfa>& dfas, const std::vector<Word>& words,
                                                  const Caps& caps = Caps{},
                                                  std::optional<std::vector<std::vector<int>>> only_patterns = std::nullopt) {
    if (dfas.empty()) throw InputError("sparse_to_mcclique needs at least one automaton");
    IntersectionInstance(dfas).validate();
    for (const auto& w : words)
        if (w.empty()) throw InputError("chain words must be nonempty");
    for (std::size_t i = 0; i < dfas.size(); ++i)
        if (!is_subset_of_word_chain(dfas[i], words, ChainMode::star))
            throw InputError("automaton " + std::to_string(i) + " is not contained in the word chain");
    SparseReductionInstance out;
    out.automata = dfas;
    out.words = words;
    int k = static_cast<int>(dfas.size()), m = static_cast<int>(words.size());
    int nclasses = k * m + 1;
    out.graph.classes.assign(static_cast<std::size_t>(nclasses), {});
    out.epsilon = std::all_of(dfas.begin(), dfas.end(), [](const Dfa& d) { return d.is_final(d.initial()); });
    if (out.epsilon) {
        out.graph.graph = Graph(nclasses);
        for (int c = 0; c < nclasses; ++c) {
            out.graph.classes[static_cast<std::size_t>(c)].push_back(c);
            SparseVertex v;
            v.kind = SparseVertexKind::dummy;
            out.vertex_data.push_back(v);
            for (int d = c + 1; d < nclasses; ++d) out.graph.graph.add_edge(c, d);
        }
        return out;
    }

    std::vector<std::vector<std::vector<int>>> enc(dfas.size());
    for (std::size_t i = 0; i < dfas.size(); ++i)
        for (const auto& w : words) enc[i].push_back(dfas[i].encode(w));

    std::vector<std::vector<int>> patterns;
    if (only_patterns) {
        patterns = *only_patterns;
        for (const auto& p : patterns)
            if (p.size() != words.size() || std::count(p.begin(), p.end(), 1) == 0)
                throw InputError("pattern must be a nonzero 0/1 vector over the words");
    } else if (m > 0) {
        if (m > 20) throw ResourceError("sparse_to_mcclique: too many words for pattern enumeration");
        for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
            std::vector<int> p(static_cast<std::size_t>(m));
            for (int j = 0; j < m; ++j) p[static_cast<std::size_t>(j)] = (mask >> j) & 1U;
            patterns.push_back(std::move(p));
        }
    }

    std::vector<std::pair<int, int>> edges;
    for (const auto& pat : patterns) {
        SparseSubInstance sub;
        sub.pattern = pat;
        for (int j = 0; j < m; ++j)
            if (pat[static_cast<std::size_t>(j)]) sub.blocks.push_back(j);
        int sid = static_cast<int>(out.subs.size());
        int mp = static_cast<int>(sub.blocks.size());
        std::size_t first = out.vertex_data.size();
        auto add = [&](SparseVertex v, int cls) {
            if (out.vertex_data.size() >= caps.reduction_vertices)
                throw ResourceError("sparse_to_mcclique: more than " + std::to_string(caps.reduction_vertices) + " vertices");
            out.graph.classes[static_cast<std::size_t>(cls)].push_back(static_cast<int>(out.vertex_data.size()));
            out.vertex_data.push_back(std::move(v));
        };
        for (int i = 0; i < k; ++i) {
            const Dfa& d = dfas[static_cast<std::size_t>(i)];
            int n = d.state_count();
            const auto& e = enc[static_cast<std::size_t>(i)];
            // good[t]: states from which blocks t+1.. can still reach a final state
            std::vector<std::vector<char>> good(static_cast<std::size_t>(mp), std::vector<char>(static_cast<std::size_t>(n), 0));
            for (int q : d.finals()) good[static_cast<std::size_t>(mp - 1)][static_cast<std::size_t>(q)] = 1;
            for (int t = mp - 2; t >= 0; --t)
                for (int q = 0; q < n; ++q) {
                    auto o = d.orbit(q, e[static_cast<std::size_t>(sub.blocks[static_cast<std::size_t>(t + 1)])]);
                    for (int r = 1; r <= n; ++r)
                        if (good[static_cast<std::size_t>(t + 1)][static_cast<std::size_t>(o->at(r))]) {
                            good[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)] = 1;
                            break;
                        }
                }
            std::vector<std::pair<std::vector<int>, int>> layer{{std::vector<int>(static_cast<std::size_t>(m), 0), d.initial()}};
            for (int t = 0; t < mp; ++t) {
                int j = sub.blocks[static_cast<std::size_t>(t)];
                std::vector<std::pair<std::vector<int>, int>> next;
                for (const auto& [exps, q] : layer) {
                    auto o = d.orbit(q, e[static_cast<std::size_t>(j)]);
                    for (int r = 1; r <= n; ++r) {
                        int s = o->at(r);
                        if (!good[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]) continue;
                        SparseVertex v;
                        v.sub = sid;
                        v.automaton = i;
                        v.position = t;
                        v.exponents = exps;
                        v.exponents[static_cast<std::size_t>(j)] = r;
                        v.state = s;
                        auto after = d.orbit(s, e[static_cast<std::size_t>(j)]);
                        v.cls = after->tail == 0 ? VertexClass{true, after->cycle} : VertexClass{false, 0};
                        next.emplace_back(v.exponents, s);
                        add(std::move(v), i * mp + t);
                    }
                }
                layer = std::move(next);
            }
        }
        SparseVertex f;
        f.kind = SparseVertexKind::final_marker;
        f.sub = sid;
        add(f, k * mp);
        for (int c = k * mp + 1; c < nclasses; ++c) {
            SparseVertex dummy;
            dummy.kind = SparseVertexKind::dummy;
            dummy.sub = sid;
            add(dummy, c);
        }
        std::size_t last = out.vertex_data.size();
        for (std::size_t u = first; u < last; ++u)
            for (std::size_t v = u + 1; v < last; ++v) {
                const auto& a = out.vertex_data[u];
                const auto& b = out.vertex_data[v];
                if (a.kind == SparseVertexKind::regular && b.kind == SparseVertexKind::regular && a.automaton == b.automaton &&
                    a.position == b.position)
                    continue;
                if (detail::sparse_adjacent(a, b, mp - 1, dfas)) edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
            }
        out.subs.push_back(std::move(sub));
    }
    out.graph.graph = Graph(static_cast<int>(out.vertex_data.size()), edges);
    return out;
}

inline RunLengthWord extract_witness_from_clique(const SparseReductionInstance& sri, const std::vector<int>& clique) {
    RunLengthWord w;
    if (sri.epsilon) return w;
    if (clique.size() != sri.graph.classes.size()) throw InternalError("selection does not pick one vertex per class");
    for (std::size_t a = 0; a < clique.size(); ++a)
        for (std::size_t b = a + 1; b < clique.size(); ++b)
            if (!sri.graph.graph.adjacent(clique[a], clique[b])) throw InternalError("selection is not a clique");
    int sid = sri.vertex_data[static_cast<std::size_t>(clique.front())].sub;
    const auto& sub = sri.subs[static_cast<std::size_t>(sid)];
    for (std::size_t t = 0; t < sub.blocks.size(); ++t) {
        int j = sub.blocks[t];
        std::optional<BigInt> fixed;
        CongruenceSystem cycles;
        for (int v : clique) {
            const auto& sv = sri.vertex_data[static_cast<std::size_t>(v)];
            if (sv.sub != sid) throw InternalError("clique spans several sub-instances");
            if (sv.kind != SparseVertexKind::regular || sv.position != static_cast<int>(t)) continue;
            int r = sv.exponents[static_cast<std::size_t>(j)];
            if (!sv.cls.cycle) {
                if (fixed && *fixed != r) throw InternalError("tail equations disagree");
                fixed = BigInt(r);
            } else {
                cycles.push_back({r % sv.cls.N, sv.cls.N, BigInt(r)});
            }
        }
        BigInt s;
        if (fixed) {
            s = *fixed;
            for (const auto& c : cycles)
                if (mod_floor(s - c.residue, c.modulus) != 0 || s < *c.threshold) throw InternalError("fixed value violates a cycle equation");
        } else {
            if (cycles.empty()) throw InternalError("no equation for a block");
            auto sol = crt_solve(cycles);
            if (!sol) throw InternalError("cycle equations have no common solution");
            s = sol->min_value;
        }
        w.blocks.push_back({sri.words[static_cast<std::size_t>(j)], s});
    }
    for (std::size_t i = 0; i < sri.automata.size(); ++i)
        if (!accepts_rl(sri.automata[i], w)) throw InternalError("extracted word rejected by automaton " + std::to_string(i));
    return w;
}

inline std::vector<Table> mcclique_to_tnej(const MulticoloredGraph& mg) {
    mg.validate();
    int n = mg.graph.vertex_count();
    std::vector<std::string> labels;
    for (int v = 0; v < n; ++v) labels.push_back("v" + std::to_string(v));
    std::vector<Table> out;
    for (const auto& cls : mg.classes) {
        std::vector<std::vector<std::string>> rows;
        for (int v : cls) {
            std::vector<std::string> row;
            for (int w = 0; w < n; ++w) row.push_back(w == v ? "1" : mg.graph.adjacent(v, w) ? "*" : "0");
            rows.push_back(std::move(row));
        }
        out.push_back(Table::binary(labels, rows));
    }
    return out;
}

}  // namespace ikit
