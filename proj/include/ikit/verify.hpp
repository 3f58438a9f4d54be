#pragma once

#include "ikit/gen.hpp"
#include "ikit/reductions.hpp"
#include "ikit/serialize.hpp"

#include <functional>
#include <map>

namespace ikit {

struct SuiteReport {
    std::string name;
    bool asserted = true;  // false: agreement is measured and reported only
    std::size_t instances = 0;
    std::size_t agreements = 0;
    std::size_t disagreement_count = 0;
    std::vector<std::pair<std::size_t, Json>> disagreements;  // (size, counterexample), smallest first
    Json extra = Json::object();

    static constexpr std::size_t kept = 10;

    explicit SuiteReport(std::string n, bool assert_agreement = true) : name(std::move(n)), asserted(assert_agreement) {}

    void record(bool agree, std::size_t size, const std::function<Json()>& describe) {
        ++instances;
        if (agree) {
            ++agreements;
            return;
        }
        ++disagreement_count;
        disagreements.emplace_back(size, describe());
        std::stable_sort(disagreements.begin(), disagreements.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        if (disagreements.size() > kept) disagreements.pop_back();
    }

    double agreement_rate() const { return instances ? static_cast<double>(agreements) / static_cast<double>(instances) : 1.0; }
    bool passed() const { return !asserted || disagreement_count == 0; }

    Json to_json() const {
        Json j;
        j["suite"] = name;
        j["contract"] = asserted ? "asserted" : "measured";
        j["instances"] = instances;
        j["agreements"] = agreements;
        j["agreement_rate"] = agreement_rate();
        j["disagreement_count"] = disagreement_count;
        Json ds = Json::array();
        for (const auto& d : disagreements) ds.push_back(d.second);
        j["disagreements"] = ds;
        for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
        return j;
    }
};

namespace suites {

using gen::Rng;
using gen::uniform;

inline SuiteReport sat3_unary(std::size_t n, std::uint64_t seed) {
    SuiteReport r{"sat3-unary"};
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        auto f = gen::random_cnf(rng, uniform(rng, 1, 4), uniform(rng, 1, 4));
        bool src = solve_sat_brute(f).has_value();
        auto dfas = sat3_to_unary_dfas(f);
        bool tgt = intersect_unary(IntersectionInstance(dfas)).nonempty;
        r.record(src == tgt, f.clauses.size() * 10 + static_cast<std::size_t>(f.variable_count),
                 [&] { return Json{{"cnf", to_dimacs(f)}, {"satisfiable", src}, {"nonempty", tgt}}; });
    }
    return r;
}

inline SuiteReport clique_unary(std::size_t n, std::uint64_t seed) {
    SuiteReport r{"clique-unary"};
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        int v = uniform(rng, 1, 7), k = uniform(rng, 1, 3);
        auto g = gen::random_graph(rng, v, uniform(rng, 3, 8) / 10.0);
        bool src = solve_clique(g, k).has_value();
        auto red = clique_to_unary_dfas(g, k);
        bool tgt = intersect_unary(IntersectionInstance(red.dfas)).nonempty;
        if (red.direct && *red.direct != tgt) throw InternalError("clique-unary: direct answer disagrees with its marker automaton");
        r.record(src == tgt, static_cast<std::size_t>(v * 10 + k), [&] { return Json{{"graph", graph_to_json(g, k)}, {"clique", src}, {"nonempty", tgt}}; });
    }
    return r;
}

inline Hypergraph small_hypergraph(Rng& rng) {
    int v = uniform(rng, 1, 6);
    return gen::random_hypergraph(rng, v, uniform(rng, 1, 5), 3);
}

inline SuiteReport hs_comm(std::size_t n, std::uint64_t seed) {
    SuiteReport r{"hs-comm"};
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        auto h = small_hypergraph(rng);
        int k = uniform(rng, 0, 3);
        bool src = solve_hitting_set(h, k).has_value();
        auto red = hittingset_to_commutative_bdfa(h, k);
        for (const auto& d : red.dfas)
            if (!is_commutative(d)) throw InternalError("hs-comm produced a non-commutative automaton");
        bool tgt = intersect_bounded(IntersectionInstance(red.dfas), red.ell, red.mode).nonempty;
        r.record(src == tgt, static_cast<std::size_t>(h.vertex_count * 10) + h.hyperedges.size(),
                 [&] { return Json{{"hypergraph", hypergraph_to_json(h, k)}, {"hitting_set", src}, {"nonempty", tgt}}; });
    }
    return r;
}

inline SuiteReport hs_sbounded(std::size_t n, std::uint64_t seed) {
    SuiteReport r{"hs-sbounded", false};
    Rng rng(seed);
    std::size_t direct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto h = small_hypergraph(rng);
        int k = uniform(rng, 0, 3);
        bool src = solve_hitting_set(h, k).has_value();
        auto red = hittingset_to_strictbounded_bdfa(h, k);
        for (const auto& d : red.dfas)
            if (!is_strictly_bounded(d)) throw InternalError("hs-sbounded produced an automaton that is not strictly bounded");
        bool tgt;
        if (red.direct) {
            tgt = *red.direct;
            ++direct;
        } else {
            tgt = intersect_bounded(IntersectionInstance(red.dfas), red.ell, red.mode).nonempty;
        }
        r.record(src == tgt, static_cast<std::size_t>(h.vertex_count * 10) + h.hyperedges.size(),
                 [&] { return Json{{"hypergraph", hypergraph_to_json(h, k)}, {"hitting_set", src}, {"nonempty", tgt}}; });
    }
    r.extra["decided_directly"] = direct;
    return r;
}

// Checks u = a_1^{v_1}...a_n^{v_n} in L(A_i) against the strand characterization for every u.
inline std::pair<std::size_t, std::size_t> ds_characterization(const Graph& g, const std::vector<Nfa>& nfas) {
    int n = g.vertex_count();
    std::size_t checked = 0, failures = 0;
    std::vector<int> v(static_cast<std::size_t>(n), 1);
    while (true) {
        Word u;
        for (int j = 1; j <= n; ++j) u.push_back(domset_letter(j, v[static_cast<std::size_t>(j - 1)]));
        for (std::size_t i = 1; i <= nfas.size(); ++i) {
            auto nd = non_dominated(g, v[i - 1]);
            bool expect = true;
            for (int j = 1; j <= n; ++j)
                if (static_cast<std::size_t>(j) != i && std::find(nd.begin(), nd.end(), v[static_cast<std::size_t>(j - 1)]) == nd.end())
                    expect = false;
            ++checked;
            if (accepts(nfas[i - 1], u) != expect) ++failures;
        }
        int p = 0;
        while (p < n && ++v[static_cast<std::size_t>(p)] > n) v[static_cast<std::size_t>(p++)] = 1;
        if (p == n) break;
    }
    return {checked, failures};
}

inline SuiteReport ds_nfa(std::size_t n, std::uint64_t seed) {
    SuiteReport r{"ds-nfa", false};
    Rng rng(seed);
    std::size_t checked = 0, failures = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int v = uniform(rng, 1, 6), k = uniform(rng, 1, std::min(2, v));
        auto g = gen::random_graph(rng, v, uniform(rng, 2, 7) / 10.0);
        auto nfas = domset_to_nfas(g, k);
        if (v <= 5) {
            auto [c, f] = ds_characterization(g, nfas);
            checked += c;
            failures += f;
        }
        bool ds = solve_dominating_set(g, k).has_value();
        bool nonempty = intersect_general(IntersectionInstance(std::vector<Automaton>(nfas.begin(), nfas.end()))).nonempty;
        r.record(ds == !nonempty, static_cast<std::size_t>(v * 100) + g.edge_count(),
                 [&] { return Json{{"graph", graph_to_json(g, k)}, {"dominating_set", ds}, {"nonempty", nonempty}}; });
    }
    r.extra["characterization_words_checked"] = checked;
    r.extra["characterization_failures"] = failures;
    return r;
}

inline std::vector<Word> random_chain_words(Rng& rng, const std::vector<Symbol>& sigma, int m) {
    std::vector<Word> ws;
    for (int j = 0; j < m; ++j) {
        Word w;
        int len = uniform(rng, 1, 2);
        for (int i = 0; i < len; ++i) w.push_back(sigma[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(sigma.size()) - 1))]);
        ws.push_back(w);
    }
    return ws;
}

inline SuiteReport sparse_mcc(std::size_t n, std::uint64_t seed) {
    SuiteReport r{"sparse-mcc"};
    Rng rng(seed);
    auto sigma = gen::letters(2);
    std::size_t yes = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto words = random_chain_words(rng, sigma, uniform(rng, 1, 3));
        std::vector<Dfa> dfas;
        int k = uniform(rng, 1, 2);
        for (int a = 0; a < k; ++a) dfas.push_back(gen::chain_bounded_dfa(rng, sigma, words, 5));
        bool src = intersect_general(IntersectionInstance(dfas)).nonempty;
        auto sri = sparse_to_mcclique(dfas, words);
        auto clique = solve_multicolored_clique(sri.graph);
        if (clique) extract_witness_from_clique(sri, *clique);
        bool tgt = clique.has_value();
        yes += tgt;
        r.record(src == tgt, words.size() * 10 + dfas.size(),
                 [&] { return Json{{"automata", automata_set_to_json(dfas, words)}, {"nonempty", src}, {"clique", tgt}}; });
    }
    r.extra["yes_instances"] = yes;
    return r;
}

inline SuiteReport mcc_tnej(std::size_t n, std::uint64_t seed) {
    SuiteReport r{"mcc-tnej"};
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        auto mg = gen::random_multicolored(rng, uniform(rng, 1, 3), 4, uniform(rng, 3, 8) / 10.0);
        bool src = solve_multicolored_clique(mg).has_value();
        bool tgt = tnej_brute(mcclique_to_tnej(mg)).has_value();
        r.record(src == tgt, static_cast<std::size_t>(mg.graph.vertex_count()),
                 [&] { return Json{{"graph", multicolored_to_json(mg)}, {"clique", src}, {"tnej", tgt}}; });
    }
    return r;
}

inline std::vector<Table> small_tables(Rng& rng) {
    int k = uniform(rng, 1, 3);
    if (gen::coin(rng, 0.5)) return gen::random_binary_tables(rng, k, 3, 4);
    return gen::random_tables(rng, k, 3, 4);
}

inline SuiteReport tnej_clique(std::size_t n, std::uint64_t seed) {
    SuiteReport r{"tnej-clique"};
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        auto ts = small_tables(rng);
        bool src = tnej_brute(ts).has_value();
        auto red = tnej_to_clique(ts);
        bool tgt = solve_clique(red.graph.graph, red.k).has_value();
        r.record(src == tgt, ts.size(), [&] { return Json{{"tables", table_set_to_json(ts)}, {"tnej", src}, {"clique", tgt}}; });
    }
    return r;
}

inline SuiteReport tnej_vc(std::size_t n, std::uint64_t seed) {
    SuiteReport r{"tnej-vc"};
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        auto ts = small_tables(rng);
        bool src = tnej_brute(ts).has_value();
        auto red = tnej_to_vertex_cover(ts);
        bool tgt = solve_vertex_cover(red.graph, red.budget).has_value();
        r.record(src == tgt, ts.size(), [&] { return Json{{"tables", table_set_to_json(ts)}, {"tnej", src}, {"vertex_cover", tgt}}; });
    }
    return r;
}

// |witness| <= |Sigma| * s^k and sorted, for commutative instances.
inline SuiteReport commutative_bounds(std::size_t n, std::uint64_t seed) {
    SuiteReport r{"commutative-bounds"};
    Rng rng(seed);
    std::size_t nonempty = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto sigma = gen::letters(uniform(rng, 1, 3));
        int k = uniform(rng, 1, 3);
        std::vector<Dfa> dfas;
        for (int a = 0; a < k; ++a) dfas.push_back(gen::commutative_dfa(rng, sigma, 4));
        IntersectionInstance inst(dfas);
        auto rep = intersect_commutative(inst);
        bool ok = true;
        if (rep.nonempty) {
            ++nonempty;
            auto word = expand(*rep.witness);
            BigInt limit = BigInt(sigma.size()) * detail::power(inst.max_states(), dfas.size());
            ok = BigInt(word.size()) <= limit && word == sort_word(word, sigma);
        }
        r.record(ok, static_cast<std::size_t>(k), [&] {
            Json j{{"automata", automata_set_to_json(dfas)}};
            if (rep.witness) j["witness"] = rlw_to_json(*rep.witness);
            return j;
        });
    }
    r.extra["nonempty_instances"] = nonempty;
    return r;
}

// Every block exponent of a sparse witness is at most n^k.
inline SuiteReport sparse_bounds(std::size_t n, std::uint64_t seed) {
    SuiteReport r{"sparse-bounds"};
    Rng rng(seed);
    std::size_t nonempty = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto sigma = gen::letters(2);
        int k = uniform(rng, 1, 3);
        std::vector<Dfa> dfas;
        for (int a = 0; a < k; ++a) dfas.push_back(gen::polycyclic_dfa(rng, sigma, uniform(rng, 1, 3), 3, 0.5));
        IntersectionInstance inst(dfas);
        auto rep = intersect_sparse(inst);
        bool ok = true;
        if (rep.nonempty) {
            ++nonempty;
            BigInt limit = detail::power(inst.max_states(), dfas.size());
            for (const auto& b : rep.witness->blocks) ok = ok && b.exponent <= limit;
        }
        r.record(ok, static_cast<std::size_t>(k), [&] {
            Json j{{"automata", automata_set_to_json(dfas)}};
            if (rep.witness) j["witness"] = rlw_to_json(*rep.witness);
            return j;
        });
    }
    r.extra["nonempty_instances"] = nonempty;
    return r;
}

// Random instances from every class; each applicable specialized solver must match intersect_general.
inline SuiteReport cross_solver(std::size_t n, std::uint64_t seed) {
    SuiteReport r{"cross-solver"};
    Rng rng(seed);
    std::map<std::string, std::size_t> runs;
    for (std::size_t i = 0; i < n; ++i) {
        int k = uniform(rng, 1, 3);
        std::vector<Dfa> dfas;
        switch (i % 4) {
            case 0:
                for (int a = 0; a < k; ++a) dfas.push_back(gen::random_unary_dfa(rng, uniform(rng, 0, 3), uniform(rng, 1, 5)));
                break;
            case 1: {
                auto sigma = gen::letters(uniform(rng, 2, 3));
                for (int a = 0; a < k; ++a) dfas.push_back(gen::commutative_dfa(rng, sigma, 6));
                break;
            }
            case 2: {
                auto sigma = gen::letters(2);
                for (int a = 0; a < k; ++a) dfas.push_back(gen::polycyclic_dfa(rng, sigma, uniform(rng, 1, 3)));
                break;
            }
            default: {
                auto sigma = gen::letters(2);
                for (int a = 0; a < k; ++a) dfas.push_back(gen::random_dfa(rng, sigma, uniform(rng, 1, 5)));
            }
        }
        IntersectionInstance inst(dfas);
        bool reference = intersect_general(inst).nonempty;
        bool agree = true;
        Json answers{{"general", reference}};
        auto check = [&](const std::string& name, bool applicable) {
            if (!applicable) return;
            bool got = intersect_with(name, inst).nonempty;
            ++runs[name];
            answers[name] = got;
            agree = agree && got == reference;
        };
        check("unary", inst.alphabet().size() == 1);
        check("commutative", std::all_of(dfas.begin(), dfas.end(), [](const Dfa& d) { return is_commutative(d); }));
        check("sparse", std::all_of(dfas.begin(), dfas.end(), [](const Dfa& d) { return is_sparse(d); }));
        r.record(agree, static_cast<std::size_t>(k), [&] { return Json{{"automata", automata_set_to_json(dfas)}, {"answers", answers}}; });
    }
    Json j = Json::object();
    for (const auto& [name, c] : runs) j[name] = c;
    r.extra["specialized_runs"] = j;
    return r;
}

}  // namespace suites

struct SuiteInfo {
    std::string name;
    std::size_t default_instances;
    std::function<SuiteReport(std::size_t, std::uint64_t)> run;
};

inline const std::vector<SuiteInfo>& suite_registry() {
    static const std::vector<SuiteInfo> reg = {
        {"sat3-unary", 300, suites::sat3_unary},
        {"clique-unary", 300, suites::clique_unary},
        {"hs-comm", 300, suites::hs_comm},
        {"hs-sbounded", 200, suites::hs_sbounded},
        {"ds-nfa", 200, suites::ds_nfa},
        {"sparse-mcc", 300, suites::sparse_mcc},
        {"mcc-tnej", 300, suites::mcc_tnej},
        {"tnej-clique", 300, suites::tnej_clique},
        {"tnej-vc", 300, suites::tnej_vc},
        {"commutative-bounds", 200, suites::commutative_bounds},
        {"sparse-bounds", 100, suites::sparse_bounds},
        {"cross-solver", 500, suites::cross_solver},
    };
    return reg;
}

inline SuiteReport run_suite(const std::string& name, std::optional<std::size_t> instances, std::uint64_t seed) {
    for (const auto& s : suite_registry())
        if (s.name == name) return s.run(instances.value_or(s.default_instances), seed);
    throw InputError("unknown suite: " + name);
}

}  // namespace ikit
