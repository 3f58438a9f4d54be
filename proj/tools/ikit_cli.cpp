#include "ikit/verify.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace ikit;

namespace {

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

Json load(const std::string& path) { return parse_json(read_text(path), path); }

int resolve_k(const Json& j, std::optional<int> flag) {
    if (flag) return *flag;
    if (j.contains("k") && j["k"].is_number_integer()) return j["k"].get<int>();
    throw InputError("parameter k missing: pass --k or add \"k\" to the instance");
}

Json class_flags(const Dfa& d) {
    Json j;
    j["unary"] = d.alphabet_size() == 1;
    j["commutative"] = is_commutative(d);
    j["strictly_bounded"] = is_strictly_bounded(d);
    auto t = trim(d);
    auto info = is_polycyclic(t);
    j["sparse"] = info.is_polycyclic;
    if (d.alphabet_size() == 1) {
        auto p = unary_profile(d);
        j["unary_profile"] = {{"index", p.index}, {"period", p.period}, {"tail_acceptance", p.tail_acceptance},
                              {"cycle_acceptance", p.cycle_acceptance}, {"finite", p.finite}};
    }
    Json pc;
    pc["trimmed"] = automaton_to_json(t);
    pc["is_polycyclic"] = info.is_polycyclic;
    pc["scc_partition"] = info.scc_partition;
    Json cw = Json::array();
    for (const auto& u : info.cycle_word) cw.push_back(u ? word_to_json(*u) : Json());
    pc["cycle_words"] = cw;
    if (info.failing_component) {
        pc["failing_component"] = *info.failing_component;
        pc["failing_states"] = info.failing_states;
    }
    j["polycyclic"] = pc;
    if (auto v = find_commutativity_violation(d)) j["commutativity_violation"] = {{"state", v->state}, {"a", v->a}, {"b", v->b}};
    return j;
}

Json vertex_json(const SparseVertex& v) {
    static const char* kinds[] = {"regular", "final", "dummy"};
    Json j{{"kind", kinds[static_cast<int>(v.kind)]}, {"sub", v.sub}};
    if (v.kind == SparseVertexKind::regular) {
        j["automaton"] = v.automaton;
        j["position"] = v.position;
        j["exponents"] = v.exponents;
        j["class"] = v.cls.cycle ? Json{{"cycle", v.cls.N}} : Json("tail");
        j["state"] = v.state;
    }
    return j;
}

struct Reduced {
    Json instance;
    Json meta;
};

Reduced reduce(const std::string& name, const std::string& in, std::optional<int> kflag, const Caps& caps) {
    Reduced r;
    r.meta["reduction"] = name;
    if (name == "sat3-unary") {
        auto f = parse_dimacs(read_text(in));
        auto dfas = sat3_to_unary_dfas(f);
        r.instance = automata_set_to_json(dfas);
        r.meta["variables"] = f.variable_count;
        r.meta["clauses"] = f.clauses.size();
        r.meta["moduli"] = first_n_primes(static_cast<std::size_t>(f.variable_count));
        return r;
    }
    Json j = load(in);
    if (name == "clique-unary") {
        auto g = graph_from_json(j);
        int k = resolve_k(j, kflag);
        auto red = clique_to_unary_dfas(g, k);
        r.instance = automata_set_to_json(red.dfas);
        r.meta["k"] = k;
        r.meta["moduli"] = red.moduli;
        if (red.direct) r.meta["direct_answer"] = *red.direct;
    } else if (name == "hs-comm" || name == "hs-sbounded") {
        auto h = hypergraph_from_json(j);
        int k = resolve_k(j, kflag);
        auto red = name == "hs-comm" ? hittingset_to_commutative_bdfa(h, k) : hittingset_to_strictbounded_bdfa(h, k);
        r.instance = automata_set_to_json(red.dfas);
        r.instance["bound"] = red.ell;
        r.instance["mode"] = red.mode == BoundMode::exact ? "exact" : "at-most";
        r.meta["k"] = k;
        r.meta["bound"] = red.ell;
        r.meta["mode"] = red.mode == BoundMode::exact ? "exact" : "at-most";
        if (red.direct) r.meta["direct_answer"] = *red.direct;
    } else if (name == "ds-nfa") {
        auto g = graph_from_json(j);
        int k = resolve_k(j, kflag);
        r.instance = automata_set_to_json(domset_to_nfas(g, k));
        r.meta["k"] = k;
        r.meta["vertex_numbering"] = "1-based: graph vertex v is vertex v+1";
    } else if (name == "sparse-mcc") {
        auto set = automata_set_from_json(j);
        if (!set.words) throw InputError("sparse-mcc needs a \"words\" field listing the chain words");
        IntersectionInstance inst(set.automata);
        auto sri = sparse_to_mcclique(inst.dfas(), *set.words, caps);
        r.instance = multicolored_to_json(sri.graph);
        r.meta["epsilon"] = sri.epsilon;
        Json subs = Json::array();
        for (const auto& s : sri.subs) subs.push_back(s.pattern);
        r.meta["patterns"] = subs;
        Json vd = Json::array();
        for (const auto& v : sri.vertex_data) vd.push_back(vertex_json(v));
        r.meta["vertex_data"] = vd;
    } else if (name == "mcc-tnej") {
        r.instance = table_set_to_json(mcclique_to_tnej(multicolored_from_json(j)));
    } else if (name == "tnej-clique" || name == "tnej-vc") {
        auto ts = table_set_from_json(j);
        std::vector<std::pair<int, int>> origin;
        if (name == "tnej-clique") {
            auto red = tnej_to_clique(ts);
            r.instance = multicolored_to_json(red.graph);
            r.instance["k"] = red.k;
            r.meta["k"] = red.k;
            origin = red.origin;
        } else {
            auto red = tnej_to_vertex_cover(ts);
            r.instance = graph_to_json(red.graph);
            r.instance["budget"] = red.budget;
            r.meta["budget"] = red.budget;
            origin = red.origin;
        }
        Json o = Json::array();
        for (auto [t, row] : origin) o.push_back({{"table", t}, {"row", row}});
        r.meta["origin"] = o;
    } else {
        throw InputError("unknown reduction: " + name);
    }
    return r;
}

Json generate(const std::string& kind, gen::Rng& rng, const std::map<std::string, double>& p) {
    auto get = [&](const char* key, double dflt) {
        auto it = p.find(key);
        return it == p.end() ? dflt : it->second;
    };
    auto geti = [&](const char* key, int dflt) { return static_cast<int>(get(key, dflt)); };
    if (kind == "dfa") return automaton_to_json(gen::random_dfa(rng, gen::letters(geti("letters", 2)), geti("states", 4)));
    if (kind == "nfa") return automaton_to_json(gen::random_nfa(rng, gen::letters(geti("letters", 2)), geti("states", 4)));
    if (kind == "unary-dfa") {
        int states = geti("states", 5);
        int tail = gen::uniform(rng, 0, states - 1);
        return automaton_to_json(gen::random_unary_dfa(rng, tail, states - tail));
    }
    if (kind == "commutative-dfa") {
        // --states is per letter; the product has at most states^letters states
        int letters = geti("letters", 2), per = geti("states", 3);
        int total = 1;
        for (int i = 0; i < letters; ++i) total *= per;
        return automaton_to_json(gen::commutative_dfa(rng, gen::letters(letters), total));
    }
    if (kind == "polycyclic-dfa")
        return automaton_to_json(gen::polycyclic_dfa(rng, gen::letters(geti("letters", 2)), geti("cycles", 3)));
    if (kind == "graph") {
        auto g = gen::random_graph(rng, geti("vertices", 6), get("edge-prob", 0.5));
        return graph_to_json(g, p.count("k") ? std::optional<int>(geti("k", 2)) : std::nullopt);
    }
    if (kind == "multicolored-graph")
        return multicolored_to_json(gen::random_multicolored(rng, geti("classes", 3), geti("per-class", 3), get("edge-prob", 0.5)));
    if (kind == "hypergraph")
        return hypergraph_to_json(gen::random_hypergraph(rng, geti("vertices", 6), geti("edges", 4), geti("max-edge", 3)),
                                  p.count("k") ? std::optional<int>(geti("k", 2)) : std::nullopt);
    if (kind == "table-set") return table_set_to_json(gen::random_binary_tables(rng, geti("tables", 3), geti("cols", 3), geti("rows", 3)));
    throw InputError("unknown generator kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"intersect-kit: automata intersection solvers, reductions and table joins"};
    app.require_subcommand(1);

    std::string file, out;
    std::vector<std::string> files;

    auto* classify = app.add_subcommand("classify", "structural flags and certificates of one automaton");
    classify->add_option("file", file, "automaton file")->required();

    std::string solver = "auto", mode = "exact";
    std::optional<std::uint64_t> bound;
    auto* intersect = app.add_subcommand("intersect", "decide intersection nonemptiness");
    intersect->add_option("files", files, "automaton or automata-set files")->required();
    intersect->add_option("--solver", solver, "auto|general|unary|commutative|sparse")
        ->check(CLI::IsMember({"auto", "general", "unary", "commutative", "sparse"}));
    intersect->add_option("--bound", bound, "word length bound");
    auto* mode_opt = intersect->add_option("--mode", mode, "exact|at-most")->check(CLI::IsMember({"exact", "at-most"}));

    std::string name;
    std::optional<int> k;
    auto* red = app.add_subcommand("reduce", "apply a reduction; metadata goes to OUT.meta.json");
    red->add_option("name", name, "sat3-unary|clique-unary|hs-comm|hs-sbounded|ds-nfa|sparse-mcc|mcc-tnej|tnej-clique|tnej-vc")->required();
    red->add_option("in", file, "input instance")->required();
    red->add_option("out", out, "output instance file");
    red->add_option("--k", k, "parameter k (overrides the instance's \"k\")");

    auto* join = app.add_subcommand("join", "generalized natural join");
    join->add_option("files", files, "table or table-set files")->required();
    join->add_option("-o,--out", out, "output file");

    std::optional<std::size_t> instances;
    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "run an equivalence suite");
    verify->add_option("name", name, "suite name or 'all'")->required();
    verify->add_option("--instances", instances, "instance count");
    verify->add_option("--seed", seed, "seed");

    std::string kind;
    std::map<std::string, double> params;
    auto* gen_cmd = app.add_subcommand("gen", "seeded random instance");
    gen_cmd->add_option("kind", kind, "dfa|nfa|unary-dfa|commutative-dfa|polycyclic-dfa|graph|multicolored-graph|hypergraph|table-set")->required();
    gen_cmd->add_option("--seed", seed, "seed");
    gen_cmd->add_option("-o,--out", out, "output file");
    for (const char* opt : {"letters", "states", "cycles", "vertices", "edge-prob", "edges", "max-edge", "classes", "per-class",
                            "tables", "rows", "cols", "k"})
        gen_cmd->add_option_function<double>(std::string("--") + opt, [&params, opt](double v) { params[opt] = v; })
            ->type_name(std::string(opt) == "edge-prob" ? "P" : "N");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Caps caps = Caps::from_env();
        bool mode_given = mode_opt->count() > 0;
        if (*classify) {
            auto parsed = automaton_from_json(load(file));
            if (!std::holds_alternative<Dfa>(parsed.automaton)) throw PreconditionError("classify needs a deterministic automaton");
            Json j = class_flags(std::get<Dfa>(parsed.automaton));
            write_out("", dump(j));
        } else if (*intersect) {
            IntersectionInstance inst;
            for (const auto& f : files) {
                Json j = load(f);
                auto set = automata_set_from_json(j);
                inst.automata.insert(inst.automata.end(), set.automata.begin(), set.automata.end());
                // bounded instances written by reduce carry their own bound
                if (!bound && j.is_object() && j.contains("bound")) {
                    bound = j["bound"].get<std::uint64_t>();
                    if (!mode_given && j.contains("mode")) mode = j["mode"].get<std::string>();
                }
            }
            WitnessReport rep;
            if (bound) rep = intersect_bounded(inst, *bound, mode == "exact" ? BoundMode::exact : BoundMode::at_most, caps);
            else rep = intersect_with(solver, inst, caps);
            write_out("", dump(report_to_json(rep)));
        } else if (*red) {
            auto r = reduce(name, file, k, caps);
            if (out.empty()) {
                write_out("", dump(Json{{"instance", r.instance}, {"meta", r.meta}}));
            } else {
                write_out(out, dump(r.instance));
                write_out(out + ".meta.json", dump(r.meta));
            }
        } else if (*join) {
            std::vector<Table> ts;
            for (const auto& f : files) {
                auto part = table_set_from_json(load(f));
                ts.insert(ts.end(), part.begin(), part.end());
            }
            write_out(out, dump(table_to_json(natural_join(ts, caps))));
        } else if (*verify) {
            std::vector<std::string> names;
            if (name == "all")
                for (const auto& s : suite_registry()) names.push_back(s.name);
            else
                names.push_back(name);
            Json all = Json::array();
            bool ok = true;
            for (const auto& n : names) {
                auto rep = run_suite(n, instances, seed);
                ok = ok && rep.passed();
                all.push_back(rep.to_json());
            }
            write_out("", dump(names.size() == 1 ? all[0] : all));
            return ok ? 0 : 1;
        } else if (*gen_cmd) {
            gen::Rng rng(seed);
            write_out(out, dump(generate(kind, rng, params)));
        }
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource cap exceeded: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
