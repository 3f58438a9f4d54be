#pragma once

#include "ikit/intersection.hpp"
#include "ikit/solvers.hpp"
#include "ikit/tables.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ikit {

using Json = nlohmann::ordered_json;

namespace detail {

template <class T>
T get_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InputError(std::string("field '") + key + "' has the wrong type");
    }
}

inline void expect_kind(const Json& j, std::initializer_list<const char*> kinds) {
    auto k = get_field<std::string>(j, "kind");
    for (const char* want : kinds)
        if (k == want) return;
    std::string list;
    for (const char* want : kinds) list += (list.empty() ? "" : "|") + std::string(want);
    throw InputError("expected kind " + list + ", got " + k);
}

}  // namespace detail

// automata

inline Json automaton_to_json(const Automaton& a) {
    const auto& b = base_of(a);
    Json j;
    j["kind"] = std::holds_alternative<Dfa>(a) ? "dfa" : "nfa";
    j["alphabet"] = b.alphabet();
    j["states"] = b.state_count();
    j["initial"] = b.initial();
    j["finals"] = b.finals();
    Json tr = Json::array();
    for (int q = 0; q < b.state_count(); ++q)
        for (int s = 0; s < b.alphabet_size(); ++s) {
            std::vector<int> targets;
            if (auto* d = std::get_if<Dfa>(&a)) targets = {d->next(q, s)};
            else targets = std::get<Nfa>(a).next(q, s);
            for (int t : targets) tr.push_back({{"from", q}, {"on", b.alphabet()[static_cast<std::size_t>(s)]}, {"to", t}});
        }
    j["transitions"] = tr;
    return j;
}

inline Json automaton_to_json(const PartialDfa& p) {
    Json j;
    j["kind"] = "pdfa";
    j["alphabet"] = p.alphabet();
    j["states"] = p.state_count();
    j["initial"] = p.initial();
    j["finals"] = p.finals();
    Json tr = Json::array();
    for (int q = 0; q < p.state_count(); ++q)
        for (int s = 0; s < p.alphabet_size(); ++s)
            if (p.next(q, s) != PartialDfa::none)
                tr.push_back({{"from", q}, {"on", p.alphabet()[static_cast<std::size_t>(s)]}, {"to", p.next(q, s)}});
    j["transitions"] = tr;
    return j;
}

struct ParsedAutomaton {
    std::string kind;  // dfa, nfa, pdfa
    Automaton automaton;
};

inline ParsedAutomaton automaton_from_json(const Json& j) {
    detail::expect_kind(j, {"dfa", "nfa", "pdfa"});
    auto kind = detail::get_field<std::string>(j, "kind");
    auto alphabet = detail::get_field<std::vector<std::string>>(j, "alphabet");
    int n = detail::get_field<int>(j, "states");
    int init = detail::get_field<int>(j, "initial");
    auto finals = detail::get_field<std::vector<int>>(j, "finals");
    if (n < 0) throw InputError("negative state count");
    std::unordered_map<std::string, int> idx;
    for (std::size_t i = 0; i < alphabet.size(); ++i) idx[alphabet[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> delta(static_cast<std::size_t>(n) * alphabet.size());
    for (const auto& t : detail::get_field<Json>(j, "transitions")) {
        int from = detail::get_field<int>(t, "from"), to = detail::get_field<int>(t, "to");
        auto on = detail::get_field<std::string>(t, "on");
        auto it = idx.find(on);
        if (it == idx.end()) throw InputError("transition on unknown symbol '" + on + "'");
        if (from < 0 || from >= n || to < 0 || to >= n) throw InputError("transition state out of range");
        delta[static_cast<std::size_t>(from) * alphabet.size() + static_cast<std::size_t>(it->second)].push_back(to);
    }
    if (kind == "nfa") return {kind, Nfa(alphabet, n, std::move(delta), init, finals)};
    std::vector<int> flat;
    for (std::size_t i = 0; i < delta.size(); ++i) {
        auto& d = delta[i];
        if (d.size() > 1) throw InputError("deterministic automaton has two transitions for one (state, symbol)");
        if (d.empty() && kind == "dfa")
            throw InputError("dfa is missing a transition from state " + std::to_string(i / alphabet.size()) + " on '" +
                             alphabet[i % alphabet.size()] + "'");
        flat.push_back(d.empty() ? PartialDfa::none : d.front());
    }
    if (kind == "dfa") return {kind, Dfa(alphabet, n, flat, init, finals)};
    return {kind, PartialDfa(alphabet, n, flat, init, finals).complete()};
}

inline PartialDfa partial_from_json(const Json& j) {
    detail::expect_kind(j, {"pdfa", "dfa"});
    auto alphabet = detail::get_field<std::vector<std::string>>(j, "alphabet");
    int n = detail::get_field<int>(j, "states");
    std::unordered_map<std::string, int> idx;
    for (std::size_t i = 0; i < alphabet.size(); ++i) idx[alphabet[i]] = static_cast<int>(i);
    std::vector<int> flat(static_cast<std::size_t>(std::max(n, 0)) * alphabet.size(), PartialDfa::none);
    for (const auto& t : detail::get_field<Json>(j, "transitions")) {
        int from = detail::get_field<int>(t, "from"), to = detail::get_field<int>(t, "to");
        auto it = idx.find(detail::get_field<std::string>(t, "on"));
        if (it == idx.end()) throw InputError("transition on unknown symbol");
        if (from < 0 || from >= n || to < 0 || to >= n) throw InputError("transition state out of range");
        auto& slot = flat[static_cast<std::size_t>(from) * alphabet.size() + static_cast<std::size_t>(it->second)];
        if (slot != PartialDfa::none) throw InputError("deterministic automaton has two transitions for one (state, symbol)");
        slot = to;
    }
    return PartialDfa(alphabet, n, flat, detail::get_field<int>(j, "initial"), detail::get_field<std::vector<int>>(j, "finals"));
}

inline Json words_to_json(const std::vector<Word>& ws) {
    Json out = Json::array();
    for (const auto& w : ws) out.push_back(w);
    return out;
}

struct AutomataSet {
    std::vector<Automaton> automata;
    std::optional<std::vector<Word>> words;  // chain words, used by sparse-mcc
};

inline Json automata_set_to_json(const std::vector<Automaton>& as, const std::optional<std::vector<Word>>& words = std::nullopt) {
    Json j;
    j["kind"] = "automata-set";
    j["automata"] = Json::array();
    for (const auto& a : as) j["automata"].push_back(automaton_to_json(a));
    if (words) j["words"] = words_to_json(*words);
    return j;
}

inline Json automata_set_to_json(const std::vector<Dfa>& ds, const std::optional<std::vector<Word>>& words = std::nullopt) {
    return automata_set_to_json(std::vector<Automaton>(ds.begin(), ds.end()), words);
}

inline Json automata_set_to_json(const std::vector<Nfa>& ns) {
    return automata_set_to_json(std::vector<Automaton>(ns.begin(), ns.end()));
}

inline AutomataSet automata_set_from_json(const Json& j) {
    AutomataSet out;
    if (j.is_object() && j.contains("kind") && j["kind"] != "automata-set") {
        out.automata.push_back(automaton_from_json(j).automaton);
        return out;
    }
    detail::expect_kind(j, {"automata-set"});
    for (const auto& a : detail::get_field<Json>(j, "automata")) out.automata.push_back(automaton_from_json(a).automaton);
    if (j.contains("words")) out.words = detail::get_field<std::vector<Word>>(j, "words");
    return out;
}

// graphs

inline Json graph_to_json(const Graph& g, std::optional<int> k = std::nullopt) {
    Json j;
    j["kind"] = "graph";
    j["vertices"] = g.vertex_count();
    Json es = Json::array();
    for (auto [u, v] : g.edges()) es.push_back({u, v});
    j["edges"] = es;
    if (k) j["k"] = *k;
    return j;
}

inline Graph graph_from_json(const Json& j) {
    detail::expect_kind(j, {"graph", "multicolored-graph"});
    int n = detail::get_field<int>(j, "vertices");
    if (n < 0) throw InputError("negative vertex count");
    Graph g(n);
    for (const auto& e : detail::get_field<std::vector<std::vector<int>>>(j, "edges")) {
        if (e.size() != 2) throw InputError("edge must have two endpoints");
        if (e[0] < 0 || e[0] >= n || e[1] < 0 || e[1] >= n) throw InputError("edge endpoint out of range");
        g.add_edge(e[0], e[1]);
    }
    return g;
}

inline Json multicolored_to_json(const MulticoloredGraph& mg) {
    Json j = graph_to_json(mg.graph);
    j["kind"] = "multicolored-graph";
    j["classes"] = mg.classes;
    return j;
}

inline MulticoloredGraph multicolored_from_json(const Json& j) {
    detail::expect_kind(j, {"multicolored-graph"});
    MulticoloredGraph mg{graph_from_json(j), detail::get_field<std::vector<std::vector<int>>>(j, "classes")};
    mg.validate();
    return mg;
}

inline Json hypergraph_to_json(const Hypergraph& h, std::optional<int> k = std::nullopt) {
    Json j;
    j["kind"] = "hypergraph";
    j["vertices"] = h.vertex_count;
    j["hyperedges"] = h.hyperedges;
    if (k) j["k"] = *k;
    return j;
}

inline Hypergraph hypergraph_from_json(const Json& j) {
    detail::expect_kind(j, {"hypergraph"});
    Hypergraph h{detail::get_field<int>(j, "vertices"), detail::get_field<std::vector<std::vector<int>>>(j, "hyperedges")};
    h.validate();
    return h;
}

// tables

inline bool is_binary(const Table& t) {
    for (const auto& [l, a] : t.alphabets)
        if (a != Table::binary_alphabet()) return false;
    return true;
}

inline Json table_to_json(const Table& t) {
    Json j;
    j["kind"] = "table";
    j["labels"] = t.labels;
    if (!is_binary(t)) {
        Json al = Json::object();
        for (const auto& l : t.labels) al[l] = t.alphabets.at(l);
        j["alphabets"] = al;
    }
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        Json row = Json::array();
        for (const auto& c : r) row.push_back(c ? *c : "*");
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

inline Table table_from_json(const Json& j) {
    detail::expect_kind(j, {"table"});
    Table t;
    t.labels = detail::get_field<std::vector<std::string>>(j, "labels");
    if (j.contains("alphabets")) {
        for (const auto& l : t.labels) {
            if (!j["alphabets"].contains(l)) throw InputError("no alphabet for label " + l);
            t.alphabets[l] = j["alphabets"][l].get<std::vector<std::string>>();
        }
    } else {
        for (const auto& l : t.labels) t.alphabets[l] = Table::binary_alphabet();
    }
    for (const auto& r : detail::get_field<std::vector<std::vector<std::string>>>(j, "rows")) t.rows.push_back(Table::parse_row(r));
    t.validate();
    return t;
}

inline Json table_set_to_json(const std::vector<Table>& ts) {
    Json j;
    j["kind"] = "table-set";
    j["tables"] = Json::array();
    for (const auto& t : ts) j["tables"].push_back(table_to_json(t));
    return j;
}

inline std::vector<Table> table_set_from_json(const Json& j) {
    if (j.is_object() && j.contains("kind") && j["kind"] == "table") return {table_from_json(j)};
    detail::expect_kind(j, {"table-set"});
    std::vector<Table> out;
    for (const auto& t : detail::get_field<Json>(j, "tables")) out.push_back(table_from_json(t));
    return out;
}

// DIMACS

inline CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CnfFormula f;
    bool header = false;
    long declared = 0;
    std::vector<int> cur;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok[0] == 'c' || tok == "%") continue;
        if (tok == "p") {
            std::string fmt;
            if (header || !(ls >> fmt >> f.variable_count >> declared) || fmt != "cnf")
                throw InputError("bad DIMACS header: " + line);
            header = true;
            continue;
        }
        if (!header) throw InputError("DIMACS clause before 'p cnf' header");
        std::istringstream rest(line);
        long lit;
        while (rest >> lit) {
            if (lit == 0) {
                f.clauses.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(static_cast<int>(lit));
            }
        }
        if (!rest.eof()) throw InputError("bad DIMACS token in: " + line);
    }
    if (!header) throw InputError("missing 'p cnf' header");
    if (!cur.empty()) f.clauses.push_back(cur);
    if (static_cast<long>(f.clauses.size()) != declared)
        throw InputError("DIMACS header declares " + std::to_string(declared) + " clauses, found " + std::to_string(f.clauses.size()));
    f.validate();
    return f;
}

inline std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.variable_count << " " << f.clauses.size() << "\n";
    for (const auto& c : f.clauses) {
        for (int lit : c) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

// witnesses

inline Json word_to_json(const Word& w) {
    bool single = std::all_of(w.begin(), w.end(), [](const Symbol& s) { return s.size() == 1; });
    if (single) {
        std::string s;
        for (const auto& x : w) s += x;
        return s;
    }
    return Json(w);
}

inline Word word_from_json(const Json& j) {
    if (j.is_string()) {
        Word w;
        for (char c : j.get<std::string>()) w.push_back(std::string(1, c));
        return w;
    }
    if (!j.is_array()) throw InputError("block word must be a string or an array of symbols");
    return j.get<Word>();
}

inline Json rlw_to_json(const RunLengthWord& w) {
    Json blocks = Json::array();
    for (const auto& b : w.blocks) blocks.push_back({word_to_json(b.word), to_string(b.exponent)});
    return Json{{"blocks", blocks}};
}

inline RunLengthWord rlw_from_json(const Json& j) {
    RunLengthWord w;
    for (const auto& b : detail::get_field<Json>(j, "blocks")) {
        if (!b.is_array() || b.size() != 2 || !b[1].is_string()) throw InputError("block must be [word, \"exponent\"]");
        w.blocks.push_back({word_from_json(b[0]), parse_bigint(b[1].get<std::string>())});
    }
    return w;
}

inline Json report_to_json(const WitnessReport& r) {
    Json j;
    j["nonempty"] = r.nonempty;
    if (r.witness) j["witness"] = rlw_to_json(*r.witness);
    j["solver"] = r.solver;
    j["search_bound_used"] = to_string(r.search_bound_used);
    return j;
}

// files

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline Json parse_json(const std::string& text, const std::string& origin = "input") {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(origin + ": " + e.what());
    }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ikit
