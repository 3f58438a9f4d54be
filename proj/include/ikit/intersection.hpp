#pragma once

#include "ikit/automata.hpp"
#include "ikit/number_theory.hpp"
#include "ikit/structure.hpp"

#include <unordered_map>

namespace ikit {

struct IntersectionInstance {
    std::vector<Automaton> automata;

    IntersectionInstance() = default;
    IntersectionInstance(std::vector<Automaton> a) : automata(std::move(a)) {}
    IntersectionInstance(const std::vector<Dfa>& dfas) {
        for (const auto& d : dfas) automata.emplace_back(d);
    }

    void validate() const {
        if (automata.empty()) throw InputError("intersection instance needs at least one automaton");
        const auto& sigma = base_of(automata.front()).alphabet();
        for (const auto& a : automata)
            if (base_of(a).alphabet() != sigma) throw InputError("automata must share one alphabet (same symbols, same order)");
    }

    const std::vector<Symbol>& alphabet() const { return base_of(automata.front()).alphabet(); }
    std::size_t k() const { return automata.size(); }
    int max_states() const {
        int s = 0;
        for (const auto& a : automata) s = std::max(s, base_of(a).state_count());
        return s;
    }
    bool all_dfa() const {
        return std::all_of(automata.begin(), automata.end(), [](const Automaton& a) { return std::holds_alternative<Dfa>(a); });
    }
    std::vector<Dfa> dfas() const {
        std::vector<Dfa> out;
        for (const auto& a : automata) {
            if (!std::holds_alternative<Dfa>(a)) throw PreconditionError("solver needs deterministic automata");
            out.push_back(std::get<Dfa>(a));
        }
        return out;
    }
};

struct WitnessReport {
    bool nonempty = false;
    std::optional<RunLengthWord> witness;
    std::string solver;
    BigInt search_bound_used = 0;
};

// Every solver funnels its answer through here.
inline WitnessReport verified(const IntersectionInstance& inst, WitnessReport r) {
    if (r.nonempty) {
        if (!r.witness) throw InternalError(r.solver + ": nonempty answer without witness");
        for (std::size_t i = 0; i < inst.automata.size(); ++i)
            if (!accepts_rl(inst.automata[i], *r.witness))
                throw InternalError(r.solver + ": witness rejected by automaton " + std::to_string(i));
    }
    return r;
}

namespace detail {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

inline bool accepts_epsilon(const IntersectionInstance& inst) {
    return std::all_of(inst.automata.begin(), inst.automata.end(), [](const Automaton& a) {
        const auto& b = base_of(a);
        return b.is_final(b.initial());
    });
}

inline WitnessReport epsilon_report(const std::string& solver) {
    return WitnessReport{true, RunLengthWord{}, solver, 0};
}

// Joint state space of DFAs and on-the-fly determinized NFAs.
class ProductSpace {
public:
    explicit ProductSpace(const IntersectionInstance& inst) : inst_(inst), sets_(inst.automata.size()), ids_(inst.automata.size()) {}

    std::vector<int> initial() {
        std::vector<int> s;
        for (std::size_t i = 0; i < inst_.automata.size(); ++i) {
            const auto& a = inst_.automata[i];
            if (auto d = std::get_if<Dfa>(&a)) s.push_back(d->initial());
            else s.push_back(intern(i, {std::get<Nfa>(a).initial()}));
        }
        return s;
    }

    std::vector<int> step(const std::vector<int>& s, int sym) {
        std::vector<int> t(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto& a = inst_.automata[i];
            if (auto d = std::get_if<Dfa>(&a)) t[i] = d->next(s[i], sym);
            else t[i] = intern(i, std::get<Nfa>(a).step(sets_[i][static_cast<std::size_t>(s[i])], sym));
        }
        return t;
    }

    bool accepting(const std::vector<int>& s) const {
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto& a = inst_.automata[i];
            if (auto d = std::get_if<Dfa>(&a)) {
                if (!d->is_final(s[i])) return false;
            } else if (!std::get<Nfa>(a).any_final(sets_[i][static_cast<std::size_t>(s[i])])) {
                return false;
            }
        }
        return true;
    }

    // Upper bound on the joint state count, as a decimal string.
    std::string nominal_size() const {
        BigInt p = 1;
        for (const auto& a : inst_.automata) {
            if (auto d = std::get_if<Dfa>(&a)) p *= d->state_count();
            else p *= BigInt(1) << std::get<Nfa>(a).state_count();
        }
        return p.str();
    }

private:
    int intern(std::size_t i, std::vector<int> set) {
        auto [it, fresh] = ids_[i].try_emplace(set, static_cast<int>(sets_[i].size()));
        if (fresh) sets_[i].push_back(std::move(set));
        return it->second;
    }

    const IntersectionInstance& inst_;
    std::vector<std::vector<std::vector<int>>> sets_;
    std::vector<std::map<std::vector<int>, int>> ids_;
};

inline RunLengthWord word_from_path(const std::vector<Symbol>& sigma, const std::vector<int>& syms) {
    Word w;
    for (int a : syms) w.push_back(sigma[static_cast<std::size_t>(a)]);
    return compress(w);
}

}  // namespace detail

// Breadth-first search over the product: shortest witness, lexicographically
// least among the shortest.
inline WitnessReport intersect_general(const IntersectionInstance& inst, const Caps& caps = Caps{}) {
    inst.validate();
    if (detail::accepts_epsilon(inst)) return verified(inst, detail::epsilon_report("general"));
    detail::ProductSpace space(inst);
    int sigma = static_cast<int>(inst.alphabet().size());
    std::unordered_map<std::vector<int>, int, detail::VecHash> index;
    std::vector<std::vector<int>> states;
    std::vector<std::pair<int, int>> parent;
    auto start = space.initial();
    index.emplace(start, 0);
    states.push_back(start);
    parent.push_back({-1, -1});
    for (std::size_t head = 0; head < states.size(); ++head) {
        for (int a = 0; a < sigma; ++a) {
            auto t = space.step(states[head], a);
            if (index.count(t)) continue;
            int id = static_cast<int>(states.size());
            if (static_cast<std::uint64_t>(id) >= caps.product_states)
                throw ResourceError("intersect_general: product exceeds " + std::to_string(caps.product_states) +
                                    " states (nominal size " + space.nominal_size() + ")");
            index.emplace(t, id);
            parent.push_back({static_cast<int>(head), a});
            bool acc = space.accepting(t);
            states.push_back(std::move(t));
            if (acc) {
                std::vector<int> syms;
                for (int cur = id; parent[static_cast<std::size_t>(cur)].first >= 0; cur = parent[static_cast<std::size_t>(cur)].first)
                    syms.push_back(parent[static_cast<std::size_t>(cur)].second);
                std::reverse(syms.begin(), syms.end());
                return verified(inst, {true, detail::word_from_path(inst.alphabet(), syms), "general", BigInt(states.size())});
            }
        }
    }
    return verified(inst, {false, std::nullopt, "general", BigInt(states.size())});
}

enum class BoundMode { exact, at_most };

inline WitnessReport intersect_bounded(const IntersectionInstance& inst, std::uint64_t ell, BoundMode mode,
                                       const Caps& caps = Caps{}) {
    inst.validate();
    detail::ProductSpace space(inst);
    int sigma = static_cast<int>(inst.alphabet().size());
    struct Layer {
        std::vector<std::vector<int>> states;
        std::vector<std::pair<int, int>> parent;
    };
    std::vector<Layer> layers(1);
    layers[0].states.push_back(space.initial());
    layers[0].parent.push_back({-1, -1});
    std::uint64_t total = 1;
    auto finish = [&](std::size_t depth, int idx) {
        std::vector<int> syms;
        for (std::size_t d = depth; d > 0; --d) {
            auto [p, a] = layers[d].parent[static_cast<std::size_t>(idx)];
            syms.push_back(a);
            idx = p;
        }
        std::reverse(syms.begin(), syms.end());
        return verified(inst, {true, detail::word_from_path(inst.alphabet(), syms), "bounded", BigInt(ell)});
    };
    auto check_layer = [&](std::size_t depth) -> std::optional<WitnessReport> {
        if (mode == BoundMode::exact && depth != ell) return std::nullopt;
        const auto& L = layers[depth];
        for (std::size_t i = 0; i < L.states.size(); ++i)
            if (space.accepting(L.states[i])) return finish(depth, static_cast<int>(i));
        return std::nullopt;
    };
    if (auto r = check_layer(0)) return *r;
    for (std::uint64_t depth = 1; depth <= ell; ++depth) {
        Layer next;
        std::unordered_map<std::vector<int>, int, detail::VecHash> seen;
        const auto& prev = layers.back();
        for (std::size_t i = 0; i < prev.states.size(); ++i)
            for (int a = 0; a < sigma; ++a) {
                auto t = space.step(prev.states[i], a);
                if (seen.count(t)) continue;
                if (++total > caps.product_states)
                    throw ResourceError("intersect_bounded: layered product exceeds " + std::to_string(caps.product_states) +
                                        " states (nominal size " + space.nominal_size() + " per layer)");
                seen.emplace(t, static_cast<int>(next.states.size()));
                next.states.push_back(std::move(t));
                next.parent.push_back({static_cast<int>(i), a});
            }
        layers.push_back(std::move(next));
        if (auto r = check_layer(static_cast<std::size_t>(depth))) return *r;
        if (layers.back().states.empty()) break;
    }
    return verified(inst, {false, std::nullopt, "bounded", BigInt(ell)});
}

namespace detail {

// Constraint on the exponent x of the single letter: either x = value or
// x ≡ residue (mod modulus) with x >= threshold.
struct UnaryConstraint {
    bool fixed = false;
    BigInt value, residue, modulus = 1, threshold = 0;

    BigInt min_value() const {
        if (fixed) return value;
        BigInt v = residue;
        if (v < threshold) v += ((threshold - v + modulus - 1) / modulus) * modulus;
        return v;
    }
};

inline std::optional<UnaryConstraint> merge(const std::optional<UnaryConstraint>& acc, const UnaryConstraint& c) {
    if (!acc) return c;
    const auto& a = *acc;
    if (a.fixed && c.fixed) return a.value == c.value ? acc : std::nullopt;
    if (a.fixed || c.fixed) {
        const auto& f = a.fixed ? a : c;
        const auto& g = a.fixed ? c : a;
        if (f.value >= g.threshold && mod_floor(f.value - g.residue, g.modulus) == 0) return f;
        return std::nullopt;
    }
    auto sol = crt_solve({{a.residue, a.modulus, a.threshold}, {c.residue, c.modulus, c.threshold}});
    if (!sol) return std::nullopt;
    UnaryConstraint out;
    out.residue = sol->residue;
    out.modulus = sol->modulus;
    out.threshold = std::max(a.threshold, c.threshold);
    return out;
}

}  // namespace detail

// Per automaton, pick one accepting tail position or accepting cycle residue;
// combinations are merged with the generalized CRT and the least solution wins.
inline WitnessReport intersect_unary(const IntersectionInstance& inst, const Caps& caps = Caps{}) {
    inst.validate();
    auto dfas = inst.dfas();
    if (inst.alphabet().size() != 1) throw PreconditionError("intersect_unary needs a one-letter alphabet");
    if (detail::accepts_epsilon(inst)) return verified(inst, detail::epsilon_report("unary"));
    std::vector<std::vector<detail::UnaryConstraint>> options;
    BigInt horizon_lcm = 1;
    int max_index = 0;
    for (const auto& d : dfas) {
        auto p = unary_profile(d);
        horizon_lcm = lcm(horizon_lcm, BigInt(p.period));
        max_index = std::max(max_index, p.index);
        std::vector<detail::UnaryConstraint> opts;
        for (int e = 0; e < p.index; ++e)
            if (p.tail_acceptance[static_cast<std::size_t>(e)]) {
                detail::UnaryConstraint c;
                c.fixed = true;
                c.value = e;
                opts.push_back(c);
            }
        for (int c = 0; c < p.period; ++c)
            if (p.cycle_acceptance[static_cast<std::size_t>(c)]) {
                detail::UnaryConstraint u;
                u.residue = (p.index + c) % p.period;
                u.modulus = p.period;
                u.threshold = p.index;
                opts.push_back(u);
            }
        std::stable_sort(opts.begin(), opts.end(),
                         [](const auto& x, const auto& y) { return x.min_value() < y.min_value(); });
        options.push_back(std::move(opts));
    }
    BigInt bound = horizon_lcm + max_index;
    std::vector<std::size_t> order(options.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return options[x].size() < options[y].size(); });
    std::optional<BigInt> best;
    std::uint64_t steps = 0;
    std::function<void(std::size_t, const std::optional<detail::UnaryConstraint>&)> dfs =
        [&](std::size_t level, const std::optional<detail::UnaryConstraint>& acc) {
            if (acc && best && acc->min_value() >= *best) return;
            if (level == order.size()) {
                best = acc->min_value();
                return;
            }
            for (const auto& opt : options[order[level]]) {
                if (++steps > caps.search_steps)
                    throw ResourceError("intersect_unary: more than " + std::to_string(caps.search_steps) + " combinations");
                auto merged = detail::merge(acc, opt);
                if (merged) dfs(level + 1, merged);
            }
        };
    dfs(0, std::nullopt);
    if (!best) return verified(inst, {false, std::nullopt, "unary", bound});
    RunLengthWord w({Block{{inst.alphabet().front()}, *best}});
    return verified(inst, {true, w, "unary", bound});
}

namespace detail {

// Exponent-vector search over a fixed block sequence: for each block, every
// joint state is pushed through the orbit of that block until it repeats.
// Keeps, per joint state, the exponent vector of least expanded length
// (ties broken lexicographically by block index).
struct BlockSearchResult {
    bool found = false;
    std::vector<std::uint64_t> exponents;
};

inline BlockSearchResult block_search(const std::vector<Dfa>& dfas, const std::vector<std::vector<int>>& blocks,
                                      const Caps& caps, const char* who) {
    struct Entry {
        std::uint64_t len = 0;
        std::vector<std::uint64_t> exps;
        bool better_than(const Entry& o) const { return len != o.len ? len < o.len : exps < o.exps; }
    };
    using Layer = std::unordered_map<std::vector<int>, Entry, VecHash>;
    Layer cur;
    std::vector<int> start;
    for (const auto& d : dfas) start.push_back(d.initial());
    cur.emplace(start, Entry{});
    std::uint64_t steps = 0;
    for (const auto& block : blocks) {
        Layer next;
        std::vector<std::pair<std::vector<int>, Entry>> items(cur.begin(), cur.end());
        std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
            return x.second.better_than(y.second) || (!y.second.better_than(x.second) && x.first < y.first);
        });
        for (const auto& [s, entry] : items) {
            std::unordered_map<std::vector<int>, char, VecHash> seen;
            std::vector<int> js = s;
            for (std::uint64_t e = 0;; ++e) {
                if (!seen.emplace(js, 1).second) break;
                if (++steps > caps.search_steps)
                    throw ResourceError(std::string(who) + ": more than " + std::to_string(caps.search_steps) + " search steps");
                Entry cand{entry.len + e * block.size(), entry.exps};
                cand.exps.push_back(e);
                auto it = next.find(js);
                if (it == next.end()) next.emplace(js, std::move(cand));
                else if (cand.better_than(it->second)) it->second = std::move(cand);
                for (std::size_t i = 0; i < dfas.size(); ++i) js[i] = dfas[i].run_encoded(js[i], block);
            }
        }
        cur = std::move(next);
    }
    BlockSearchResult res;
    const Entry* best = nullptr;
    for (const auto& [s, entry] : cur) {
        bool acc = true;
        for (std::size_t i = 0; i < dfas.size() && acc; ++i) acc = dfas[i].is_final(s[i]);
        if (acc && (!best || entry.better_than(*best))) best = &entry;
    }
    if (best) {
        res.found = true;
        res.exponents = best->exps;
    }
    return res;
}

inline BigInt power(const BigInt& base, std::size_t e) {
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace detail

inline WitnessReport intersect_commutative(const IntersectionInstance& inst, const Caps& caps = Caps{}) {
    inst.validate();
    auto dfas = inst.dfas();
    for (std::size_t i = 0; i < dfas.size(); ++i)
        if (auto v = find_commutativity_violation(dfas[i]))
            throw PreconditionError("automaton " + std::to_string(i) + " is not commutative: state " + std::to_string(v->state) +
                                    " on (" + v->a + "," + v->b + ")");
    BigInt bound = detail::power(inst.max_states(), dfas.size());
    if (detail::accepts_epsilon(inst)) return verified(inst, detail::epsilon_report("commutative"));
    std::vector<std::vector<int>> blocks;
    for (int a = 0; a < static_cast<int>(inst.alphabet().size()); ++a) blocks.push_back({a});
    auto res = detail::block_search(dfas, blocks, caps, "intersect_commutative");
    if (!res.found) return verified(inst, {false, std::nullopt, "commutative", bound});
    RunLengthWord w;
    for (std::size_t a = 0; a < blocks.size(); ++a)
        if (res.exponents[a] > 0) w.blocks.push_back({{inst.alphabet()[a]}, BigInt(res.exponents[a])});
    return verified(inst, {true, w, "commutative", bound});
}

struct SparseOptions {
    bool fewest_bounding_words = false;
};

inline WitnessReport intersect_sparse(const IntersectionInstance& inst, SparseOptions opt = {}, const Caps& caps = Caps{}) {
    inst.validate();
    auto dfas = inst.dfas();
    std::vector<PartialDfa> polys;
    for (std::size_t i = 0; i < dfas.size(); ++i) {
        try {
            polys.push_back(to_polycyclic(dfas[i]));
        } catch (const PreconditionError& e) {
            throw PreconditionError("automaton " + std::to_string(i) + ": " + e.what());
        }
    }
    BigInt bound = detail::power(inst.max_states(), dfas.size());
    if (detail::accepts_epsilon(inst)) return verified(inst, detail::epsilon_report("sparse"));
    BoundingSequence seq = bounding_words(polys[0], caps.bounding_paths);
    if (opt.fewest_bounding_words) {
        for (std::size_t i = 1; i < polys.size(); ++i) {
            auto s = bounding_words(polys[i], caps.bounding_paths);
            if (s.words.size() < seq.words.size()) seq = std::move(s);
        }
    }
    if (seq.words.empty()) return verified(inst, {false, std::nullopt, "sparse", bound});
    std::vector<std::vector<int>> blocks;
    for (const auto& w : seq.words) blocks.push_back(dfas[0].encode(w));
    auto res = detail::block_search(dfas, blocks, caps, "intersect_sparse");
    if (!res.found) return verified(inst, {false, std::nullopt, "sparse", bound});
    RunLengthWord w;
    for (std::size_t j = 0; j < blocks.size(); ++j)
        if (res.exponents[j] > 0) w.blocks.push_back({seq.words[j], BigInt(res.exponents[j])});
    return verified(inst, {true, w, "sparse", bound});
}

inline std::string classify_instance(const IntersectionInstance& inst) {
    inst.validate();
    if (!inst.all_dfa()) return "general";
    auto dfas = inst.dfas();
    if (inst.alphabet().size() == 1) return "unary";
    if (std::all_of(dfas.begin(), dfas.end(), [](const Dfa& d) { return is_commutative(d); })) return "commutative";
    if (std::all_of(dfas.begin(), dfas.end(), [](const Dfa& d) { return is_sparse(d); })) return "sparse";
    return "general";
}

inline WitnessReport intersect_with(const std::string& solver, const IntersectionInstance& inst, const Caps& caps = Caps{}) {
    if (solver == "general") return intersect_general(inst, caps);
    if (solver == "unary") return intersect_unary(inst, caps);
    if (solver == "commutative") return intersect_commutative(inst, caps);
    if (solver == "sparse") return intersect_sparse(inst, {}, caps);
    if (solver == "auto") return intersect_with(classify_instance(inst), inst, caps);
    throw InputError("unknown solver: " + solver);
}

inline WitnessReport auto_select(const IntersectionInstance& inst, const Caps& caps = Caps{}) {
    return intersect_with(classify_instance(inst), inst, caps);
}

}  // namespace ikit
