#pragma once

#include "ikit/automata.hpp"

#include <functional>
#include <sstream>

namespace ikit {

struct CommutativityViolation {
    int state;
    Symbol a, b;
};

inline std::optional<CommutativityViolation> find_commutativity_violation(const Dfa& dfa) {
    int s = dfa.alphabet_size();
    for (int q = 0; q < dfa.state_count(); ++q)
        for (int a = 0; a < s; ++a)
            for (int b = a + 1; b < s; ++b)
                if (dfa.next(dfa.next(q, a), b) != dfa.next(dfa.next(q, b), a))
                    return CommutativityViolation{q, dfa.alphabet()[static_cast<std::size_t>(a)],
                                                  dfa.alphabet()[static_cast<std::size_t>(b)]};
    return std::nullopt;
}

inline bool is_commutative(const Dfa& dfa) { return !find_commutativity_violation(dfa).has_value(); }

struct UnaryProfile {
    int index = 0;
    int period = 1;
    std::vector<bool> tail_acceptance;
    std::vector<bool> cycle_acceptance;
    bool finite = false;

    bool accepts(const BigInt& e) const {
        if (e < index) return tail_acceptance[static_cast<std::size_t>(e)];
        BigInt r = (e - index) % period;
        return cycle_acceptance[static_cast<std::size_t>(r)];
    }
};

inline UnaryProfile unary_profile(const Dfa& dfa) {
    if (dfa.alphabet_size() != 1) throw PreconditionError("unary_profile needs a one-letter alphabet");
    auto o = dfa.orbit(dfa.initial(), {0});
    UnaryProfile p;
    p.index = o->tail;
    p.period = o->cycle;
    for (int e = 0; e < o->tail; ++e) p.tail_acceptance.push_back(dfa.is_final(o->states[static_cast<std::size_t>(e)]));
    for (int e = 0; e < o->cycle; ++e)
        p.cycle_acceptance.push_back(dfa.is_final(o->states[static_cast<std::size_t>(o->tail + e)]));
    p.finite = std::none_of(p.cycle_acceptance.begin(), p.cycle_acceptance.end(), [](bool b) { return b; });
    return p;
}

struct PolycyclicInfo {
    std::vector<int> scc_partition;             // state -> component id
    std::vector<std::optional<Word>> cycle_word;  // u_q for states on a cycle
    bool is_polycyclic = true;
    std::optional<int> failing_component;
    std::vector<int> failing_states;
};

namespace detail {

// Tarjan; component ids are in reverse topological order of discovery.
inline std::vector<int> scc(int n, const std::function<std::vector<int>(int)>& succ) {
    std::vector<int> comp(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
        num(static_cast<std::size_t>(n), -1);
    std::vector<char> on(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    int counter = 0, ncomp = 0;
    std::function<void(int)> visit = [&](int v) {
        num[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
        stack.push_back(v);
        on[static_cast<std::size_t>(v)] = 1;
        for (int w : succ(v)) {
            if (num[static_cast<std::size_t>(w)] < 0) {
                visit(w);
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
            } else if (on[static_cast<std::size_t>(w)]) {
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], num[static_cast<std::size_t>(w)]);
            }
        }
        if (low[static_cast<std::size_t>(v)] == num[static_cast<std::size_t>(v)]) {
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on[static_cast<std::size_t>(w)] = 0;
                comp[static_cast<std::size_t>(w)] = ncomp;
            } while (w != v);
            ++ncomp;
        }
    };
    for (int v = 0; v < n; ++v)
        if (num[static_cast<std::size_t>(v)] < 0) visit(v);
    return comp;
}

}  // namespace detail

inline PolycyclicInfo is_polycyclic(const PartialDfa& p) {
    int n = p.state_count(), s = p.alphabet_size();
    PolycyclicInfo info;
    info.cycle_word.assign(static_cast<std::size_t>(n), std::nullopt);
    info.scc_partition = detail::scc(n, [&](int q) {
        std::vector<int> out;
        for (int a = 0; a < s; ++a)
            if (p.next(q, a) != PartialDfa::none) out.push_back(p.next(q, a));
        return out;
    });
    int ncomp = n == 0 ? 0 : *std::max_element(info.scc_partition.begin(), info.scc_partition.end()) + 1;
    std::vector<std::vector<int>> members(static_cast<std::size_t>(ncomp));
    for (int q = 0; q < n; ++q) members[static_cast<std::size_t>(info.scc_partition[static_cast<std::size_t>(q)])].push_back(q);
    // Internal edges, counting parallel symbols separately.
    std::vector<int> internal_count(static_cast<std::size_t>(n), 0), internal_sym(static_cast<std::size_t>(n), -1);
    for (int q = 0; q < n; ++q)
        for (int a = 0; a < s; ++a) {
            int t = p.next(q, a);
            if (t != PartialDfa::none && info.scc_partition[static_cast<std::size_t>(t)] == info.scc_partition[static_cast<std::size_t>(q)]) {
                ++internal_count[static_cast<std::size_t>(q)];
                internal_sym[static_cast<std::size_t>(q)] = a;
            }
        }
    for (int c = 0; c < ncomp; ++c) {
        const auto& ms = members[static_cast<std::size_t>(c)];
        int edges = 0;
        bool ok = true;
        for (int q : ms) {
            edges += internal_count[static_cast<std::size_t>(q)];
            if (internal_count[static_cast<std::size_t>(q)] > 1) ok = false;
        }
        if (edges == 0) continue;  // trivial component
        // Strongly connected with one internal out-edge per state: a single cycle.
        if (!ok || edges != static_cast<int>(ms.size())) {
            if (info.is_polycyclic) {
                info.is_polycyclic = false;
                info.failing_component = c;
                info.failing_states = ms;
            }
            continue;
        }
        for (int q : ms) {
            Word u;
            int cur = q;
            do {
                int a = internal_sym[static_cast<std::size_t>(cur)];
                u.push_back(p.alphabet()[static_cast<std::size_t>(a)]);
                cur = p.next(cur, a);
            } while (cur != q);
            info.cycle_word[static_cast<std::size_t>(q)] = std::move(u);
        }
    }
    return info;
}

inline PartialDfa to_polycyclic(const Dfa& dfa) {
    PartialDfa t = trim(dfa);
    auto info = is_polycyclic(t);
    if (!info.is_polycyclic) {
        std::ostringstream msg;
        msg << "not sparse: component {";
        for (std::size_t i = 0; i < info.failing_states.size(); ++i) msg << (i ? "," : "") << info.failing_states[i];
        msg << "} of the trimmed automaton is not a single cycle";
        throw PreconditionError(msg.str());
    }
    return t;
}

inline bool is_sparse(const Dfa& dfa) { return is_polycyclic(trim(dfa)).is_polycyclic; }

struct BoundingSequence {
    std::vector<Word> words;
};

inline BoundingSequence bounding_words(const PartialDfa& p, const PolycyclicInfo& info,
                                       std::uint64_t path_cap = Caps{}.bounding_paths) {
    if (!info.is_polycyclic) throw PreconditionError("bounding_words needs a polycyclic automaton");
    BoundingSequence out;
    if (p.is_empty_language()) return out;
    int n = p.state_count(), s = p.alphabet_size();
    std::uint64_t paths = 0;
    std::vector<char> on_path(static_cast<std::size_t>(n), 0);
    std::vector<int> states;
    std::vector<int> letters;
    auto emit = [&]() {
        if (++paths > path_cap)
            throw ResourceError("bounding_words: more than " + std::to_string(path_cap) + " simple paths");
        for (std::size_t i = 0; i < states.size(); ++i) {
            if (i > 0) out.words.push_back({p.alphabet()[static_cast<std::size_t>(letters[i - 1])]});
            const auto& u = info.cycle_word[static_cast<std::size_t>(states[i])];
            if (u) out.words.push_back(*u);
        }
    };
    for (int f : p.finals()) {
        std::function<void(int)> dfs = [&](int q) {
            if (q == f) {
                emit();
                return;
            }
            for (int a = 0; a < s; ++a) {
                int t = p.next(q, a);
                if (t == PartialDfa::none || on_path[static_cast<std::size_t>(t)]) continue;
                on_path[static_cast<std::size_t>(t)] = 1;
                states.push_back(t);
                letters.push_back(a);
                dfs(t);
                states.pop_back();
                letters.pop_back();
                on_path[static_cast<std::size_t>(t)] = 0;
            }
        };
        on_path[static_cast<std::size_t>(p.initial())] = 1;
        states = {p.initial()};
        letters.clear();
        dfs(p.initial());
        on_path[static_cast<std::size_t>(p.initial())] = 0;
    }
    return out;
}

inline BoundingSequence bounding_words(const PartialDfa& p, std::uint64_t path_cap = Caps{}.bounding_paths) {
    return bounding_words(p, is_polycyclic(p), path_cap);
}

inline bool is_strictly_bounded(const Dfa& dfa) {
    std::vector<Word> letters;
    for (const auto& a : dfa.alphabet()) letters.push_back({a});
    return is_subset_of_word_chain(dfa, letters, ChainMode::star);
}

}  // namespace ikit
