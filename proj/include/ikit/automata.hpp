#pragma once

#include "ikit/common.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <shared_mutex>
#include <unordered_map>
#include <variant>
#include <vector>

namespace ikit {

using Symbol = std::string;
using Word = std::vector<Symbol>;

struct Block {
    Word word;
    BigInt exponent;
    bool operator==(const Block&) const = default;
};

struct RunLengthWord {
    std::vector<Block> blocks;

    RunLengthWord() = default;
    RunLengthWord(std::vector<Block> b) : blocks(std::move(b)) {}

    BigInt length() const {
        BigInt n = 0;
        for (const auto& b : blocks) n += BigInt(b.word.size()) * b.exponent;
        return n;
    }
    bool empty_word() const { return length() == 0; }
};

inline Word expand(const RunLengthWord& w, std::uint64_t cap = Caps{}.expansion) {
    BigInt len = w.length();
    if (len > cap) throw ResourceError("expansion of length " + len.str() + " exceeds cap " + std::to_string(cap));
    Word out;
    out.reserve(static_cast<std::size_t>(len));
    for (const auto& b : w.blocks)
        for (BigInt e = 0; e < b.exponent; ++e) out.insert(out.end(), b.word.begin(), b.word.end());
    return out;
}

inline RunLengthWord compress(const Word& w) {
    RunLengthWord out;
    for (const auto& s : w) {
        if (!out.blocks.empty() && out.blocks.back().word.size() == 1 && out.blocks.back().word[0] == s)
            out.blocks.back().exponent += 1;
        else
            out.blocks.push_back({{s}, 1});
    }
    return out;
}

namespace detail {

inline Word primitive_root(const Word& w) {
    std::size_t n = w.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
        if (ok) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
    }
    return w;
}

inline RunLengthWord normalize(const RunLengthWord& w) {
    RunLengthWord out;
    for (const auto& b : w.blocks) {
        if (b.exponent == 0 || b.word.empty()) continue;
        Word root = primitive_root(b.word);
        BigInt e = b.exponent * (b.word.size() / root.size());
        if (!out.blocks.empty() && out.blocks.back().word == root)
            out.blocks.back().exponent += e;
        else
            out.blocks.push_back({root, e});
    }
    return out;
}

}  // namespace detail

// Equality of expansions. Exact when both expansions fit under the cap,
// otherwise compares primitive-root normal forms.
inline bool operator==(const RunLengthWord& a, const RunLengthWord& b) {
    if (a.length() != b.length()) return false;
    if (a.length() <= Caps{}.expansion) return expand(a) == expand(b);
    auto na = detail::normalize(a), nb = detail::normalize(b);
    return na.blocks == nb.blocks;
}

struct Orbit {
    std::vector<int> states;  // states[e] = state after e applications, e < tail + cycle
    int tail = 0;
    int cycle = 1;

    int at(const BigInt& e) const {
        if (e < BigInt(states.size())) return states[static_cast<std::size_t>(e)];
        BigInt r = (e - tail) % cycle;
        return states[static_cast<std::size_t>(tail + static_cast<int>(r))];
    }
};

namespace detail {

class OrbitCache {
public:
    std::shared_ptr<const Orbit> find(int q, const std::vector<int>& block) const {
        std::shared_lock lock(mu_);
        auto it = map_.find({q, block});
        return it == map_.end() ? nullptr : it->second;
    }
    std::shared_ptr<const Orbit> insert(int q, const std::vector<int>& block, std::shared_ptr<const Orbit> o) {
        std::unique_lock lock(mu_);
        auto [it, fresh] = map_.try_emplace({q, block}, std::move(o));
        return it->second;
    }

private:
    mutable std::shared_mutex mu_;
    std::map<std::pair<int, std::vector<int>>, std::shared_ptr<const Orbit>> map_;
};

inline void check_alphabet(const std::vector<Symbol>& alphabet, bool allow_empty) {
    if (alphabet.empty() && !allow_empty) throw InputError("alphabet must be nonempty");
    std::set<Symbol> seen(alphabet.begin(), alphabet.end());
    if (seen.size() != alphabet.size()) throw InputError("alphabet symbols must be distinct");
}

inline std::unordered_map<Symbol, int> index_alphabet(const std::vector<Symbol>& alphabet) {
    std::unordered_map<Symbol, int> m;
    for (std::size_t i = 0; i < alphabet.size(); ++i) m.emplace(alphabet[i], static_cast<int>(i));
    return m;
}

inline std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace detail

// Shared plumbing of the three automaton kinds: alphabet, states, finals.
class AutomatonBase {
public:
    const std::vector<Symbol>& alphabet() const { return alphabet_; }
    int alphabet_size() const { return static_cast<int>(alphabet_.size()); }
    int state_count() const { return n_; }
    int initial() const { return initial_; }
    const std::vector<int>& finals() const { return finals_; }
    bool is_final(int q) const { return q >= 0 && q < n_ && final_flag_[static_cast<std::size_t>(q)]; }

    int symbol_index(const Symbol& s) const {
        auto it = index_->find(s);
        return it == index_->end() ? -1 : it->second;
    }
    std::vector<int> encode(const Word& w) const {
        std::vector<int> out;
        out.reserve(w.size());
        for (const auto& s : w) {
            int a = symbol_index(s);
            if (a < 0) throw InputError("symbol '" + s + "' not in alphabet");
            out.push_back(a);
        }
        return out;
    }

protected:
    AutomatonBase() = default;
    AutomatonBase(std::vector<Symbol> alphabet, int n, int initial, std::vector<int> finals, bool allow_empty)
        : alphabet_(std::move(alphabet)), n_(n), initial_(initial), finals_(detail::sorted_unique(std::move(finals))) {
        detail::check_alphabet(alphabet_, false);
        if (n_ < 0) throw InputError("negative state count");
        if (n_ == 0) {
            if (!allow_empty) throw InputError("automaton needs at least one state");
            if (!finals_.empty()) throw InputError("final state out of range");
        } else if (initial_ < 0 || initial_ >= n_) {
            throw InputError("initial state out of range");
        }
        final_flag_.assign(static_cast<std::size_t>(n_), 0);
        for (int f : finals_) {
            if (f < 0 || f >= n_) throw InputError("final state out of range");
            final_flag_[static_cast<std::size_t>(f)] = 1;
        }
        index_ = std::make_shared<const std::unordered_map<Symbol, int>>(detail::index_alphabet(alphabet_));
    }

    std::vector<Symbol> alphabet_;
    int n_ = 0;
    int initial_ = 0;
    std::vector<int> finals_;
    std::vector<char> final_flag_;
    std::shared_ptr<const std::unordered_map<Symbol, int>> index_;
};

class PartialDfa;

class Dfa : public AutomatonBase {
public:
    Dfa(std::vector<Symbol> alphabet, int states, std::vector<int> delta, int initial, std::vector<int> finals)
        : AutomatonBase(std::move(alphabet), states, initial, std::move(finals), false), delta_(std::move(delta)),
          cache_(std::make_shared<detail::OrbitCache>()) {
        if (delta_.size() != static_cast<std::size_t>(n_) * alphabet_.size())
            throw InputError("transition table is not total");
        for (int t : delta_)
            if (t < 0 || t >= n_) throw InputError("transition target out of range");
    }

    // table[q][a] = target
    static Dfa from_table(std::vector<Symbol> alphabet, const std::vector<std::vector<int>>& table, int initial,
                          std::vector<int> finals) {
        std::vector<int> delta;
        for (const auto& row : table) {
            if (row.size() != alphabet.size()) throw InputError("transition row has wrong width");
            delta.insert(delta.end(), row.begin(), row.end());
        }
        return Dfa(std::move(alphabet), static_cast<int>(table.size()), std::move(delta), initial, std::move(finals));
    }

    int next(int q, int a) const { return delta_[static_cast<std::size_t>(q) * alphabet_.size() + static_cast<std::size_t>(a)]; }
    const std::vector<int>& delta() const { return delta_; }

    int run_encoded(int q, const std::vector<int>& w) const {
        for (int a : w) q = next(q, a);
        return q;
    }

    // Orbit of q under repeated application of a nonempty encoded block.
    std::shared_ptr<const Orbit> orbit(int q, const std::vector<int>& block) const {
        if (block.empty()) throw InputError("run_power needs a nonempty block");
        if (auto hit = cache_->find(q, block)) return hit;
        auto o = std::make_shared<Orbit>();
        std::vector<int> pos(static_cast<std::size_t>(n_), -1);
        int cur = q;
        while (pos[static_cast<std::size_t>(cur)] < 0) {
            pos[static_cast<std::size_t>(cur)] = static_cast<int>(o->states.size());
            o->states.push_back(cur);
            cur = run_encoded(cur, block);
        }
        o->tail = pos[static_cast<std::size_t>(cur)];
        o->cycle = static_cast<int>(o->states.size()) - o->tail;
        return cache_->insert(q, block, std::move(o));
    }

    PartialDfa to_partial() const;

private:
    std::vector<int> delta_;
    std::shared_ptr<detail::OrbitCache> cache_;
};

class PartialDfa : public AutomatonBase {
public:
    static constexpr int none = -1;

    PartialDfa(std::vector<Symbol> alphabet, int states, std::vector<int> delta, int initial, std::vector<int> finals)
        : AutomatonBase(std::move(alphabet), states, states == 0 ? none : initial, std::move(finals), true),
          delta_(std::move(delta)) {
        if (delta_.size() != static_cast<std::size_t>(n_) * alphabet_.size())
            throw InputError("transition table has wrong size");
        for (int t : delta_)
            if (t != none && (t < 0 || t >= n_)) throw InputError("transition target out of range");
    }

    static PartialDfa empty_language(std::vector<Symbol> alphabet) {
        return PartialDfa(std::move(alphabet), 0, {}, none, {});
    }

    bool is_empty_language() const { return n_ == 0; }
    int next(int q, int a) const { return delta_[static_cast<std::size_t>(q) * alphabet_.size() + static_cast<std::size_t>(a)]; }
    const std::vector<int>& delta() const { return delta_; }

    // Adds a non-final sink when some transition is undefined.
    Dfa complete() const {
        if (n_ == 0) {
            std::vector<int> d(alphabet_.size(), 0);
            return Dfa(alphabet_, 1, d, 0, {});
        }
        bool partial = std::find(delta_.begin(), delta_.end(), none) != delta_.end();
        int n = n_ + (partial ? 1 : 0);
        std::vector<int> d = delta_;
        for (int& t : d)
            if (t == none) t = n_;
        if (partial) d.insert(d.end(), alphabet_.size(), n_);
        return Dfa(alphabet_, n, std::move(d), initial_, finals_);
    }

private:
    std::vector<int> delta_;
};

inline PartialDfa Dfa::to_partial() const { return PartialDfa(alphabet_, n_, delta_, initial_, finals_); }

class Nfa : public AutomatonBase {
public:
    // delta[q * |alphabet| + a] = successor set
    Nfa(std::vector<Symbol> alphabet, int states, std::vector<std::vector<int>> delta, int initial, std::vector<int> finals)
        : AutomatonBase(std::move(alphabet), states, initial, std::move(finals), false), delta_(std::move(delta)) {
        if (delta_.size() != static_cast<std::size_t>(n_) * alphabet_.size())
            throw InputError("transition table has wrong size");
        for (auto& succ : delta_) {
            succ = detail::sorted_unique(std::move(succ));
            for (int t : succ)
                if (t < 0 || t >= n_) throw InputError("transition target out of range");
        }
    }

    const std::vector<int>& next(int q, int a) const {
        return delta_[static_cast<std::size_t>(q) * alphabet_.size() + static_cast<std::size_t>(a)];
    }

    std::vector<int> step(const std::vector<int>& set, int a) const {
        std::vector<char> mark(static_cast<std::size_t>(n_), 0);
        for (int q : set)
            for (int t : next(q, a)) mark[static_cast<std::size_t>(t)] = 1;
        std::vector<int> out;
        for (int q = 0; q < n_; ++q)
            if (mark[static_cast<std::size_t>(q)]) out.push_back(q);
        return out;
    }

    bool any_final(const std::vector<int>& set) const {
        return std::any_of(set.begin(), set.end(), [&](int q) { return is_final(q); });
    }

    static Nfa from_dfa(const Dfa& d) {
        std::vector<std::vector<int>> delta;
        for (int q = 0; q < d.state_count(); ++q)
            for (int a = 0; a < d.alphabet_size(); ++a) delta.push_back({d.next(q, a)});
        return Nfa(d.alphabet(), d.state_count(), std::move(delta), d.initial(), d.finals());
    }

private:
    std::vector<std::vector<int>> delta_;
};

using Automaton = std::variant<Dfa, Nfa>;

inline const AutomatonBase& base_of(const Automaton& a) {
    return std::visit([](const auto& x) -> const AutomatonBase& { return x; }, a);
}

inline int run(const Dfa& dfa, const Word& word) { return dfa.run_encoded(dfa.initial(), dfa.encode(word)); }

inline bool accepts(const Dfa& dfa, const Word& word) { return dfa.is_final(run(dfa, word)); }

inline bool accepts(const Nfa& nfa, const Word& word) {
    std::vector<int> cur{nfa.initial()};
    for (int a : nfa.encode(word)) cur = nfa.step(cur, a);
    return nfa.any_final(cur);
}

inline int run_power(const Dfa& dfa, int from, const Word& block, const BigInt& exponent) {
    if (block.empty()) throw InputError("run_power needs a nonempty block");
    if (from < 0 || from >= dfa.state_count()) throw InputError("state out of range");
    if (exponent < 0) throw InputError("negative exponent");
    auto enc = dfa.encode(block);
    if (exponent == 0) return from;
    return dfa.orbit(from, enc)->at(exponent);
}

inline bool accepts_rl(const Dfa& dfa, const RunLengthWord& w) {
    int q = dfa.initial();
    for (const auto& b : w.blocks) {
        if (b.exponent < 0) throw InputError("negative exponent");
        if (b.exponent == 0 || b.word.empty()) {
            dfa.encode(b.word);
            continue;
        }
        q = dfa.orbit(q, dfa.encode(b.word))->at(b.exponent);
    }
    return dfa.is_final(q);
}

inline bool accepts_rl(const Nfa& nfa, const RunLengthWord& w) {
    std::vector<int> cur{nfa.initial()};
    for (const auto& b : w.blocks) {
        if (b.exponent < 0) throw InputError("negative exponent");
        auto enc = nfa.encode(b.word);
        if (b.exponent == 0 || enc.empty()) continue;
        // Reachable sets under repeated blocks are eventually periodic.
        std::map<std::vector<int>, std::size_t> seen;
        std::vector<std::vector<int>> seq;
        std::vector<int> s = cur;
        while (!seen.count(s)) {
            if (BigInt(seq.size()) == b.exponent) break;
            seen.emplace(s, seq.size());
            seq.push_back(s);
            for (int a : enc) s = nfa.step(s, a);
        }
        if (BigInt(seq.size()) == b.exponent && !seen.count(s)) {
            cur = s;
            continue;
        }
        std::size_t tail = seen.at(s);
        std::size_t cyc = seq.size() - tail;
        BigInt idx = tail + ((b.exponent - tail) % cyc);
        cur = seq[static_cast<std::size_t>(idx)];
    }
    return nfa.any_final(cur);
}

inline bool accepts_rl(const Automaton& a, const RunLengthWord& w) {
    return std::visit([&](const auto& x) { return accepts_rl(x, w); }, a);
}

// Accessible and co-accessible part. Empty language yields a zero-state result.
inline PartialDfa trim(const Dfa& dfa) {
    int n = dfa.state_count(), s = dfa.alphabet_size();
    std::vector<char> acc(static_cast<std::size_t>(n), 0), coacc(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{dfa.initial()};
    acc[static_cast<std::size_t>(dfa.initial())] = 1;
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (int a = 0; a < s; ++a) {
            int t = dfa.next(q, a);
            if (!acc[static_cast<std::size_t>(t)]) {
                acc[static_cast<std::size_t>(t)] = 1;
                stack.push_back(t);
            }
        }
    }
    std::vector<std::vector<int>> rev(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q)
        for (int a = 0; a < s; ++a) rev[static_cast<std::size_t>(dfa.next(q, a))].push_back(q);
    for (int f : dfa.finals()) {
        coacc[static_cast<std::size_t>(f)] = 1;
        stack.push_back(f);
    }
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (int p : rev[static_cast<std::size_t>(q)])
            if (!coacc[static_cast<std::size_t>(p)]) {
                coacc[static_cast<std::size_t>(p)] = 1;
                stack.push_back(p);
            }
    }
    if (!coacc[static_cast<std::size_t>(dfa.initial())]) return PartialDfa::empty_language(dfa.alphabet());
    std::vector<int> remap(static_cast<std::size_t>(n), -1);
    int m = 0;
    for (int q = 0; q < n; ++q)
        if (acc[static_cast<std::size_t>(q)] && coacc[static_cast<std::size_t>(q)]) remap[static_cast<std::size_t>(q)] = m++;
    std::vector<int> delta(static_cast<std::size_t>(m) * static_cast<std::size_t>(s), PartialDfa::none);
    std::vector<int> finals;
    for (int q = 0; q < n; ++q) {
        int nq = remap[static_cast<std::size_t>(q)];
        if (nq < 0) continue;
        if (dfa.is_final(q)) finals.push_back(nq);
        for (int a = 0; a < s; ++a)
            delta[static_cast<std::size_t>(nq) * static_cast<std::size_t>(s) + static_cast<std::size_t>(a)] =
                remap[static_cast<std::size_t>(dfa.next(q, a))];
    }
    return PartialDfa(dfa.alphabet(), m, std::move(delta), remap[static_cast<std::size_t>(dfa.initial())], std::move(finals));
}

inline Word sort_word(const Word& word, const std::vector<Symbol>& order) {
    auto idx = detail::index_alphabet(order);
    auto rank = [&](const Symbol& s) {
        auto it = idx.find(s);
        return it == idx.end() ? static_cast<int>(order.size()) : it->second;
    };
    Word out = word;
    std::stable_sort(out.begin(), out.end(), [&](const Symbol& a, const Symbol& b) { return rank(a) < rank(b); });
    return out;
}

enum class ChainMode { star, plus };

namespace detail {

// Epsilon-NFA for w1^(*|+) w2^(*|+) ... over the alphabet of `dfa`.
struct ChainNfa {
    int n = 0;
    int start = 0;
    std::vector<int> accepting;
    std::vector<std::vector<std::pair<int, int>>> edges;  // (symbol, target)
    std::vector<std::vector<int>> eps;

    int add() {
        edges.emplace_back();
        eps.emplace_back();
        return n++;
    }

    std::vector<int> closure(std::vector<int> set) const {
        std::vector<char> mark(static_cast<std::size_t>(n), 0);
        for (int q : set) mark[static_cast<std::size_t>(q)] = 1;
        for (std::size_t i = 0; i < set.size(); ++i)
            for (int t : eps[static_cast<std::size_t>(set[i])])
                if (!mark[static_cast<std::size_t>(t)]) {
                    mark[static_cast<std::size_t>(t)] = 1;
                    set.push_back(t);
                }
        std::sort(set.begin(), set.end());
        return set;
    }

    std::vector<int> step(const std::vector<int>& set, int a) const {
        std::vector<int> out;
        for (int q : set)
            for (auto [s, t] : edges[static_cast<std::size_t>(q)])
                if (s == a) out.push_back(t);
        return closure(sorted_unique(std::move(out)));
    }
};

inline ChainNfa build_chain(const AutomatonBase& a, const std::vector<Word>& words, const std::vector<ChainMode>& modes) {
    ChainNfa c;
    int cur = c.add();
    c.start = cur;
    for (std::size_t j = 0; j < words.size(); ++j) {
        auto enc = a.encode(words[j]);
        if (enc.empty()) throw InputError("chain words must be nonempty");
        // read one copy of w_j from `cur` into `after`; loop back for repetitions
        int after = c.add();
        int p = cur;
        for (std::size_t i = 0; i < enc.size(); ++i) {
            int t = i + 1 == enc.size() ? after : c.add();
            c.edges[static_cast<std::size_t>(p)].push_back({enc[i], t});
            p = t;
        }
        int loop_start = c.add();
        c.eps[static_cast<std::size_t>(after)].push_back(loop_start);
        p = loop_start;
        for (std::size_t i = 0; i < enc.size(); ++i) {
            int t = i + 1 == enc.size() ? after : c.add();
            c.edges[static_cast<std::size_t>(p)].push_back({enc[i], t});
            p = t;
        }
        if (modes[j] == ChainMode::star) c.eps[static_cast<std::size_t>(cur)].push_back(after);
        cur = after;
    }
    c.accepting = {cur};
    return c;
}

}  // namespace detail

// L(dfa) ⊆ w1^m1 w2^m2 ... with mi ∈ {*, +}: product of dfa with the
// determinized chain automaton, searching for an accepted word the chain rejects.
inline bool is_subset_of_word_chain(const Dfa& dfa, const std::vector<Word>& words, const std::vector<ChainMode>& modes) {
    if (modes.size() != words.size()) throw InputError("one chain mode per word required");
    auto chain = detail::build_chain(dfa, words, modes);
    int acc = chain.accepting.front();
    std::map<std::pair<int, std::vector<int>>, char> seen;
    std::deque<std::pair<int, std::vector<int>>> queue;
    auto start = std::make_pair(dfa.initial(), chain.closure({chain.start}));
    seen[start] = 1;
    queue.push_back(start);
    while (!queue.empty()) {
        auto [q, set] = queue.front();
        queue.pop_front();
        if (dfa.is_final(q) && !std::binary_search(set.begin(), set.end(), acc)) return false;
        for (int a = 0; a < dfa.alphabet_size(); ++a) {
            auto nxt = std::make_pair(dfa.next(q, a), chain.step(set, a));
            if (seen.emplace(nxt, 1).second) queue.push_back(std::move(nxt));
        }
    }
    return true;
}

inline bool is_subset_of_word_chain(const Dfa& dfa, const std::vector<Word>& words, ChainMode mode = ChainMode::star) {
    return is_subset_of_word_chain(dfa, words, std::vector<ChainMode>(words.size(), mode));
}

// Letter-level DFA for the single word `w`; useful for goldens and tests.
inline Dfa word_dfa(const std::vector<Symbol>& alphabet, const Word& w) {
    int len = static_cast<int>(w.size());
    int dead = len + 1;
    auto idx = detail::index_alphabet(alphabet);
    std::vector<std::vector<int>> table(static_cast<std::size_t>(len + 2), std::vector<int>(alphabet.size(), dead));
    for (int i = 0; i < len; ++i) {
        auto it = idx.find(w[static_cast<std::size_t>(i)]);
        if (it == idx.end()) throw InputError("symbol '" + w[static_cast<std::size_t>(i)] + "' not in alphabet");
        table[static_cast<std::size_t>(i)][static_cast<std::size_t>(it->second)] = i + 1;
    }
    return Dfa::from_table(alphabet, table, 0, {len});
}

}  // namespace ikit
