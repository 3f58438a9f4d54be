#pragma once

#include "ikit/tables.hpp"
#include "ikit/automata.hpp"

namespace fixtures {

using namespace ikit;

inline std::vector<Symbol> abc() { return {"a", "b", "c"}; }

// Two automata bounded by a^*b^*c^*; state 6 is dead in both.
inline Dfa chain_a1() {
    const int D = 6;
    return Dfa::from_table(abc(),
                           {{1, D, D}, {2, D, D}, {3, 5, 4}, {1, 5, D}, {D, D, 4}, {D, D, 5}, {D, D, D}},
                           0, {4, 5});
}

inline Dfa chain_a2() {
    const int D = 6;
    return Dfa::from_table(abc(),
                           {{1, D, D}, {2, 3, D}, {D, 3, D}, {D, D, 4}, {D, D, 5}, {D, D, 4}, {D, D, D}},
                           0, {5});
}

inline std::vector<Word> chain_words() { return {{"a"}, {"b"}, {"c"}}; }

inline Word sample_word() { return {"a", "a", "b", "c", "c"}; }

// a 5-cycle feeding a 3-cycle and a self-loop branch
inline PartialDfa polycyclic_example() {
    const int N = PartialDfa::none;
    std::vector<std::vector<int>> t(12, std::vector<int>(3, N));
    auto set = [&](int from, int sym, int to) { t[static_cast<std::size_t>(from)][static_cast<std::size_t>(sym)] = to; };
    const int a = 0, b = 1, c = 2;
    set(0, a, 1);
    set(1, b, 2);
    set(2, a, 3);
    set(3, c, 4);
    set(4, c, 5);
    set(5, c, 6);
    set(6, a, 2);
    set(6, b, 7);
    set(7, a, 9);
    set(9, b, 8);
    set(8, b, 7);
    set(4, a, 10);
    set(10, b, 11);
    set(11, a, 11);
    std::vector<int> flat;
    for (const auto& row : t) flat.insert(flat.end(), row.begin(), row.end());
    return PartialDfa(abc(), 12, flat, 0, {7, 11});
}

inline PartialDfa two_loops_example() { return PartialDfa({"a", "b"}, 1, {0, 0}, 0, {0}); }

// 0 -a,b-> 2 -a-> 1 -a-> 0
inline PartialDfa triangle_example() {
    const int N = PartialDfa::none;
    return PartialDfa({"a", "b"}, 3, {2, 2, 0, N, 1, N}, 0, {0});
}

inline Table t1() { return Table::binary({"A", "B", "C"}, {{"0", "0", "*"}, {"1", "*", "1"}}); }
inline Table t2() { return Table::binary({"B", "C"}, {{"0", "0"}, {"0", "1"}}); }
inline Table t3() { return Table::binary({"A", "D"}, {{"0", "1"}, {"1", "*"}}); }

inline Table table_r() {
    Table r;
    r.labels = {"A", "B"};
    r.alphabets = {{"A", {"u", "w", "x"}}, {"B", {"m", "n", "p", "r"}}};
    for (const auto& row : std::vector<std::vector<std::string>>{{"u", "m"}, {"u", "p"}, {"w", "n"}, {"x", "p"}, {"x", "r"}})
        r.rows.push_back(Table::parse_row(row));
    r.validate();
    return r;
}

inline Table table_s() {
    Table s;
    s.labels = {"B", "C"};
    s.alphabets = {{"B", {"n", "p", "q"}}, {"C", {"a", "b", "c"}}};
    for (const auto& row : std::vector<std::vector<std::string>>{{"n", "a"}, {"p", "b"}, {"q", "c"}}) s.rows.push_back(Table::parse_row(row));
    s.validate();
    return s;
}

inline Table expected(std::vector<std::string> labels, const std::vector<std::vector<std::string>>& rows) {
    Table t;
    t.labels = std::move(labels);
    for (const auto& r : rows) t.rows.push_back(Table::parse_row(r));
    for (const auto& l : t.labels) t.alphabets[l] = {};
    return t;
}

}  // namespace fixtures
