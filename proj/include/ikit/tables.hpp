#pragma once

#include "ikit/solvers.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ikit {

// nullopt is the null value, written "*".
using Cell = std::optional<std::string>;

struct Table {
    std::vector<std::string> labels;
    std::map<std::string, std::vector<std::string>> alphabets;
    std::vector<std::vector<Cell>> rows;

    static std::vector<std::string> binary_alphabet() { return {"0", "1"}; }

    // Rows given as strings; "*" is null. All columns over {0,1}.
    static Table binary(std::vector<std::string> labels, const std::vector<std::vector<std::string>>& rows) {
        Table t;
        t.labels = std::move(labels);
        for (const auto& l : t.labels) t.alphabets[l] = binary_alphabet();
        for (const auto& r : rows) t.rows.push_back(parse_row(r));
        t.validate();
        return t;
    }

    static std::vector<Cell> parse_row(const std::vector<std::string>& r) {
        std::vector<Cell> out;
        for (const auto& c : r) out.push_back(c == "*" ? Cell{} : Cell{c});
        return out;
    }

    int column(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return static_cast<int>(i);
        return -1;
    }

    bool in_alphabet(const std::string& label, const Cell& v) const {
        if (!v) return false;
        auto it = alphabets.find(label);
        if (it == alphabets.end()) return false;
        return std::find(it->second.begin(), it->second.end(), *v) != it->second.end();
    }

    void validate() const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            for (std::size_t j = i + 1; j < labels.size(); ++j)
                if (labels[i] == labels[j]) throw InputError("duplicate column label " + labels[i]);
        for (const auto& l : labels) {
            auto it = alphabets.find(l);
            if (it == alphabets.end()) throw InputError("no alphabet for label " + l);
            for (const auto& s : it->second)
                if (s == "*") throw InputError("'*' is reserved for null");
        }
        for (const auto& r : rows) {
            if (r.size() != labels.size()) throw InputError("row length does not match labels");
            for (std::size_t j = 0; j < r.size(); ++j)
                if (r[j] && !in_alphabet(labels[j], r[j]))
                    throw InputError("cell '" + *r[j] + "' not in alphabet of " + labels[j]);
        }
    }

    // Sorted labels, sorted and deduplicated rows.
    Table canonical() const {
        Table t;
        t.labels = labels;
        std::sort(t.labels.begin(), t.labels.end());
        for (const auto& l : t.labels) t.alphabets[l] = alphabets.at(l);
        std::vector<int> perm;
        for (const auto& l : t.labels) perm.push_back(column(l));
        for (const auto& r : rows) {
            std::vector<Cell> nr;
            for (int c : perm) nr.push_back(r[static_cast<std::size_t>(c)]);
            t.rows.push_back(std::move(nr));
        }
        std::sort(t.rows.begin(), t.rows.end());
        t.rows.erase(std::unique(t.rows.begin(), t.rows.end()), t.rows.end());
        return t;
    }

    bool same_as(const Table& o) const {
        auto a = canonical(), b = o.canonical();
        return a.labels == b.labels && a.rows == b.rows;
    }
};

inline bool rows_compatible(const Table& t1, std::size_t r1, const Table& t2, std::size_t r2) {
    for (std::size_t c1 = 0; c1 < t1.labels.size(); ++c1) {
        const auto& l = t1.labels[c1];
        int c2 = t2.column(l);
        if (c2 < 0) continue;
        const Cell& v1 = t1.rows[r1][c1];
        const Cell& v2 = t2.rows[r2][static_cast<std::size_t>(c2)];
        if (v1 && v2 && *v1 == *v2) continue;
        if (!t2.in_alphabet(l, v1) || !t1.in_alphabet(l, v2)) continue;
        return false;
    }
    return true;
}

namespace detail {

inline std::vector<int> column_map(const Table& from, const std::vector<std::string>& labels) {
    std::vector<int> m;
    for (const auto& l : labels) m.push_back(from.column(l));
    return m;
}

}  // namespace detail

// Generalized natural join by candidate-row enumeration.
//  (1) every table has a row compatible with R;
//  (2) R is null at l exactly when no row of a table carrying l that agrees
//      with R on all jointly non-null shared labels has a value at l.
inline Table natural_join(const std::vector<Table>& tables, const Caps& caps = Caps{}) {
    if (tables.empty()) throw InputError("natural_join needs at least one table");
    for (const auto& t : tables) t.validate();
    Table out;
    for (const auto& t : tables)
        for (const auto& l : t.labels)
            if (std::find(out.labels.begin(), out.labels.end(), l) == out.labels.end()) out.labels.push_back(l);
    std::sort(out.labels.begin(), out.labels.end());
    for (const auto& l : out.labels) {
        auto& alpha = out.alphabets[l];
        for (const auto& t : tables) {
            auto it = t.alphabets.find(l);
            if (t.column(l) < 0 || it == t.alphabets.end()) continue;
            for (const auto& s : it->second)
                if (std::find(alpha.begin(), alpha.end(), s) == alpha.end()) alpha.push_back(s);
        }
    }
    std::size_t width = out.labels.size();
    long double space = 1;
    for (const auto& l : out.labels) space *= static_cast<long double>(out.alphabets[l].size() + 1);
    if (space > static_cast<long double>(caps.join_candidates))
        throw ResourceError("natural_join: candidate space exceeds " + std::to_string(caps.join_candidates) + " rows");

    std::vector<std::vector<int>> maps;
    for (const auto& t : tables) maps.push_back(detail::column_map(t, out.labels));

    // digit 0 = null, digit d = alphabet symbol d-1
    std::vector<std::size_t> digit(width, 0);
    std::vector<Cell> cand(width);
    auto compatible = [&](const Table& t, const std::vector<int>& map, const std::vector<Cell>& row) {
        for (std::size_t c = 0; c < width; ++c) {
            if (map[c] < 0) continue;
            const Cell& v1 = cand[c];
            const Cell& v2 = row[static_cast<std::size_t>(map[c])];
            if (v1 && v2 && *v1 == *v2) continue;
            if (!t.in_alphabet(out.labels[c], v1) || !out.in_alphabet(out.labels[c], v2)) continue;
            return false;
        }
        return true;
    };
    auto agrees = [&](const std::vector<int>& map, const std::vector<Cell>& row) {
        for (std::size_t c = 0; c < width; ++c) {
            if (map[c] < 0) continue;
            const Cell& v1 = cand[c];
            const Cell& v2 = row[static_cast<std::size_t>(map[c])];
            if (v1 && v2 && *v1 != *v2) return false;
        }
        return true;
    };
    while (true) {
        for (std::size_t c = 0; c < width; ++c)
            cand[c] = digit[c] == 0 ? Cell{} : Cell{out.alphabets[out.labels[c]][digit[c] - 1]};
        bool keep = true;
        for (std::size_t i = 0; i < tables.size() && keep; ++i) {
            bool any = false;
            for (const auto& row : tables[i].rows)
                if (compatible(tables[i], maps[i], row)) {
                    any = true;
                    break;
                }
            keep = any;
        }
        for (std::size_t c = 0; c < width && keep; ++c) {
            bool supplied = false;
            for (std::size_t i = 0; i < tables.size() && !supplied; ++i) {
                int col = maps[i][c];
                if (col < 0) continue;
                for (const auto& row : tables[i].rows)
                    if (row[static_cast<std::size_t>(col)] && agrees(maps[i], row)) {
                        supplied = true;
                        break;
                    }
            }
            keep = supplied == cand[c].has_value();
        }
        if (keep) out.rows.push_back(cand);
        std::size_t c = 0;
        while (c < width && ++digit[c] > out.alphabets[out.labels[c]].size()) digit[c++] = 0;
        if (c == width) break;
    }
    return out.canonical();
}

inline Table natural_join(const Table& a, const Table& b, const Caps& caps = Caps{}) { return natural_join({a, b}, caps); }

inline int bits_for(std::size_t alphabet_size) {
    int b = 0;
    std::size_t cap = 1;
    std::size_t need = std::max<std::size_t>(2, alphabet_size);
    while (cap < need) {
        cap <<= 1;
        ++b;
    }
    return b;
}

inline std::string bit_label(const std::string& label, int bits, int i) {
    return bits == 1 ? label : label + "#" + std::to_string(i);
}

// Symbol at index i of the column alphabet becomes the bits of i, most significant first.
inline Table binarize(const Table& t) {
    t.validate();
    Table out;
    std::vector<int> widths;
    for (const auto& l : t.labels) {
        int b = bits_for(t.alphabets.at(l).size());
        widths.push_back(b);
        for (int i = 0; i < b; ++i) {
            out.labels.push_back(bit_label(l, b, i));
            out.alphabets[out.labels.back()] = Table::binary_alphabet();
        }
    }
    for (const auto& r : t.rows) {
        std::vector<Cell> nr;
        for (std::size_t c = 0; c < t.labels.size(); ++c) {
            int b = widths[c];
            if (!r[c]) {
                for (int i = 0; i < b; ++i) nr.emplace_back();
                continue;
            }
            const auto& alpha = t.alphabets.at(t.labels[c]);
            auto idx = static_cast<std::size_t>(std::find(alpha.begin(), alpha.end(), *r[c]) - alpha.begin());
            for (int i = b - 1; i >= 0; --i) nr.emplace_back(((idx >> i) & 1U) ? "1" : "0");
        }
        out.rows.push_back(std::move(nr));
    }
    return out;
}

using RowSelection = std::vector<int>;  // row index per table

inline bool is_compatible_selection(const std::vector<Table>& tables, const RowSelection& sel) {
    if (sel.size() != tables.size()) return false;
    for (std::size_t i = 0; i < tables.size(); ++i)
        for (std::size_t j = i + 1; j < tables.size(); ++j)
            if (!rows_compatible(tables[i], static_cast<std::size_t>(sel[i]), tables[j], static_cast<std::size_t>(sel[j])))
                return false;
    return true;
}

inline std::optional<RowSelection> tnej_brute(const std::vector<Table>& tables) {
    for (const auto& t : tables)
        if (t.rows.empty()) return std::nullopt;
    RowSelection sel(tables.size(), 0);
    while (true) {
        if (is_compatible_selection(tables, sel)) return sel;
        std::size_t i = tables.size();
        while (i > 0) {
            --i;
            if (++sel[i] < static_cast<int>(tables[i].rows.size())) break;
            sel[i] = 0;
            if (i == 0) return std::nullopt;
        }
        if (tables.empty()) return std::nullopt;
    }
}

struct TnejClique {
    MulticoloredGraph graph;
    int k = 0;
    std::vector<std::pair<int, int>> origin;  // vertex -> (table, row)
};

inline TnejClique tnej_to_clique(const std::vector<Table>& tables) {
    TnejClique out;
    out.k = static_cast<int>(tables.size());
    for (std::size_t t = 0; t < tables.size(); ++t) {
        out.graph.classes.emplace_back();
        for (std::size_t r = 0; r < tables[t].rows.size(); ++r) {
            out.graph.classes.back().push_back(static_cast<int>(out.origin.size()));
            out.origin.emplace_back(static_cast<int>(t), static_cast<int>(r));
        }
    }
    int n = static_cast<int>(out.origin.size());
    out.graph.graph = Graph(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            auto [tu, ru] = out.origin[static_cast<std::size_t>(u)];
            auto [tv, rv] = out.origin[static_cast<std::size_t>(v)];
            if (tu != tv && rows_compatible(tables[static_cast<std::size_t>(tu)], static_cast<std::size_t>(ru),
                                            tables[static_cast<std::size_t>(tv)], static_cast<std::size_t>(rv)))
                out.graph.graph.add_edge(u, v);
        }
    return out;
}

struct TnejCover {
    Graph graph;
    int budget = 0;  // total rows minus number of tables
    std::vector<std::pair<int, int>> origin;
};

inline TnejCover tnej_to_vertex_cover(const std::vector<Table>& tables) {
    TnejCover out;
    for (std::size_t t = 0; t < tables.size(); ++t)
        for (std::size_t r = 0; r < tables[t].rows.size(); ++r) out.origin.emplace_back(static_cast<int>(t), static_cast<int>(r));
    int n = static_cast<int>(out.origin.size());
    out.budget = n - static_cast<int>(tables.size());
    out.graph = Graph(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            auto [tu, ru] = out.origin[static_cast<std::size_t>(u)];
            auto [tv, rv] = out.origin[static_cast<std::size_t>(v)];
            if (tu == tv || !rows_compatible(tables[static_cast<std::size_t>(tu)], static_cast<std::size_t>(ru),
                                             tables[static_cast<std::size_t>(tv)], static_cast<std::size_t>(rv)))
                out.graph.add_edge(u, v);
        }
    return out;
}

enum class TnejRoute { clique, brute, vertex_cover };

inline std::optional<RowSelection> tnej_decide(const std::vector<Table>& tables, TnejRoute route = TnejRoute::clique) {
    for (const auto& t : tables) t.validate();
    std::optional<RowSelection> sel;
    switch (route) {
        case TnejRoute::brute:
            return tnej_brute(tables);
        case TnejRoute::clique: {
            auto red = tnej_to_clique(tables);
            auto c = solve_clique(red.graph.graph, red.k);
            if (!c) return std::nullopt;
            sel = RowSelection(tables.size(), -1);
            for (int v : *c) (*sel)[static_cast<std::size_t>(red.origin[static_cast<std::size_t>(v)].first)] = red.origin[static_cast<std::size_t>(v)].second;
            break;
        }
        case TnejRoute::vertex_cover: {
            auto red = tnej_to_vertex_cover(tables);
            auto cover = solve_vertex_cover(red.graph, red.budget);
            if (!cover) return std::nullopt;
            sel = RowSelection(tables.size(), -1);
            std::vector<char> in(red.origin.size(), 0);
            for (int v : *cover) in[static_cast<std::size_t>(v)] = 1;
            for (std::size_t v = 0; v < red.origin.size(); ++v)
                if (!in[v]) (*sel)[static_cast<std::size_t>(red.origin[v].first)] = red.origin[v].second;
            break;
        }
    }
    if (!is_compatible_selection(tables, *sel)) throw InternalError("tnej_decide: route produced an incompatible selection");
    return sel;
}

}  // namespace ikit
