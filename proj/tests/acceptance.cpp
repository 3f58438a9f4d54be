// One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

#include "ikit/verify.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <numeric>

using namespace ikit;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void report(int n, const std::string& title, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++failures;
    std::printf("%s criterion %d: %s (%s; %.2fs)\n", o.ok ? "PASS" : "FAIL", n, title.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
}

Outcome golden_joins() {
    using fixtures::expected;
    struct Case {
        const char* name;
        Table got, want;
    };
    std::vector<Case> cases = {
        {"T1*T2", natural_join(fixtures::t1(), fixtures::t2()),
         expected({"A", "B", "C"}, {{"0", "0", "0"}, {"0", "0", "1"}, {"1", "0", "1"}})},
        {"T1*T3", natural_join(fixtures::t1(), fixtures::t3()),
         expected({"A", "B", "C", "D"}, {{"0", "0", "*", "1"}, {"1", "*", "1", "*"}})},
        {"T1*T2*T3", natural_join({fixtures::t1(), fixtures::t2(), fixtures::t3()}),
         expected({"A", "B", "C", "D"}, {{"0", "0", "0", "1"}, {"0", "0", "1", "1"}, {"1", "0", "1", "*"}})},
        {"R*S", natural_join(fixtures::table_r(), fixtures::table_s()),
         expected({"A", "B", "C"},
                  {{"*", "q", "c"}, {"u", "m", "*"}, {"u", "p", "b"}, {"w", "n", "a"}, {"x", "p", "b"}, {"x", "r", "*"}})},
    };
    Outcome o;
    for (const auto& c : cases) {
        bool same = c.got.same_as(c.want);
        o.ok = o.ok && same;
        o.detail += std::string(o.detail.empty() ? "" : ", ") + c.name + (same ? " ok" : " differs");
    }
    return o;
}

Outcome golden_reduction() {
    std::vector<Dfa> ds{fixtures::chain_a1(), fixtures::chain_a2()};
    auto sri = sparse_to_mcclique(ds, fixtures::chain_words());
    auto clique = solve_multicolored_clique(sri.graph);
    if (!clique) return {false, "no multicolored clique"};
    auto w = extract_witness_from_clique(sri, *clique);
    bool both = accepts_rl(ds[0], w) && accepts_rl(ds[1], w);
    auto cap = fixtures::sample_word();
    bool sample = oracle::dfa_accepts(ds[0], cap) && oracle::dfa_accepts(ds[1], cap);
    std::string word;
    for (const auto& s : expand(w)) word += s;
    return {both && sample, std::to_string(sri.graph.graph.vertex_count()) + " vertices, " +
                                 std::to_string(sri.graph.classes.size()) + " classes, witness " + word +
                                 (sample ? ", sample word accepted" : ", sample word rejected")};
}

Outcome suites_ok(const std::vector<std::string>& names, std::uint64_t seed) {
    Outcome o;
    for (const auto& name : names) {
        auto rep = run_suite(name, std::nullopt, seed);
        bool good = rep.passed() && rep.instances > 0;
        o.ok = o.ok && good;
        o.detail += (o.detail.empty() ? "" : ", ") + name + " " + std::to_string(rep.agreements) + "/" + std::to_string(rep.instances);
    }
    return o;
}

Outcome measured_reductions() {
    auto ds = run_suite("ds-nfa", 200, 1);
    auto hs = run_suite("hs-sbounded", 200, 1);
    std::size_t checked = ds.extra["characterization_words_checked"].get<std::size_t>();
    std::size_t bad = ds.extra["characterization_failures"].get<std::size_t>();
    bool reports = ds.instances == 200 && hs.instances == 200;
    // counterexamples, when any, are reported smallest first
    auto sorted = [](const SuiteReport& r) {
        for (std::size_t i = 1; i < r.disagreements.size(); ++i)
            if (r.disagreements[i - 1].first > r.disagreements[i].first) return false;
        return r.disagreement_count == 0 || !r.disagreements.empty();
    };
    char buf[256];
    std::snprintf(buf, sizeof buf, "ds-nfa agreement %.3f, hs-sbounded agreement %.3f, characterization %zu/%zu words",
                  ds.agreement_rate(), hs.agreement_rate(), checked - bad, checked);
    return {reports && checked > 0 && bad == 0 && sorted(ds) && sorted(hs), buf};
}

Outcome witness_bounds() {
    auto c = run_suite("commutative-bounds", 200, 1);
    auto s = run_suite("sparse-bounds", 100, 1);
    return {c.passed() && s.passed() && c.instances == 200 && s.instances == 100,
            "commutative " + std::to_string(c.agreements) + "/200 (" + c.extra["nonempty_instances"].dump() + " nonempty), sparse " +
                std::to_string(s.agreements) + "/100 (" + s.extra["nonempty_instances"].dump() + " nonempty)"};
}

Outcome exhaustive_crt() {
    std::size_t systems = 0, mismatches = 0;
    std::vector<std::pair<int, int>> pairs;  // (residue, modulus)
    for (int m = 1; m <= 10; ++m)
        for (int r = 0; r < m; ++r) pairs.emplace_back(r, m);
    auto check = [&](const std::vector<std::pair<int, int>>& sys) {
        ++systems;
        int l = 1;
        for (auto [r, m] : sys) l = std::lcm(l, m);
        int first = -1;
        for (int x = 0; x < l && first < 0; ++x) {
            bool ok = true;
            for (auto [r, m] : sys) ok = ok && x % m == r;
            if (ok) first = x;
        }
        CongruenceSystem cs;
        for (auto [r, m] : sys) cs.push_back({r, m, std::nullopt});
        auto sol = crt_solve(cs);
        bool match = first < 0 ? !sol.has_value() : sol && sol->residue == first && sol->modulus == l;
        if (!match) ++mismatches;
    };
    for (const auto& a : pairs) {
        check({a});
        for (const auto& b : pairs) {
            check({a, b});
            for (const auto& c : pairs) check({a, b, c});
        }
    }
    return {mismatches == 0, std::to_string(systems) + " systems, " + std::to_string(mismatches) + " mismatches"};
}

Outcome classifier_goldens() {
    bool poly = is_polycyclic(fixtures::polycyclic_example()).is_polycyclic;
    bool loops = is_polycyclic(fixtures::two_loops_example()).is_polycyclic;
    bool tri = is_polycyclic(fixtures::triangle_example()).is_polycyclic;
    auto ab = Dfa::from_table({"a", "b"}, {{0, 1}, {2, 1}, {2, 2}}, 0, {0, 1});
    auto aba = Dfa::from_table({"a", "b"}, {{0, 1}, {2, 1}, {2, 3}, {3, 3}}, 0, {0, 1, 2});
    bool sb1 = is_strictly_bounded(ab), sb2 = is_strictly_bounded(aba);
    return {poly && !loops && !tri && sb1 && !sb2,
            std::string("polycyclic example ") + (poly ? "true" : "false") + ", two loops " + (loops ? "true" : "false") +
                ", triangle " + (tri ? "true" : "false") + ", a*b* " + (sb1 ? "true" : "false") + ", a*b*a* " + (sb2 ? "true" : "false")};
}

// All binary tables with <= 3 rows and <= 3 columns drawn from 4 labels,
// combined into families of <= 3 tables; the enumeration visits families in a
// seeded random order and stops at the budget.
Outcome join_theorem() {
    const std::vector<std::string> pool{"A", "B", "C", "D"};
    const std::size_t budget = 10000;
    gen::Rng rng(2024);
    std::size_t families = 0, yes = 0, mismatches = 0;
    std::set<std::string> seen;
    auto random_table = [&]() {
        int cols = gen::uniform(rng, 1, 3), rows = gen::uniform(rng, 1, 3);
        auto labels = pool;
        std::shuffle(labels.begin(), labels.end(), rng);
        labels.resize(static_cast<std::size_t>(cols));
        std::vector<std::vector<std::string>> rs;
        for (int r = 0; r < rows; ++r) {
            std::vector<std::string> row;
            for (int c = 0; c < cols; ++c) row.push_back(std::vector<std::string>{"0", "1", "0", "1", "*"}[static_cast<std::size_t>(gen::uniform(rng, 0, 4))]);
            rs.push_back(row);
        }
        return Table::binary(labels, rs);
    };
    std::size_t attempts = 0;
    while (families < budget && attempts < 50 * budget) {
        ++attempts;
        std::vector<Table> ts;
        for (int i = gen::uniform(rng, 1, 3); i > 0; --i) ts.push_back(random_table());
        std::string k = table_set_to_json(ts).dump();
        if (!seen.insert(k).second) continue;
        ++families;
        bool joined = !natural_join(ts).rows.empty();
        bool selection = oracle::tnej(ts);
        yes += joined;
        if (joined != selection) ++mismatches;
    }
    return {mismatches == 0 && families == budget,
            std::to_string(families) + " distinct families, " + std::to_string(yes) + " nonempty, " + std::to_string(mismatches) +
                " mismatches"};
}

}  // namespace

int main() {
    report(1, "golden joins", golden_joins);
    report(2, "golden sparse reduction", golden_reduction);
    report(3, "asserted reductions agree", [] {
        return suites_ok({"sat3-unary", "clique-unary", "hs-comm", "mcc-tnej", "tnej-clique", "tnej-vc", "sparse-mcc"}, 1);
    });
    report(4, "measured reductions report", measured_reductions);
    report(5, "witness bounds", witness_bounds);
    report(6, "exhaustive CRT", exhaustive_crt);
    report(7, "classifier goldens", classifier_goldens);
    report(8, "join nonempty iff compatible selection", join_theorem);
    report(9, "cross-solver consistency", [] { return suites_ok({"cross-solver"}, 1); });
    return failures == 0 ? 0 : 1;
}
