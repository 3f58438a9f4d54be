#include "ikit/gen.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ikit;

namespace {

Dfa parity() { return Dfa::from_table({"a"}, {{1}, {0}}, 0, {0}); }

// a(aaa)^*: 0 -a-> 1 -a-> 2 -a-> 3 -a-> 1, final 1
Dfa a_aaa_star() { return Dfa::from_table({"a"}, {{1}, {2}, {3}, {1}}, 0, {1}); }

Dfa astar_bstar() { return Dfa::from_table({"a", "b"}, {{0, 1}, {2, 1}, {2, 2}}, 0, {0, 1}); }

// accepts b^*a
Dfa astar_bstar_a() { return Dfa::from_table({"a", "b"}, {{3, 1}, {3, 1}, {2, 2}, {2, 2}}, 0, {3}); }

}  // namespace

TEST(Run, Goldens) {
    EXPECT_EQ(run(parity(), {"a", "a"}), 0);
    EXPECT_TRUE(accepts(parity(), {"a", "a"}));
    EXPECT_EQ(run(parity(), {"a"}), 1);
    EXPECT_THROW(run(parity(), {"b"}), InputError);
}

TEST(Run, MatchesStepwiseFold) {
    gen::Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        auto d = gen::random_dfa(rng, gen::letters(2), 5);
        Word w;
        for (int i = 0; i < 8; ++i) w.push_back(gen::coin(rng, 0.5) ? "a" : "b");
        EXPECT_EQ(run(d, w), oracle::step_run(d, d.initial(), w));
    }
}

TEST(RunPower, Goldens) {
    auto d = a_aaa_star();
    EXPECT_EQ(run_power(d, 2, {"a"}, 0), 2);
    Word ten(10, "a");
    EXPECT_EQ(run_power(d, 0, {"a"}, 10), oracle::step_run(d, 0, ten));
    auto cyc = Dfa::from_table({"a"}, {{1}, {2}, {0}}, 0, {0});
    BigInt e("1000000000000000000");
    EXPECT_EQ(run_power(cyc, 0, {"a"}, e), static_cast<int>(e % 3));
    EXPECT_THROW(run_power(cyc, 0, {}, 3), InputError);
}

TEST(RunPower, MatchesRepeatedRuns) {
    gen::Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        auto d = gen::random_dfa(rng, gen::letters(2), gen::uniform(rng, 1, 6));
        Word block;
        for (int i = gen::uniform(rng, 1, 3); i > 0; --i) block.push_back(gen::coin(rng, 0.5) ? "a" : "b");
        for (int q = 0; q < d.state_count(); ++q) {
            for (int e = 0; e <= 1000; e += (e < 20 ? 1 : 97)) {
                int naive = q;
                for (int i = 0; i < e; ++i) naive = oracle::step_run(d, naive, block);
                ASSERT_EQ(run_power(d, q, block, e), naive);
            }
        }
    }
}

TEST(AcceptsRl, Goldens) {
    RunLengthWord w({{{"a"}, BigInt(1000000000000LL)}});
    EXPECT_TRUE(accepts_rl(parity(), w));
    EXPECT_TRUE(accepts_rl(parity(), RunLengthWord{}));
    EXPECT_FALSE(accepts_rl(a_aaa_star(), RunLengthWord{}));
}

TEST(AcceptsRl, AgreesWithNaiveOnShortWords) {
    gen::Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        auto sigma = gen::letters(2);
        Automaton a = gen::coin(rng, 0.5) ? Automaton(gen::random_dfa(rng, sigma, 5)) : Automaton(gen::random_nfa(rng, sigma, 4));
        RunLengthWord w;
        for (int b = gen::uniform(rng, 0, 3); b > 0; --b) {
            Word block;
            for (int i = gen::uniform(rng, 1, 3); i > 0; --i) block.push_back(sigma[static_cast<std::size_t>(gen::uniform(rng, 0, 1))]);
            w.blocks.push_back({block, BigInt(gen::uniform(rng, 0, 40))});
        }
        EXPECT_EQ(accepts_rl(a, w), oracle::automaton_accepts(a, expand(w)));
    }
}

TEST(Expand, CapAndEquality) {
    RunLengthWord big({{{"a"}, BigInt(2000000)}});
    EXPECT_THROW(expand(big), ResourceError);
    EXPECT_EQ(expand(big, 3000000).size(), 2000000U);
    RunLengthWord x({{{"a", "b"}, 2}});
    RunLengthWord y({{{"a"}, 1}, {{"b", "a"}, 1}, {{"b"}, 1}});
    EXPECT_TRUE(x == y);
    RunLengthWord huge1({{{"a", "b"}, BigInt("100000000000000000000")}});
    RunLengthWord huge2({{{"a", "b", "a", "b"}, BigInt("50000000000000000000")}});
    EXPECT_TRUE(huge1 == huge2);
    EXPECT_FALSE(huge1 == RunLengthWord({{{"a", "b"}, BigInt("100000000000000000001")}}));
    EXPECT_EQ(compress({"a", "a", "b"}).blocks.size(), 2U);
}

TEST(Trim, Goldens) {
    auto sink = Dfa::from_table({"a"}, {{1}, {1}}, 0, {0});
    EXPECT_EQ(trim(sink).state_count(), 1);
    auto a2 = word_dfa({"a"}, {"a", "a"});
    EXPECT_EQ(a2.state_count(), 4);
    auto t = trim(a2);
    EXPECT_EQ(t.state_count(), 3);
    auto empty = Dfa::from_table({"a"}, {{0}}, 0, {});
    EXPECT_TRUE(trim(empty).is_empty_language());
    EXPECT_EQ(trim(parity()).state_count(), 2);
}

TEST(Trim, PreservesLanguage) {
    gen::Rng rng(9);
    for (int t = 0; t < 100; ++t) {
        auto d = gen::random_dfa(rng, gen::letters(2), gen::uniform(rng, 1, 5));
        auto back = trim(d).complete();
        oracle::for_each_word(d.alphabet(), 2 * d.state_count(),
                              [&](const Word& w) { ASSERT_EQ(oracle::dfa_accepts(d, w), oracle::dfa_accepts(back, w)); });
    }
}

TEST(SortWord, Goldens) {
    std::vector<Symbol> ab{"a", "b"}, abc{"a", "b", "c"};
    EXPECT_EQ(sort_word({"b", "a", "b"}, ab), (Word{"a", "b", "b"}));
    EXPECT_EQ(sort_word({}, ab), Word{});
    EXPECT_EQ(sort_word({"c", "a", "b"}, abc), (Word{"a", "b", "c"}));
    auto once = sort_word({"c", "a", "c", "b"}, abc);
    EXPECT_EQ(sort_word(once, abc), once);
}

TEST(WordChain, Goldens) {
    EXPECT_TRUE(is_subset_of_word_chain(astar_bstar(), {{"a"}, {"b"}}));
    EXPECT_FALSE(is_subset_of_word_chain(astar_bstar_a(), {{"a"}, {"b"}}));
    auto wd = word_dfa(fixtures::abc(), fixtures::sample_word());
    EXPECT_TRUE(is_subset_of_word_chain(wd, fixtures::chain_words(), ChainMode::plus));
    EXPECT_FALSE(is_subset_of_word_chain(word_dfa(fixtures::abc(), {"a", "c"}), fixtures::chain_words(), ChainMode::plus));
    EXPECT_TRUE(is_subset_of_word_chain(fixtures::chain_a1(), fixtures::chain_words()));
    EXPECT_TRUE(is_subset_of_word_chain(fixtures::chain_a2(), fixtures::chain_words()));
}

TEST(WordChain, MatchesEnumeration) {
    gen::Rng rng(12);
    std::vector<std::vector<Word>> chains = {{{"a"}, {"b"}}, {{"a", "b"}}, {{"a"}, {"b", "a"}, {"b"}}, {{"b"}, {"a"}}};
    for (int t = 0; t < 200; ++t) {
        auto d = gen::random_dfa(rng, gen::letters(2), gen::uniform(rng, 1, 4), 0.4);
        const auto& ws = chains[static_cast<std::size_t>(t) % chains.size()];
        // short counterexamples suffice at this size
        bool want = true;
        oracle::for_each_word(d.alphabet(), 12, [&](const Word& w) {
            if (want && oracle::dfa_accepts(d, w) && !oracle::in_chain(w, ws)) want = false;
        });
        EXPECT_EQ(is_subset_of_word_chain(d, ws), want);
    }
}

TEST(Automata, ValidationErrors) {
    EXPECT_THROW(Dfa({"a"}, 2, {0}, 0, {}), InputError);
    EXPECT_THROW(Dfa({"a"}, 1, {3}, 0, {}), InputError);
    EXPECT_THROW(Dfa({"a", "a"}, 1, {0, 0}, 0, {}), InputError);
    EXPECT_THROW(Dfa({}, 1, {}, 0, {}), InputError);
    EXPECT_THROW(Dfa({"a"}, 1, {0}, 1, {}), InputError);
}
