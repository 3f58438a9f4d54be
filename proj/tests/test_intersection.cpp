#include "ikit/gen.hpp"
#include "ikit/intersection.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ikit;

namespace {

std::vector<Automaton> as_automata(const std::vector<Dfa>& ds) { return {ds.begin(), ds.end()}; }

void expect_witness_ok(const std::vector<Automaton>& as, const WitnessReport& r) {
    if (!r.nonempty) return;
    ASSERT_TRUE(r.witness.has_value());
    auto w = expand(*r.witness);
    for (const auto& a : as) ASSERT_TRUE(oracle::automaton_accepts(a, w));
}

}  // namespace

TEST(General, AgreesWithEnumeration) {
    gen::Rng rng(41);
    int yes = 0;
    for (int t = 0; t < 300; ++t) {
        auto sigma = gen::letters(2);
        std::vector<Automaton> as;
        int bound = 1;
        for (int i = gen::uniform(rng, 1, 2); i > 0; --i) {
            int n = gen::uniform(rng, 1, 3);
            bound *= n;
            if (gen::coin(rng, 0.5))
                as.emplace_back(gen::random_dfa(rng, sigma, n));
            else
                as.emplace_back(gen::random_nfa(rng, sigma, n, 0.4));
        }
        auto r = intersect_general(IntersectionInstance(as));
        auto want = oracle::common_word(as, bound);
        ASSERT_EQ(r.nonempty, want.has_value()) << "trial " << t;
        expect_witness_ok(as, r);
        if (want) {
            ++yes;
            // breadth-first, so the witness is a shortest word
            EXPECT_EQ(r.witness->length(), BigInt(want->size()));
        }
    }
    EXPECT_GT(yes, 50);
}

TEST(General, EpsilonAndCaps) {
    auto parity = Dfa::from_table({"a"}, {{1}, {0}}, 0, {0});
    auto r = intersect_general(IntersectionInstance(std::vector<Dfa>{parity}));
    ASSERT_TRUE(r.nonempty);
    EXPECT_EQ(r.witness->length(), 0);
    Caps tiny;
    tiny.product_states = 2;
    auto big = Dfa::from_table({"a"}, {{1}, {2}, {3}, {0}}, 0, {3});
    EXPECT_THROW(intersect_general(IntersectionInstance(std::vector<Dfa>{big}), tiny), ResourceError);
    EXPECT_THROW(intersect_general(IntersectionInstance{}), InputError);
    auto other = Dfa::from_table({"b"}, {{0}}, 0, {0});
    EXPECT_THROW(intersect_general(IntersectionInstance(std::vector<Dfa>{parity, other})), InputError);
}

TEST(Bounded, AgreesWithEnumeration) {
    gen::Rng rng(42);
    for (int t = 0; t < 300; ++t) {
        auto sigma = gen::letters(2);
        std::vector<Automaton> as;
        for (int i = gen::uniform(rng, 1, 3); i > 0; --i) {
            if (gen::coin(rng, 0.5))
                as.emplace_back(gen::random_dfa(rng, sigma, gen::uniform(rng, 1, 4)));
            else
                as.emplace_back(gen::random_nfa(rng, sigma, gen::uniform(rng, 1, 4)));
        }
        auto ell = static_cast<std::uint64_t>(gen::uniform(rng, 0, 6));
        bool exact = false, at_most = false;
        oracle::for_each_word(sigma, static_cast<int>(ell), [&](const Word& w) {
            for (const auto& a : as)
                if (!oracle::automaton_accepts(a, w)) return;
            at_most = true;
            if (w.size() == ell) exact = true;
        });
        auto re = intersect_bounded(IntersectionInstance(as), ell, BoundMode::exact);
        auto rm = intersect_bounded(IntersectionInstance(as), ell, BoundMode::at_most);
        ASSERT_EQ(re.nonempty, exact);
        ASSERT_EQ(rm.nonempty, at_most);
        expect_witness_ok(as, re);
        expect_witness_ok(as, rm);
        if (exact) { EXPECT_EQ(re.witness->length(), BigInt(ell)); }
        if (at_most) { EXPECT_LE(rm.witness->length(), BigInt(ell)); }
    }
}

TEST(Unary, AgreesWithEnumeration) {
    gen::Rng rng(43);
    for (int t = 0; t < 300; ++t) {
        std::vector<Dfa> ds;
        for (int i = gen::uniform(rng, 1, 3); i > 0; --i) ds.push_back(gen::random_unary_dfa(rng, gen::uniform(rng, 0, 3), gen::uniform(rng, 1, 5)));
        auto as = as_automata(ds);
        auto r = intersect_unary(IntersectionInstance(ds));
        int bound = 1;
        for (const auto& d : ds) bound *= d.state_count();
        auto want = oracle::common_word(as, bound);
        ASSERT_EQ(r.nonempty, want.has_value());
        expect_witness_ok(as, r);
        if (want) { EXPECT_EQ(r.witness->length(), BigInt(want->size())); }
    }
}

TEST(Unary, LargeCoprimeCycles) {
    // residue 1 modulo each of five primes near 100
    std::vector<int> ps{89, 97, 101, 103, 107};
    std::vector<Dfa> ds;
    BigInt prod = 1;
    for (int p : ps) {
        std::vector<std::vector<int>> t;
        for (int i = 0; i < p; ++i) t.push_back({(i + 1) % p});
        ds.push_back(Dfa::from_table({"a"}, t, 0, {2 % p}));
        prod *= p;
    }
    auto r = intersect_unary(IntersectionInstance(ds));
    ASSERT_TRUE(r.nonempty);
    EXPECT_EQ(r.witness->length(), 2);
    for (auto& d : ds) {
        int n = d.state_count();
        std::vector<std::vector<int>> t;
        for (int i = 0; i < n; ++i) t.push_back({(i + 1) % n});
        d = Dfa::from_table({"a"}, t, 0, {n - 1});
    }
    r = intersect_unary(IntersectionInstance(ds));
    ASSERT_TRUE(r.nonempty);
    // x = -1 mod every prime
    EXPECT_EQ(r.witness->length(), prod - 1);
    Caps tiny;
    tiny.product_states = 1000;
    EXPECT_THROW(intersect_general(IntersectionInstance(ds), tiny), ResourceError);
}

TEST(Commutative, AgreesWithEnumerationAndGeneral) {
    gen::Rng rng(44);
    int yes = 0;
    for (int t = 0; t < 200; ++t) {
        auto sigma = gen::letters(2);
        std::vector<Dfa> ds;
        for (int i = gen::uniform(rng, 1, 2); i > 0; --i) ds.push_back(gen::commutative_dfa(rng, sigma, 4));
        auto as = as_automata(ds);
        auto r = intersect_commutative(IntersectionInstance(ds));
        int bound = 1;
        for (const auto& d : ds) bound *= d.state_count();
        auto want = oracle::common_word(as, std::min(bound, 12));
        if (want) { ASSERT_TRUE(r.nonempty); }
        ASSERT_EQ(r.nonempty, intersect_general(IntersectionInstance(ds)).nonempty);
        expect_witness_ok(as, r);
        yes += r.nonempty;
        // witness is sorted along the alphabet
        if (r.nonempty) {
            auto w = expand(*r.witness);
            EXPECT_EQ(w, sort_word(w, sigma));
        }
    }
    EXPECT_GT(yes, 40);
}

TEST(Commutative, LargerAgainstGeneral) {
    gen::Rng rng(45);
    for (int t = 0; t < 100; ++t) {
        auto sigma = gen::letters(gen::uniform(rng, 1, 3));
        std::vector<Dfa> ds;
        for (int i = gen::uniform(rng, 2, 3); i > 0; --i) ds.push_back(gen::commutative_dfa(rng, sigma, 9));
        auto r = intersect_commutative(IntersectionInstance(ds));
        ASSERT_EQ(r.nonempty, intersect_general(IntersectionInstance(ds)).nonempty);
        expect_witness_ok(as_automata(ds), r);
    }
}

TEST(Sparse, ChainPair) {
    std::vector<Dfa> ds{fixtures::chain_a1(), fixtures::chain_a2()};
    auto r = intersect_sparse(IntersectionInstance(ds));
    ASSERT_TRUE(r.nonempty);
    expect_witness_ok(as_automata(ds), r);
    EXPECT_EQ(classify_instance(IntersectionInstance(ds)), "sparse");
}

TEST(Sparse, AgreesWithGeneral) {
    gen::Rng rng(46);
    int yes = 0;
    for (int t = 0; t < 300; ++t) {
        auto sigma = gen::letters(gen::uniform(rng, 1, 3));
        std::vector<Dfa> ds;
        for (int i = gen::uniform(rng, 1, 3); i > 0; --i) ds.push_back(gen::polycyclic_dfa(rng, sigma, gen::uniform(rng, 1, 3)));
        IntersectionInstance inst(ds);
        auto r = intersect_sparse(inst);
        auto g = intersect_general(inst);
        ASSERT_EQ(r.nonempty, g.nonempty) << "trial " << t;
        ASSERT_EQ(intersect_sparse(inst, {true}).nonempty, g.nonempty);
        expect_witness_ok(as_automata(ds), r);
        yes += r.nonempty;
    }
    EXPECT_GT(yes, 30);
}

TEST(Preconditions, SolversRejectOutOfClassInputs) {
    auto ab = Dfa::from_table({"a", "b"}, {{0, 1}, {2, 1}, {2, 2}}, 0, {0, 1});
    IntersectionInstance bin(std::vector<Dfa>{ab});
    EXPECT_THROW(intersect_unary(bin), PreconditionError);
    EXPECT_THROW(intersect_commutative(bin), PreconditionError);
    EXPECT_THROW(intersect_sparse(IntersectionInstance(std::vector<Dfa>{fixtures::two_loops_example().complete()})),
                 PreconditionError);
    auto nfa = Nfa({"a"}, 1, {{0}}, 0, {0});
    EXPECT_THROW(intersect_unary(IntersectionInstance(std::vector<Automaton>{nfa})), PreconditionError);
    EXPECT_THROW(intersect_with("nope", bin), InputError);
    EXPECT_EQ(classify_instance(IntersectionInstance(std::vector<Automaton>{nfa})), "general");
}

TEST(AutoSelect, PicksClassAndAgrees) {
    gen::Rng rng(47);
    auto unary = gen::random_unary_dfa(rng, 2, 3);
    EXPECT_EQ(auto_select(IntersectionInstance(std::vector<Dfa>{unary})).solver, "unary");
    auto comm = gen::commutative_dfa(rng, gen::letters(2), 6);
    EXPECT_EQ(auto_select(IntersectionInstance(std::vector<Dfa>{comm, comm})).solver, "commutative");
    for (int t = 0; t < 200; ++t) {
        auto sigma = gen::letters(2);
        std::vector<Dfa> ds;
        for (int i = 0; i < 2; ++i) ds.push_back(gen::random_dfa(rng, sigma, gen::uniform(rng, 1, 4)));
        IntersectionInstance inst(ds);
        ASSERT_EQ(auto_select(inst).nonempty, intersect_general(inst).nonempty);
    }
}
