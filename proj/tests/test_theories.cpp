#include <doctest.h>

#include "kahyp/theories.hpp"
#include "kat_oracle.hpp"
#include "support.hpp"

using namespace kahyp;
using namespace kahyp::testing;

namespace {

Theory make(TheoryId id, std::vector<std::string> tests, std::vector<std::string> actions,
            std::vector<std::string> values = {})
{
    TheoryConfig c;
    c.id = id;
    c.tests = std::move(tests);
    c.actions = std::move(actions);
    c.values = std::move(values);
    return Theory(c);
}

bool eq(const Theory& t, const char* e, const char* f) { return t.decide(t.parse(e), t.parse(f)).equal; }
bool le(const Theory& t, const char* e, const char* f) { return t.decide_leq(t.parse(e), t.parse(f)).equal; }

std::vector<std::string> OM{"o"};

std::vector<Word> words_upto(const std::vector<Symbol>& sig, std::size_t n)
{
    std::vector<Word> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].size() < n)
            for (Symbol s : sig) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(w);
            }
    return out;
}

// Random KAT term over actions a,b and tests o1,o2.
Expr random_kat(std::mt19937_64& rng, int d)
{
    static const std::vector<Symbol> base = {sym_action("a"), sym_action("b"), parse_symbol("[o1]"),
                                             parse_symbol("[!o1]"), parse_symbol("[o2&!o1]"),
                                             parse_symbol("[o1|o2]")};
    return random_expr(rng, base, d);
}

}  // namespace

TEST_CASE("atoms")
{
    auto f = [](const char* s) { return *info(parse_symbol(std::string("[") + s + "]")).formula; };
    CHECK(atoms_of(f("o"), OM) == std::vector<AtomMask>{1});
    CHECK(atoms_of(f("tt"), OM) == std::vector<AtomMask>{0, 1});
    CHECK(atoms_of(f("o&!o"), OM).empty());
    CHECK(all_atoms(2, AtomLogic::Lattice) == std::vector<AtomMask>{1, 2, 3});
    CHECK(all_atoms(2, AtomLogic::LatticeBounded).size() == 4);
    CHECK(name_of(atom_symbol(3, {"o1", "o2"})) == "at{o1,o2}");
    CHECK(atom_mask(parse_symbol("at{o2}"), {"o1", "o2"}) == 2);
    CHECK_THROWS_AS(atom_mask(parse_symbol("at{z}"), {"o1", "o2"}), TheoryError);
    // lattice reading: atoms below o are those containing it
    CHECK(atoms_of(f("a"), {"a", "b"}, AtomLogic::Lattice) == std::vector<AtomMask>{1, 3});
}

TEST_CASE("r_kat and r_kapt")
{
    CHECK(r_kat(P("[ff]"), OM) == Expr::zero());
    CHECK(r_kat(P("a"), OM) == P("a"));
    CHECK(print(r_kat(P("[tt]"), OM)) == "at{} + at{o}");
    CHECK(print(r_kat(P("a;[o]"), OM)) == "a;at{o}");
    CHECK(print(r_kapt(P("[a|b]"), {"a", "b"})) == "at{a} + at{b} + at{a,b}");
    CHECK_THROWS_AS(r_kapt(P("[!a]"), {"a", "b"}), TheoryError);
}

TEST_CASE("guarded strings")
{
    auto gs = [](const char* e, std::size_t n) { return guarded_strings_upto(P(e), OM, n); };
    Symbol a = sym_action("a");
    GSSet ga;
    for (AtomMask x : {0, 1})
        for (AtomMask y : {0, 1}) ga.insert({{x, y}, {a}});
    CHECK(gs("a", 1) == ga);
    CHECK(gs("[o]", 3) == GSSet{{{1}, {}}});
    CHECK(gs("[o];[o]", 2) == GSSet{{{1}, {}}});
    CHECK(gs("[o];[!o]", 2).empty());
    CHECK(gs("a*", 2).size() == 2 + 4 + 8);
    CHECK(gs("a;a", 1).empty());

    GuardedString g{{1, 0}, {a}};
    CHECK(print_guarded_string(g, OM) == "at{o};a;at{}");
    CHECK(as_guarded_string(to_word(g, OM), OM) == g);
    CHECK_FALSE(as_guarded_string(W("a"), OM));
    CHECK(coalesce({{1}, {}}, g) == g);
    CHECK_FALSE(coalesce({{0}, {}}, g));
}

TEST_CASE("property: guarded strings agree with membership search")
{
    std::mt19937_64 rng(11);
    std::vector<std::string> T = {"o1", "o2"};
    std::vector<Symbol> acts = {sym_action("a"), sym_action("b")};
    for (int i = 0; i < 150; ++i) {
        Expr e = random_kat(rng, 4);
        INFO(print(e));
        CHECK(guarded_strings_upto(e, T, 2) == gs_oracle(e, T, acts, 2));
    }
}

TEST_CASE("KAT decisions")
{
    auto t = make(TheoryId::KAT, {"o1", "o2"}, {"a", "b"});
    CHECK(eq(t, "[o1];[o2]", "[o2];[o1]"));
    CHECK(eq(t, "at{o1};at{}", "0"));
    CHECK(eq(t, "[o1|!o1]", "1"));
    CHECK(eq(t, "[o1];a;[o1]", "[o1];a;[o1];[o1]"));
    // atom laws
    CHECK(eq(t, "1", "at{} + at{o1} + at{o2} + at{o1,o2}"));
    CHECK(eq(t, "at{o1};at{o1}", "at{o1}"));

    auto v = t.decide(t.parse("a;b"), t.parse("b;a"));
    CHECK_FALSE(v.equal);
    REQUIRE(v.guarded);
    CHECK(v.guarded->actions.size() == 2);
    // the witness separates the guarded-string languages
    auto L = guarded_strings_upto(t.parse("a;b"), {"o1", "o2"}, 2);
    auto R = guarded_strings_upto(t.parse("b;a"), {"o1", "o2"}, 2);
    CHECK(L.count(*v.guarded) != R.count(*v.guarded));
}

TEST_CASE("property: KAT decisions agree with guarded strings")
{
    std::mt19937_64 rng(5);
    auto t = make(TheoryId::KAT, {"o1", "o2"}, {"a", "b"});
    int equal = 0;
    for (int i = 0; i < 120; ++i) {
        Expr e = random_kat(rng, 3);
        // half the pairs are rewrites that keep the meaning
        Expr f = (i % 2) ? random_kat(rng, 3) : Expr::sum(e, Expr::prod(P("[o1&o2]"), P("[o1]")));
        if (i % 2 == 0) f = Expr::sum(f, Expr::prod(P("[o1&o2]"), e));
        auto v = t.decide(e, f);
        bool same = guarded_strings_upto(e, {"o1", "o2"}, 3) == guarded_strings_upto(f, {"o1", "o2"}, 3);
        INFO(print(e), " vs ", print(f));
        CHECK(v.equal == same);
        equal += v.equal;
    }
    CHECK(equal > 20);
}

TEST_CASE("property: guarded-string membership lemma")
{
    KatPresentation K({sym_action("a")});
    std::mt19937_64 rng(3);
    Alphabet A(K.letters);
    for (int i = 0; i < 20; ++i) {
        auto L = K.random_language(rng, 2);
        auto cl = closure_upto(K.hyps, bounded(WordSet(L.begin(), L.end()), 9, A, true), 4, 4);
        for (auto& w : words_upto(K.letters, 4)) {
            INFO(print_word(w));
            CHECK(cl.words.count(w) == K.gs_criterion(w, L));
            // no new guarded strings
            if (K.is_guarded(w)) CHECK(cl.words.count(w) == L.count(w));
        }
    }
}

TEST_CASE("KAO and KABO")
{
    auto kao = make(TheoryId::KAO, {"o1", "o2"}, {"a"});
    CHECK(le(kao, "[o1&o2]", "[o1];[o2]"));
    CHECK_FALSE(le(kao, "[o1];[o2]", "[o1&o2]"));
    CHECK_FALSE(eq(make(TheoryId::KAO, OM, {"a"}), "at{o};at{}", "0"));

    auto kabo = make(TheoryId::KABO, {"o1", "o2"}, {"a"});
    CHECK(eq(kabo, "[tt]", "1"));
    CHECK_FALSE(eq(kabo, "[o1];[o2]", "[o1&o2]"));
    CHECK(eq(kabo, "[o1];[o1]", "[o1]"));
    REQUIRE_FALSE(kabo.certificates().empty());
    CHECK(kabo.certificates().front().ok);
}

TEST_CASE("KAPT")
{
    std::vector<std::string> ab = {"a", "b"};
    // summands of the 2,4 homomorphism, brute force over words of atoms
    auto seqs = kapt_sequences(3, ab, false);
    std::size_t brute = 0;
    auto atoms = all_atoms(2, AtomLogic::Lattice);
    std::vector<std::vector<AtomMask>> cur{{}};
    for (std::size_t len = 1; len <= 4; ++len) {
        std::vector<std::vector<AtomMask>> next;
        for (auto& s : cur)
            for (AtomMask x : atoms) {
                auto t = s;
                t.push_back(x);
                next.push_back(t);
            }
        cur = next;
        for (auto& s : cur) {
            AtomMask u = 0;
            std::set<AtomMask> d(s.begin(), s.end());
            for (AtomMask x : s) u |= x;
            brute += d.size() == s.size() && u == 3;
        }
    }
    CHECK(brute == 13);
    CHECK(seqs.size() == 13);
    CHECK(kapt_sequences(1, ab, false) == std::vector<Word>{W("at{a}")});

    auto t = make(TheoryId::KAPT, ab, {"x"});
    CHECK(eq(t, "at{a};at{b}", "at{b};at{a}"));
    CHECK(eq(t, "at{a};at{b}", "at{a,b}"));
    CHECK(le(t, "at{a}", "1"));
    CHECK_FALSE(le(t, "1", "at{a}"));
    CHECK(eq(t, "[a&b]", "[a];[b]"));
    CHECK_FALSE(eq(t, "[a];x", "x;[a]"));
    CHECK_THROWS_AS(make(TheoryId::KAPT, {"a", "b", "c", "d"}, {"x"}), TheoryError);

    auto tb = make(TheoryId::KAPTBounded, ab, {"x"});
    CHECK(eq(tb, "at{}", "1"));
    CHECK(eq(tb, "at{a};at{b}", "at{b};at{a}"));
    CHECK_FALSE(eq(t, "[a|b]", "1"));
}

TEST_CASE("the unbounded KAPT table misses a case of 23")
{
    // from at{b}: a 3 step gives at{a,b}, then 2 splits it into at{a,b};at{a}. A 2 step on at{b}
    // only gives at{b};at{b}, and 3 never removes tests from an atom, so no 3,3,2 path reaches it.
    auto t = make(TheoryId::KAPT, {"a", "b"}, {"x"});
    auto H2 = *t.set("2"), H3 = *t.set("3");
    Alphabet A(t.letters());
    auto L = bounded(words({"at{b}"}), 4, A, true);
    auto lhs = step(H2, step(H3, L, 4), 4).words;
    CHECK(lhs.count(W("at{a,b};at{a}")));
    auto two = step(H2, L, 4);
    auto rhs = step(H3, step(H3, two, 4), 4).words;
    auto alt = step(H3, two, 4).words;  // 32
    CHECK_FALSE(rhs.count(W("at{a,b};at{a}")));
    CHECK_FALSE(alt.count(W("at{a,b};at{a}")));
}

TEST_CASE("NetKAT")
{
    auto t = make(TheoryId::NetKAT, {}, {}, {"v", "w"});
    CHECK(eq(t, ":=v;:=w", ":=w"));
    CHECK(eq(t, ":=v;@v", ":=v"));
    CHECK(eq(t, "@v;:=v", "@v"));
    CHECK(eq(t, "@v;dup", "dup;@v"));
    CHECK(eq(t, "@v+@w", "1"));
    CHECK(eq(t, "@v;@w", "0"));
    CHECK_FALSE(eq(t, ":=v", ":=w"));
    CHECK_FALSE(eq(t, "@v", "1"));

    auto one = make(TheoryId::NetKAT, {}, {}, {"v"});
    CHECK(eq(one, "@v", "1"));
    CHECK(eq(one, ":=v", "1"));
    CHECK_THROWS_AS(make(TheoryId::NetKAT, {}, {}, {}), TheoryError);
}

TEST_CASE("property: the two NetKAT presentations have the same closures")
{
    auto t = make(TheoryId::NetKAT, {}, {}, {"v", "w"});
    auto H = *t.set("netkat"), H2 = *t.set("netkat'");
    Alphabet A(t.letters());
    std::mt19937_64 rng(9);
    for (int i = 0; i < 8; ++i) {
        WordSet L;
        for (int j = 0; j < 3; ++j) {
            Word w;
            for (std::size_t k = rng() % 3; k > 0; --k) w.push_back(t.letters()[rng() % t.letters().size()]);
            L.insert(w);
        }
        auto B = bounded(L, 9, A, true);
        auto x = closure_upto(H, B, 5, 4), y = closure_upto(H2, B, 5, 4);
        CHECK(x.words == y.words);
    }
}

TEST_CASE("involution")
{
    CHECK(involute(W("a;b';c")) == W("c';b;a'"));
    CHECK(involute({}).empty());
    Word w = W("a;a';b");
    CHECK(involute(involute(w)) == w);
    auto sig = letters({"a", "a'"});
    CHECK(involute(W("a"), sig) == W("a'"));
    CHECK_THROWS_AS(involute(W("b"), sig), TheoryError);
}

TEST_CASE("theory configuration")
{
    CHECK(parse_theory_id("kaptt") == TheoryId::KAPTBounded);
    CHECK(parse_theory_id("netkat") == TheoryId::NetKAT);
    CHECK_FALSE(parse_theory_id("kaz"));
    TheoryConfig c;
    c.id = TheoryId::KAT;
    c.tests = {"a", "b", "c"};
    c.max_tests = 2;
    CHECK_THROWS_AS(Theory{c}, TheoryError);
    auto katf = make(TheoryId::KATF, OM, {"a"});
    CHECK_FALSE(katf.decidable());
    CHECK_THROWS_AS(katf.pipeline(), TheoryError);
    CHECK(katf.set("fullsplit"));
    auto kat = make(TheoryId::KAT, OM, {"a"});
    CHECK_THROWS_AS(kat.parse("b"), ParseError);
}
