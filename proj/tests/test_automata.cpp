#include <doctest.h>

#include "kahyp/automata.hpp"
#include "support.hpp"

using namespace kahyp;
using namespace kahyp::testing;

namespace {

// Independent equality check: minimal DFAs over a shared letter order.
bool dfa_equal(Expr e, Expr f, const std::vector<Symbol>& sig)
{
    Dfa a = minimize(determinize(expr_to_nfa(e), sig));
    Dfa b = minimize(determinize(expr_to_nfa(f), sig));
    return same_dfa(a, b);
}

Nfa random_nfa(std::mt19937_64& rng, const std::vector<Symbol>& sig, int states)
{
    Nfa n;
    n.alphabet = sig;
    for (int i = 0; i < states; ++i) n.add_state(rng() % 3 == 0);
    n.initial.push_back(0);
    int edges = states * 2;
    for (int i = 0; i < edges; ++i) {
        Symbol l = (rng() % 5 == 0) ? kEps : sig[rng() % sig.size()];
        n.add_edge(rng() % states, l, rng() % states);
    }
    return n;
}

}  // namespace

TEST_CASE("expr_to_nfa basics")
{
    CHECK(nfa_lang_upto(expr_to_nfa(P("0")), 4).empty());
    CHECK(nfa_lang_upto(expr_to_nfa(P("a")), 4) == words({"a"}));
}

TEST_CASE("property: Antimirov automaton agrees with lang_upto")
{
    std::mt19937_64 rng(21);
    auto sig = letters({"a", "b"});
    for (int i = 0; i < 100; ++i) {
        Expr e = random_expr(rng, sig, 5);
        INFO(print(e));
        REQUIRE(nfa_lang_upto(expr_to_nfa(e), 6) == lang_upto(e, 6));
    }
}

TEST_CASE("determinize")
{
    auto sig = letters({"a", "b"});
    Dfa d = minimize(determinize(expr_to_nfa(P("(a+b)*")), sig));
    CHECK(d.num_states() == 1);
    CHECK(d.accepting[0]);
    Dfa z = determinize(expr_to_nfa(P("0")), sig);
    CHECK(z.num_states() == 1);
    CHECK(!z.accepting[0]);

    Nfa loop;
    loop.alphabet = letters({"a"});
    loop.add_state(true);
    loop.initial = {0};
    loop.add_edge(0, loop.alphabet[0], 0);
    Dfa dl = determinize(loop);
    CHECK(dl.num_states() == 1);
    CHECK(dl.delta[0][0] == 0);
}

TEST_CASE("property: determinize preserves bounded languages of random NFAs")
{
    std::mt19937_64 rng(22);
    auto sig = letters({"a", "b"});
    for (int i = 0; i < 100; ++i) {
        Nfa n = random_nfa(rng, sig, 1 + rng() % 5);
        Dfa d = determinize(n);
        REQUIRE(nfa_lang_upto(dfa_to_nfa(d), 6) == nfa_lang_upto(n, 6));
        for (const auto& w : all_words(sig, 5)) REQUIRE(dfa_accepts(d, w) == nfa_accepts(n, w));
    }
}

TEST_CASE("nfa_to_expr")
{
    Nfa one;
    one.add_state(true);
    one.initial = {0};
    CHECK(nfa_to_expr(one) == Expr::one());

    Nfa ij;
    ij.add_state();
    ij.add_state(true);
    ij.initial = {0};
    Symbol a = parse_symbol("a");
    ij.add_letter(a);
    ij.add_edge(0, a, 1);
    CHECK(nfa_to_expr(ij) == Expr::sym(a));
}

TEST_CASE("property: state elimination round trip")
{
    std::mt19937_64 rng(23);
    auto sig = letters({"a", "b"});
    for (int i = 0; i < 100; ++i) {
        Expr e = random_expr(rng, sig, 5);
        Expr back = nfa_to_expr(expr_to_nfa(e));
        INFO(print(e), " -> ", print(back));
        REQUIRE(ka_equiv(back, e).equal);
        REQUIRE(dfa_equal(back, e, sig));
    }
}

TEST_CASE("ka_equiv examples")
{
    Expr e = P("a;(b+a)*");
    CHECK(ka_equiv(e, e).equal);
    auto r = ka_equiv(P("a"), P("a+b"));
    REQUIRE(!r.equal);
    CHECK(print_word(*r.witness) == "b");
    CHECK(ka_equiv(P("(a+b)*"), P("(a*;b)*;a*")).equal);
    CHECK(dfa_equal(P("(a+b)*"), P("(a*;b)*;a*"), letters({"a", "b"})));
    CHECK(ka_equiv(P("0"), P("a;0")).equal);
    CHECK(!ka_equiv(P("1"), P("0")).equal);
}

TEST_CASE("property: ka_equiv witnesses are shortest and valid")
{
    std::mt19937_64 rng(24);
    auto sig = letters({"a", "b"});
    for (int i = 0; i < 300; ++i) {
        Expr e = random_expr(rng, sig, 4), f = random_expr(rng, sig, 4);
        auto r = ka_equiv(e, f);
        auto s = ka_equiv(f, e);
        REQUIRE(r.equal == s.equal);
        REQUIRE(r.equal == dfa_equal(e, f, sig));
        if (!r.equal) {
            const Word& w = *r.witness;
            WordSet le = lang_upto(e, w.size()), lf = lang_upto(f, w.size());
            REQUIRE((le.count(w) != lf.count(w)));
            for (std::size_t n = 0; n < w.size(); ++n) REQUIRE(restrict(le, n) == restrict(lf, n));
        }
    }
}

TEST_CASE("ka_leq")
{
    CHECK(ka_leq(P("a"), P("a+b")).equal);
    auto r = ka_leq(P("a+b"), P("a"));
    REQUIRE(!r.equal);
    CHECK(print_word(*r.witness) == "b");
}

TEST_CASE("product, union, substitution")
{
    auto sig = letters({"a", "b"});
    Nfa x = expr_to_nfa(P("a*;b")), y = expr_to_nfa(P("(a;a)*;b*"));
    CHECK(nfa_lang_upto(nfa_intersection(x, y), 5) == words({"b", "a;a;b", "a;a;a;a;b"}));
    CHECK(nfa_equiv(nfa_union(x, y), expr_to_nfa(P("a*;b + (a;a)*;b*"))).equal);
    Nfa s = nfa_substitute(expr_to_nfa(P("a;b")), {{parse_symbol("a"), expr_to_nfa(P("c*"))}});
    CHECK(nfa_equiv(s, expr_to_nfa(P("c*;b"))).equal);
    Nfa t = trim(expr_to_nfa(P("a + b;0")));
    CHECK(nfa_equiv(t, expr_to_nfa(P("a"))).equal);
    CHECK(to_dot(t).find("digraph") != std::string::npos);
}
