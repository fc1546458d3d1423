#include <doctest.h>

#include "kahyp/reductions.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace kahyp;
using namespace kahyp::testing;

namespace {

Hypothesis hyp(const char* l, const char* r) { return {P(l), P(r)}; }

HypothesisSet hs(const std::string& name, std::initializer_list<Hypothesis> h)
{
    HypothesisSet H;
    H.name = name;
    H.concrete = h;
    return H;
}

WordSet lang_of(const Reduction& r, Expr e, std::size_t n) { return nfa_lang_upto(expr_to_nfa(r(e)), n); }

void require_verified(const Reduction& r, Expr e, std::size_t m, std::size_t slack)
{
    auto rep = verify_reduction(r, e, m, slack);
    INFO(r.name, " on ", print(e), " witness ", rep.witness ? print_word(*rep.witness) : "-");
    REQUIRE(rep.equal);
}

// <e> ⊆ <r(e)> for shortcut-style constructors
void require_extensive(const Reduction& r, Expr e)
{
    auto res = ka_leq(e, r(e));
    INFO(r.name, " on ", print(e));
    REQUIRE(res.equal);
}

}  // namespace

TEST_CASE("letter-word reduction")
{
    auto sig = letters({"a", "b", "c", "d"});
    auto r = red_letter_word(hs("H", {hyp("a", "b;c")}), sig);
    CHECK(restrict(lang_of(r, P("b;c"), 2), 2) == words({"b;c", "a"}));
    CHECK(lang_of(r, P("d"), 5) == words({"d"}));
    CHECK_THROWS_AS(red_letter_word(hs("H", {hyp("a;b", "c")}), sig), ReductionError);
    CHECK_THROWS_AS(red_letter_word(hs("H", {hyp("a", "b+c")}), sig), ReductionError);

    // contraction: α <= α;α
    auto ctr = red_letter_word(hs("ctr", {hyp("x", "x;x")}), letters({"x"}));
    CHECK(nfa_accepts(expr_to_nfa(ctr(P("x;x"))), W("x")));
    // letters occurring in rhs words of other rules need repeated rounds
    auto chain = red_letter_word(hs("H", {hyp("a", "b"), hyp("b", "c")}), sig);
    CHECK(lang_of(chain, P("c"), 1) == words({"a", "b", "c"}));
}

TEST_CASE("one-sum reduction")
{
    auto ab = letters({"a", "b"});
    auto r = red_one_sum({letters({"a", "b"})}, ab);
    CHECK(restrict(lang_of(r, P("a"), 2), 2) == words({"a", "a;a", "a;b", "b;a"}));
    require_verified(r, P("a"), 2, 4);
    auto one = red_one_sum({letters({"a"})}, letters({"a"}));
    CHECK(lang_of(one, P("1"), 2) == words({"1", "a", "a;a"}));
    CHECK(ka_equiv(r(Expr::zero()), Expr::zero()).equal);

    // parsed from inequations; the bare inequation 1 <= a+b is refused
    auto H = hs("atm", {hyp("1", "a+b"), hyp("a", "1"), hyp("b", "1")});
    CHECK_NOTHROW(red_one_sum(H, ab));
    CHECK_THROWS_AS(red_one_sum(hs("up", {hyp("1", "a+b")}), ab), ReductionError);
}

TEST_CASE("e <= 0 reduction")
{
    auto abc = letters({"a", "b", "c"});
    auto r = red_e_zero(P("a;b"), abc);
    CHECK(ka_equiv(r(P("c")), P("c + (a+b+c)*;a;b;(a+b+c)*")).equal);
    CHECK(red_e_zero(Expr::zero(), abc)(P("c;a")) == P("c;a"));
    WordSet want{W("c")};
    for (auto& w : all_words(abc, 3))
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (name_of(w[i]) == "a" && name_of(w[i + 1]) == "b") want.insert(w);
    CHECK(lang_of(r, P("c"), 3) == want);
    require_verified(r, P("c"), 3, 2);
}

TEST_CASE("absorption reductions")
{
    auto ab = letters({"a", "b"});
    auto left = red_absorb(AbsorbSide::Left, parse_symbol("a"), P("b"), ab);
    CHECK(print(left(P("a"))) == "b*;a");
    CHECK(print(left(P("b;a"))) == "b;b*;a");
    auto self = red_absorb(AbsorbSide::Self, parse_symbol("a"), Expr::one(), ab);
    CHECK(lang_of(self, P("a"), 3) == words({"a", "a;a", "a;a;a"}));
    CHECK(closed_sem_upto(self.source, P("a"), 3, 2, Alphabet(ab)).words == words({"a", "a;a", "a;a;a"}));
    auto zero = red_absorb(AbsorbSide::Left, parse_symbol("a"), Expr::zero(), ab);
    CHECK(ka_equiv(zero(P("a")), P("a")).equal);
    CHECK_THROWS_AS(red_absorb(AbsorbSide::Right, parse_symbol("a"), P("a;b"), ab), ReductionError);
}

TEST_CASE("top reduction")
{
    auto sig = letters({"a", "full"});
    auto r = red_top(parse_symbol("full"), sig);
    CHECK(print(r(P("full"))) == "(a + full)*");
    CHECK(r(P("a")) == P("a"));
    CHECK(restrict(lang_of(r, P("full"), 1), 1) == words({"1", "a", "full"}));
    require_verified(r, P("full"), 1, 3);
}

TEST_CASE("self-loop reduction on the atom/assignment instance")
{
    // a = α, b = p_α; target {bb <= b, a <= 1}
    auto sig = letters({"@v", ":=v"});
    auto target = hs("23", {hyp(":=v;:=v", ":=v"), hyp("@v", "1")});
    auto r = red_self_loop(P("@v;:=v"), P("@v;(@v + :=v)*"), target, sig);
    CHECK(ka_equiv(r(Expr::zero()), Expr::zero()).equal);

    // <r(e)> = {u0 v0 ... u_n | u0..u_n ∈ <e>, v_i ∈ <f'>} by direct enumeration
    Expr e = P("@v;:=v;@v");
    auto fp = lang_upto(P("@v;(@v + :=v)*"), 5);
    WordSet want = lang_upto(e, 5);
    for (bool grew = true; grew;) {
        grew = false;
        WordSet next = want;
        for (auto& w : want)
            for (std::size_t i = 0; i <= w.size(); ++i)
                for (auto& v : fp)
                    if (w.size() + v.size() <= 5) {
                        Word x(w.begin(), w.begin() + static_cast<long>(i));
                        x.insert(x.end(), v.begin(), v.end());
                        x.insert(x.end(), w.begin() + static_cast<long>(i), w.end());
                        if (next.insert(x).second) grew = true;
                    }
        want = std::move(next);
    }
    CHECK(lang_of(r, e, 5) == want);
    require_verified(r, e, 4, 3);

    // f' must absorb insertions of f
    CHECK_THROWS_AS(red_self_loop(P("@v;:=v"), P("@v;:=v"), target, sig), ReductionError);
    CHECK_THROWS_AS(red_self_loop(P("@v;:=v"), P("@v"), target, sig), ReductionError);
}

TEST_CASE("homomorphic reductions")
{
    auto ab = letters({"a", "b"});
    auto id = hom_reduction("id", {}, HypothesisSet{}, HypothesisSet{}, ab, ab);
    CHECK(id(P("a;b*")) == P("a;b*"));
    // b -> a breaks a <= r(a) on the target letter b
    CHECK_THROWS_AS(hom_reduction("bad", {{parse_symbol("b").id, P("a")}}, HypothesisSet{}, HypothesisSet{}, ab, ab),
                    ReductionError);
    // the left absorption as a checked homomorphism
    auto H = hs("ba", {hyp("b;a", "a")});
    auto r = hom_reduction("absorb", {{parse_symbol("a").id, P("b*;a")}}, H, HypothesisSet{}, ab, ab);
    CHECK(ka_equiv(r(P("a;a")), P("b*;a;b*;a")).equal);
    // the wrong direction fails condition (4)
    try {
        hom_reduction("wrong", {{parse_symbol("a").id, P("a;b*")}}, H, HypothesisSet{}, ab, ab);
        FAIL("expected failure");
    } catch (const ReductionError& e) {
        CHECK(std::string(e.what()).find("condition (") != std::string::npos);
    }
}

TEST_CASE("verify_reduction outcomes")
{
    auto abc = letters({"a", "b", "c"});
    CHECK(verify_reduction(red_e_zero(P("a;b"), abc), P("c"), 3, 2).equal);
    auto idr = identity_reduction(HypothesisSet{}, HypothesisSet{}, abc);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) require_verified(idr, random_expr(rng, abc, 3), 4, 2);
    // r(f) = f is not a reduction for {ab <= 0}
    auto wrong = identity_reduction(hs("zero", {hyp("a;b", "0")}), HypothesisSet{}, abc);
    auto rep = verify_reduction(wrong, P("c"), 3, 2);
    REQUIRE(!rep.equal);
    CHECK(print_word(*rep.witness) == "a;b");
}

TEST_CASE("composition")
{
    auto abc = letters({"a", "b", "c"});
    auto H = hs("H", {hyp("a", "b;c")});
    auto r1 = red_drop_zero(H, P("a;b"), abc);
    auto r2 = red_letter_word(H, abc);
    auto r3 = identity_reduction(HypothesisSet{"empty", {}, {}}, HypothesisSet{"empty", {}, {}}, abc);
    auto left = compose(compose(r1, r2), r3), right = compose(r1, compose(r2, r3));
    std::mt19937_64 rng(42);
    for (int i = 0; i < 20; ++i) {
        Expr e = random_expr(rng, abc, 3);
        REQUIRE(ka_equiv(left(e), right(e)).equal);
        REQUIRE(nfa_equiv(left.apply(expr_to_nfa(e)), expr_to_nfa(left(e))).equal);
        require_verified(left, e, 4, 2);
    }
    CHECK_THROWS_AS(compose(r2, r1), ReductionError);
}

TEST_CASE("union pipeline checks its certificate")
{
    auto abc = letters({"a", "b", "c"});
    auto z = red_e_zero(P("c;c"), abc);
    auto lw = red_letter_word(hs("H", {hyp("a", "b")}), abc);
    Certificate cert;
    cert.table = "manual";
    cert.row_names = {"zero", "H"};
    cert.rows = {z.source, lw.source};
    CHECK_THROWS_AS(union_pipeline("u", {z, lw}, cert), ReductionError);
    cert.ok = true;
    auto u = union_pipeline("u", {z, lw}, cert);
    std::mt19937_64 rng(43);
    for (int i = 0; i < 10; ++i) require_verified(u, random_expr(rng, abc, 3), 4, 2);
    cert.rows = {lw.source, z.source};
    CHECK_THROWS_AS(union_pipeline("u", {z, lw}, cert), ReductionError);
    // a single part behaves like that part
    Certificate one{"one", true, {"H"}, {lw.source}, 2, {}};
    auto single = union_pipeline("single", {lw}, one);
    CHECK(ka_equiv(single(P("b;c")), lw(P("b;c"))).equal);
}

TEST_CASE("property: constructors pass bounded verification")
{
    std::mt19937_64 rng(44);
    auto abc = letters({"a", "b", "c"});
    auto ab = letters({"a", "b"});
    const std::size_t m = 4, slack = 3;
    for (int i = 0; i < 15; ++i) {
        // letter-or-unit lhs, word rhs
        HypothesisSet H;
        H.name = "lw";
        for (int j = 0; j < 1 + static_cast<int>(rng() % 2); ++j) {
            Expr l = rng() % 4 == 0 ? Expr::one() : Expr::sym(abc[rng() % 3]);
            Word w;
            for (std::size_t k = 0, n = rng() % 3; k < n; ++k) w.push_back(abc[rng() % 3]);
            if (l.is_one() && w.empty()) w.push_back(abc[0]);
            H.concrete.push_back({l, word_expr(w)});
        }
        auto lw = red_letter_word(H, abc);
        Expr e = random_expr(rng, abc, 3);
        require_verified(lw, e, m, slack);
        require_extensive(lw, e);

        std::vector<Symbol> S;
        for (Symbol s : ab)
            if (rng() % 2) S.push_back(s);
        if (S.empty()) S.push_back(ab[rng() % 2]);
        auto os = red_one_sum({S}, abc);
        e = random_expr(rng, abc, 3);
        require_verified(os, e, m, slack);
        require_extensive(os, e);

        auto ez = red_e_zero(random_expr(rng, ab, 2), abc);
        e = random_expr(rng, abc, 3);
        require_verified(ez, e, m, slack);
        require_extensive(ez, e);

        Symbol a = abc[rng() % 3];
        std::vector<Symbol> rest;
        for (Symbol s : abc)
            if (s != a) rest.push_back(s);
        auto side = static_cast<AbsorbSide>(rng() % 3);
        auto abs = red_absorb(side, a, random_expr(rng, rest, 2), abc);
        e = random_expr(rng, abc, 3);
        require_verified(abs, e, m, slack);
        require_extensive(abs, e);
    }
}

TEST_CASE("property: drop-zero can run its zero set first")
{
    std::mt19937_64 rng(45);
    auto abc = letters({"a", "b", "c"});
    for (int i = 0; i < 30; ++i) {
        auto H = random_hyps(rng, abc, true, false);
        auto r = red_drop_zero(H, word_expr(*random_lang(rng, abc, 2, 1).begin()), abc);
        auto L = random_lang(rng, abc, 3, 3);
        HypothesisSet Z;
        for (auto& h : r.source.concrete)
            if (h.rhs.is_zero()) Z.concrete.push_back(h);
        auto cl = [&](const HypothesisSet& S, const WordSet& X) {
            return closure_upto(S, bounded(X, 5, Alphabet(abc), true), 5, 0).words;
        };
        REQUIRE(cl(r.source, L) == cl(H, cl(Z, L)));
    }
}
