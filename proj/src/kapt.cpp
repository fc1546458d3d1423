#include <algorithm>
#include <functional>

#include "theory_impl.hpp"

namespace kahyp {

using detail::hset;
using detail::leq;
using detail::S;

std::vector<Word> kapt_sequences(AtomMask alpha, const std::vector<std::string>& tests, bool bounded)
{
    std::vector<AtomMask> below;
    for (AtomMask a : all_atoms(tests.size(), bounded ? AtomLogic::LatticeBounded : AtomLogic::Lattice))
        if ((a & ~alpha) == 0) below.push_back(a);
    std::vector<Word> out;
    std::vector<bool> used(below.size(), false);
    Word cur;
    std::function<void(AtomMask)> go = [&](AtomMask acc) {
        if (!cur.empty() && acc == alpha) out.push_back(cur);
        for (std::size_t i = 0; i < below.size(); ++i) {
            if (used[i]) continue;
            used[i] = true;
            cur.push_back(atom_symbol(below[i], tests));
            go(acc | below[i]);
            cur.pop_back();
            used[i] = false;
        }
    };
    go(0);
    return out;
}

namespace detail {

void build_kapt(Theory::Impl& t, bool with_pipeline)
{
    const auto& c = t.cfg;
    const bool bounded = c.id == TheoryId::KAPTBounded;
    const auto& tests = c.tests;
    if (tests.empty()) throw TheoryError("kapt needs at least one test");
    std::vector<Symbol> acts, ats;
    std::vector<AtomMask> masks = all_atoms(tests.size(), bounded ? AtomLogic::LatticeBounded : AtomLogic::Lattice);
    for (auto& a : c.actions) acts.push_back(sym_action(a));
    for (AtomMask a : masks) ats.push_back(atom_symbol(a, tests));

    t.input = Alphabet({}, to_string(c.id));
    t.input.tests = tests;
    for (Symbol s : acts) t.input.add(s);
    for (Symbol s : ats) t.input.add(s);
    t.letters = acts;
    t.letters.insert(t.letters.end(), ats.begin(), ats.end());
    t.normalize = [tests, bounded](Expr e) { return r_kapt(e, tests, bounded); };

    auto A = [&](AtomMask m) { return S(atom_symbol(m, tests)); };
    std::vector<Hypothesis> h1, h2, h3, h4;
    for (AtomMask a : masks) {
        h4.push_back(leq(A(a), Expr::one()));
        for (AtomMask b : masks) {
            h1.push_back(leq(A(a | b), mk_prod(A(a), A(b))));
            h2.push_back(leq(mk_prod(A(a), A(b)), A(a | b)));
            h3.push_back(leq(A(a | b), A(a)));
        }
    }
    auto& sets = t.sets;
    sets["1"] = hset("1", h1);
    sets["2"] = hset("2", h2);
    sets["3"] = hset("3", h3);
    sets["4"] = hset("4", h4);
    sets["24"] = set_union("24", {sets["2"], sets["4"]});
    sets["124"] = set_union("124", {sets["1"], sets["2"], sets["4"]});
    sets["1234"] = set_union("1234", {sets["1"], sets["2"], sets["3"], sets["4"]});
    std::string src = "124", tgt = "1234";
    if (bounded) {
        sets["5"] = hset("5", {leq(Expr::one(), A(0))});
        sets["1245"] = set_union("1245", {sets["124"], sets["5"]});
        sets["12345"] = set_union("12345", {sets["1234"], sets["5"]});
        src = "1245";
        tgt = "12345";
    }
    t.hyps = sets[src];
    t.explain_head.push_back("r: positive tests to sums of the atoms below them");
    if (!with_pipeline) return;
    if (tests.size() > 3)
        throw TheoryError("kapt decision is limited to 3 tests: the 2,4 homomorphism has factorially many summands");

    std::unordered_map<std::uint32_t, Expr> images;
    for (AtomMask a : masks) {
        std::vector<Expr> ws;
        for (auto& w : kapt_sequences(a, tests, bounded)) ws.push_back(word_expr(w));
        images.emplace(atom_symbol(a, tests).id, sum_of(ws));
    }
    Reduction hom = hom_reduction("kapt-2,4", images, sets["24"], sets["4"], t.letters, t.letters);
    hom.provenance.push_back("kapt-2,4: atoms to duplicate-free atom sequences with the same union");
    Reduction p24 = compose(hom, red_letter_word(sets["4"], t.letters));

    const std::string table = bounded ? "kaptt-order" : "kapt-order";
    TableReport rep = certify(builtin_table_text(table), sets, t.letters, c.bounds);
    t.certs.push_back(rep);
    Certificate cert = require_certificate(rep);
    std::vector<Reduction> parts = {red_letter_word(sets["3"], t.letters), red_letter_word(sets["1"], t.letters), p24};
    if (bounded) parts.push_back(red_letter_word(sets["5"], t.letters));
    Reduction up = union_pipeline(bounded ? "kaptt" : "kapt", parts, cert);
    Reduction id = identity_reduction(sets[src], sets[tgt], t.letters, "3 follows from 1 and 4 (a|b <= ab <= a)");
    t.pipeline = compose(id, up);
}

}  // namespace detail

}  // namespace kahyp
