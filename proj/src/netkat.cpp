#include <algorithm>

#include "theory_impl.hpp"

namespace kahyp {

using detail::hset;
using detail::leq;
using detail::S;

namespace {

Symbol at(const std::string& v) { return sym_netatom(v); }
Symbol as(const std::string& v) { return sym_assign(v); }

Expr w2(Symbol a, Symbol b) { return mk_prod(S(a), S(b)); }

void both(std::vector<Hypothesis>& hs, Expr a, Expr b)
{
    hs.push_back(leq(a, b));
    hs.push_back(leq(b, a));
}

bool covered(const HypothesisSet& small, const HypothesisSet& big, const std::vector<Symbol>& ctx)
{
    auto b = normal_form(big, 2, ctx);
    for (auto& h : normal_form(small, 2, ctx))
        if (std::find(b.begin(), b.end(), h) == b.end()) return false;
    return true;
}

}  // namespace

HypothesisSet netkat_axioms(const std::vector<std::string>& values)
{
    std::vector<Hypothesis> hs;
    std::vector<Expr> atoms;
    for (auto& v : values) atoms.push_back(S(at(v)));
    for (auto& p : values)
        for (auto& q : values) both(hs, w2(as(p), as(q)), S(as(q)));
    for (auto& a : values) {
        both(hs, w2(as(a), at(a)), S(as(a)));
        both(hs, w2(at(a), as(a)), S(at(a)));
        both(hs, w2(at(a), sym_dup()), w2(sym_dup(), at(a)));
    }
    both(hs, sum_of(atoms), Expr::one());
    for (auto& a : values)
        for (auto& b : values)
            if (a != b) hs.push_back(leq(w2(at(a), at(b)), Expr::zero()));
    return hset("netkat", hs);
}

namespace detail {

void build_netkat(Theory::Impl& t, bool with_pipeline)
{
    const auto& vals = t.cfg.values;
    if (vals.empty()) throw TheoryError("netkat needs at least one value");
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
            if (vals[i] == vals[j]) throw TheoryError("value " + vals[i] + " listed twice");

    t.letters.clear();
    for (auto& v : vals) t.letters.push_back(at(v));
    for (auto& v : vals) t.letters.push_back(as(v));
    t.letters.push_back(sym_dup());
    t.input = Alphabet(t.letters, "netkat");

    std::vector<Hypothesis> h0, h1, h2, h3, h4, h5, h6;
    std::vector<Expr> atoms;
    for (auto& a : vals) {
        atoms.push_back(S(at(a)));
        h1.push_back(leq(w2(at(a), as(a)), Expr::one()));
        h3.push_back(leq(S(at(a)), Expr::one()));
        h4.push_back(leq(S(as(a)), w2(as(a), at(a))));
        h6.push_back(leq(S(at(a)), w2(at(a), as(a))));
        for (auto& b : vals) {
            h2.push_back(leq(w2(as(a), as(b)), S(as(b))));
            h5.push_back(leq(S(as(b)), w2(as(a), as(b))));
            if (a == b) continue;
            h0.push_back(leq(w2(at(a), at(b)), Expr::zero()));
            h0.push_back(leq(prod_of({S(at(a)), S(sym_dup()), S(at(b))}), Expr::zero()));
            h0.push_back(leq(w2(as(a), at(b)), Expr::zero()));
        }
    }
    auto& sets = t.sets;
    sets["0"] = hset("0", h0);
    sets["1"] = hset("1", h1);
    sets["2"] = hset("2", h2);
    sets["3"] = hset("3", h3);
    sets["4"] = hset("4", h4);
    sets["5"] = hset("5", h5);
    sets["6"] = hset("6", h6);
    sets["7"] = hset("7", {leq(Expr::one(), sum_of(atoms))});
    sets["123"] = set_union("123", {sets["1"], sets["2"], sets["3"]});
    sets["23"] = set_union("23", {sets["2"], sets["3"]});
    sets["37"] = set_union("37", {sets["3"], sets["7"]});
    std::vector<HypothesisSet> ss;
    for (auto& a : vals) {
        Symbol A = at(a), P = as(a);
        sets["1:" + a] = hset("1:" + a, {leq(w2(A, P), Expr::one())});
        sets["2eq:" + a] = hset("2eq:" + a, {leq(w2(P, P), S(P))});
        sets["3:" + a] = hset("3:" + a, {leq(S(A), Expr::one())});
        sets["23:" + a] = set_union("23:" + a, {sets["2eq:" + a], sets["3:" + a]});
        sets["s:" + a] = set_union("s:" + a, {sets["1:" + a], sets["23:" + a]});
        std::vector<Hypothesis> ne, all;
        for (auto& q : vals) {
            all.push_back(leq(w2(as(q), P), S(P)));
            if (q != a) ne.push_back(leq(w2(as(q), P), S(P)));
        }
        sets["2ne:" + a] = hset("2ne:" + a, ne);
        sets["2:" + a] = hset("2:" + a, all);
        ss.push_back(sets["s:" + a]);
    }
    ss.insert(ss.begin(), sets["0"]);
    sets["0s"] = set_union("0s", ss);
    sets["netkat'"] = set_union("netkat'", {sets["0"], sets["1"], sets["2"], sets["3"], sets["4"], sets["5"],
                                            sets["6"], sets["7"]});
    sets["netkat"] = netkat_axioms(vals);
    t.hyps = sets["netkat"];
    if (!with_pipeline) return;

    const auto& L = t.letters;
    const auto& B = t.cfg.bounds;
    auto check = [&](const std::string& text) {
        TableReport r = certify(text, sets, L, B);
        t.certs.push_back(r);
        return require_certificate(r);
    };

    // s_v: the self-loop for v p_v <= 1 into {p_v p_v <= p_v, v <= 1}, then those two separately
    std::vector<Reduction> s_parts;
    for (auto& a : vals) {
        Symbol A = at(a), P = as(a);
        check("name: s-pre:" + a + "\norder: 1:" + a + " < 23:" + a + "\nset 1:" + a + " = 1:" + a + "\nset 23:" + a +
              " = 23:" + a + "\ncell 1:" + a + " 23:" + a + " = 23:" + a + ";23:" + a + ";23:" + a + " ; alt=1\n");
        Reduction loop =
            red_self_loop(w2(A, P), mk_prod(S(A), mk_star(mk_sum(S(A), S(P)))), sets["23:" + a], L);
        Certificate c23 = check("name: s-23:" + a + "\norder: 2eq:" + a + " < 3:" + a + "\nset 2eq:" + a + " = 2eq:" +
                                a + "\nset 3:" + a + " = 3:" + a + "\ncell 2eq:" + a + " 3:" + a + " = .\n");
        Reduction rest = union_pipeline(
            "23:" + a, {red_absorb(AbsorbSide::Self, P, S(P), L), red_letter_word(sets["3:" + a], L)}, c23);
        Reduction s = compose(loop, rest);
        s.name = "s:" + a;
        s_parts.push_back(s);
    }

    // (0,s)
    std::string text = "name: 0s\norder: 0";
    for (auto& a : vals) text += " < s:" + a;
    text += "\nset 0 = 0\n";
    for (auto& a : vals) text += "set s:" + a + " = s:" + a + "\ncell 0 s:" + a + " = ..\n";
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
            text += "cell s:" + vals[i] + " s:" + vals[j] + " = 0 ; alt=1\n";
    Certificate c0s = check(text);
    std::vector<Expr> zeros;
    for (auto& h : h0) zeros.push_back(h.lhs);
    std::vector<Reduction> parts0 = {red_e_zero(sum_of(zeros), L)};
    parts0.insert(parts0.end(), s_parts.begin(), s_parts.end());
    Reduction r0s = union_pipeline("0s", parts0, c0s);

    // 2, one value at a time
    std::vector<Reduction> two;
    for (auto& a : vals) {
        Symbol P = as(a);
        Reduction self = red_absorb(AbsorbSide::Self, P, S(P), L);
        if (vals.size() == 1) {
            two.push_back(self);
            continue;
        }
        std::vector<Expr> others;
        for (auto& q : vals)
            if (q != a) others.push_back(S(as(q)));
        Certificate c = check("name: 2:" + a + "\norder: 2eq:" + a + " < 2ne:" + a + "\nset 2eq:" + a + " = 2eq:" + a +
                              "\nset 2ne:" + a + " = 2ne:" + a + "\ncell 2eq:" + a + " 2ne:" + a + " = ...\n");
        two.push_back(union_pipeline("2:" + a, {self, red_absorb(AbsorbSide::Left, P, sum_of(others), L)}, c));
    }
    Reduction r2 = two.front();
    if (vals.size() > 1) {
        text = "name: 2\norder: 2:" + vals[0];
        for (std::size_t i = 1; i < vals.size(); ++i) text += " < 2:" + vals[i];
        text += "\n";
        for (auto& a : vals) text += "set 2:" + a + " = 2:" + a + "\n";
        for (std::size_t i = 0; i < vals.size(); ++i)
            for (std::size_t j = i + 1; j < vals.size(); ++j)
                text += "cell 2:" + vals[i] + " 2:" + vals[j] + " = 2:" + vals[j] + ";2:" + vals[j] + " ; alt=1\n";
        r2 = union_pipeline("2", two, check(text));
    }

    // The seven parts are justified by three checked tables: the merged table gives
    // cl = cl7 cl6 cl5 cl4 cl123 cl0, then cl123 = cl23 cl1 and cl23 = cl3 cl2. The rest is
    // monotonicity: 0,1 lie in 0s and 7 in 37.
    check(builtin_table_text("netkat"));
    check("name: netkat-123\norder: 1 < 23\nset 1 = 1\nset 23 = 23\ncell 1 23 = 23;23;23 ; alt=1\n");
    check("name: netkat-23\norder: 2 < 3\nset 2 = 2\nset 3 = 3\ncell 2 3 = .\n");
    if (!covered(set_union("01", {sets["0"], sets["1"]}), sets["0s"], L) || !covered(sets["7"], sets["37"], L))
        throw TheoryError("netkat: part sources do not cover rows 0, 1 and 7");

    Certificate cert;
    cert.table = "netkat (merged table, 123 and 23 splits)";
    cert.ok = true;
    cert.schema_k = B.k;
    cert.row_names = {"0s", "2", "3", "4", "5", "6", "37"};
    for (auto& n : cert.row_names) cert.rows.push_back(sets[n]);
    for (auto& r : t.certs)
        cert.notes.push_back(r.table + ": " + (r.certificate && !r.certificate->notes.empty()
                                                   ? r.certificate->notes.front()
                                                   : std::string("checked")));
    Reduction up = union_pipeline("netkat'", {r0s, r2, red_letter_word(sets["3"], L), red_letter_word(sets["4"], L),
                                              red_letter_word(sets["5"], L), red_letter_word(sets["6"], L),
                                              red_one_sum(sets["37"], L)},
                                  cert);
    Reduction id = identity_reduction(sets["netkat"], sets["netkat'"], L, "the two presentations prove each other");
    t.pipeline = compose(id, up);
}

}  // namespace detail

}  // namespace kahyp
