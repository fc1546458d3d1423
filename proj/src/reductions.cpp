#include "kahyp/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kahyp {

namespace {

std::vector<Symbol> merged(std::vector<Symbol> a, const std::vector<Symbol>& b)
{
    for (Symbol s : b)
        if (std::find(a.begin(), a.end(), s) == a.end()) a.push_back(s);
    return a;
}

std::vector<std::uint32_t> step_on(const Nfa& n, const std::vector<std::uint32_t>& S, Symbol a)
{
    std::vector<std::uint32_t> out;
    for (auto q : S)
        for (auto [l, t] : n.out[q])
            if (l == a) out.push_back(t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return eps_closure(n, std::move(out));
}

Expr via_automaton(const std::function<Nfa(const Nfa&)>& f, Expr e) { return simplify(nfa_to_expr(f(expr_to_nfa(e)))); }

// Same language, minimal deterministic states; keeps chained transforms from compounding their growth.
Nfa compact(const Nfa& n) { return dfa_to_nfa(minimize(determinize(n))); }

std::string describe(const Word& w) { return "'" + print_word(w) + "'"; }

// Copies `sub` into `n` and returns the offset of its states.
std::uint32_t embed(Nfa& n, const Nfa& sub)
{
    auto off = static_cast<std::uint32_t>(n.num_states());
    for (std::size_t q = 0; q < sub.num_states(); ++q) n.add_state(false);
    for (std::size_t q = 0; q < sub.num_states(); ++q)
        for (auto [l, t] : sub.out[q]) n.add_edge(off + static_cast<std::uint32_t>(q), l, off + t);
    for (Symbol s : sub.alphabet) n.add_letter(s);
    return off;
}

HypothesisSet named(std::string name, std::vector<Hypothesis> hs)
{
    HypothesisSet H;
    H.name = std::move(name);
    H.concrete = std::move(hs);
    return H;
}

bool includes_nf(const HypothesisSet& big, const HypothesisSet& small, const std::vector<Symbol>& ctx, int k)
{
    auto b = normal_form(big, k, ctx), s = normal_form(small, k, ctx);
    for (auto& h : s)
        if (std::find(b.begin(), b.end(), h) == b.end()) return false;
    return true;
}

}  // namespace

Nfa Reduction::apply(const Nfa& n) const
{
    if (nfa_transform) return nfa_transform(n);
    return expr_to_nfa(transform(nfa_to_expr(n)));
}

// ---------------------------------------------------------------------------
// letter-word shortcuts

Nfa shortcut_fixpoint(const Nfa& n0, const std::vector<std::pair<Symbol, Word>>& rules)
{
    Nfa n = n0;
    for (auto& [u, w] : rules) {
        if (u != kEps) n.add_letter(u);
        for (Symbol s : w) n.add_letter(s);
    }
    const std::size_t N = n.num_states();
    const std::size_t cap = N * N * std::max<std::size_t>(rules.size(), 1) + 1;
    std::size_t added = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& [u, w] : rules)
            for (std::uint32_t q = 0; q < N; ++q) {
                auto cur = eps_closure(n, {q});
                for (Symbol s : w) {
                    cur = step_on(n, cur, s);
                    if (cur.empty()) break;
                }
                for (auto j : cur) {
                    if (u == kEps && j == q) continue;
                    if (n.has_edge(q, u, j)) continue;
                    n.add_edge(q, u, j);
                    changed = true;
                    if (++added > cap) throw std::logic_error("shortcut fixpoint exceeded its iteration cap");
                }
            }
    }
    return n;
}

Reduction red_letter_word(const HypothesisSet& H, const std::vector<Symbol>& sigma)
{
    if (!H.schemas.empty()) throw ReductionError("letter-word reduction: schemas are not supported");
    std::vector<std::pair<Symbol, Word>> rules;
    for (auto& h : H.concrete) {
        Symbol u;
        if (h.lhs.is_one())
            u = kEps;
        else if (h.lhs.op() == Op::Sym)
            u = h.lhs.symbol();
        else
            throw ReductionError("letter-word reduction: lhs must be a letter or 1: " + h.str());
        auto w = as_word(h.rhs);
        if (!w) throw ReductionError("letter-word reduction: rhs must be a word: " + h.str());
        rules.emplace_back(u, *w);
    }
    Reduction r;
    r.name = H.name.empty() ? "letter-word" : "letter-word(" + H.name + ")";
    r.source = H;
    r.target.name = "empty";
    r.sigma = r.gamma = merged(sigma, H.letters());
    r.nfa_transform = [rules](const Nfa& n) { return shortcut_fixpoint(n, rules); };
    r.transform = [f = r.nfa_transform](Expr e) { return via_automaton(f, e); };
    r.provenance.push_back(r.name + ": shortcut automaton for hypotheses with letter-or-unit lhs");
    return r;
}

// ---------------------------------------------------------------------------
// 1 = Σ S

namespace {

Nfa one_sum_powerset(const Nfa& a, const std::vector<std::vector<Symbol>>& S, const std::vector<Symbol>& letters)
{
    Dfa d = determinize(a, letters);
    std::vector<std::vector<std::size_t>> sidx;
    for (auto& Si : S) {
        std::vector<std::size_t> ix;
        for (Symbol s : Si) ix.push_back(static_cast<std::size_t>(std::find(letters.begin(), letters.end(), s) - letters.begin()));
        sidx.push_back(std::move(ix));
    }
    Nfa out;
    out.alphabet = letters;
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::vector<std::uint32_t>> sets;
    auto get = [&](std::vector<std::uint32_t> s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        bool acc = std::all_of(s.begin(), s.end(), [&](auto x) { return static_cast<bool>(d.accepting[x]); });
        auto id = out.add_state(acc);
        ids.emplace(s, id);
        sets.push_back(std::move(s));
        return id;
    };
    out.initial.push_back(get({d.initial}));
    for (std::uint32_t i = 0; i < sets.size(); ++i) {
        for (std::size_t li = 0; li < letters.size(); ++li) {
            std::vector<std::uint32_t> t;
            for (auto x : sets[i]) t.push_back(d.delta[x][li]);
            auto j = get(std::move(t));
            out.add_edge(i, letters[li], j);
        }
        for (auto& ix : sidx) {
            std::vector<std::uint32_t> t;
            for (auto li : ix)
                for (auto x : sets[i]) t.push_back(d.delta[x][li]);
            auto j = get(std::move(t));
            if (j != i) out.add_edge(i, kEps, j);
        }
    }
    return out;
}

}  // namespace

Reduction red_one_sum(const std::vector<std::vector<Symbol>>& S, const std::vector<Symbol>& sigma)
{
    HypothesisSet lw;
    lw.name = "S<=1";
    HypothesisSet src;
    src.name = "1=S";
    std::vector<Symbol> all;
    for (auto& Si : S) {
        if (Si.empty()) throw ReductionError("one-sum reduction: empty letter set");
        std::vector<Expr> xs;
        for (Symbol a : Si) {
            xs.push_back(Expr::sym(a));
            if (std::find(all.begin(), all.end(), a) == all.end()) {
                all.push_back(a);
                lw.concrete.push_back({Expr::sym(a), Expr::one()});
            }
        }
        Expr sum = sum_of(xs);
        src.concrete.push_back({Expr::one(), sum});
        src.concrete.push_back({sum, Expr::one()});
    }
    Reduction s = red_letter_word(lw, sigma);
    std::vector<Symbol> letters = merged(sigma, all);

    Reduction r;
    r.name = "one-sum";
    r.source = src;
    r.target.name = "empty";
    r.sigma = r.gamma = letters;
    r.nfa_transform = [S, letters, s](const Nfa& n) {
        Nfa closed = s.apply(n);
        return one_sum_powerset(closed, S, merged(letters, closed.alphabet));
    };
    r.transform = [f = r.nfa_transform](Expr e) { return via_automaton(f, e); };
    r.provenance.push_back("one-sum: letters below 1 by shortcuts, then residual intersections with "
                           "epsilon moves to the union of S-successors");
    return r;
}

Reduction red_one_sum(const HypothesisSet& H, const std::vector<Symbol>& sigma)
{
    if (!H.schemas.empty()) throw ReductionError("one-sum reduction: schemas are not supported");
    auto letters_of_sum = [](Expr e) -> std::optional<std::vector<Symbol>> {
        std::vector<Symbol> out;
        std::vector<Expr> st{e};
        while (!st.empty()) {
            Expr x = st.back();
            st.pop_back();
            if (x.op() == Op::Sum) {
                st.push_back(x.right());
                st.push_back(x.left());
            } else if (x.op() == Op::Sym) {
                out.push_back(x.symbol());
            } else {
                return std::nullopt;
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    std::vector<std::vector<Symbol>> ups;
    std::set<Symbol> below;
    for (auto& h : H.concrete) {
        if (h.lhs.is_one()) {
            auto s = letters_of_sum(h.rhs);
            if (!s) throw ReductionError("one-sum reduction: rhs must be a sum of letters: " + h.str());
            ups.push_back(*s);
        } else if (h.rhs.is_one()) {
            auto s = letters_of_sum(h.lhs);
            if (!s) throw ReductionError("one-sum reduction: lhs must be a sum of letters: " + h.str());
            below.insert(s->begin(), s->end());
        } else {
            throw ReductionError("one-sum reduction: unexpected hypothesis " + h.str());
        }
    }
    for (auto& s : ups)
        for (Symbol a : s)
            if (!below.count(a))
                throw ReductionError("one-sum reduction: only the equation form is supported; missing " + name_of(a) +
                                     " <= 1");
    Reduction r = red_one_sum(ups, sigma);
    r.source = H;
    return r;
}

// ---------------------------------------------------------------------------
// e <= 0

Reduction red_drop_zero(const HypothesisSet& H, Expr e0, const std::vector<Symbol>& sigma)
{
    std::vector<Symbol> letters = merged(merged(sigma, symbols_of(e0)), H.letters());
    Expr ideal = simplify(prod_of({sigma_star(letters), e0, sigma_star(letters)}));
    Reduction r;
    r.name = "drop-zero(" + print(e0) + ")";
    r.source = set_union(H.name.empty() ? "H+zero" : H.name + "+zero", {H, named("zero", {{e0, Expr::zero()}})});
    r.target = H;
    r.sigma = r.gamma = letters;
    r.transform = [ideal](Expr f) { return simplify(mk_sum(f, ideal)); };
    Nfa ideal_nfa = expr_to_nfa(ideal);
    r.nfa_transform = [ideal_nfa](const Nfa& n) { return nfa_union(n, ideal_nfa); };
    r.provenance.push_back(r.name + ": f + S*;e;S* (the one-step function of e <= 0 is constant)");
    return r;
}

Reduction red_e_zero(Expr e0, const std::vector<Symbol>& sigma)
{
    Reduction r = red_drop_zero(HypothesisSet{"empty", {}, {}}, e0, sigma);
    r.name = "e-zero(" + print(e0) + ")";
    r.source.name = "zero";
    return r;
}

// ---------------------------------------------------------------------------
// homomorphic reductions

Reduction hom_unchecked(const std::string& name, const std::unordered_map<std::uint32_t, Expr>& images,
                        const HypothesisSet& source, const HypothesisSet& target, const std::vector<Symbol>& sigma,
                        const std::vector<Symbol>& gamma)
{
    Reduction r;
    r.name = name;
    r.source = source;
    r.target = target;
    r.sigma = sigma;
    r.gamma = gamma;
    r.transform = [images](Expr e) { return simplify(substitute(e, images)); };
    std::vector<std::pair<Symbol, Nfa>> nfas;
    for (auto& [id, img] : images) nfas.emplace_back(Symbol{id}, expr_to_nfa(img));
    std::sort(nfas.begin(), nfas.end(), [](auto& a, auto& b) { return a.first < b.first; });
    r.nfa_transform = [nfas](const Nfa& n) { return nfa_substitute(n, nfas); };
    return r;
}

Reduction red_absorb(AbsorbSide side, Symbol a, Expr e, const std::vector<Symbol>& sigma)
{
    Expr A = Expr::sym(a);
    Expr img;
    Hypothesis h;
    std::string tag;
    switch (side) {
    case AbsorbSide::Left:
        if (contains_symbol(e, a)) throw ReductionError("absorb: e must not contain " + name_of(a));
        img = simplify(mk_prod(mk_star(e), A));
        h = {mk_prod(e, A), A};
        tag = "left";
        break;
    case AbsorbSide::Right:
        if (contains_symbol(e, a)) throw ReductionError("absorb: e must not contain " + name_of(a));
        img = simplify(mk_prod(A, mk_star(e)));
        h = {mk_prod(A, e), A};
        tag = "right";
        break;
    case AbsorbSide::Self:
        img = mk_prod(A, mk_star(A));
        h = {mk_prod(A, A), A};
        tag = "self";
        break;
    }
    std::vector<Symbol> letters = merged(merged(sigma, {a}), symbols_of(e));
    Reduction r = hom_unchecked("absorb-" + tag + "(" + name_of(a) + ")", {{a.id, img}},
                                named("absorb", {h}), HypothesisSet{"empty", {}, {}}, letters, letters);
    r.provenance.push_back(r.name + ": homomorphism " + name_of(a) + " -> " + print(img));
    return r;
}

Reduction red_top(Symbol full, const std::vector<Symbol>& sigma)
{
    std::vector<Symbol> letters = merged(sigma, {full});
    HypothesisSet src;
    src.name = "top";
    src.schemas.push_back({SchemaKind::Top, letters, 2});
    Reduction r = hom_unchecked("top", {{full.id, sigma_star(letters)}}, src, HypothesisSet{"empty", {}, {}}, letters,
                                letters);
    r.provenance.push_back("top: homomorphism full -> S*");
    return r;
}

Reduction hom_reduction(const std::string& name, const std::unordered_map<std::uint32_t, Expr>& images,
                        const HypothesisSet& source, const HypothesisSet& target, const std::vector<Symbol>& sigma,
                        const std::vector<Symbol>& gamma, const CheckBounds& b)
{
    Reduction r = hom_unchecked(name, images, source, target, sigma, gamma);
    Alphabet As(sigma), Ag(gamma);
    auto fail = [&](const std::string& cond, const std::string& what, const Word& w) {
        throw ReductionError(name + ": condition " + cond + " fails for " + what + ", witness " + describe(w));
    };
    auto first_diff = [](const WordSet& x, const WordSet& y) -> std::optional<Word> {
        for (auto& w : x)
            if (!y.count(w)) return w;
        for (auto& w : y)
            if (!x.count(w)) return w;
        return std::nullopt;
    };
    // (2) a and r(a) have the same closed semantics under the source set
    for (Symbol a : sigma) {
        Expr A = Expr::sym(a);
        auto x = closed_sem_upto(source, A, b.n, b.slack, As).words;
        auto y = closed_sem_upto(source, r(A), b.n, b.slack, As).words;
        if (auto w = first_diff(x, y)) fail("(2)", "letter " + name_of(a), *w);
    }
    // (3) a <= r(a) on the target alphabet
    for (Symbol a : gamma) {
        auto res = ka_leq(Expr::sym(a), r(Expr::sym(a)));
        if (!res.equal) fail("(3)", "letter " + name_of(a), *res.witness);
    }
    // (4) r(e) <= [[r(f)]]_target for every materialized source hypothesis
    for (auto& h : materialize(source, b.k, sigma).concrete) {
        auto lhs = lang_upto(r(h.lhs), b.n);
        auto rhs = closed_sem_upto(target, r(h.rhs), b.n, b.slack, Ag).words;
        for (auto& w : lhs)
            if (!rhs.count(w)) fail("(4)", h.str(), w);
    }
    r.provenance.push_back(name + ": homomorphism, side conditions checked to length " + std::to_string(b.n));
    return r;
}

Reduction identity_reduction(const HypothesisSet& source, const HypothesisSet& target, const std::vector<Symbol>& sigma,
                             const std::string& why)
{
    Reduction r;
    r.name = "id(" + source.name + "->" + target.name + ")";
    r.source = source;
    r.target = target;
    r.sigma = r.gamma = sigma;
    r.transform = [](Expr e) { return e; };
    r.nfa_transform = [](const Nfa& n) { return n; };
    r.provenance.push_back(r.name + (why.empty() ? "" : ": " + why));
    return r;
}

// ---------------------------------------------------------------------------
// self loops

Reduction red_self_loop(Expr f, Expr fprime, const HypothesisSet& target, const std::vector<Symbol>& sigma)
{
    std::vector<Symbol> letters = merged(merged(merged(sigma, symbols_of(f)), symbols_of(fprime)), target.letters());
    // <f> ⊆ <f'>
    if (auto r = ka_leq(f, fprime); !r.equal)
        throw ReductionError("self-loop: <f> is not below <f'>, witness " + describe(*r.witness));
    // H_f<f'> ⊆ <f'>: words of f' with one word of f inserted somewhere
    Nfa F = expr_to_nfa(fprime), G = expr_to_nfa(f);
    Nfa ins;
    const auto N = static_cast<std::uint32_t>(F.num_states());
    auto c0 = embed(ins, F), c1 = embed(ins, F);
    for (auto q : F.initial) ins.initial.push_back(c0 + q);
    for (std::uint32_t q = 0; q < N; ++q) {
        if (F.accepting[q]) ins.accepting[c1 + q] = true;
        auto g = embed(ins, G);
        for (auto i : G.initial) ins.add_edge(c0 + q, kEps, g + i);
        for (std::uint32_t s = 0; s < G.num_states(); ++s)
            if (G.accepting[s]) ins.add_edge(g + s, kEps, c1 + q);
    }
    if (auto r = nfa_leq(ins, F); !r.equal)
        throw ReductionError("self-loop: inserting f into f' leaves <f'>, witness " + describe(*r.witness));

    Reduction r;
    r.name = "self-loop(" + print(f) + ")";
    r.source = set_union(target.name.empty() ? "H+f" : target.name + "+f", {target, named("f<=1", {{f, Expr::one()}})});
    r.target = target;
    r.sigma = r.gamma = letters;
    r.nfa_transform = [F](const Nfa& n) {
        Nfa out = n;
        const auto M = static_cast<std::uint32_t>(n.num_states());
        for (std::uint32_t q = 0; q < M; ++q) {
            auto off = embed(out, F);
            for (auto i : F.initial) out.add_edge(q, kEps, off + i);
            for (std::uint32_t s = 0; s < F.num_states(); ++s)
                if (F.accepting[s]) out.add_edge(off + s, kEps, q);
        }
        return out;
    };
    r.transform = [g = r.nfa_transform](Expr e) { return via_automaton(g, e); };
    r.provenance.push_back(r.name + ": f'-loops at every state with f' = " + print(fprime) +
                           "; <f> + H_f<f'> <= <f'> checked; the decomposition and f' <= 1 conditions are assumed");
    return r;
}

// ---------------------------------------------------------------------------
// combinators

Reduction compose(const Reduction& r1, const Reduction& r2)
{
    std::vector<Symbol> ctx = merged(r1.gamma, r2.sigma);
    if (!same_hypotheses(r1.target, r2.source) &&
        !(includes_nf(r2.source, r1.target, ctx, 2) && includes_nf(r1.target, r2.source, ctx, 2)))
        throw ReductionError("compose: target of " + r1.name + " differs from source of " + r2.name);
    Reduction r;
    r.name = r2.name + " . " + r1.name;
    r.source = r1.source;
    r.target = r2.target;
    r.sigma = r1.sigma;
    r.gamma = r2.gamma;
    r.transform = [t1 = r1.transform, t2 = r2.transform](Expr e) { return t2(t1(e)); };
    r.nfa_transform = [r1, r2](const Nfa& n) { return compact(r2.apply(compact(r1.apply(n)))); };
    r.provenance = r1.provenance;
    r.provenance.insert(r.provenance.end(), r2.provenance.begin(), r2.provenance.end());
    return r;
}

Reduction union_pipeline(const std::string& name, const std::vector<Reduction>& parts, const Certificate& cert)
{
    if (parts.empty()) throw ReductionError("union pipeline: no parts");
    if (!cert.ok) throw ReductionError("union pipeline: certificate " + cert.table + " is not verified");
    if (cert.rows.size() != parts.size())
        throw ReductionError("union pipeline: certificate " + cert.table + " has " + std::to_string(cert.rows.size()) +
                             " rows for " + std::to_string(parts.size()) + " parts");
    std::vector<Symbol> ctx;
    for (auto& p : parts) ctx = merged(ctx, p.sigma);
    for (std::size_t i = 1; i < parts.size(); ++i)
        if (!same_hypotheses(parts[i].target, parts[0].target))
            throw ReductionError("union pipeline: parts do not share a target");
    // Each row lies in its part's source, and the sources add nothing beyond the rows: then the
    // certified decomposition of the rows bounds the closure of the union of sources.
    std::vector<HypothesisSet> srcs;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!includes_nf(parts[i].source, cert.rows[i], ctx, cert.schema_k))
            throw ReductionError("union pipeline: row " + cert.row_names[i] + " is not covered by " + parts[i].name);
        srcs.push_back(parts[i].source);
    }
    HypothesisSet all = set_union(name, srcs), rows = set_union("rows", cert.rows);
    if (!includes_nf(rows, all, ctx, cert.schema_k))
        throw ReductionError("union pipeline: the parts' sources exceed the certified rows");

    Reduction r;
    r.name = name;
    r.source = all;
    r.target = parts[0].target;
    r.sigma = ctx;
    r.gamma = parts[0].gamma;
    r.transform = [parts](Expr e) {
        for (auto& p : parts) e = p.transform(e);
        return e;
    };
    r.nfa_transform = [parts](const Nfa& n) {
        Nfa cur = n;
        for (auto& p : parts) cur = compact(p.apply(cur));
        return cur;
    };
    for (auto& p : parts) r.provenance.insert(r.provenance.end(), p.provenance.begin(), p.provenance.end());
    r.provenance.push_back(name + ": union of " + std::to_string(parts.size()) + " parts, certificate " + cert.table);
    return r;
}

// ---------------------------------------------------------------------------
// bounded verification

VerifyReport verify_reduction(const Reduction& r, Expr e, std::size_t m, std::size_t slack)
{
    VerifyReport rep;
    rep.m = m;
    Alphabet As(r.sigma), Ag(r.gamma);
    auto L = closed_sem_upto(r.source, e, m, slack, As);
    for (auto& w : L.words)
        if (std::all_of(w.begin(), w.end(), [&](Symbol s) { return Ag.contains(s); })) rep.lhs.insert(w);
    rep.lhs_exact = L.exact;

    // the automaton path: the expression transform state-eliminates after every stage
    Nfa rn = r.apply(expr_to_nfa(e));
    BoundedLang base = bounded(nfa_lang_upto(rn, m + slack), m + slack, Ag, false);
    Expr any = Expr::one();
    for (Symbol s : r.gamma) any = Expr::sum(any, Expr::sym(s));
    Expr upto = Expr::one();
    for (std::size_t i = 0; i < m + slack; ++i) upto = Expr::prod(upto, any);
    base.complete = nfa_leq(rn, expr_to_nfa(upto)).equal;
    auto R = closure_upto(r.target, base, m, slack);
    rep.rhs = R.words;
    rep.rhs_exact = R.exact;
    rep.equal = rep.lhs == rep.rhs;
    if (!rep.equal) {
        std::vector<Word> diff;
        std::set_symmetric_difference(rep.lhs.begin(), rep.lhs.end(), rep.rhs.begin(), rep.rhs.end(),
                                      std::back_inserter(diff));
        std::sort(diff.begin(), diff.end(), [&](const Word& a, const Word& b) { return shortlex_less(a, b, Ag); });
        rep.witness = diff.front();
    }
    return rep;
}

}  // namespace kahyp
