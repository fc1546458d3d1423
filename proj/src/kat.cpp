#include <algorithm>
#include <map>

#include "kahyp/automata.hpp"
#include "theory_impl.hpp"

namespace kahyp {

using detail::hset;
using detail::leq;
using detail::S;

Symbol atom_symbol(AtomMask a, const std::vector<std::string>& tests)
{
    std::vector<std::string> on;
    for (std::size_t i = 0; i < tests.size(); ++i)
        if (a >> i & 1) on.push_back(tests[i]);
    return sym_atom(std::move(on));
}

AtomMask atom_mask(Symbol s, const std::vector<std::string>& tests)
{
    const SymbolInfo& si = info(s);
    if (si.kind != SymKind::Atom) throw TheoryError(si.name + " is not an atom");
    AtomMask m = 0;
    for (auto& t : si.tests) {
        auto it = std::find(tests.begin(), tests.end(), t);
        if (it == tests.end()) throw TheoryError(si.name + " mentions unknown test " + t);
        m |= AtomMask{1} << (it - tests.begin());
    }
    return m;
}

std::vector<AtomMask> all_atoms(std::size_t ntests, AtomLogic logic)
{
    if (ntests >= 63) throw TheoryError("too many tests");
    std::vector<AtomMask> out;
    AtomMask first = logic == AtomLogic::Lattice ? 1 : 0;
    for (AtomMask a = first; a < (AtomMask{1} << ntests); ++a) out.push_back(a);
    return out;
}

std::vector<AtomMask> atoms_of(const Formula& f, const std::vector<std::string>& tests, AtomLogic logic)
{
    std::set<std::string> vars;
    formula_vars(f, vars);
    for (auto& v : vars)
        if (std::find(tests.begin(), tests.end(), v) == tests.end())
            throw TheoryError("formula " + print_formula(f) + " mentions unknown test " + v);
    if (logic != AtomLogic::Boolean && formula_has_negation(f))
        throw TheoryError("formula " + print_formula(f) + " is not negation-free");
    // a positive formula lies above an atom iff it holds under that atom's valuation
    std::vector<AtomMask> out;
    for (AtomMask a : all_atoms(tests.size(), logic))
        if (eval_formula(f, tests, a)) out.push_back(a);
    return out;
}

namespace {

Expr atoms_expr(Symbol test, const std::vector<std::string>& tests, AtomLogic logic)
{
    std::vector<Expr> xs;
    for (AtomMask a : atoms_of(*info(test).formula, tests, logic)) xs.push_back(S(atom_symbol(a, tests)));
    return sum_of(xs);
}

Expr tests_to_atoms(Expr e, const std::vector<std::string>& tests, AtomLogic logic)
{
    std::unordered_map<std::uint32_t, Expr> images;
    for (Symbol s : symbols_of(e)) {
        const SymbolInfo& si = info(s);
        if (si.kind == SymKind::Test) {
            if (si.tagged) throw TheoryError("tagged test " + si.name + " has no atom reading");
            images.emplace(s.id, atoms_expr(s, tests, logic));
        } else if (si.kind == SymKind::Atom) {
            atom_mask(s, tests);  // validates
        }
    }
    return simplify(substitute(e, images));
}

}  // namespace

Expr r_kat(Expr e, const std::vector<std::string>& tests) { return tests_to_atoms(e, tests, AtomLogic::Boolean); }

Expr r_kapt(Expr e, const std::vector<std::string>& tests, bool bounded)
{
    Expr r = tests_to_atoms(e, tests, bounded ? AtomLogic::LatticeBounded : AtomLogic::Lattice);
    if (!bounded)
        for (Symbol s : symbols_of(r))
            if (info(s).kind == SymKind::Atom && atom_mask(s, tests) == 0)
                throw TheoryError("the empty atom needs the bounded variant");
    return r;
}

// ---------------------------------------------------------------------------
// guarded strings

Word to_word(const GuardedString& g, const std::vector<std::string>& tests)
{
    Word w;
    for (std::size_t i = 0; i < g.atoms.size(); ++i) {
        w.push_back(atom_symbol(g.atoms[i], tests));
        if (i < g.actions.size()) w.push_back(g.actions[i]);
    }
    return w;
}

std::optional<GuardedString> as_guarded_string(const Word& w, const std::vector<std::string>& tests)
{
    if (w.size() % 2 == 0) return std::nullopt;
    GuardedString g;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const SymbolInfo& si = info(w[i]);
        if (i % 2 == 0) {
            if (si.kind != SymKind::Atom || si.tagged) return std::nullopt;
            try {
                g.atoms.push_back(atom_mask(w[i], tests));
            } catch (const TheoryError&) {
                return std::nullopt;
            }
        } else {
            if (si.kind != SymKind::Action) return std::nullopt;
            g.actions.push_back(w[i]);
        }
    }
    return g;
}

std::string print_guarded_string(const GuardedString& g, const std::vector<std::string>& tests)
{
    return print_word(to_word(g, tests));
}

std::optional<GuardedString> coalesce(const GuardedString& x, const GuardedString& y)
{
    if (x.atoms.back() != y.atoms.front()) return std::nullopt;
    GuardedString r = x;
    r.atoms.insert(r.atoms.end(), y.atoms.begin() + 1, y.atoms.end());
    r.actions.insert(r.actions.end(), y.actions.begin(), y.actions.end());
    return r;
}

namespace {

GSSet coalesced_product(const GSSet& L, const GSSet& K, std::size_t n)
{
    std::map<AtomMask, std::vector<const GuardedString*>> by_first;
    for (auto& y : K) by_first[y.atoms.front()].push_back(&y);
    GSSet out;
    for (auto& x : L) {
        auto it = by_first.find(x.atoms.back());
        if (it == by_first.end()) continue;
        for (auto* y : it->second)
            if (x.actions.size() + y->actions.size() <= n) out.insert(*coalesce(x, *y));
    }
    return out;
}

GSSet gs_rec(Expr e, const std::vector<std::string>& tests, const std::vector<AtomMask>& atoms, std::size_t n)
{
    switch (e.op()) {
    case Op::Zero: return {};
    case Op::One: {
        GSSet out;
        for (AtomMask a : atoms) out.insert({{a}, {}});
        return out;
    }
    case Op::Sym: {
        Symbol s = e.symbol();
        const SymbolInfo& si = info(s);
        GSSet out;
        switch (si.kind) {
        case SymKind::Action:
            if (n == 0) return out;
            for (AtomMask a : atoms)
                for (AtomMask b : atoms) out.insert({{a, b}, {s}});
            return out;
        case SymKind::Test:
            for (AtomMask a : atoms_of(*si.formula, tests)) out.insert({{a}, {}});
            return out;
        case SymKind::Atom: out.insert({{atom_mask(s, tests)}, {}}); return out;
        default: throw TheoryError("no guarded-string reading for " + si.name);
        }
    }
    case Op::Sum: {
        GSSet l = gs_rec(e.left(), tests, atoms, n), r = gs_rec(e.right(), tests, atoms, n);
        l.insert(r.begin(), r.end());
        return l;
    }
    case Op::Prod:
        return coalesced_product(gs_rec(e.left(), tests, atoms, n), gs_rec(e.right(), tests, atoms, n), n);
    case Op::Star: {
        GSSet L = gs_rec(e.child(), tests, atoms, n);
        GSSet acc;
        for (AtomMask a : atoms) acc.insert({{a}, {}});
        GSSet frontier = acc;
        while (!frontier.empty()) {
            GSSet next;
            for (auto& g : coalesced_product(L, frontier, n))
                if (acc.insert(g).second) next.insert(g);
            frontier = std::move(next);
        }
        return acc;
    }
    }
    return {};
}

}  // namespace

GSSet guarded_strings_upto(Expr e, const std::vector<std::string>& tests, std::size_t n)
{
    return gs_rec(e, tests, all_atoms(tests.size()), n);
}

Nfa guarded_string_nfa(const std::vector<std::string>& tests, const std::vector<Symbol>& actions)
{
    Nfa n;
    n.add_state(false);
    n.add_state(true);
    n.add_state(false);
    n.initial.push_back(0);
    for (AtomMask a : all_atoms(tests.size())) {
        Symbol s = atom_symbol(a, tests);
        n.add_letter(s);
        n.add_edge(0, s, 1);
        n.add_edge(2, s, 1);
    }
    for (Symbol a : actions) {
        n.add_letter(a);
        n.add_edge(1, a, 2);
    }
    return n;
}

// ---------------------------------------------------------------------------
// KAT, KAO, KABO, KATF, KATC

namespace detail {

void build_kat_family(Theory::Impl& t, bool with_pipeline)
{
    const auto& c = t.cfg;
    const auto& tests = c.tests;
    std::vector<Symbol> acts, ats;
    for (auto& a : c.actions) acts.push_back(sym_action(a));
    for (AtomMask a : all_atoms(tests.size())) ats.push_back(atom_symbol(a, tests));

    t.input = Alphabet({}, to_string(c.id));
    t.input.tests = tests;
    for (Symbol s : acts) t.input.add(s);
    for (Symbol s : ats) t.input.add(s);
    t.letters = acts;
    t.letters.insert(t.letters.end(), ats.begin(), ats.end());
    t.normalize = [tests](Expr e) { return r_kat(e, tests); };

    std::vector<Hypothesis> a0, a1, ctr, a1c, inv;
    std::vector<Expr> all;
    for (Symbol a : ats) {
        all.push_back(S(a));
        a1.push_back(leq(S(a), Expr::one()));
        ctr.push_back(leq(S(a), mk_prod(S(a), S(a))));
        for (Symbol b : ats)
            if (a != b) a0.push_back(leq(mk_prod(S(a), S(b)), Expr::zero()));
    }
    auto& sets = t.sets;
    sets["atm0"] = hset("atm0", a0);
    sets["atm1"] = hset("atm1", a1);
    sets["atm2"] = hset("atm2", {leq(Expr::one(), sum_of(all))});
    sets["atm12"] = set_union("atm12", {sets["atm1"], sets["atm2"]});
    sets["atm"] = set_union("atm", {sets["atm0"], sets["atm12"]});
    sets["ctr"] = hset("ctr", ctr);

    if (c.id == TheoryId::KATF) {
        t.letters.push_back(sym_full());
        t.input.add(sym_full());
        HypothesisSet top{"top", {}, {{SchemaKind::Top, {}, c.bounds.k}}};
        HypothesisSet fs{"fullsplit", {}, {{SchemaKind::FullSplit, {}, c.bounds.k}}};
        sets["top"] = top;
        sets["fullsplit"] = fs;
        t.hyps = set_union("katf", {sets["atm"], top, fs});
        return;
    }
    if (c.id == TheoryId::KATC) {
        std::vector<Symbol> dup = t.letters;
        for (Symbol s : t.letters) dup.push_back(tag(s));
        for (Symbol a : ats)
            for (Symbol x : {a, tag(a)}) {
                a1c.push_back(leq(S(x), Expr::one()));
                inv.push_back(leq(S(tag(x)), S(x)));
            }
        t.letters = dup;
        for (Symbol s : dup) t.input.add(s);
        sets["atm1c"] = hset("atm1c", a1c);
        sets["inv"] = hset("inv", inv);
        sets["conv"] = HypothesisSet{"conv", {}, {{SchemaKind::Conv, {}, c.bounds.k}}};
        t.hyps = set_union("katc", {sets["atm0"], sets["atm1c"], sets["inv"], sets["conv"], sets["atm2"]});
        return;
    }

    t.guarded = guarded_string_nfa(tests, acts);
    t.explain_head.push_back("r: tests to sums of atoms over {" + [&] {
        std::string s;
        for (std::size_t i = 0; i < tests.size(); ++i) s += (i ? "," : "") + tests[i];
        return s;
    }() + "}, actions fixed");

    switch (c.id) {
    case TheoryId::KAT: {
        t.hyps = sets["atm"];
        if (!with_pipeline) return;
        std::vector<Expr> zeros;
        for (auto& h : a0) zeros.push_back(h.lhs);
        Reduction dz = red_drop_zero(sets["atm12"], sum_of(zeros), t.letters);
        Reduction os = red_one_sum(sets["atm12"], t.letters);
        t.pipeline = compose(dz, os);
        break;
    }
    case TheoryId::KAO:
        t.hyps = sets["ctr"];
        if (!with_pipeline) return;
        t.pipeline = red_letter_word(sets["ctr"], t.letters);
        break;
    case TheoryId::KABO: {
        t.hyps = set_union("kabo", {sets["atm1"], sets["ctr"], sets["atm2"]});
        if (!with_pipeline) return;
        TableReport rep = certify(builtin_table_text("kabo"), sets, t.letters, c.bounds);
        t.certs.push_back(rep);
        Certificate cert = require_certificate(rep);
        t.pipeline = union_pipeline("kabo",
                                    {red_letter_word(sets["atm1"], t.letters), red_letter_word(sets["ctr"], t.letters),
                                     red_one_sum(sets["atm12"], t.letters)},
                                    cert);
        break;
    }
    default: break;
    }
}

}  // namespace detail

}  // namespace kahyp
