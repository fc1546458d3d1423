#pragma once
// Test-side references for KAT. Guarded strings are decided by membership (split search), not by
// building the language compositionally; the kat closure is given a finite presentation with one
// test letter per class of Boolean formulas.

#include <functional>
#include <map>
#include <random>

#include "kahyp/theories.hpp"

namespace kahyp::testing {

// Does the guarded string (as atoms/actions) belong to G(e)? Tests are evaluated by valuation.
inline bool gs_member(Expr e, const GuardedString& g, std::size_t lo, std::size_t hi,
                      const std::vector<std::string>& tests)
{
    // g restricted to atoms lo..hi (and the actions between them)
    switch (e.op()) {
    case Op::Zero: return false;
    case Op::One: return lo == hi;
    case Op::Sym: {
        Symbol s = e.symbol();
        const auto& I = info(s);
        if (I.kind == SymKind::Action) return hi == lo + 1 && g.actions[lo] == s;
        if (lo != hi) return false;
        if (I.kind == SymKind::Atom) return atom_mask(s, tests) == g.atoms[lo];
        if (I.kind == SymKind::Test) {
            auto sat = atoms_of(*I.formula, tests);
            return std::find(sat.begin(), sat.end(), g.atoms[lo]) != sat.end();
        }
        return false;
    }
    case Op::Sum: return gs_member(e.left(), g, lo, hi, tests) || gs_member(e.right(), g, lo, hi, tests);
    case Op::Prod:
        for (std::size_t k = lo; k <= hi; ++k)
            if (gs_member(e.left(), g, lo, k, tests) && gs_member(e.right(), g, k, hi, tests)) return true;
        return false;
    case Op::Star:
        if (lo == hi) return true;
        // the first factor carries at least one action; atom-only factors change nothing
        for (std::size_t k = lo + 1; k <= hi; ++k)
            if (gs_member(e.left(), g, lo, k, tests) && gs_member(e, g, k, hi, tests)) return true;
        return false;
    }
    return false;
}

inline std::vector<GuardedString> all_guarded_strings(const std::vector<std::string>& tests,
                                                      const std::vector<Symbol>& actions, std::size_t n)
{
    auto atoms = all_atoms(tests.size());
    std::vector<GuardedString> out;
    for (AtomMask a : atoms) out.push_back({{a}, {}});
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].actions.size() >= n) continue;
        for (Symbol s : actions)
            for (AtomMask a : atoms) {
                GuardedString g = out[i];
                g.actions.push_back(s);
                g.atoms.push_back(a);
                out.push_back(g);
            }
    }
    return out;
}

inline GSSet gs_oracle(Expr e, const std::vector<std::string>& tests, const std::vector<Symbol>& actions,
                       std::size_t n)
{
    GSSet out;
    for (auto& g : all_guarded_strings(tests, actions, n))
        if (gs_member(e, g, 0, g.actions.size(), tests)) out.insert(g);
    return out;
}

// ---------------------------------------------------------------------------
// Finite presentation of the kat hypotheses for one primitive test o: the four formula classes
// bot, o, !o, top, with o and !o written as the atoms at{o} and at{}.

struct KatPresentation {
    std::vector<std::string> tests{"o"};
    std::vector<Symbol> actions;
    std::vector<Symbol> classes;     // index = set of atoms (bit 0: at{}, bit 1: at{o})
    std::vector<Symbol> letters;     // actions then classes
    HypothesisSet hyps;

    explicit KatPresentation(std::vector<Symbol> acts) : actions(std::move(acts))
    {
        classes = {parse_symbol("[o&!o]"), atom_symbol(0, tests), atom_symbol(1, tests), parse_symbol("[o|!o]")};
        letters = actions;
        letters.insert(letters.end(), classes.begin(), classes.end());
        auto S = [&](int c) { return Expr::sym(classes[c]); };
        hyps.name = "kat-finite";
        auto add = [&](Expr a, Expr b) { hyps.concrete.push_back({a, b}); };
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y) {
                add(S(x & y), Expr::prod(S(x), S(y)));
                add(Expr::prod(S(x), S(y)), S(x & y));
                if (x < y) {
                    add(S(x | y), Expr::sum(S(x), S(y)));
                    add(S(x), S(x | y));
                    add(S(y), S(x | y));
                }
            }
        add(S(0), Expr::zero());
        add(S(3), Expr::one());
        add(Expr::one(), S(3));
    }

    // Atoms satisfying the letter (as a class).
    unsigned atoms_of_class(Symbol s) const
    {
        for (unsigned c = 0; c < 4; ++c)
            if (classes[c] == s) return c;
        return ~0u;
    }

    Word word(const GuardedString& g) const { return to_word(g, tests); }

    // Right-hand side of the membership lemma: every choice of atoms satisfying the blocks gives a
    // string of L.
    bool gs_criterion(const Word& w, const std::set<Word>& L) const
    {
        std::vector<unsigned> blocks{3u};
        std::vector<Symbol> acts;
        for (Symbol s : w) {
            unsigned c = atoms_of_class(s);
            if (c == ~0u) {
                acts.push_back(s);
                blocks.push_back(3u);
            } else {
                blocks.back() &= c;
            }
        }
        std::function<bool(std::size_t, GuardedString&)> all = [&](std::size_t i, GuardedString& g) {
            if (i == blocks.size()) return L.count(word(g)) > 0;
            for (AtomMask a = 0; a < 2; ++a) {
                if (!(blocks[i] >> a & 1u)) continue;
                g.atoms.push_back(a);
                bool ok = all(i + 1, g);
                g.atoms.pop_back();
                if (!ok) return false;
            }
            return true;
        };
        GuardedString g;
        g.actions = acts;
        return all(0, g);
    }

    bool is_guarded(const Word& w) const { return as_guarded_string(w, tests).has_value(); }

    std::set<Word> random_language(std::mt19937_64& rng, std::size_t n) const
    {
        std::set<Word> L;
        for (auto& g : all_guarded_strings(tests, actions, n))
            if (rng() % 2) L.insert(word(g));
        return L;
    }
};

}  // namespace kahyp::testing
