#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kahyp/syntax.hpp"

namespace kahyp {

// Epsilon label.
inline constexpr Symbol kEps{UINT32_MAX - 1};

struct Nfa {
    std::vector<Symbol> alphabet;  // letters that may label transitions
    std::vector<std::vector<std::pair<Symbol, std::uint32_t>>> out;
    std::vector<std::uint32_t> initial;
    std::vector<bool> accepting;

    std::uint32_t add_state(bool acc = false);
    void add_edge(std::uint32_t from, Symbol label, std::uint32_t to);
    bool has_edge(std::uint32_t from, Symbol label, std::uint32_t to) const;
    std::size_t num_states() const { return out.size(); }
    std::size_t num_edges() const;
    void add_letter(Symbol s);
};

struct Dfa {
    std::vector<Symbol> alphabet;
    std::vector<std::vector<std::uint32_t>> delta;  // delta[state][letter index]
    std::uint32_t initial = 0;
    std::vector<bool> accepting;

    std::size_t num_states() const { return delta.size(); }
};

Nfa expr_to_nfa(Expr e);
// Subset construction over `letters` (defaults to the NFA's alphabet); reachable states only.
Dfa determinize(const Nfa& n);
Dfa determinize(const Nfa& n, const std::vector<Symbol>& letters);
Dfa minimize(const Dfa& d);
// Canonical BFS renumbering; two minimal DFAs over the same letter order are isomorphic iff their
// canonical forms are identical.
Dfa canonical(const Dfa& d);
bool same_dfa(const Dfa& a, const Dfa& b);
Nfa dfa_to_nfa(const Dfa& d);

Expr nfa_to_expr(const Nfa& n);

std::vector<std::uint32_t> eps_closure(const Nfa& n, std::vector<std::uint32_t> states);
bool nfa_accepts(const Nfa& n, const Word& w);
bool dfa_accepts(const Dfa& d, const Word& w);
WordSet nfa_lang_upto(const Nfa& n, std::size_t len);

struct EquivResult {
    bool equal = true;
    std::optional<Word> witness;
};

EquivResult ka_equiv(Expr e, Expr f);
EquivResult nfa_equiv(const Nfa& a, const Nfa& b);
// <e> ⊆ <f>; witness in <e> \ <f> when not.
EquivResult ka_leq(Expr e, Expr f);
EquivResult nfa_leq(const Nfa& a, const Nfa& b);

Nfa nfa_union(const Nfa& a, const Nfa& b);
Nfa nfa_intersection(const Nfa& a, const Nfa& b);
// Letters present in `images` are replaced by the language of their automaton.
Nfa nfa_substitute(const Nfa& n, const std::vector<std::pair<Symbol, Nfa>>& images);
// Removes states that are unreachable or cannot reach acceptance (keeps at least one state).
Nfa trim(const Nfa& n);

std::string to_dot(const Nfa& n);

}  // namespace kahyp
