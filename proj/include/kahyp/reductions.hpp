#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "kahyp/automata.hpp"
#include "kahyp/hypotheses.hpp"

namespace kahyp {

struct ReductionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evidence that a commutation table was checked; produced by the overlap module.
struct Certificate {
    std::string table;
    bool ok = false;
    std::vector<std::string> row_names;
    std::vector<HypothesisSet> rows;
    int schema_k = 2;
    std::vector<std::string> notes;
};

struct Reduction {
    std::string name;
    HypothesisSet source;
    HypothesisSet target;
    std::vector<Symbol> sigma;  // letters of the source alphabet
    std::vector<Symbol> gamma;  // letters of the target alphabet
    std::function<Expr(Expr)> transform;
    // Same language function on automata; pipelines use it to avoid repeated state elimination.
    std::function<Nfa(const Nfa&)> nfa_transform;
    std::vector<std::string> provenance;

    Expr operator()(Expr e) const { return transform(e); }
    Nfa apply(const Nfa& n) const;
};

// Bounds for the semantic side checks run by some constructors.
struct CheckBounds {
    std::size_t n = 4;
    std::size_t slack = 2;
    int k = 2;
};

// Letter-or-unit lhs, word rhs. Source letters of e are kept; target is empty.
Reduction red_letter_word(const HypothesisSet& H, const std::vector<Symbol>& sigma);
// Repeatedly adds u-transitions (ε for u = 1) along w-labelled paths until stable.
Nfa shortcut_fixpoint(const Nfa& n, const std::vector<std::pair<Symbol, Word>>& rules);

// {1 = Σ S_i}_i, given as the letter sets.
Reduction red_one_sum(const std::vector<std::vector<Symbol>>& S, const std::vector<Symbol>& sigma);
// Same, reading the sets off the inequations 1 <= Σ S and Σ S <= 1 (or a <= 1 for each a).
Reduction red_one_sum(const HypothesisSet& H, const std::vector<Symbol>& sigma);

Reduction red_e_zero(Expr e0, const std::vector<Symbol>& sigma);
Reduction red_drop_zero(const HypothesisSet& H, Expr e0, const std::vector<Symbol>& sigma);

enum class AbsorbSide { Left, Right, Self };
Reduction red_absorb(AbsorbSide side, Symbol a, Expr e, const std::vector<Symbol>& sigma);

Reduction red_top(Symbol full, const std::vector<Symbol>& sigma);

// Throws ReductionError when <f> ∪ H_f<f'> ⊆ <f'> fails; the check is exact (automata).
Reduction red_self_loop(Expr f, Expr fprime, const HypothesisSet& target, const std::vector<Symbol>& sigma);

// Homomorphic reduction with bounded semantic checks of the side conditions; throws ReductionError
// naming the condition, hypothesis and witness on failure.
Reduction hom_reduction(const std::string& name, const std::unordered_map<std::uint32_t, Expr>& images,
                        const HypothesisSet& source, const HypothesisSet& target, const std::vector<Symbol>& sigma,
                        const std::vector<Symbol>& gamma, const CheckBounds& bounds = {});
// Same map without any checks (used when the side conditions are argued elsewhere).
Reduction hom_unchecked(const std::string& name, const std::unordered_map<std::uint32_t, Expr>& images,
                        const HypothesisSet& source, const HypothesisSet& target, const std::vector<Symbol>& sigma,
                        const std::vector<Symbol>& gamma);

// Identity map between two sets that prove each other.
Reduction identity_reduction(const HypothesisSet& source, const HypothesisSet& target, const std::vector<Symbol>& sigma,
                             const std::string& why = "");

Reduction compose(const Reduction& r1, const Reduction& r2);
// parts[0] is applied first. The certificate's rows must be the parts' sources, in order.
Reduction union_pipeline(const std::string& name, const std::vector<Reduction>& parts, const Certificate& cert);

struct VerifyReport {
    bool equal = false;
    bool lhs_exact = false;
    bool rhs_exact = false;
    std::optional<Word> witness;
    WordSet lhs;  // [[e]]_H restricted to Γ
    WordSet rhs;  // [[r(e)]]_H'
    std::size_t m = 0;
};

VerifyReport verify_reduction(const Reduction& r, Expr e, std::size_t m, std::size_t slack);

}  // namespace kahyp
