#pragma once
// Shared between the theory front ends; not installed.

#include <functional>
#include <map>

#include "kahyp/theories.hpp"

namespace kahyp {

struct Theory::Impl {
    TheoryConfig cfg;
    Alphabet input;
    std::vector<Symbol> letters;
    std::function<Expr(Expr)> normalize = [](Expr e) { return e; };
    HypothesisSet hyps;
    std::optional<Reduction> pipeline;
    std::map<std::string, HypothesisSet> sets;
    std::vector<TableReport> certs;
    // set when witnesses should be reported as guarded strings
    std::optional<Nfa> guarded;
    std::vector<std::string> explain_head;
};

namespace detail {

inline Hypothesis leq(Expr a, Expr b) { return {a, b}; }
inline Expr S(Symbol s) { return Expr::sym(s); }
HypothesisSet hset(const std::string& name, std::vector<Hypothesis> hs);
std::vector<std::string> split_list(const std::string& s);

// Checks a table given as text; rows are looked up in `sets`. Results are cached per text, letters
// and bounds, so repeated theory construction is cheap.
TableReport certify(const std::string& text, const std::map<std::string, HypothesisSet>& sets,
                    const std::vector<Symbol>& letters, const CheckParams& p);
// The report's certificate; throws TheoryError with the first failure otherwise.
Certificate require_certificate(const TableReport& r);

void build_kat_family(Theory::Impl& t, bool with_pipeline);
void build_kapt(Theory::Impl& t, bool with_pipeline);
void build_netkat(Theory::Impl& t, bool with_pipeline);

}  // namespace detail

}  // namespace kahyp
