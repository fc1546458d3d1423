#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "kahyp/syntax.hpp"

namespace kahyp::testing {

inline std::vector<Symbol> letters(std::initializer_list<const char*> names)
{
    std::vector<Symbol> v;
    for (const char* n : names) v.push_back(parse_symbol(n));
    return v;
}

inline Expr P(const std::string& s) { return parse_expr_open(s); }

inline Word W(const std::string& s)
{
    auto w = as_word(parse_expr_open(s));
    if (!w) throw std::invalid_argument("not a word: " + s);
    return *w;
}

inline WordSet words(std::initializer_list<const char*> ws)
{
    WordSet out;
    for (const char* w : ws) out.insert(W(w));
    return out;
}

// Random expression over `sigma`, depth <= d.
inline Expr random_expr(std::mt19937_64& rng, const std::vector<Symbol>& sigma, int d)
{
    std::uniform_int_distribution<int> pick(0, d <= 0 ? 2 : 6);
    int c = pick(rng);
    switch (c) {
    case 0: return Expr::sym(sigma[rng() % sigma.size()]);
    case 1: return (rng() % 4 == 0) ? Expr::one() : Expr::sym(sigma[rng() % sigma.size()]);
    case 2: return (rng() % 6 == 0) ? Expr::zero() : Expr::sym(sigma[rng() % sigma.size()]);
    case 3:
    case 4: return Expr::sum(random_expr(rng, sigma, d - 1), random_expr(rng, sigma, d - 1));
    case 5: return Expr::prod(random_expr(rng, sigma, d - 1), random_expr(rng, sigma, d - 1));
    default: return Expr::star(random_expr(rng, sigma, d - 1));
    }
}

inline WordSet restrict(const WordSet& s, std::size_t n)
{
    WordSet out;
    for (const auto& w : s)
        if (w.size() <= n) out.insert(w);
    return out;
}

inline std::vector<std::string> strs(const WordSet& s)
{
    std::vector<std::string> v;
    for (const auto& w : s) v.push_back(print_word(w));
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace kahyp::testing
