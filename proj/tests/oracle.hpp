#pragma once
// Test-side reference closure: naive fixpoint over explicit contexts. Deliberately shares no code
// with the dense engine beyond lang_upto.

#include <map>

#include "kahyp/hypotheses.hpp"
#include "support.hpp"

namespace kahyp::testing {

struct NaiveHyp {
    WordSet lhs, rhs;
    bool rhs_zero;
};

inline std::vector<NaiveHyp> naive_compile(const HypothesisSet& H, std::size_t W)
{
    std::vector<NaiveHyp> out;
    for (auto& h : H.concrete) {
        // a rule whose premise cannot fit the window never fires inside it
        auto rmax = max_word_length(h.rhs);
        if (!rmax || *rmax > static_cast<long>(W)) continue;
        out.push_back({lang_upto(h.lhs, W), lang_upto(h.rhs, W), is_empty_lang(h.rhs)});
    }
    return out;
}

// cl_H(L) inside the window Σ^{<=W}: rules whose premises or conclusions leave the window are not
// used. Only finite-rhs concrete hypotheses (materialize schemas first).
inline WordSet naive_closure(const std::vector<NaiveHyp>& H, const std::vector<Symbol>& sigma, const WordSet& L,
                             std::size_t W)
{
    WordSet S;
    for (auto& w : L)
        if (w.size() <= W) S.insert(w);
    auto ctx = all_words(sigma, W);
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& h : H) {
            std::size_t rmax = 0;
            for (auto& r : h.rhs) rmax = std::max(rmax, r.size());
            for (auto& u : ctx)
                for (auto& v : ctx) {
                    if (u.size() + v.size() > W) break;
                    bool ok = true;
                    if (!h.rhs_zero) {
                        if (u.size() + v.size() + rmax > W) continue;
                        for (auto& r : h.rhs)
                            if (!S.count(concat(u, r, v))) {
                                ok = false;
                                break;
                            }
                    }
                    if (!ok) continue;
                    for (auto& e : h.lhs)
                        if (u.size() + e.size() + v.size() <= W && S.insert(concat(u, e, v)).second) changed = true;
                }
        }
    }
    return S;
}

inline WordSet naive_closure(const HypothesisSet& H, const std::vector<Symbol>& sigma, const WordSet& L, std::size_t W)
{
    return naive_closure(naive_compile(materialize(H, static_cast<int>(W), sigma), W), sigma, L, W);
}

// Random word-word hypothesis set. With `monotone`, |rhs| <= |lhs| so closures of short words only
// need short premises and the window is exact.
inline HypothesisSet random_hyps(std::mt19937_64& rng, const std::vector<Symbol>& sigma, bool monotone,
                                 bool allow_zero = true)
{
    HypothesisSet H;
    H.name = "R";
    int n = 1 + static_cast<int>(rng() % 3);
    auto rw = [&](std::size_t lo, std::size_t hi) {
        std::size_t len = lo + rng() % (hi - lo + 1);
        Word w;
        for (std::size_t i = 0; i < len; ++i) w.push_back(sigma[rng() % sigma.size()]);
        return w;
    };
    for (int i = 0; i < n; ++i) {
        Word l = rw(0, 2);
        if (allow_zero && rng() % 6 == 0) {
            if (l.empty()) l = rw(1, 2);
            H.concrete.push_back({word_expr(l), Expr::zero()});
            continue;
        }
        Word r = monotone ? rw(0, l.size()) : rw(0, 2);
        if (r == l) r = rw(0, monotone ? l.size() : 2);
        H.concrete.push_back({word_expr(l), word_expr(r)});
    }
    return H;
}

inline WordSet random_lang(std::mt19937_64& rng, const std::vector<Symbol>& sigma, std::size_t maxlen, int count)
{
    WordSet L;
    auto all = all_words(sigma, maxlen);
    for (int i = 0; i < count; ++i) L.insert(all[rng() % all.size()]);
    return L;
}

}  // namespace kahyp::testing
