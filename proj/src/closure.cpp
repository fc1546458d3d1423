// Bounded closure: every word of length <= W gets a dense shortlex index, membership is a bitset,
// and rules are fired semi-naively from each newly added word (the "last premise" to arrive).

#include <algorithm>
#include <queue>

#include "kahyp/hypotheses.hpp"

namespace kahyp {

namespace {

using Digits = std::vector<std::uint16_t>;

class Universe {
public:
    Universe(std::size_t k, std::size_t w) : K_(k), W_(w)
    {
        pow_.push_back(1);
        off_.push_back(0);
        for (std::size_t l = 0; l <= W_; ++l) {
            if (pow_[l] > kMaxUniverse) throw std::length_error("closure window too large");
            off_.push_back(off_[l] + pow_[l]);
            pow_.push_back(pow_[l] * std::max<std::size_t>(K_, 1));
            if (off_.back() > kMaxUniverse)
                throw std::length_error("closure window too large: " + std::to_string(K_) + " letters at length " +
                                        std::to_string(W_));
        }
    }

    std::uint64_t size() const { return off_[W_ + 1]; }
    std::size_t window() const { return W_; }
    std::size_t letters() const { return K_; }
    std::uint64_t offset(std::size_t len) const { return off_[len]; }
    std::uint64_t power(std::size_t len) const { return pow_[len]; }

    std::uint64_t index(const Digits& d) const
    {
        std::uint64_t v = 0;
        for (auto x : d) v = v * K_ + x;
        return off_[d.size()] + v;
    }

    void decode(std::uint64_t idx, Digits& d) const
    {
        std::size_t len = static_cast<std::size_t>(std::upper_bound(off_.begin(), off_.end(), idx) - off_.begin()) - 1;
        std::uint64_t v = idx - off_[len];
        d.assign(len, 0);
        for (std::size_t i = len; i-- > 0;) {
            d[i] = static_cast<std::uint16_t>(v % K_);
            v /= K_;
        }
    }

private:
    std::size_t K_, W_;
    std::vector<std::uint64_t> pow_, off_;
};

struct CompiledHyp {
    std::vector<Digits> lhs;
    std::vector<Digits> rhs;
    bool rhs_empty = false;
    bool rhs_fits = true;
};

struct CompiledSchema {
    SchemaKind kind;
    std::vector<bool> allowed;  // per digit
    std::vector<Digits> words;  // parameter words, shortlex (top only)
};

Digits cat3(const Digits& z, std::size_t a, std::size_t b, const Digits& mid, std::size_t c, std::size_t d)
{
    Digits r;
    r.reserve((b - a) + mid.size() + (d - c));
    r.insert(r.end(), z.begin() + static_cast<long>(a), z.begin() + static_cast<long>(b));
    r.insert(r.end(), mid.begin(), mid.end());
    r.insert(r.end(), z.begin() + static_cast<long>(c), z.begin() + static_cast<long>(d));
    return r;
}

class Engine {
public:
    Engine(const Universe& u) : U(u), bits_((u.size() + 63) / 64, 0) {}

    bool has(const Digits& d) const
    {
        if (d.size() > U.window()) return false;
        auto i = U.index(d);
        return (bits_[i >> 6] >> (i & 63)) & 1u;
    }

    void add_index(std::uint64_t i)
    {
        auto& w = bits_[i >> 6];
        std::uint64_t m = 1ull << (i & 63);
        if (w & m) return;
        w |= m;
        pq_.push(i);
    }

    void add(const Digits& d)
    {
        if (d.size() > U.window()) return;
        add_index(U.index(d));
    }

    bool pop(std::uint64_t& i)
    {
        if (pq_.empty()) return false;
        i = pq_.top();
        pq_.pop();
        return true;
    }

    template <class F>
    void for_each_member(F&& f) const
    {
        for (std::uint64_t b = 0; b < bits_.size(); ++b) {
            std::uint64_t w = bits_[b];
            while (w) {
                int t = __builtin_ctzll(w);
                f(b * 64 + static_cast<std::uint64_t>(t));
                w &= w - 1;
            }
        }
    }

    const Universe& U;

private:
    std::vector<std::uint64_t> bits_;
    std::priority_queue<std::uint64_t, std::vector<std::uint64_t>, std::greater<>> pq_;
};

}  // namespace

BoundedLang closure_upto(const HypothesisSet& H, const BoundedLang& L, std::size_t m, std::size_t slack)
{
    const std::size_t W = m + slack;
    Alphabet sigma = L.alphabet;
    for (Symbol s : H.letters()) sigma.add(s);
    for (const Word& w : L.words)
        for (Symbol s : w) sigma.add(s);
    const std::size_t K = sigma.size();

    BoundedLang out;
    out.n = m;
    out.alphabet = sigma;
    if (K == 0) {
        if (L.words.count(Word{})) out.words.insert(Word{});
        for (auto& h : H.concrete)
            if (nullable(h.lhs) && is_empty_lang(h.rhs)) out.words.insert(Word{});
        out.exact = L.exact;
        return out;
    }

    Universe U(K, W);
    Engine E(U);
    auto digits = [&](const Word& w) {
        Digits d;
        d.reserve(w.size());
        for (Symbol s : w) d.push_back(static_cast<std::uint16_t>(sigma.rank(s)));
        return d;
    };

    // exactness bookkeeping
    bool premises_shorter = true, conclusions_shorter = true, truncated = false;

    std::vector<CompiledHyp> hyps;
    for (auto& h : H.concrete) {
        CompiledHyp c;
        for (const Word& w : lang_upto(h.lhs, W)) c.lhs.push_back(digits(w));
        c.rhs_empty = is_empty_lang(h.rhs);
        if (!c.rhs_empty) {
            for (const Word& w : lang_upto(h.rhs, W)) c.rhs.push_back(digits(w));
            auto rmax = max_word_length(h.rhs);
            c.rhs_fits = rmax && *rmax <= static_cast<long>(W);
            if (!c.rhs_fits) truncated = true;
            auto lmin = min_word_length(h.lhs), lmax = max_word_length(h.lhs);
            auto rmin = min_word_length(h.rhs);
            if (lmin) {
                if (!rmax || *rmax > *lmin) premises_shorter = false;
                if (!lmax || *lmax > *rmin) conclusions_shorter = false;
            }
        }
        if (!c.lhs.empty()) hyps.push_back(std::move(c));
    }

    std::vector<CompiledSchema> schemas;
    const std::uint16_t full_digit =
        sigma.contains(sym_full()) ? static_cast<std::uint16_t>(sigma.rank(sym_full())) : UINT16_MAX;
    std::vector<std::uint16_t> conv_digit(K, UINT16_MAX);
    for (std::size_t i = 0; i < K; ++i) {
        Symbol t = tag(sigma.symbols[i]);
        if (sigma.contains(t)) conv_digit[i] = static_cast<std::uint16_t>(sigma.rank(t));
    }
    for (auto& sc : H.schemas) {
        CompiledSchema c{sc.kind, std::vector<bool>(K, sc.letters.empty()), {}};
        for (Symbol s : sc.letters)
            if (sigma.contains(s)) c.allowed[sigma.rank(s)] = true;
        if (sc.kind == SchemaKind::Top) {
            std::vector<Symbol> ls;
            for (std::size_t i = 0; i < K; ++i)
                if (c.allowed[i]) ls.push_back(sigma.symbols[i]);
            for (const Word& w : all_words(ls, W)) c.words.push_back(digits(w));
            premises_shorter = conclusions_shorter = false;
        } else if (sc.kind != SchemaKind::Comm) {
            premises_shorter = false;
        }
        schemas.push_back(std::move(c));
    }

    for (const Word& w : L.words)
        if (w.size() <= W) E.add(digits(w));

    // rules with an empty rhs language have no premises: the whole two-sided ideal
    for (auto& h : hyps) {
        if (!h.rhs_empty) continue;
        for (const Digits& e : h.lhs) {
            std::uint64_t ev = 0;
            for (auto x : e) ev = ev * K + x;
            for (std::size_t len = e.size(); len <= W; ++len)
                for (std::size_t p = 0; p + e.size() <= len; ++p) {
                    std::size_t q = len - e.size() - p;
                    for (std::uint64_t u = 0; u < U.power(p); ++u)
                        for (std::uint64_t v = 0; v < U.power(q); ++v)
                            E.add_index(U.offset(len) + (u * U.power(e.size()) + ev) * U.power(q) + v);
                }
        }
    }

    Digits z;
    std::uint64_t idx;
    while (E.pop(idx)) {
        U.decode(idx, z);
        const std::size_t n = z.size();
        for (auto& h : hyps) {
            if (h.rhs_empty || !h.rhs_fits) continue;
            for (const Digits& f : h.rhs) {
                if (f.size() > n) continue;
                for (std::size_t p = 0; p + f.size() <= n; ++p) {
                    if (!std::equal(f.begin(), f.end(), z.begin() + static_cast<long>(p))) continue;
                    const std::size_t q = p + f.size();
                    bool all = true;
                    for (const Digits& g : h.rhs) {
                        if (&g == &f) continue;
                        if (n - f.size() + g.size() > W || !E.has(cat3(z, 0, p, g, q, n))) {
                            all = false;
                            break;
                        }
                    }
                    if (!all) continue;
                    for (const Digits& e : h.lhs)
                        if (n - f.size() + e.size() <= W) E.add(cat3(z, 0, p, e, q, n));
                }
            }
        }
        for (auto& sc : schemas) {
            switch (sc.kind) {
            case SchemaKind::Top:
                for (std::size_t p = 0; p < n; ++p) {
                    if (z[p] != full_digit) continue;
                    for (const Digits& w : sc.words) {
                        if (n - 1 + w.size() > W) break;
                        E.add(cat3(z, 0, p, w, p + 1, n));
                    }
                }
                break;
            case SchemaKind::FullSplit:
                for (std::size_t p = 0; p < n; ++p) {
                    if (z[p] != full_digit) continue;
                    for (std::size_t l = 0; l <= p && p + 1 + l <= n; ++l) {
                        if (!std::equal(z.begin() + static_cast<long>(p - l), z.begin() + static_cast<long>(p),
                                        z.begin() + static_cast<long>(p + 1)))
                            continue;
                        Digits w(z.begin() + static_cast<long>(p - l), z.begin() + static_cast<long>(p));
                        if (!std::all_of(w.begin(), w.end(), [&](auto x) { return sc.allowed[x]; })) continue;
                        E.add(cat3(z, 0, p - l, w, p + 1 + l, n));
                    }
                }
                break;
            case SchemaKind::Conv:
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t l = 1; i + 3 * l <= n; ++l) {
                        bool ok = true;
                        for (std::size_t j = 0; j < l && ok; ++j) {
                            auto a = z[i + j];
                            ok = sc.allowed[a] && z[i + 2 * l + j] == a && conv_digit[z[i + l - 1 - j]] != UINT16_MAX &&
                                 z[i + l + j] == conv_digit[z[i + l - 1 - j]];
                        }
                        if (!ok) continue;
                        Digits w(z.begin() + static_cast<long>(i), z.begin() + static_cast<long>(i + l));
                        E.add(cat3(z, 0, i, w, i + 3 * l, n));
                    }
                break;
            case SchemaKind::Comm:
                for (std::size_t p = 0; p + 1 < n; ++p) {
                    auto a = z[p], b = z[p + 1];
                    if (a == b || !sc.allowed[a] || !sc.allowed[b]) continue;
                    Digits s = z;
                    std::swap(s[p], s[p + 1]);
                    E.add(s);
                }
                break;
            }
        }
    }

    Digits d;
    E.for_each_member([&](std::uint64_t i) {
        if (i >= U.offset(m + 1)) return;
        U.decode(i, d);
        Word w;
        w.reserve(d.size());
        for (auto x : d) w.push_back(sigma.symbols[x]);
        out.words.insert(std::move(w));
    });

    std::size_t lmax = 0;
    for (const Word& w : L.words) lmax = std::max(lmax, w.size());
    bool exact = (premises_shorter && (L.complete || L.n >= m)) || (conclusions_shorter && L.complete && lmax <= W);
    out.exact = L.exact && !truncated && exact;
    return out;
}

// ---------------------------------------------------------------------------
// Backward rule index

RuleIndex::RuleIndex(const HypothesisSet& H, const std::vector<Symbol>& letters, std::size_t window)
    : schemas_(H.schemas), letters_(letters), full_(sym_full()), window_(window)
{
    for (auto& h : H.concrete) {
        Concrete c;
        for (const Word& w : lang_upto(h.lhs, window)) c.lhs.push_back(w);
        if (c.lhs.empty()) continue;
        std::stable_sort(c.lhs.begin(), c.lhs.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
        if (!is_empty_lang(h.rhs)) {
            for (const Word& w : lang_upto(h.rhs, window)) c.rhs.push_back(w);
            auto rmax = max_word_length(h.rhs);
            c.rhs_fits = rmax && *rmax <= static_cast<long>(window);
            if (!c.rhs_fits) truncated_ = true;
        }
        concrete_.push_back(std::move(c));
    }
    for (auto& sc : schemas_)
        if (sc.letters.empty()) sc.letters = letters_;
}

void RuleIndex::rules_into(const Word& z, std::vector<std::vector<Word>>& out) const
{
    const std::size_t n = z.size();
    auto slice = [&](std::size_t a, std::size_t b) { return Word(z.begin() + static_cast<long>(a), z.begin() + static_cast<long>(b)); };
    for (auto& c : concrete_) {
        for (const Word& e : c.lhs) {
            if (e.size() > n) break;
            for (std::size_t p = 0; p + e.size() <= n; ++p) {
                if (!std::equal(e.begin(), e.end(), z.begin() + static_cast<long>(p))) continue;
                if (c.rhs.empty() && c.rhs_fits) {
                    out.emplace_back();
                    continue;
                }
                if (!c.rhs_fits) continue;
                Word u = slice(0, p), v = slice(p + e.size(), n);
                std::vector<Word> prem;
                bool fits = true;
                for (const Word& f : c.rhs) {
                    if (u.size() + f.size() + v.size() > window_) {
                        fits = false;
                        break;
                    }
                    prem.push_back(concat(u, f, v));
                }
                if (fits) out.push_back(std::move(prem));
            }
        }
    }
    for (auto& sc : schemas_) {
        auto allowed = [&](Symbol s) { return std::find(sc.letters.begin(), sc.letters.end(), s) != sc.letters.end(); };
        auto over_letters = [&](std::size_t a, std::size_t b) {
            for (std::size_t i = a; i < b; ++i)
                if (!allowed(z[i])) return false;
            return true;
        };
        switch (sc.kind) {
        case SchemaKind::Top:
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = i; j <= n; ++j) {
                    if (!over_letters(i, j)) break;
                    if (j == i + 1 && z[i] == full_) continue;
                    if (n - (j - i) + 1 > window_) continue;
                    out.push_back({concat(slice(0, i), Word{full_}, slice(j, n))});
                }
            break;
        case SchemaKind::FullSplit:
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = i; j <= n; ++j) {
                    if (!over_letters(i, j)) break;
                    if (n + (j - i) + 1 > window_) break;
                    Word w = slice(i, j);
                    Word mid = concat(w, Word{full_}, w);
                    out.push_back({concat(slice(0, i), mid, slice(j, n))});
                }
            break;
        case SchemaKind::Conv:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j <= n; ++j) {
                    if (!over_letters(i, j)) break;
                    if (n + 2 * (j - i) > window_) break;
                    Word w = slice(i, j);
                    Word mid = concat(w, converse_word(w), w);
                    out.push_back({concat(slice(0, i), mid, slice(j, n))});
                }
            break;
        case SchemaKind::Comm:
            for (std::size_t p = 0; p + 1 < n; ++p) {
                if (z[p] == z[p + 1] || !allowed(z[p]) || !allowed(z[p + 1])) continue;
                Word s = z;
                std::swap(s[p], s[p + 1]);
                out.push_back({s});
            }
            break;
        }
    }
}

}  // namespace kahyp
