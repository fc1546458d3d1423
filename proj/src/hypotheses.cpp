#include "kahyp/hypotheses.hpp"

#include <algorithm>
#include <sstream>

namespace kahyp {

const char* to_string(HypClass c)
{
    switch (c) {
    case HypClass::LetterOrEpsLhs: return "letter-or-eps-lhs";
    case HypClass::WordWord: return "word-word";
    case HypClass::ZeroRhs: return "expr-zero-rhs";
    case HypClass::OneRhs: return "expr-one-rhs";
    case HypClass::WordRhs: return "word-rhs";
    case HypClass::General: return "general";
    }
    return "?";
}

const char* to_string(SchemaKind k)
{
    switch (k) {
    case SchemaKind::Top: return "top";
    case SchemaKind::FullSplit: return "fullsplit";
    case SchemaKind::Conv: return "conv";
    case SchemaKind::Comm: return "comm";
    }
    return "?";
}

HypClass Hypothesis::classify() const
{
    auto lw = as_word(lhs);
    auto rw = as_word(rhs);
    if (lw && rw && lw->size() <= 1) return HypClass::LetterOrEpsLhs;
    if (lw && rw) return HypClass::WordWord;
    if (rhs.is_zero()) return HypClass::ZeroRhs;
    if (rhs.is_one()) return HypClass::OneRhs;
    if (rw) return HypClass::WordRhs;
    return HypClass::General;
}

std::string Hypothesis::str() const { return print(lhs) + " <= " + print(rhs); }

std::vector<Symbol> HypothesisSet::letters() const
{
    std::vector<Symbol> out;
    auto add = [&](Symbol s) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    };
    for (auto& h : concrete) {
        for (Symbol s : symbols_of(h.lhs)) add(s);
        for (Symbol s : symbols_of(h.rhs)) add(s);
    }
    for (auto& sc : schemas) {
        for (Symbol s : sc.letters) add(s);
        if (sc.kind == SchemaKind::Top || sc.kind == SchemaKind::FullSplit) add(sym_full());
    }
    return out;
}

HypothesisSet set_union(const std::string& name, const std::vector<HypothesisSet>& parts)
{
    HypothesisSet r;
    r.name = name;
    for (auto& p : parts) {
        for (auto& h : p.concrete)
            if (std::find(r.concrete.begin(), r.concrete.end(), h) == r.concrete.end()) r.concrete.push_back(h);
        for (auto& s : p.schemas)
            if (std::find(r.schemas.begin(), r.schemas.end(), s) == r.schemas.end()) r.schemas.push_back(s);
    }
    return r;
}

HypothesisSet materialize(const HypothesisSet& h, int k, const std::vector<Symbol>& context)
{
    HypothesisSet r;
    r.name = h.name;
    r.concrete = h.concrete;
    for (auto& sc : h.schemas) {
        const std::vector<Symbol>& letters = sc.letters.empty() ? context : sc.letters;
        std::size_t bound = static_cast<std::size_t>(k >= 0 ? k : sc.k);
        Expr full = Expr::sym(sym_full());
        switch (sc.kind) {
        case SchemaKind::Top:
            for (const Word& w : all_words(letters, bound)) r.concrete.push_back({word_expr(w), full});
            break;
        case SchemaKind::FullSplit:
            for (const Word& w : all_words(letters, bound))
                r.concrete.push_back({word_expr(w), prod_of({word_expr(w), full, word_expr(w)})});
            break;
        case SchemaKind::Conv:
            for (const Word& w : all_words(letters, bound))
                r.concrete.push_back({word_expr(w), prod_of({word_expr(w), word_expr(converse_word(w)), word_expr(w)})});
            break;
        case SchemaKind::Comm:
            for (Symbol a : letters)
                for (Symbol b : letters)
                    if (a != b)
                        r.concrete.push_back({mk_prod(Expr::sym(a), Expr::sym(b)), mk_prod(Expr::sym(b), Expr::sym(a))});
            break;
        }
    }
    return r;
}

namespace {

void split_sum(Expr e, std::vector<Expr>& out)
{
    if (e.op() == Op::Sum) {
        split_sum(e.left(), out);
        split_sum(e.right(), out);
    } else if (!e.is_zero()) {
        out.push_back(e);
    }
}

}  // namespace

std::vector<Hypothesis> normal_form(const HypothesisSet& h, int k, const std::vector<Symbol>& context)
{
    HypothesisSet m = materialize(h, k, context);
    std::vector<std::pair<std::string, Hypothesis>> keyed;
    for (auto& hyp : m.concrete) {
        std::vector<Expr> parts;
        split_sum(simplify(hyp.lhs), parts);
        Expr rhs = simplify(hyp.rhs);
        for (Expr p : parts) {
            Hypothesis n{p, rhs};
            keyed.emplace_back(n.str(), n);
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first == b.first; }),
                keyed.end());
    std::vector<Hypothesis> out;
    for (auto& [s, hyp] : keyed) out.push_back(hyp);
    return out;
}

bool same_hypotheses(const HypothesisSet& a, const HypothesisSet& b, int k)
{
    std::vector<Symbol> ctx = a.letters();
    for (Symbol s : b.letters())
        if (std::find(ctx.begin(), ctx.end(), s) == ctx.end()) ctx.push_back(s);
    return normal_form(a, k, ctx) == normal_form(b, k, ctx);
}

// ---------------------------------------------------------------------------
// text format

namespace {

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

// Position of a bare '=' (not part of ":=", "<=" or ">=").
std::size_t find_eq(const std::string& s)
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '=') continue;
        if (i > 0 && (s[i - 1] == ':' || s[i - 1] == '<' || s[i - 1] == '>')) continue;
        return i;
    }
    return std::string::npos;
}

SchemaKind schema_kind(const std::string& s)
{
    if (s == "top") return SchemaKind::Top;
    if (s == "fullsplit") return SchemaKind::FullSplit;
    if (s == "conv") return SchemaKind::Conv;
    if (s == "comm") return SchemaKind::Comm;
    throw std::invalid_argument("unknown schema '" + s + "'");
}

}  // namespace

HypothesisSet parse_hypotheses(std::string_view text, const std::string& name)
{
    HypothesisSet H;
    H.name = name;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto c = raw.find('#'); c != std::string::npos) raw.resize(c);
        std::string line = trim(raw);
        if (line.empty()) continue;
        try {
            if (line.rfind("schema", 0) == 0) {
                std::istringstream ls(line.substr(6));
                std::string kind, tok;
                ls >> kind;
                SchemaInstance sc{schema_kind(kind), {}, 2};
                while (ls >> tok) {
                    if (tok.rfind("k=", 0) == 0) {
                        sc.k = std::stoi(tok.substr(2));
                    } else if (tok.rfind("letters=", 0) == 0) {
                        std::string ls2 = tok.substr(8);
                        std::size_t st = 0;
                        while (st <= ls2.size()) {
                            auto e = ls2.find(',', st);
                            if (e == std::string::npos) e = ls2.size();
                            if (e > st) sc.letters.push_back(parse_symbol(ls2.substr(st, e - st)));
                            st = e + 1;
                        }
                    } else {
                        throw std::invalid_argument("unknown schema option '" + tok + "'");
                    }
                }
                H.schemas.push_back(sc);
                continue;
            }
            std::size_t p;
            if ((p = line.find("<=")) != std::string::npos) {
                H.concrete.push_back({parse_expr_open(line.substr(0, p)), parse_expr_open(line.substr(p + 2))});
            } else if ((p = line.find(">=")) != std::string::npos) {
                H.concrete.push_back({parse_expr_open(line.substr(p + 2)), parse_expr_open(line.substr(0, p))});
            } else if ((p = find_eq(line)) != std::string::npos) {
                Expr a = parse_expr_open(line.substr(0, p)), b = parse_expr_open(line.substr(p + 1));
                H.concrete.push_back({a, b});
                H.concrete.push_back({b, a});
            } else {
                throw std::invalid_argument("expected '<=', '>=' or '='");
            }
        } catch (const std::exception& ex) {
            throw std::invalid_argument("hypotheses line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    return H;
}

std::string print_hypotheses(const HypothesisSet& h)
{
    std::string out;
    for (auto& hyp : h.concrete) out += hyp.str() + "\n";
    for (auto& sc : h.schemas) {
        out += std::string("schema ") + to_string(sc.kind) + " k=" + std::to_string(sc.k);
        if (!sc.letters.empty()) {
            out += " letters=";
            for (std::size_t i = 0; i < sc.letters.size(); ++i) out += (i ? "," : "") + name_of(sc.letters[i]);
        }
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// bounded languages and the one-step function

BoundedLang bounded(Expr e, std::size_t n, const Alphabet& alpha)
{
    BoundedLang L;
    L.words = lang_upto(e, n);
    L.n = n;
    L.alphabet = alpha;
    for (Symbol s : symbols_of(e)) L.alphabet.add(s);
    auto mx = max_word_length(e);
    L.complete = mx && *mx <= static_cast<long>(n);
    return L;
}

BoundedLang bounded(WordSet words, std::size_t n, const Alphabet& alpha, bool complete)
{
    BoundedLang L;
    L.alphabet = alpha;
    for (auto it = words.begin(); it != words.end();) {
        if (it->size() > n) {
            it = words.erase(it);
            complete = false;
        } else {
            for (Symbol s : *it) L.alphabet.add(s);
            ++it;
        }
    }
    L.words = std::move(words);
    L.n = n;
    L.complete = complete;
    return L;
}

namespace {

template <class F>
void for_occurrences(const Word& z, const Word& f, F&& fn)
{
    if (f.size() > z.size()) return;
    for (std::size_t p = 0; p + f.size() <= z.size(); ++p)
        if (std::equal(f.begin(), f.end(), z.begin() + static_cast<long>(p))) fn(p);
}

}  // namespace

BoundedLang step(const HypothesisSet& H, const BoundedLang& L, std::size_t m)
{
    const std::size_t W = std::max(L.n, m);
    Alphabet sigma = L.alphabet;
    for (Symbol s : H.letters()) sigma.add(s);
    HypothesisSet Hm = materialize(H, static_cast<int>(W), sigma.symbols);
    for (auto& h : Hm.concrete)
        for (Symbol s : symbols_of(h.lhs)) sigma.add(s);

    BoundedLang out;
    out.n = m;
    out.alphabet = sigma;
    bool under = false;

    // 1: present, 0: absent, -1: outside the known window
    auto in_L = [&](const Word& w) -> int {
        if (w.size() > L.n) return L.complete ? 0 : -1;
        return L.words.count(w) ? 1 : 0;
    };

    for (auto& h : Hm.concrete) {
        WordSet E = lang_upto(h.lhs, m);
        if (E.empty()) continue;
        if (is_empty_lang(h.rhs)) {
            for (const Word& e : E)
                for (const Word& u : all_words(sigma.symbols, m - e.size()))
                    for (const Word& v : all_words(sigma.symbols, m - e.size() - u.size())) out.words.insert(concat(u, e, v));
            continue;
        }
        WordSet R = lang_upto(h.rhs, W);
        auto rmax = max_word_length(h.rhs);
        bool r_cut = !rmax || *rmax > static_cast<long>(W);
        if (!L.complete) {
            long lmin = static_cast<long>(E.begin()->size());
            for (auto& e : E) lmin = std::min(lmin, static_cast<long>(e.size()));
            if (r_cut || static_cast<long>(m) + *rmax - lmin > static_cast<long>(L.n)) under = true;
        }
        std::set<std::pair<Word, Word>> ctx;
        for (const Word& w : L.words)
            for (const Word& f : R)
                for_occurrences(w, f, [&](std::size_t p) {
                    ctx.emplace(Word(w.begin(), w.begin() + static_cast<long>(p)),
                                Word(w.begin() + static_cast<long>(p + f.size()), w.end()));
                });
        for (auto& [u, v] : ctx) {
            if (r_cut && L.complete) break;
            bool ok = true, unknown = r_cut;
            for (const Word& f : R) {
                int r = in_L(concat(u, f, v));
                if (r == 0) {
                    ok = false;
                    break;
                }
                if (r < 0) unknown = true;
            }
            if (!ok) continue;
            if (unknown) {
                under = true;
                continue;
            }
            for (const Word& e : E)
                if (u.size() + e.size() + v.size() <= m) out.words.insert(concat(u, e, v));
        }
    }
    out.exact = L.exact && !under;
    return out;
}

BoundedLang closed_sem_upto(const HypothesisSet& H, Expr e, std::size_t m, std::size_t slack, const Alphabet& alpha)
{
    return closure_upto(H, bounded(e, m + slack, alpha), m, slack);
}

}  // namespace kahyp
