#include "kahyp/syntax.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <mutex>
#include <unordered_set>

namespace kahyp {

namespace {

struct NodeKey {
    Op op;
    std::uint32_t sym;
    const ExprNode* a;
    const ExprNode* b;
    bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept
    {
        std::size_t h = static_cast<std::size_t>(k.op) * 0x9e3779b97f4a7c15ull;
        h ^= std::size_t(k.sym) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= (k.a ? k.a->hash : 0) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= (k.b ? k.b->hash : 0) + 0x517cc1b727220a95ull + (h << 6) + (h >> 2);
        return h;
    }
};

// Nodes are never freed; sharding keeps the lock short under concurrent construction.
struct Shard {
    std::mutex mu;
    std::deque<ExprNode> arena;
    std::unordered_map<NodeKey, const ExprNode*, NodeKeyHash> index;
};

constexpr std::size_t kShards = 64;

std::array<Shard, kShards>& shards()
{
    static std::array<Shard, kShards> s;
    return s;
}

const ExprNode* make_node(Op op, Symbol sym, const ExprNode* a, const ExprNode* b)
{
    NodeKey key{op, sym.id, a, b};
    std::size_t h = NodeKeyHash{}(key);
    Shard& sh = shards()[h % kShards];
    std::lock_guard lk(sh.mu);
    auto it = sh.index.find(key);
    if (it != sh.index.end()) return it->second;
    std::uint32_t size = 1 + (a ? a->size : 0) + (b ? b->size : 0);
    sh.arena.push_back(ExprNode{op, sym, a, b, h, size});
    const ExprNode* n = &sh.arena.back();
    sh.index.emplace(key, n);
    return n;
}

}  // namespace

Expr::Expr() : n_(make_node(Op::Zero, kNoSymbol, nullptr, nullptr)) {}
Expr Expr::zero() { return Expr(make_node(Op::Zero, kNoSymbol, nullptr, nullptr)); }
Expr Expr::one() { return Expr(make_node(Op::One, kNoSymbol, nullptr, nullptr)); }
Expr Expr::sym(Symbol s) { return Expr(make_node(Op::Sym, s, nullptr, nullptr)); }
Expr Expr::sum(Expr a, Expr b) { return Expr(make_node(Op::Sum, kNoSymbol, a.n_, b.n_)); }
Expr Expr::prod(Expr a, Expr b) { return Expr(make_node(Op::Prod, kNoSymbol, a.n_, b.n_)); }
Expr Expr::star(Expr a) { return Expr(make_node(Op::Star, kNoSymbol, a.n_, nullptr)); }

Expr mk_sum(Expr a, Expr b)
{
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a == b) return a;
    return Expr::sum(a, b);
}

Expr mk_prod(Expr a, Expr b)
{
    if (a.is_zero() || b.is_zero()) return Expr::zero();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    return Expr::prod(a, b);
}

Expr mk_star(Expr a)
{
    if (a.is_zero() || a.is_one()) return Expr::one();
    if (a.op() == Op::Star) return a;
    return Expr::star(a);
}

Expr sum_of(const std::vector<Expr>& xs)
{
    Expr r = Expr::zero();
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) r = r.is_zero() ? *it : mk_sum(*it, r);
    return r;
}

Expr prod_of(const std::vector<Expr>& xs)
{
    Expr r = Expr::one();
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) r = mk_prod(*it, r);
    return r;
}

Expr word_expr(const Word& w)
{
    std::vector<Expr> xs;
    xs.reserve(w.size());
    for (Symbol s : w) xs.push_back(Expr::sym(s));
    return prod_of(xs);
}

Expr letters_sum(const std::vector<Symbol>& letters)
{
    std::vector<Expr> xs;
    for (Symbol s : letters) xs.push_back(Expr::sym(s));
    return sum_of(xs);
}

Expr sigma_star(const std::vector<Symbol>& letters) { return mk_star(letters_sum(letters)); }

// ---------------------------------------------------------------------------
// simplify

namespace {

void summands(Expr e, std::vector<Expr>& out)
{
    if (e.op() == Op::Sum) {
        summands(e.left(), out);
        summands(e.right(), out);
    } else if (!e.is_zero()) {
        out.push_back(e);
    }
}

struct Simplifier {
    std::unordered_map<Expr, Expr, ExprHash> memo;

    Expr go(Expr e)
    {
        switch (e.op()) {
        case Op::Zero:
        case Op::One:
        case Op::Sym: return e;
        default: break;
        }
        auto it = memo.find(e);
        if (it != memo.end()) return it->second;
        Expr r;
        if (e.op() == Op::Sum) {
            std::vector<Expr> xs;
            summands(go(e.left()), xs);
            summands(go(e.right()), xs);
            std::vector<Expr> uniq;
            std::unordered_set<Expr, ExprHash> seen;
            for (Expr x : xs)
                if (seen.insert(x).second) uniq.push_back(x);
            r = Expr::zero();
            for (auto i = uniq.rbegin(); i != uniq.rend(); ++i) r = r.is_zero() ? *i : Expr::sum(*i, r);
        } else if (e.op() == Op::Prod) {
            r = mk_prod(go(e.left()), go(e.right()));
        } else {
            r = mk_star(go(e.child()));
        }
        memo.emplace(e, r);
        return r;
    }
};

}  // namespace

Expr simplify(Expr e) { return Simplifier{}.go(e); }

// ---------------------------------------------------------------------------
// printing

namespace {

void print_rec(Expr e, std::string& out)
{
    auto paren = [&](Expr c, bool p) {
        if (p) out += '(';
        print_rec(c, out);
        if (p) out += ')';
    };
    switch (e.op()) {
    case Op::Zero: out += '0'; break;
    case Op::One: out += '1'; break;
    case Op::Sym: out += name_of(e.symbol()); break;
    case Op::Sum:
        paren(e.left(), e.left().op() == Op::Sum);
        out += " + ";
        paren(e.right(), false);
        break;
    case Op::Prod:
        paren(e.left(), e.left().op() == Op::Sum || e.left().op() == Op::Prod);
        out += ';';
        paren(e.right(), e.right().op() == Op::Sum);
        break;
    case Op::Star:
        paren(e.child(), e.child().op() == Op::Sum || e.child().op() == Op::Prod);
        out += '*';
        break;
    }
}

}  // namespace

std::string print(Expr e)
{
    std::string s;
    print_rec(e, s);
    return s;
}

// ---------------------------------------------------------------------------
// parsing

ParseError::ParseError(std::size_t off, const std::string& msg)
    : std::runtime_error("offset " + std::to_string(off) + ": " + msg), offset(off)
{
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
public:
    Parser(std::string_view t, const Alphabet* a, std::vector<Symbol>* seen) : s_(t), alpha_(a), seen_(seen) {}

    Expr run()
    {
        Expr e = expr();
        skip();
        if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
        return e;
    }

private:
    std::string_view s_;
    std::size_t p_ = 0;
    const Alphabet* alpha_;
    std::vector<Symbol>* seen_;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(p_, msg); }

    void skip()
    {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }

    bool eat(char c)
    {
        skip();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }

    Expr expr()
    {
        std::vector<Expr> ts{term()};
        while (eat('+')) ts.push_back(term());
        Expr r = ts.back();
        for (std::size_t i = ts.size() - 1; i-- > 0;) r = Expr::sum(ts[i], r);
        return r;
    }

    Expr term()
    {
        std::vector<Expr> fs{factor()};
        while (eat(';')) fs.push_back(factor());
        Expr r = fs.back();
        for (std::size_t i = fs.size() - 1; i-- > 0;) r = Expr::prod(fs[i], r);
        return r;
    }

    Expr factor()
    {
        Expr b = base();
        while (eat('*')) b = Expr::star(b);
        return b;
    }

    std::string ident()
    {
        skip();
        if (p_ >= s_.size() || !ident_start(s_[p_])) fail("expected identifier");
        std::size_t st = p_;
        while (p_ < s_.size() && ident_char(s_[p_])) ++p_;
        return std::string(s_.substr(st, p_ - st));
    }

    Expr base()
    {
        skip();
        if (p_ >= s_.size()) fail("expected expression");
        char c = s_[p_];
        if (c == '(') {
            ++p_;
            Expr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == '0' && !(p_ + 1 < s_.size() && ident_char(s_[p_ + 1]))) {
            ++p_;
            return Expr::zero();
        }
        if (c == '1' && !(p_ + 1 < s_.size() && ident_char(s_[p_ + 1]))) {
            ++p_;
            return Expr::one();
        }
        std::size_t start = p_;
        Symbol sym = symbol();
        while (p_ < s_.size() && s_[p_] == '\'') {
            ++p_;
            sym = tag(sym);
        }
        if (alpha_ && !alpha_->admits(sym)) throw ParseError(start, "unknown symbol '" + name_of(sym) + "'");
        if (seen_ && std::find(seen_->begin(), seen_->end(), sym) == seen_->end()) seen_->push_back(sym);
        return Expr::sym(sym);
    }

    Symbol symbol()
    {
        char c = s_[p_];
        if (c == '[') {
            ++p_;
            FormulaPtr f = bor();
            if (!eat(']')) fail("expected ']'");
            return sym_test(f);
        }
        if (c == '@') {
            ++p_;
            return sym_netatom(ident());
        }
        if (c == ':' && p_ + 1 < s_.size() && s_[p_ + 1] == '=') {
            p_ += 2;
            return sym_assign(ident());
        }
        if (!ident_start(c)) fail("expected expression");
        std::string id = ident();
        if (id == "at" && p_ < s_.size() && s_[p_] == '{') {
            ++p_;
            std::vector<std::string> tests;
            skip();
            if (!eat('}')) {
                do tests.push_back(ident());
                while (eat(','));
                if (!eat('}')) fail("expected '}'");
            }
            return sym_atom(std::move(tests));
        }
        if (id == "dup") return sym_dup();
        if (id == "full") return sym_full();
        return sym_action(id);
    }

    FormulaPtr bor()
    {
        FormulaPtr l = band();
        if (eat('|')) return Formula::mk_or(l, bor());
        return l;
    }

    FormulaPtr band()
    {
        FormulaPtr l = bnot();
        if (eat('&')) return Formula::mk_and(l, band());
        return l;
    }

    FormulaPtr bnot()
    {
        if (eat('!')) return Formula::mk_not(bnot());
        if (eat('(')) {
            FormulaPtr f = bor();
            if (!eat(')')) fail("expected ')'");
            return f;
        }
        std::string id = ident();
        if (id == "tt") return Formula::mk_true();
        if (id == "ff") return Formula::mk_false();
        return Formula::mk_var(id);
    }
};

}  // namespace

Expr parse_expr(std::string_view text, const Alphabet& alpha) { return Parser(text, &alpha, nullptr).run(); }

Expr parse_expr_open(std::string_view text, std::vector<Symbol>* seen) { return Parser(text, nullptr, seen).run(); }

// ---------------------------------------------------------------------------
// structural queries

namespace {

void collect_syms(Expr e, std::vector<Symbol>& out, std::unordered_set<const ExprNode*>& seen,
                  std::unordered_set<std::uint32_t>& have)
{
    if (!seen.insert(e.node()).second) return;
    switch (e.op()) {
    case Op::Sym:
        if (have.insert(e.symbol().id).second) out.push_back(e.symbol());
        break;
    case Op::Sum:
    case Op::Prod:
        collect_syms(e.left(), out, seen, have);
        collect_syms(e.right(), out, seen, have);
        break;
    case Op::Star: collect_syms(e.child(), out, seen, have); break;
    default: break;
    }
}

}  // namespace

std::vector<Symbol> symbols_of(Expr e)
{
    std::vector<Symbol> out;
    std::unordered_set<const ExprNode*> seen;
    std::unordered_set<std::uint32_t> have;
    collect_syms(e, out, seen, have);
    return out;
}

bool contains_symbol(Expr e, Symbol s)
{
    auto v = symbols_of(e);
    return std::find(v.begin(), v.end(), s) != v.end();
}

Expr substitute(Expr e, const std::unordered_map<std::uint32_t, Expr>& images)
{
    std::unordered_map<Expr, Expr, ExprHash> memo;
    std::function<Expr(Expr)> go = [&](Expr x) -> Expr {
        auto it = memo.find(x);
        if (it != memo.end()) return it->second;
        Expr r;
        switch (x.op()) {
        case Op::Zero:
        case Op::One: r = x; break;
        case Op::Sym: {
            auto im = images.find(x.symbol().id);
            r = im == images.end() ? x : im->second;
            break;
        }
        case Op::Sum: r = mk_sum(go(x.left()), go(x.right())); break;
        case Op::Prod: r = mk_prod(go(x.left()), go(x.right())); break;
        case Op::Star: r = mk_star(go(x.child())); break;
        }
        memo.emplace(x, r);
        return r;
    };
    return go(e);
}

bool nullable(Expr e)
{
    switch (e.op()) {
    case Op::Zero:
    case Op::Sym: return false;
    case Op::One:
    case Op::Star: return true;
    case Op::Sum: return nullable(e.left()) || nullable(e.right());
    case Op::Prod: return nullable(e.left()) && nullable(e.right());
    }
    return false;
}

std::optional<long> min_word_length(Expr e)
{
    switch (e.op()) {
    case Op::Zero: return std::nullopt;
    case Op::One:
    case Op::Star: return 0;
    case Op::Sym: return 1;
    case Op::Sum: {
        auto a = min_word_length(e.left()), b = min_word_length(e.right());
        if (!a) return b;
        if (!b) return a;
        return std::min(*a, *b);
    }
    case Op::Prod: {
        auto a = min_word_length(e.left()), b = min_word_length(e.right());
        if (!a || !b) return std::nullopt;
        return *a + *b;
    }
    }
    return std::nullopt;
}

bool is_empty_lang(Expr e) { return !min_word_length(e).has_value(); }

std::optional<long> max_word_length(Expr e)
{
    switch (e.op()) {
    case Op::Zero: return -1;
    case Op::One: return 0;
    case Op::Sym: return 1;
    case Op::Sum: {
        auto a = max_word_length(e.left()), b = max_word_length(e.right());
        if (!a || !b) {
            // an infinite side only counts if it is non-empty, which it is by construction
            return std::nullopt;
        }
        return std::max(*a, *b);
    }
    case Op::Prod: {
        if (is_empty_lang(e.left()) || is_empty_lang(e.right())) return -1;
        auto a = max_word_length(e.left()), b = max_word_length(e.right());
        if (!a || !b) return std::nullopt;
        return *a + *b;
    }
    case Op::Star: {
        auto c = max_word_length(e.child());
        if (c && *c <= 0) return 0;
        return std::nullopt;
    }
    }
    return std::nullopt;
}

std::optional<Word> as_word(Expr e)
{
    switch (e.op()) {
    case Op::One: return Word{};
    case Op::Sym: return Word{e.symbol()};
    case Op::Prod: {
        auto a = as_word(e.left());
        if (!a) return std::nullopt;
        auto b = as_word(e.right());
        if (!b) return std::nullopt;
        return concat(*a, *b);
    }
    default: return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// bounded enumeration

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<const ExprNode*, std::size_t>& p) const noexcept
    {
        return p.first->hash * 31 + p.second;
    }
};

struct LangEnum {
    std::unordered_map<std::pair<const ExprNode*, std::size_t>, WordSet, PairHash> memo;

    const WordSet& go(Expr e, std::size_t n)
    {
        auto key = std::make_pair(e.node(), n);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        WordSet r;
        switch (e.op()) {
        case Op::Zero: break;
        case Op::One: r.insert(Word{}); break;
        case Op::Sym:
            if (n >= 1) r.insert(Word{e.symbol()});
            break;
        case Op::Sum: {
            r = go(e.left(), n);
            const WordSet& b = go(e.right(), n);
            r.insert(b.begin(), b.end());
            break;
        }
        case Op::Prod: {
            WordSet a = go(e.left(), n);
            for (const Word& u : a) {
                const WordSet& b = go(e.right(), n - u.size());
                for (const Word& v : b) r.insert(concat(u, v));
            }
            break;
        }
        case Op::Star: {
            WordSet base = go(e.child(), n);
            base.erase(Word{});
            r.insert(Word{});
            std::vector<Word> frontier{Word{}};
            while (!frontier.empty()) {
                std::vector<Word> next;
                for (const Word& u : frontier)
                    for (const Word& v : base) {
                        if (u.size() + v.size() > n) continue;
                        Word w = concat(u, v);
                        if (r.insert(w).second) next.push_back(std::move(w));
                    }
                frontier = std::move(next);
            }
            break;
        }
        }
        return memo.emplace(key, std::move(r)).first->second;
    }
};

}  // namespace

WordSet lang_upto(Expr e, std::size_t n)
{
    LangEnum le;
    return le.go(e, n);
}

}  // namespace kahyp
