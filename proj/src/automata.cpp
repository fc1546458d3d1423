#include "kahyp/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace kahyp {

std::uint32_t Nfa::add_state(bool acc)
{
    out.emplace_back();
    accepting.push_back(acc);
    return static_cast<std::uint32_t>(out.size() - 1);
}

void Nfa::add_edge(std::uint32_t from, Symbol label, std::uint32_t to)
{
    out[from].emplace_back(label, to);
    if (label != kEps) add_letter(label);
}

bool Nfa::has_edge(std::uint32_t from, Symbol label, std::uint32_t to) const
{
    for (auto& [l, t] : out[from])
        if (l == label && t == to) return true;
    return false;
}

std::size_t Nfa::num_edges() const
{
    std::size_t n = 0;
    for (auto& v : out) n += v.size();
    return n;
}

void Nfa::add_letter(Symbol s)
{
    if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end()) alphabet.push_back(s);
}

// ---------------------------------------------------------------------------
// Antimirov partial derivatives

namespace {

Expr cat(Expr d, Expr f)
{
    if (d.is_zero() || f.is_zero()) return Expr::zero();
    if (d.is_one()) return f;
    if (f.is_one()) return d;
    if (d.op() == Op::Prod) return Expr::prod(d.left(), cat(d.right(), f));
    return Expr::prod(d, f);
}

using LinearForm = std::vector<std::pair<Symbol, Expr>>;

struct Antimirov {
    std::unordered_map<Expr, LinearForm, ExprHash> memo;

    const LinearForm& lf(Expr e)
    {
        auto it = memo.find(e);
        if (it != memo.end()) return it->second;
        LinearForm r;
        auto add = [&](Symbol a, Expr d) {
            if (d.is_zero()) return;
            for (auto& [b, x] : r)
                if (b == a && x == d) return;
            r.emplace_back(a, d);
        };
        switch (e.op()) {
        case Op::Zero:
        case Op::One: break;
        case Op::Sym: add(e.symbol(), Expr::one()); break;
        case Op::Sum: {
            LinearForm a = lf(e.left());
            for (auto& [s, d] : a) add(s, d);
            LinearForm b = lf(e.right());
            for (auto& [s, d] : b) add(s, d);
            break;
        }
        case Op::Prod: {
            LinearForm a = lf(e.left());
            for (auto& [s, d] : a) add(s, cat(d, e.right()));
            if (nullable(e.left())) {
                LinearForm b = lf(e.right());
                for (auto& [s, d] : b) add(s, d);
            }
            break;
        }
        case Op::Star: {
            LinearForm a = lf(e.child());
            for (auto& [s, d] : a) add(s, cat(d, e));
            break;
        }
        }
        return memo.emplace(e, std::move(r)).first->second;
    }
};

}  // namespace

Nfa expr_to_nfa(Expr e)
{
    Nfa n;
    for (Symbol s : symbols_of(e)) n.add_letter(s);
    Antimirov am;
    std::unordered_map<Expr, std::uint32_t, ExprHash> ids;
    std::deque<Expr> work;
    auto get = [&](Expr d) {
        auto it = ids.find(d);
        if (it != ids.end()) return it->second;
        std::uint32_t id = n.add_state(nullable(d));
        ids.emplace(d, id);
        work.push_back(d);
        return id;
    };
    n.initial.push_back(get(e));
    while (!work.empty()) {
        Expr d = work.front();
        work.pop_front();
        std::uint32_t from = ids.at(d);
        LinearForm form = am.lf(d);
        for (auto& [a, x] : form) n.add_edge(from, a, get(x));
    }
    return n;
}

// ---------------------------------------------------------------------------
// ε-closure and simulation

std::vector<std::uint32_t> eps_closure(const Nfa& n, std::vector<std::uint32_t> states)
{
    std::vector<bool> seen(n.num_states(), false);
    std::vector<std::uint32_t> stack;
    for (auto s : states)
        if (!seen[s]) {
            seen[s] = true;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        for (auto& [l, t] : n.out[s])
            if (l == kEps && !seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
    }
    std::vector<std::uint32_t> r;
    for (std::uint32_t i = 0; i < seen.size(); ++i)
        if (seen[i]) r.push_back(i);
    return r;
}

namespace {

std::vector<std::uint32_t> move_on(const Nfa& n, const std::vector<std::uint32_t>& set, Symbol a)
{
    std::vector<std::uint32_t> next;
    for (auto s : set)
        for (auto& [l, t] : n.out[s])
            if (l == a) next.push_back(t);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return eps_closure(n, std::move(next));
}

bool any_accepting(const Nfa& n, const std::vector<std::uint32_t>& set)
{
    return std::any_of(set.begin(), set.end(), [&](auto s) { return n.accepting[s]; });
}

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept
    {
        std::size_t h = v.size();
        for (auto x : v) h = h * 1000003u ^ x;
        return h;
    }
};

// On-the-fly subset construction, shared by determinize and the equivalence checks.
struct Subsets {
    const Nfa& n;
    std::vector<Symbol> letters;
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> ids;
    std::vector<std::vector<std::uint32_t>> sets;
    std::vector<bool> acc;
    std::vector<std::vector<std::uint32_t>> succ;  // lazily filled, UINT32_MAX = unknown

    Subsets(const Nfa& nfa, std::vector<Symbol> ls) : n(nfa), letters(std::move(ls)) {}

    std::uint32_t get(std::vector<std::uint32_t> s)
    {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        auto id = static_cast<std::uint32_t>(sets.size());
        acc.push_back(any_accepting(n, s));
        ids.emplace(s, id);
        sets.push_back(std::move(s));
        succ.emplace_back(letters.size(), UINT32_MAX);
        return id;
    }

    std::uint32_t start() { return get(eps_closure(n, n.initial)); }

    std::uint32_t step(std::uint32_t id, std::size_t li)
    {
        if (succ[id][li] == UINT32_MAX) {
            auto nx = move_on(n, sets[id], letters[li]);
            auto t = get(std::move(nx));
            succ[id][li] = t;
        }
        return succ[id][li];
    }
};

std::vector<Symbol> union_letters(const std::vector<Symbol>& a, const std::vector<Symbol>& b)
{
    std::vector<Symbol> r = a;
    for (Symbol s : b)
        if (std::find(r.begin(), r.end(), s) == r.end()) r.push_back(s);
    return r;
}

}  // namespace

bool nfa_accepts(const Nfa& n, const Word& w)
{
    auto cur = eps_closure(n, n.initial);
    for (Symbol a : w) {
        cur = move_on(n, cur, a);
        if (cur.empty()) return false;
    }
    return any_accepting(n, cur);
}

bool dfa_accepts(const Dfa& d, const Word& w)
{
    std::uint32_t s = d.initial;
    for (Symbol a : w) {
        auto it = std::find(d.alphabet.begin(), d.alphabet.end(), a);
        if (it == d.alphabet.end()) return false;
        s = d.delta[s][it - d.alphabet.begin()];
    }
    return d.accepting[s];
}

WordSet nfa_lang_upto(const Nfa& n, std::size_t len)
{
    WordSet out;
    Word w;
    auto rec = [&](auto& self, const std::vector<std::uint32_t>& cur) -> void {
        if (any_accepting(n, cur)) out.insert(w);
        if (w.size() == len) return;
        for (Symbol a : n.alphabet) {
            auto nx = move_on(n, cur, a);
            if (nx.empty()) continue;
            w.push_back(a);
            self(self, nx);
            w.pop_back();
        }
    };
    rec(rec, eps_closure(n, n.initial));
    return out;
}

// ---------------------------------------------------------------------------
// DFAs

Dfa determinize(const Nfa& n) { return determinize(n, n.alphabet); }

Dfa determinize(const Nfa& n, const std::vector<Symbol>& letters)
{
    // Dead NFA states are dropped from every subset, so all dead subsets collapse into one sink.
    Nfa live = n;
    {
        std::vector<std::vector<std::uint32_t>> rev(n.num_states());
        for (std::uint32_t q = 0; q < n.num_states(); ++q)
            for (auto [l, t] : n.out[q]) rev[t].push_back(q);
        std::vector<bool> ok(n.num_states(), false);
        std::vector<std::uint32_t> st;
        for (std::uint32_t q = 0; q < n.num_states(); ++q)
            if (n.accepting[q]) ok[q] = true, st.push_back(q);
        while (!st.empty()) {
            auto q = st.back();
            st.pop_back();
            for (auto p : rev[q])
                if (!ok[p]) ok[p] = true, st.push_back(p);
        }
        for (auto& edges : live.out)
            std::erase_if(edges, [&](const auto& e) { return !ok[e.second]; });
        std::erase_if(live.initial, [&](std::uint32_t q) { return !ok[q]; });
    }
    Subsets ss(live, letters);
    Dfa d;
    d.alphabet = letters;
    d.initial = ss.start();
    for (std::uint32_t i = 0; i < ss.sets.size(); ++i)
        for (std::size_t li = 0; li < letters.size(); ++li) ss.step(i, li);
    d.delta = ss.succ;
    d.accepting = ss.acc;
    return d;
}

Dfa minimize(const Dfa& d)
{
    const std::size_t N = d.num_states(), K = d.alphabet.size();
    std::vector<std::uint32_t> cls(N);
    for (std::size_t i = 0; i < N; ++i) cls[i] = d.accepting[i] ? 1 : 0;
    std::size_t count = 0;
    for (;;) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig_ids;
        std::vector<std::uint32_t> next(N);
        for (std::size_t i = 0; i < N; ++i) {
            std::vector<std::uint32_t> sig{cls[i]};
            for (std::size_t k = 0; k < K; ++k) sig.push_back(cls[d.delta[i][k]]);
            auto it = sig_ids.emplace(sig, static_cast<std::uint32_t>(sig_ids.size())).first;
            next[i] = it->second;
        }
        std::size_t c = sig_ids.size();
        cls = std::move(next);
        if (c == count) break;
        count = c;
    }
    Dfa m;
    m.alphabet = d.alphabet;
    m.delta.assign(count, std::vector<std::uint32_t>(K, 0));
    m.accepting.assign(count, false);
    for (std::size_t i = 0; i < N; ++i) {
        m.accepting[cls[i]] = d.accepting[i];
        for (std::size_t k = 0; k < K; ++k) m.delta[cls[i]][k] = cls[d.delta[i][k]];
    }
    m.initial = cls[d.initial];
    return canonical(m);
}

Dfa canonical(const Dfa& d)
{
    const std::size_t K = d.alphabet.size();
    std::vector<std::uint32_t> num(d.num_states(), UINT32_MAX);
    std::vector<std::uint32_t> order{d.initial};
    num[d.initial] = 0;
    for (std::size_t h = 0; h < order.size(); ++h)
        for (std::size_t k = 0; k < K; ++k) {
            auto t = d.delta[order[h]][k];
            if (num[t] == UINT32_MAX) {
                num[t] = static_cast<std::uint32_t>(order.size());
                order.push_back(t);
            }
        }
    Dfa c;
    c.alphabet = d.alphabet;
    c.initial = 0;
    c.delta.assign(order.size(), std::vector<std::uint32_t>(K));
    c.accepting.assign(order.size(), false);
    for (std::size_t i = 0; i < order.size(); ++i) {
        c.accepting[i] = d.accepting[order[i]];
        for (std::size_t k = 0; k < K; ++k) c.delta[i][k] = num[d.delta[order[i]][k]];
    }
    return c;
}

bool same_dfa(const Dfa& a, const Dfa& b)
{
    if (a.alphabet != b.alphabet) return false;
    Dfa ca = canonical(a), cb = canonical(b);
    return ca.delta == cb.delta && ca.accepting == cb.accepting;
}

Nfa dfa_to_nfa(const Dfa& d)
{
    Nfa n;
    n.alphabet = d.alphabet;
    for (std::size_t i = 0; i < d.num_states(); ++i) n.add_state(d.accepting[i]);
    for (std::size_t i = 0; i < d.num_states(); ++i)
        for (std::size_t k = 0; k < d.alphabet.size(); ++k)
            n.add_edge(static_cast<std::uint32_t>(i), d.alphabet[k], d.delta[i][k]);
    n.initial = {d.initial};
    return n;
}

// ---------------------------------------------------------------------------
// Trimming and state elimination

Nfa trim(const Nfa& n)
{
    const std::size_t N = n.num_states();
    std::vector<bool> fwd(N, false), bwd(N, false);
    std::vector<std::uint32_t> st(n.initial.begin(), n.initial.end());
    for (auto s : st) fwd[s] = true;
    while (!st.empty()) {
        auto s = st.back();
        st.pop_back();
        for (auto& [l, t] : n.out[s])
            if (!fwd[t]) {
                fwd[t] = true;
                st.push_back(t);
            }
    }
    std::vector<std::vector<std::uint32_t>> rev(N);
    for (std::uint32_t s = 0; s < N; ++s)
        for (auto& [l, t] : n.out[s]) rev[t].push_back(s);
    for (std::uint32_t s = 0; s < N; ++s)
        if (n.accepting[s]) {
            bwd[s] = true;
            st.push_back(s);
        }
    while (!st.empty()) {
        auto s = st.back();
        st.pop_back();
        for (auto p : rev[s])
            if (!bwd[p]) {
                bwd[p] = true;
                st.push_back(p);
            }
    }
    Nfa r;
    r.alphabet = n.alphabet;
    std::vector<std::uint32_t> map(N, UINT32_MAX);
    for (std::uint32_t s = 0; s < N; ++s)
        if (fwd[s] && bwd[s]) map[s] = r.add_state(n.accepting[s]);
    for (std::uint32_t s = 0; s < N; ++s) {
        if (map[s] == UINT32_MAX) continue;
        for (auto& [l, t] : n.out[s])
            if (map[t] != UINT32_MAX && !r.has_edge(map[s], l, map[t])) r.out[map[s]].emplace_back(l, map[t]);
    }
    for (auto s : n.initial)
        if (map[s] != UINT32_MAX) r.initial.push_back(map[s]);
    if (r.num_states() == 0) r.initial.push_back(r.add_state(false));
    return r;
}

Expr nfa_to_expr(const Nfa& input)
{
    Nfa n = trim(input);
    const std::uint32_t N = static_cast<std::uint32_t>(n.num_states());
    const std::uint32_t S = N, F = N + 1;
    std::vector<std::map<std::uint32_t, Expr>> R(N + 2);
    std::vector<std::set<std::uint32_t>> preds(N + 2);
    auto add = [&](std::uint32_t p, std::uint32_t q, Expr e) {
        if (e.is_zero()) return;
        auto it = R[p].find(q);
        if (it == R[p].end()) {
            R[p].emplace(q, e);
            preds[q].insert(p);
        } else {
            it->second = mk_sum(it->second, e);
        }
    };
    for (auto i : n.initial) add(S, i, Expr::one());
    for (std::uint32_t s = 0; s < N; ++s) {
        for (auto& [l, t] : n.out[s]) add(s, t, l == kEps ? Expr::one() : Expr::sym(l));
        if (n.accepting[s]) add(s, F, Expr::one());
    }
    std::vector<bool> alive(N, true);
    for (std::uint32_t round = 0; round < N; ++round) {
        std::uint32_t best = UINT32_MAX;
        std::size_t best_cost = SIZE_MAX;
        for (std::uint32_t q = 0; q < N; ++q) {
            if (!alive[q]) continue;
            std::size_t in = preds[q].size() - preds[q].count(q);
            std::size_t outd = R[q].size() - R[q].count(q);
            std::size_t cost = in * outd;
            if (cost < best_cost) {
                best_cost = cost;
                best = q;
            }
        }
        std::uint32_t q = best;
        Expr loop = Expr::one();
        if (auto it = R[q].find(q); it != R[q].end()) loop = mk_star(it->second);
        std::vector<std::pair<std::uint32_t, Expr>> ins, outs;
        for (auto p : preds[q])
            if (p != q) ins.emplace_back(p, R[p].at(q));
        for (auto& [r, e] : R[q])
            if (r != q) outs.emplace_back(r, e);
        for (auto& [p, e] : ins) {
            R[p].erase(q);
            for (auto& [r, f] : outs) add(p, r, mk_prod(e, mk_prod(loop, f)));
        }
        for (auto& [r, f] : outs) preds[r].erase(q);
        R[q].clear();
        preds[q].clear();
        alive[q] = false;
    }
    auto it = R[S].find(F);
    return simplify(it == R[S].end() ? Expr::zero() : it->second);
}

// ---------------------------------------------------------------------------
// Equivalence

namespace {

struct UnionFind {
    std::vector<std::uint32_t> p;
    std::uint32_t make()
    {
        p.push_back(static_cast<std::uint32_t>(p.size()));
        return p.back();
    }
    std::uint32_t find(std::uint32_t x)
    {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { p[find(a)] = find(b); }
};

struct PairKeyHash {
    std::size_t operator()(std::uint64_t k) const noexcept { return std::hash<std::uint64_t>{}(k * 0x9e3779b97f4a7c15ull); }
};

// Breadth-first search on pairs of subset states for the first pair satisfying `bad`.
template <class Bad>
std::optional<Word> shortest_pair_witness(Subsets& A, Subsets& B, Bad bad)
{
    const auto& letters = A.letters;
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint32_t>, PairKeyHash> parent;
    auto key = [](std::uint32_t x, std::uint32_t y) { return (std::uint64_t(x) << 32) | y; };
    std::deque<std::pair<std::uint32_t, std::uint32_t>> q;
    auto s0 = std::make_pair(A.start(), B.start());
    parent.emplace(key(s0.first, s0.second), std::make_pair(UINT64_MAX, 0u));
    q.push_back(s0);
    while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop_front();
        if (bad(A.acc[x], B.acc[y])) {
            Word w;
            std::uint64_t k = key(x, y);
            while (true) {
                auto& pr = parent.at(k);
                if (pr.first == UINT64_MAX) break;
                w.push_back(letters[pr.second]);
                k = pr.first;
            }
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (std::size_t li = 0; li < letters.size(); ++li) {
            auto nx = A.step(x, li), ny = B.step(y, li);
            auto k = key(nx, ny);
            if (parent.count(k)) continue;
            parent.emplace(k, std::make_pair(key(x, y), static_cast<std::uint32_t>(li)));
            q.emplace_back(nx, ny);
        }
    }
    return std::nullopt;
}

}  // namespace

EquivResult nfa_equiv(const Nfa& a, const Nfa& b)
{
    auto letters = union_letters(a.alphabet, b.alphabet);
    Subsets A(a, letters), B(b, letters);
    UnionFind uf;
    std::vector<std::uint32_t> ufa, ufb;
    auto node = [&](std::vector<std::uint32_t>& tab, std::uint32_t s) {
        while (tab.size() <= s) tab.push_back(UINT32_MAX);
        if (tab[s] == UINT32_MAX) tab[s] = uf.make();
        return tab[s];
    };
    std::deque<std::pair<std::uint32_t, std::uint32_t>> todo;
    todo.emplace_back(A.start(), B.start());
    bool equal = true;
    while (!todo.empty()) {
        auto [x, y] = todo.front();
        todo.pop_front();
        auto nx = node(ufa, x), ny = node(ufb, y);
        if (uf.find(nx) == uf.find(ny)) continue;
        if (A.acc[x] != B.acc[y]) {
            equal = false;
            break;
        }
        uf.unite(nx, ny);
        for (std::size_t li = 0; li < letters.size(); ++li) todo.emplace_back(A.step(x, li), B.step(y, li));
    }
    EquivResult r;
    r.equal = equal;
    if (!equal) r.witness = shortest_pair_witness(A, B, [](bool p, bool q) { return p != q; });
    return r;
}

EquivResult nfa_leq(const Nfa& a, const Nfa& b)
{
    auto letters = union_letters(a.alphabet, b.alphabet);
    Subsets A(a, letters), B(b, letters);
    EquivResult r;
    r.witness = shortest_pair_witness(A, B, [](bool p, bool q) { return p && !q; });
    r.equal = !r.witness.has_value();
    return r;
}

EquivResult ka_equiv(Expr e, Expr f) { return nfa_equiv(expr_to_nfa(e), expr_to_nfa(f)); }
EquivResult ka_leq(Expr e, Expr f) { return nfa_leq(expr_to_nfa(e), expr_to_nfa(f)); }

// ---------------------------------------------------------------------------
// Constructions

Nfa nfa_union(const Nfa& a, const Nfa& b)
{
    Nfa r = a;
    auto off = static_cast<std::uint32_t>(a.num_states());
    for (std::size_t s = 0; s < b.num_states(); ++s) r.add_state(b.accepting[s]);
    for (std::size_t s = 0; s < b.num_states(); ++s)
        for (auto& [l, t] : b.out[s]) r.add_edge(static_cast<std::uint32_t>(s) + off, l, t + off);
    for (auto i : b.initial) r.initial.push_back(i + off);
    for (Symbol s : b.alphabet) r.add_letter(s);
    return r;
}

Nfa nfa_intersection(const Nfa& a, const Nfa& b)
{
    Nfa r;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> ids;
    std::deque<std::pair<std::uint32_t, std::uint32_t>> work;
    auto ca = [&](std::uint32_t s) { return eps_closure(a, {s}); };
    auto cb = [&](std::uint32_t s) { return eps_closure(b, {s}); };
    auto get = [&](std::uint32_t x, std::uint32_t y) {
        auto it = ids.find({x, y});
        if (it != ids.end()) return it->second;
        auto id = r.add_state(any_accepting(a, ca(x)) && any_accepting(b, cb(y)));
        ids.emplace(std::make_pair(x, y), id);
        work.emplace_back(x, y);
        return id;
    };
    for (auto x : a.initial)
        for (auto y : b.initial) r.initial.push_back(get(x, y));
    while (!work.empty()) {
        auto [x, y] = work.front();
        work.pop_front();
        auto from = ids.at({x, y});
        auto X = ca(x), Y = cb(y);
        for (auto xs : X)
            for (auto& [l, tx] : a.out[xs]) {
                if (l == kEps) continue;
                for (auto ys : Y)
                    for (auto& [m, ty] : b.out[ys])
                        if (m == l) {
                            auto to = get(tx, ty);
                            if (!r.has_edge(from, l, to)) r.add_edge(from, l, to);
                        }
            }
    }
    for (Symbol s : a.alphabet)
        if (std::find(b.alphabet.begin(), b.alphabet.end(), s) != b.alphabet.end()) r.add_letter(s);
    return r;
}

Nfa nfa_substitute(const Nfa& n, const std::vector<std::pair<Symbol, Nfa>>& images)
{
    Nfa r;
    for (std::size_t s = 0; s < n.num_states(); ++s) r.add_state(n.accepting[s]);
    r.initial = n.initial;
    auto image_of = [&](Symbol a) -> const Nfa* {
        for (auto& [s, m] : images)
            if (s == a) return &m;
        return nullptr;
    };
    for (Symbol a : n.alphabet) {
        if (const Nfa* m = image_of(a)) {
            for (Symbol b : m->alphabet) r.add_letter(b);
        } else {
            r.add_letter(a);
        }
    }
    for (std::uint32_t s = 0; s < n.num_states(); ++s)
        for (auto& [l, t] : n.out[s]) {
            const Nfa* m = l == kEps ? nullptr : image_of(l);
            if (!m) {
                r.add_edge(s, l, t);
                continue;
            }
            auto off = static_cast<std::uint32_t>(r.num_states());
            for (std::size_t q = 0; q < m->num_states(); ++q) r.add_state(false);
            for (std::uint32_t q = 0; q < m->num_states(); ++q) {
                for (auto& [ml, mt] : m->out[q]) r.add_edge(q + off, ml, mt + off);
                if (m->accepting[q]) r.add_edge(q + off, kEps, t);
            }
            for (auto i : m->initial) r.add_edge(s, kEps, i + off);
        }
    return r;
}

std::string to_dot(const Nfa& n)
{
    std::ostringstream os;
    os << "digraph nfa {\n  rankdir=LR;\n";
    for (std::size_t s = 0; s < n.num_states(); ++s)
        os << "  q" << s << " [shape=" << (n.accepting[s] ? "doublecircle" : "circle") << "];\n";
    for (auto i : n.initial) os << "  start" << i << " [shape=point];\n  start" << i << " -> q" << i << ";\n";
    for (std::size_t s = 0; s < n.num_states(); ++s)
        for (auto& [l, t] : n.out[s])
            os << "  q" << s << " -> q" << t << " [label=\"" << (l == kEps ? std::string("eps") : name_of(l)) << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace kahyp
