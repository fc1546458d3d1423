#include "kahyp/overlap.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "kahyp/automata.hpp"

namespace kahyp {

namespace {

Word slice(const Word& w, std::size_t a, std::size_t b)
{
    return Word(w.begin() + static_cast<long>(a), w.begin() + static_cast<long>(b));
}

bool match_at(const Word& z, std::size_t p, const Word& f, std::size_t a, std::size_t b)
{
    return std::equal(f.begin() + static_cast<long>(a), f.begin() + static_cast<long>(b), z.begin() + static_cast<long>(p));
}

std::string trim_ws(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

}  // namespace

std::vector<Overlap> overlaps(const Word& u, const Word& v)
{
    std::vector<Overlap> out;
    const std::size_t nu = u.size(), nv = v.size();
    // suffix of u against prefix of v: x = t = 1
    for (std::size_t i = 0; i < nu; ++i) {
        std::size_t l = nu - i;
        if (l <= nv && match_at(u, i, v, 0, l)) out.push_back({{}, slice(v, l, nv), slice(u, 0, i), {}});
    }
    // suffix of v against prefix of u: y = s = 1
    for (std::size_t j = 0; j < nv; ++j) {
        std::size_t l = nv - j;
        if (l <= nu && match_at(v, j, u, 0, l)) out.push_back({slice(v, 0, j), {}, {}, slice(u, l, nu)});
    }
    // v strictly inside u
    for (std::size_t p = 1; p + nv < nu; ++p)
        if (match_at(u, p, v, 0, nv)) out.push_back({{}, {}, slice(u, 0, p), slice(u, p + nv, nu)});
    // u strictly inside v
    for (std::size_t p = 1; p + nu < nv; ++p)
        if (match_at(v, p, u, 0, nu)) out.push_back({slice(v, 0, p), slice(v, p + nu, nv), {}, {}});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string print_overlap(const Overlap& o)
{
    return "<" + print_word(o.x) + "," + print_word(o.y) + "," + print_word(o.s) + "," + print_word(o.t) + ">";
}

Bound parse_bound(std::string_view text, const std::vector<std::string>& names)
{
    Bound b;
    b.text = trim_ws(text);
    auto index = [&](const std::string& n) {
        auto it = std::find(names.begin(), names.end(), n);
        if (it == names.end()) throw TableError("unknown set '" + n + "' in bound '" + b.text + "'");
        return static_cast<int>(it - names.begin());
    };
    std::string s = b.text;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t semi = s.find(';', pos);
        if (semi == std::string::npos) semi = s.size();
        std::string tok = trim_ws(std::string_view(s).substr(pos, semi - pos));
        pos = semi + 1;
        if (tok.empty()) throw TableError("empty factor in bound '" + b.text + "'");
        if (tok == "id") continue;
        BoundFactor f;
        f.text = tok;
        if (tok.back() == '=' || tok.back() == '*') {
            f.kind = tok.back() == '=' ? BoundFactor::OrId : BoundFactor::Closure;
            tok.pop_back();
        }
        if (tok.size() > 3 && tok.rfind("(<", 0) == 0 && tok.back() == ')') {
            int k = index(tok.substr(2, tok.size() - 3));
            for (int r = 0; r < k; ++r) f.rows.push_back(r);
            if (f.rows.empty()) throw TableError("empty group '" + f.text + "'");
        } else {
            f.rows.push_back(index(tok));
        }
        b.factors.push_back(std::move(f));
    }
    return b;
}

namespace {

HypothesisSet group_set(const std::vector<int>& rows, const std::vector<HypothesisSet>& fns)
{
    std::vector<HypothesisSet> parts;
    for (int r : rows) parts.push_back(fns.at(static_cast<std::size_t>(r)));
    return set_union("g", parts);
}

// Goal-directed membership in g(K): level i asks for membership in factors i.. applied to K.
class BoundMembership {
public:
    BoundMembership(const Bound& g, const std::vector<HypothesisSet>& fns, const std::vector<Symbol>& letters,
                    std::size_t window, int star_depth)
    {
        std::map<std::vector<int>, std::shared_ptr<RuleIndex>> cache;
        for (auto& f : g.factors) {
            auto& idx = cache[f.rows];
            if (!idx) idx = std::make_shared<RuleIndex>(group_set(f.rows, fns), letters, window);
            if (idx->truncated()) truncated_ = true;
            int reps = f.kind == BoundFactor::Closure ? star_depth : 1;
            for (int r = 0; r < reps; ++r) chain_.push_back({f.kind != BoundFactor::Step, idx});
        }
        memo_.resize(chain_.size());
    }

    bool truncated() const { return truncated_; }

    bool member(const Nfa& K, const Word& w)
    {
        K_ = &K;
        for (auto& m : memo_) m.clear();
        return mem(0, w);
    }

private:
    struct Level {
        bool or_id;
        std::shared_ptr<RuleIndex> idx;
    };

    bool mem(std::size_t level, const Word& w)
    {
        if (level == chain_.size()) return nfa_accepts(*K_, w);
        auto& memo = memo_[level];
        if (auto it = memo.find(w); it != memo.end()) return it->second;
        bool r = chain_[level].or_id && mem(level + 1, w);
        if (!r) {
            std::vector<std::vector<Word>> rules;
            chain_[level].idx->rules_into(w, rules);
            for (auto& ps : rules) {
                if (std::all_of(ps.begin(), ps.end(), [&](const Word& p) { return mem(level + 1, p); })) {
                    r = true;
                    break;
                }
            }
        }
        memo.emplace(w, r);
        return r;
    }

    std::vector<Level> chain_;
    std::vector<std::unordered_map<Word, bool, WordHash>> memo_;
    const Nfa* K_ = nullptr;
    bool truncated_ = false;
};

std::vector<Hypothesis> word_side(const HypothesisSet& H, int k, const std::vector<Symbol>& letters, bool rhs)
{
    auto hs = normal_form(H, k, letters);
    for (auto& h : hs)
        if (!as_word(rhs ? h.rhs : h.lhs))
            throw TableError("set " + H.name + ": " + (rhs ? "right" : "left") + "-hand side of " + h.str() +
                             " is not a word");
    return hs;
}

}  // namespace

CellReport check_cell(const HypothesisSet& Hi, const HypothesisSet& Hj, const Bound& g,
                      const std::vector<HypothesisSet>& fns, const std::vector<Symbol>& letters, const CheckParams& p)
{
    CellReport rep;
    rep.ok = true;
    rep.obligation_text = g.text;
    const std::size_t window = p.m + p.slack;
    auto his = word_side(Hi, p.k, letters, true);
    auto hjs = word_side(Hj, p.k, letters, false);
    BoundMembership mem(g, fns, letters, window, p.star_depth);
    rep.truncated = mem.truncated();

    for (auto& hi : his) {
        Word u = *as_word(hi.rhs);
        auto emax = max_word_length(hi.lhs);
        for (auto& hj : hjs) {
            Word v = *as_word(hj.lhs);
            auto ovs = overlaps(u, v);
            if (ovs.empty()) continue;
            ++rep.pairs;
            for (auto& o : ovs) {
                std::size_t ctx = o.x.size() + o.y.size();
                if (ctx > p.m) {
                    rep.truncated = true;
                    continue;
                }
                std::size_t budget = p.m - ctx;
                if (!emax || *emax > static_cast<long>(budget)) rep.truncated = true;
                Nfa K = expr_to_nfa(prod_of({word_expr(o.s), hj.rhs, word_expr(o.t)}));
                for (const Word& e0 : lang_upto(hi.lhs, budget)) {
                    Word w = concat(o.x, e0, o.y);
                    ++rep.obligations;
                    if (!mem.member(K, w)) {
                        rep.ok = false;
                        rep.witness = w;
                        std::ostringstream os;
                        os << "pair (" << hi.str() << ", " << hj.str() << "), overlap " << print_overlap(o) << ": "
                           << print_word(w) << " not in " << g.text << "(" << print_word(o.s) << ";" << print(hj.rhs)
                           << ";" << print_word(o.t) << ")";
                        rep.failure = os.str();
                        return rep;
                    }
                }
            }
        }
    }
    return rep;
}

CellReport check_no_overlap(const HypothesisSet& Hi, const HypothesisSet& Hj, const std::vector<Symbol>& letters, int k)
{
    CellReport rep;
    rep.ok = true;
    rep.obligation_text = ".";
    auto his = word_side(Hi, k, letters, true);
    auto hjs = word_side(Hj, k, letters, false);
    for (auto& hi : his)
        for (auto& hj : hjs) {
            Word u = *as_word(hi.rhs), v = *as_word(hj.lhs);
            auto ovs = overlaps(u, v);
            if (ovs.empty()) continue;
            rep.ok = false;
            rep.pairs = 1;
            rep.witness = concat(ovs[0].x, u, ovs[0].y);
            rep.failure = "overlap " + print_overlap(ovs[0]) + " between " + hi.str() + " and " + hj.str();
            return rep;
        }
    return rep;
}

BoundedLang apply_bound(const Bound& g, const std::vector<HypothesisSet>& fns, const BoundedLang& L, std::size_t m,
                        int star_depth, bool closed_window)
{
    BoundedLang cur = L;
    for (auto it = g.factors.rbegin(); it != g.factors.rend(); ++it) {
        HypothesisSet H = group_set(it->rows, fns);
        int reps = it->kind == BoundFactor::Closure ? star_depth : 1;
        for (int r = 0; r < reps; ++r) {
            BoundedLang next = step(H, cur, m);
            if (it->kind != BoundFactor::Step)
                for (auto& w : cur.words)
                    if (w.size() <= m) next.words.insert(w);
            next.complete = closed_window && cur.complete;
            next.exact = cur.exact && next.exact;
            cur = std::move(next);
        }
    }
    return cur;
}

}  // namespace kahyp
