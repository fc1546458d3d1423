#include <algorithm>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

#include "kahyp/automata.hpp"
#include "theory_impl.hpp"

namespace kahyp {

namespace {

// name, text
const std::vector<std::pair<std::string, std::string>>& tables()
{
    static const std::vector<std::pair<std::string, std::string>> t = {
        {"kabo", R"(# KAT with a Boolean algebra of tests, without the law ab = 0 for distinct atoms.
name: kabo
theory: kabo
param: tests = o1,o2
param: actions = a
order: atm1 < ctr < atm2
set atm1 = atm1
set ctr = ctr
set atm2 = atm2
cell atm1 ctr = .
cell atm1 atm2 = .
cell ctr atm2 = ctr;ctr ; alt=2
)"},
        {"katf", R"(# KAT with a full element. t: w <= full, f: w <= w full w.
name: katf
theory: katf
param: tests = o
param: actions = a
order: 0 < 1 < t < f < 2
set 0 = atm0
set 1 = atm1
set t = top
set f = fullsplit
set 2 = atm2
cell 0 1 = ..
cell 0 t = ..
cell 0 f = ..
cell 0 2 = ..
cell 1 t = t ; alt=2
cell 1 f = f;1;1 ; alt=2
cell 1 2 = .
cell t f = f;t;t ; alt=2
cell t 2 = .
cell f 2 = 2;f;1 ; alt=2
)"},
        {"katc", R"(# KAT with converse over the duplicated alphabet. c: w <= w w' w.
name: katc
theory: katc
param: tests = o
param: actions = a
order: 0 < 1 < i < c < 2
set 0 = atm0
set 1 = atm1c
set i = inv
set c = conv
set 2 = atm2
cell 0 1 = ..
cell 0 i = ..
cell 0 c = ..
cell 0 2 = ..
cell 1 i = .
cell 1 c = c;1;1;1 ; alt=2
cell 1 2 = .
cell i c = c;i;i;i ; alt=2
cell i 2 = .
cell c 2 = 2;c;i=;1;1 ; alt=2
)"},
        {"kapt", R"(# KA with positive tests, atoms are non-empty sets of tests.
# 1: a|b <= ab   2: ab <= a|b   3: a|b <= a   4: a <= 1
name: kapt
theory: kapt
param: tests = a,b
order: 1 < 2 < 3 < 4
set 1 = 1
set 2 = 2
set 3 = 3
set 4 = 4
cell 1 2 = ...
cell 1 3 = ...
cell 1 4 = 3 ; alt=1
cell 2 3 = 3;3;2 ; alt=1
cell 2 4 = 4;4 ; alt=1
cell 3 4 = ...
)"},
        {"kaptt", R"(# Bounded variant: the empty atom is allowed and 5: 1 <= {} is added.
name: kaptt
theory: kapt-bounded
param: tests = a,b
order: 1 < 2 < 3 < 4 < 5
set 1 = 1
set 2 = 2
set 3 = 3
set 4 = 4
set 5 = 5
cell 1 2 = ...
cell 1 3 = ...
cell 1 4 = 3 ; alt=1
cell 1 5 = 1;1 ; alt=2
cell 2 3 = 3;3;2 ; alt=1
cell 2 4 = 4;4 ; alt=1
cell 2 5 = .
cell 3 4 = ...
cell 3 5 = .
cell 4 5 = .
)"},
        {"kapt-order", R"(# The ordering the KAPT pipeline is certified with: 3 first, then 1, then 2 and 4 together.
name: kapt-order
theory: kapt
param: tests = a,b
order: 3 < 1 < 24
set 3 = 3
set 1 = 1
set 24 = 24
cell 3 1 = ...
cell 3 24 = ...
cell 1 24 = 24=;1=;3= ; alt=2
)"},
        {"kaptt-order", R"(# Same for the bounded variant, with 5 last.
name: kaptt-order
theory: kapt-bounded
param: tests = a,b
order: 3 < 1 < 24 < 5
set 3 = 3
set 1 = 1
set 24 = 24
set 5 = 5
cell 3 1 = ...
cell 3 24 = ...
cell 3 5 = .
cell 1 24 = 24=;1=;3= ; alt=2
cell 1 5 = 1;1 ; alt=2
cell 24 5 = .
)"},
        {"netkat", R"(# Reduced NetKAT, rows 1, 2, 3 merged.
# 0: ab, a dup b, p_a b <= 0 (a != b)   123: a p_a <= 1, pq <= q, a <= 1
# 4: p_a <= p_a a   5: q <= pq   6: a <= a p_a   7: 1 <= sum a
name: netkat
theory: netkat
param: values = v,w
order: 0 < 123 < 4 < 5 < 6 < 7
set 0 = 0
set 123 = 123
set 4 = 4
set 5 = 5
set 6 = 6
set 7 = 7
cell 0 123 = ..
cell 0 4 = ..
cell 0 5 = ..
cell 0 6 = ..
cell 0 7 = ..
cell 123 4 = ...
cell 123 5 = ...
cell 123 6 = .
cell 123 7 = .
cell 4 5 = ...
cell 4 6 = 5;4 ; alt=2
cell 4 7 = 4;4 ; alt=2
cell 5 6 = .
cell 5 7 = 5;4 ; alt=2
cell 6 7 = 6;6;4;4;123 ; alt=2
)"},
    };
    return t;
}

std::string key_of(const std::string& text, const std::vector<Symbol>& letters, const CheckParams& p)
{
    std::string k = text + "\n";
    for (Symbol s : letters) k += name_of(s) + " ";
    k += "|" + std::to_string(p.m) + "," + std::to_string(p.slack) + "," + std::to_string(p.k) + "," +
         std::to_string(p.star_depth);
    return k;
}

}  // namespace

const char* to_string(TheoryId t)
{
    switch (t) {
    case TheoryId::KA: return "ka";
    case TheoryId::KAT: return "kat";
    case TheoryId::KAO: return "kao";
    case TheoryId::KABO: return "kabo";
    case TheoryId::KATF: return "katf";
    case TheoryId::KATC: return "katc";
    case TheoryId::KAPT: return "kapt";
    case TheoryId::KAPTBounded: return "kapt-bounded";
    case TheoryId::NetKAT: return "netkat";
    }
    return "?";
}

std::optional<TheoryId> parse_theory_id(std::string_view s)
{
    for (auto t : {TheoryId::KA, TheoryId::KAT, TheoryId::KAO, TheoryId::KABO, TheoryId::KATF, TheoryId::KATC,
                   TheoryId::KAPT, TheoryId::KAPTBounded, TheoryId::NetKAT})
        if (s == to_string(t)) return t;
    if (s == "kaptt") return TheoryId::KAPTBounded;
    return std::nullopt;
}

namespace detail {

HypothesisSet hset(const std::string& name, std::vector<Hypothesis> hs)
{
    HypothesisSet h;
    h.name = name;
    h.concrete = std::move(hs);
    return h;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

TableReport certify(const std::string& text, const std::map<std::string, HypothesisSet>& sets,
                    const std::vector<Symbol>& letters, const CheckParams& p)
{
    static std::mutex mu;
    static std::map<std::string, TableReport> cache;
    std::string key = key_of(text, letters, p);
    {
        std::lock_guard<std::mutex> lk(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    TableSpec spec = parse_table_spec(text);
    CommTable t = resolve_table(
        spec,
        [&](const std::string& n) -> std::optional<HypothesisSet> {
            auto it = sets.find(n);
            if (it == sets.end()) return std::nullopt;
            return it->second;
        },
        letters);
    TableReport r = check_table(t, p);
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(key, r);
    return r;
}

Certificate require_certificate(const TableReport& r)
{
    if (r.ok && r.certificate) return *r.certificate;
    std::string why = r.errors.empty() ? "" : r.errors.front();
    if (why.empty())
        for (auto& c : r.cells)
            if (!c.ok) {
                why = "cell (" + r.names[static_cast<std::size_t>(c.i)] + ", " +
                      r.names[static_cast<std::size_t>(c.j)] + "): " + c.failure;
                break;
            }
    if (why.empty())
        for (auto& c : r.columns)
            if (!c.ok) {
                why = "column " + r.names[static_cast<std::size_t>(c.j)] + ": " + c.failure;
                break;
            }
    throw TheoryError("table " + r.table + " does not check: " + why);
}

}  // namespace detail

std::vector<std::string> builtin_table_names()
{
    std::vector<std::string> out;
    for (auto& [n, t] : tables()) out.push_back(n);
    return out;
}

const std::string& builtin_table_text(const std::string& name)
{
    for (auto& [n, t] : tables())
        if (n == name) return t;
    throw TableError("no builtin table '" + name + "'");
}

TableSpec read_table_spec(const std::string& path_or_name)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    if (fs::is_regular_file(path_or_name, ec)) {
        std::ifstream in(path_or_name);
        if (!in) throw TableError("cannot read " + path_or_name);
        std::stringstream ss;
        ss << in.rdbuf();
        fs::path p(path_or_name);
        std::string dir = p.has_parent_path() ? p.parent_path().string() : ".";
        return parse_table_spec(ss.str(), p.filename().string(), dir);
    }
    for (auto& [n, t] : tables())
        if (n == path_or_name) return parse_table_spec(t, n, ".");
    throw TableError("no such table file or builtin table: " + path_or_name);
}

namespace {

std::shared_ptr<Theory::Impl> build(TheoryConfig cfg, bool with_pipeline)
{
    auto t = std::make_shared<Theory::Impl>();
    t->cfg = std::move(cfg);
    auto& c = t->cfg;
    if (c.tests.size() > c.max_tests)
        throw TheoryError(std::to_string(c.tests.size()) + " tests exceed the limit of " +
                          std::to_string(c.max_tests));
    if (c.values.size() > c.max_values)
        throw TheoryError(std::to_string(c.values.size()) + " values exceed the limit of " +
                          std::to_string(c.max_values));
    switch (c.id) {
    case TheoryId::KA: {
        t->input.open = true;
        t->input.theory = "ka";
        for (auto& a : c.actions) {
            t->input.add(sym_action(a));
            t->letters.push_back(sym_action(a));
        }
        t->hyps = detail::hset("empty", {});
        if (with_pipeline) t->pipeline = identity_reduction(t->hyps, t->hyps, t->letters, "no hypotheses");
        break;
    }
    case TheoryId::KAT:
    case TheoryId::KAO:
    case TheoryId::KABO:
    case TheoryId::KATF:
    case TheoryId::KATC: detail::build_kat_family(*t, with_pipeline); break;
    case TheoryId::KAPT:
    case TheoryId::KAPTBounded: detail::build_kapt(*t, with_pipeline); break;
    case TheoryId::NetKAT: detail::build_netkat(*t, with_pipeline); break;
    }
    return t;
}

}  // namespace

Theory::Theory(TheoryConfig cfg) : impl_(build(std::move(cfg), true)) {}

const TheoryConfig& Theory::config() const { return impl_->cfg; }
TheoryId Theory::id() const { return impl_->cfg.id; }
const Alphabet& Theory::input_alphabet() const { return impl_->input; }
const std::vector<Symbol>& Theory::letters() const { return impl_->letters; }
Expr Theory::parse(std::string_view text) const { return parse_expr(text, impl_->input); }
Expr Theory::normalize(Expr e) const { return impl_->normalize(e); }
const HypothesisSet& Theory::hypotheses() const { return impl_->hyps; }
bool Theory::decidable() const { return impl_->pipeline.has_value(); }

const Reduction& Theory::pipeline() const
{
    if (!impl_->pipeline)
        throw TheoryError(std::string(to_string(id())) + " only supports table verification");
    return *impl_->pipeline;
}

std::optional<HypothesisSet> Theory::set(const std::string& name) const
{
    auto it = impl_->sets.find(name);
    if (it == impl_->sets.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> Theory::set_names() const
{
    std::vector<std::string> out;
    for (auto& [n, s] : impl_->sets) out.push_back(n);
    return out;
}

const std::vector<TableReport>& Theory::certificates() const { return impl_->certs; }

Verdict Theory::decide(Expr e, Expr f) const
{
    const Reduction& r = pipeline();
    Expr ne = normalize(e), nf = normalize(f);
    Nfa a = r.apply(expr_to_nfa(ne)), b = r.apply(expr_to_nfa(nf));
    auto eq = nfa_equiv(a, b);
    Verdict v;
    v.equal = eq.equal;
    v.explain = impl_->explain_head;
    v.explain.insert(v.explain.end(), r.provenance.begin(), r.provenance.end());
    v.explain.push_back("ka_equiv on the reduced automata (" + std::to_string(a.num_states()) + " and " +
                        std::to_string(b.num_states()) + " states)");
    if (eq.equal) return v;
    v.witness = eq.witness;
    if (impl_->guarded) {
        // a shortest guarded string in the symmetric difference
        Alphabet order(letters());
        std::optional<Word> best;
        for (auto* p : {&a, &b}) {
            auto res = nfa_leq(nfa_intersection(*p, *impl_->guarded), p == &a ? b : a);
            if (!res.equal && (!best || shortlex_less(*res.witness, *best, order))) best = res.witness;
        }
        if (best) {
            v.witness = best;
            v.guarded = as_guarded_string(*best, impl_->cfg.tests);
        }
    }
    v.witness_text = v.guarded ? print_guarded_string(*v.guarded, impl_->cfg.tests) : print_word(*v.witness);
    return v;
}

Verdict Theory::decide_leq(Expr e, Expr f) const { return decide(mk_sum(e, f), f); }

Verdict decide_kat(Expr e, Expr f, const std::vector<std::string>& tests, const std::vector<std::string>& actions)
{
    return Theory({TheoryId::KAT, actions, tests, {}, 8, 8, {}}).decide(e, f);
}

Verdict decide_kao(Expr e, Expr f, const std::vector<std::string>& tests, const std::vector<std::string>& actions)
{
    return Theory({TheoryId::KAO, actions, tests, {}, 8, 8, {}}).decide(e, f);
}

Verdict decide_kabo(Expr e, Expr f, const std::vector<std::string>& tests, const std::vector<std::string>& actions)
{
    return Theory({TheoryId::KABO, actions, tests, {}, 8, 8, {}}).decide(e, f);
}

Verdict decide_kapt(Expr e, Expr f, const std::vector<std::string>& tests, const std::vector<std::string>& actions,
                    bool bounded)
{
    return Theory({bounded ? TheoryId::KAPTBounded : TheoryId::KAPT, actions, tests, {}, 8, 8, {}}).decide(e, f);
}

Verdict decide_netkat(Expr e, Expr f, const std::vector<std::string>& values)
{
    return Theory({TheoryId::NetKAT, {}, {}, values, 8, 8, {}}).decide(e, f);
}

Word involute(const Word& w, const std::vector<Symbol>& alphabet)
{
    Word out = converse_word(w);
    if (!alphabet.empty())
        for (Symbol s : out)
            if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end())
                throw TheoryError("involute: " + name_of(tag(s)) + " has no partner " + name_of(s) +
                                  " in the alphabet");
    return out;
}

CommTable load_table(const TableSpec& spec)
{
    auto id = parse_theory_id(spec.theory);
    if (!id) throw TableError(spec.name + ": unknown theory '" + spec.theory + "'");
    TheoryConfig cfg;
    cfg.id = *id;
    auto param = [&](const char* k, const char* dflt) {
        auto it = spec.params.find(k);
        return detail::split_list(it == spec.params.end() ? dflt : it->second);
    };
    cfg.tests = param("tests", "o");
    cfg.actions = param("actions", "");
    cfg.values = param("values", "v,w");
    std::shared_ptr<Theory::Impl> t;
    try {
        t = build(cfg, false);
    } catch (const TheoryError& e) {
        throw TableError(spec.name + ": " + e.what());
    }
    return resolve_table(
        spec,
        [&](const std::string& n) -> std::optional<HypothesisSet> {
            auto it = t->sets.find(n);
            if (it == t->sets.end()) return std::nullopt;
            return it->second;
        },
        t->letters);
}

}  // namespace kahyp
