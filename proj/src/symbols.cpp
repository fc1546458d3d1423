#include "kahyp/syntax.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>

namespace kahyp {

// ---------------------------------------------------------------------------
// Formulas

FormulaPtr Formula::mk_var(std::string v)
{
    return std::make_shared<const Formula>(Formula{Op::Var, std::move(v), nullptr, nullptr});
}
FormulaPtr Formula::mk_true() { return std::make_shared<const Formula>(Formula{Op::True, {}, nullptr, nullptr}); }
FormulaPtr Formula::mk_false() { return std::make_shared<const Formula>(Formula{Op::False, {}, nullptr, nullptr}); }
FormulaPtr Formula::mk_not(FormulaPtr a)
{
    return std::make_shared<const Formula>(Formula{Op::Not, {}, std::move(a), nullptr});
}
FormulaPtr Formula::mk_and(FormulaPtr a, FormulaPtr b)
{
    return std::make_shared<const Formula>(Formula{Op::And, {}, std::move(a), std::move(b)});
}
FormulaPtr Formula::mk_or(FormulaPtr a, FormulaPtr b)
{
    return std::make_shared<const Formula>(Formula{Op::Or, {}, std::move(a), std::move(b)});
}

namespace {

int fprec(const Formula& f)
{
    switch (f.op) {
    case Formula::Op::Or: return 0;
    case Formula::Op::And: return 1;
    case Formula::Op::Not: return 2;
    default: return 3;
    }
}

void print_f(const Formula& f, std::string& out)
{
    auto sub = [&](const Formula& c, int need) {
        if (fprec(c) < need) {
            out += '(';
            print_f(c, out);
            out += ')';
        } else {
            print_f(c, out);
        }
    };
    switch (f.op) {
    case Formula::Op::Var: out += f.var; break;
    case Formula::Op::True: out += "tt"; break;
    case Formula::Op::False: out += "ff"; break;
    case Formula::Op::Not: out += '!'; sub(*f.l, 2); break;
    // left operand of a binary connective is bracketed at equal precedence, matching the
    // parser's right fold
    case Formula::Op::And: sub(*f.l, 2); out += '&'; sub(*f.r, 1); break;
    case Formula::Op::Or: sub(*f.l, 1); out += '|'; sub(*f.r, 0); break;
    }
}

}  // namespace

std::string print_formula(const Formula& f)
{
    std::string s;
    print_f(f, s);
    return s;
}

bool eval_formula(const Formula& f, const std::vector<std::string>& tests, std::uint64_t mask)
{
    switch (f.op) {
    case Formula::Op::Var: {
        auto it = std::find(tests.begin(), tests.end(), f.var);
        if (it == tests.end()) return false;
        return (mask >> (it - tests.begin())) & 1u;
    }
    case Formula::Op::True: return true;
    case Formula::Op::False: return false;
    case Formula::Op::Not: return !eval_formula(*f.l, tests, mask);
    case Formula::Op::And: return eval_formula(*f.l, tests, mask) && eval_formula(*f.r, tests, mask);
    case Formula::Op::Or: return eval_formula(*f.l, tests, mask) || eval_formula(*f.r, tests, mask);
    }
    return false;
}

bool formula_has_negation(const Formula& f)
{
    switch (f.op) {
    case Formula::Op::Not: return true;
    case Formula::Op::And:
    case Formula::Op::Or: return formula_has_negation(*f.l) || formula_has_negation(*f.r);
    default: return false;
    }
}

void formula_vars(const Formula& f, std::set<std::string>& out)
{
    if (f.op == Formula::Op::Var) out.insert(f.var);
    if (f.l) formula_vars(*f.l, out);
    if (f.r) formula_vars(*f.r, out);
}

// ---------------------------------------------------------------------------
// Interner

namespace {

struct SymbolTable {
    std::shared_mutex mu;
    std::vector<std::unique_ptr<SymbolInfo>> syms;
    std::unordered_map<std::string, std::uint32_t> by_name;

    Symbol intern(SymbolInfo si)
    {
        {
            std::shared_lock lk(mu);
            auto it = by_name.find(si.name);
            if (it != by_name.end()) return Symbol{it->second};
        }
        std::unique_lock lk(mu);
        auto it = by_name.find(si.name);
        if (it != by_name.end()) return Symbol{it->second};
        auto id = static_cast<std::uint32_t>(syms.size());
        by_name.emplace(si.name, id);
        syms.push_back(std::make_unique<SymbolInfo>(std::move(si)));
        return Symbol{id};
    }

    const SymbolInfo& get(Symbol s)
    {
        std::shared_lock lk(mu);
        if (s.id >= syms.size()) throw std::out_of_range("kahyp: unknown symbol id");
        return *syms[s.id];
    }
};

SymbolTable& table()
{
    static SymbolTable t;
    return t;
}

}  // namespace

const SymbolInfo& info(Symbol s) { return table().get(s); }
const std::string& name_of(Symbol s) { return info(s).name; }

Symbol sym_action(std::string_view name)
{
    SymbolInfo si{std::string(name), SymKind::Action, false, nullptr, {}, std::string(name)};
    return table().intern(std::move(si));
}

Symbol sym_test(FormulaPtr f)
{
    SymbolInfo si{"[" + print_formula(*f) + "]", SymKind::Test, false, f, {}, {}};
    return table().intern(std::move(si));
}

Symbol sym_atom(std::vector<std::string> tests)
{
    std::sort(tests.begin(), tests.end());
    tests.erase(std::unique(tests.begin(), tests.end()), tests.end());
    std::string n = "at{";
    for (std::size_t i = 0; i < tests.size(); ++i) {
        if (i) n += ',';
        n += tests[i];
    }
    n += '}';
    SymbolInfo si{n, SymKind::Atom, false, nullptr, std::move(tests), {}};
    return table().intern(std::move(si));
}

Symbol sym_netatom(std::string_view v)
{
    SymbolInfo si{"@" + std::string(v), SymKind::NetAtom, false, nullptr, {}, std::string(v)};
    return table().intern(std::move(si));
}

Symbol sym_assign(std::string_view v)
{
    SymbolInfo si{":=" + std::string(v), SymKind::Assign, false, nullptr, {}, std::string(v)};
    return table().intern(std::move(si));
}

Symbol sym_dup() { return table().intern(SymbolInfo{"dup", SymKind::Dup, false, nullptr, {}, {}}); }
Symbol sym_full() { return table().intern(SymbolInfo{"full", SymKind::Full, false, nullptr, {}, {}}); }

Symbol tag(Symbol s)
{
    SymbolInfo si = info(s);
    if (si.tagged) {
        si.name.pop_back();
        si.tagged = false;
    } else {
        si.name += '\'';
        si.tagged = true;
    }
    return table().intern(std::move(si));
}

Symbol parse_symbol(std::string_view lexeme)
{
    std::vector<Symbol> seen;
    Expr e = parse_expr_open(lexeme, &seen);
    if (e.op() != Op::Sym) throw ParseError(0, "not a single symbol: " + std::string(lexeme));
    return e.symbol();
}

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<Symbol> syms, std::string theory_tag) : theory(std::move(theory_tag))
{
    for (Symbol s : syms) add(s);
}

bool Alphabet::add(Symbol s)
{
    if (index_.count(s.id)) return false;
    index_.emplace(s.id, symbols.size());
    symbols.push_back(s);
    return true;
}

bool Alphabet::contains(Symbol s) const { return index_.count(s.id) != 0; }

std::size_t Alphabet::rank(Symbol s) const
{
    auto it = index_.find(s.id);
    return it == index_.end() ? npos : it->second;
}

bool Alphabet::admits(Symbol s) const
{
    if (open || contains(s)) return true;
    const SymbolInfo& si = info(s);
    if (si.kind == SymKind::Test && !si.tagged) {
        std::set<std::string> vars;
        formula_vars(*si.formula, vars);
        return std::all_of(vars.begin(), vars.end(), [&](const std::string& v) {
            return std::find(tests.begin(), tests.end(), v) != tests.end();
        });
    }
    return false;
}

Alphabet merge(const Alphabet& a, const Alphabet& b)
{
    Alphabet r = a;
    for (Symbol s : b.symbols) r.add(s);
    for (const auto& t : b.tests)
        if (std::find(r.tests.begin(), r.tests.end(), t) == r.tests.end()) r.tests.push_back(t);
    r.open = a.open || b.open;
    return r;
}

// ---------------------------------------------------------------------------
// Words

std::size_t WordHash::operator()(const Word& w) const noexcept
{
    std::size_t h = 1469598103934665603ull;
    for (Symbol s : w) h = (h ^ s.id) * 1099511628211ull;
    return h ^ w.size();
}

Word concat(const Word& a, const Word& b)
{
    Word r;
    r.reserve(a.size() + b.size());
    r.insert(r.end(), a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Word concat(const Word& a, const Word& b, const Word& c)
{
    Word r;
    r.reserve(a.size() + b.size() + c.size());
    r.insert(r.end(), a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    r.insert(r.end(), c.begin(), c.end());
    return r;
}

std::string print_word(const Word& w)
{
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ';';
        s += name_of(w[i]);
    }
    return s;
}

bool shortlex_less(const Word& a, const Word& b, const Alphabet& alpha)
{
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        std::size_t ra = alpha.rank(a[i]), rb = alpha.rank(b[i]);
        if (ra != rb) return ra < rb;
        return name_of(a[i]) < name_of(b[i]);
    }
    return false;
}

std::vector<Word> sorted_shortlex(const WordSet& s, const Alphabet& alpha)
{
    std::vector<Word> v(s.begin(), s.end());
    std::sort(v.begin(), v.end(), [&](const Word& x, const Word& y) { return shortlex_less(x, y, alpha); });
    return v;
}

std::vector<Word> all_words(const std::vector<Symbol>& letters, std::size_t maxlen)
{
    std::vector<Word> out{Word{}};
    std::size_t lo = 0;
    for (std::size_t len = 1; len <= maxlen && !letters.empty(); ++len) {
        std::size_t hi = out.size();
        for (std::size_t i = lo; i < hi; ++i)
            for (Symbol a : letters) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        lo = hi;
    }
    return out;
}

Word converse_word(const Word& w)
{
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(tag(*it));
    return r;
}

}  // namespace kahyp
