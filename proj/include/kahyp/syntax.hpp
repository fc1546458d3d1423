#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kahyp {

// ---------------------------------------------------------------------------
// Boolean formulas carried by test symbols.

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Op : std::uint8_t { Var, True, False, Not, And, Or };
    Op op;
    std::string var;
    FormulaPtr l, r;

    static FormulaPtr mk_var(std::string v);
    static FormulaPtr mk_true();
    static FormulaPtr mk_false();
    static FormulaPtr mk_not(FormulaPtr a);
    static FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
    static FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
};

std::string print_formula(const Formula& f);
// Evaluates under the valuation that makes exactly the tests in `mask` true.
bool eval_formula(const Formula& f, const std::vector<std::string>& tests, std::uint64_t mask);
bool formula_has_negation(const Formula& f);
void formula_vars(const Formula& f, std::set<std::string>& out);

// ---------------------------------------------------------------------------
// Symbols

enum class SymKind : std::uint8_t { Action, Test, Atom, NetAtom, Assign, Dup, Full };

struct Symbol {
    std::uint32_t id = UINT32_MAX;
    constexpr bool valid() const { return id != UINT32_MAX; }
    friend constexpr auto operator<=>(Symbol, Symbol) = default;
};

inline constexpr Symbol kNoSymbol{};

struct SymbolInfo {
    std::string name;          // printed lexeme, including a trailing ' when tagged
    SymKind kind;
    bool tagged = false;
    FormulaPtr formula;        // Test
    std::vector<std::string> tests;  // Atom: the true tests, sorted
    std::string value;         // NetAtom / Assign / Action base name
};

const SymbolInfo& info(Symbol s);
const std::string& name_of(Symbol s);

Symbol sym_action(std::string_view name);
Symbol sym_test(FormulaPtr f);
Symbol sym_atom(std::vector<std::string> tests);
Symbol sym_netatom(std::string_view v);
Symbol sym_assign(std::string_view v);
Symbol sym_dup();
Symbol sym_full();
// Toggles the converse tag; involutive.
Symbol tag(Symbol s);
// Parses a single symbol lexeme (as printed).
Symbol parse_symbol(std::string_view lexeme);

// ---------------------------------------------------------------------------
// Alphabet

struct Alphabet {
    std::string theory;
    std::vector<Symbol> symbols;
    std::vector<std::string> tests;  // primitive tests allowed inside [B]
    bool open = false;               // accept any symbol (used for ad-hoc input)

    Alphabet() = default;
    explicit Alphabet(std::vector<Symbol> syms, std::string theory_tag = "");

    bool add(Symbol s);
    bool contains(Symbol s) const;
    std::size_t rank(Symbol s) const;  // npos if absent
    std::size_t size() const { return symbols.size(); }
    bool admits(Symbol s) const;       // membership check used by the parser

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::unordered_map<std::uint32_t, std::size_t> index_;
};

Alphabet merge(const Alphabet& a, const Alphabet& b);

// ---------------------------------------------------------------------------
// Words

using Word = std::vector<Symbol>;
using WordSet = std::set<Word>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

Word concat(const Word& a, const Word& b);
Word concat(const Word& a, const Word& b, const Word& c);
// Words print as expressions ("1" for the empty word, letters joined by ';').
std::string print_word(const Word& w);
// Shortlex order relative to the alphabet's symbol order.
bool shortlex_less(const Word& a, const Word& b, const Alphabet& alpha);
std::vector<Word> sorted_shortlex(const WordSet& s, const Alphabet& alpha);
// All words over `letters` of length <= maxlen, in shortlex order.
std::vector<Word> all_words(const std::vector<Symbol>& letters, std::size_t maxlen);
// Reverses and toggles every tag: (a b' c)° = c' b a'.
Word converse_word(const Word& w);

// ---------------------------------------------------------------------------
// Expressions (hash-consed, immutable)

enum class Op : std::uint8_t { Zero, One, Sym, Sum, Prod, Star };

struct ExprNode {
    Op op;
    Symbol sym;
    const ExprNode* a;
    const ExprNode* b;
    std::size_t hash;
    std::uint32_t size;
};

class Expr {
public:
    Expr();  // Zero
    static Expr zero();
    static Expr one();
    static Expr sym(Symbol s);
    static Expr sum(Expr a, Expr b);
    static Expr prod(Expr a, Expr b);
    static Expr star(Expr a);

    Op op() const { return n_->op; }
    Symbol symbol() const { return n_->sym; }
    Expr left() const { return Expr(n_->a); }
    Expr right() const { return Expr(n_->b); }
    Expr child() const { return Expr(n_->a); }
    std::size_t hash() const { return n_->hash; }
    std::uint32_t size() const { return n_->size; }
    const ExprNode* node() const { return n_; }

    bool is_zero() const { return n_->op == Op::Zero; }
    bool is_one() const { return n_->op == Op::One; }

    friend bool operator==(Expr x, Expr y) { return x.n_ == y.n_; }
    friend bool operator!=(Expr x, Expr y) { return x.n_ != y.n_; }
    // Arbitrary but fixed within a process; only for containers.
    friend bool operator<(Expr x, Expr y) { return x.n_ < y.n_; }

private:
    explicit Expr(const ExprNode* n) : n_(n) {}
    const ExprNode* n_;
};

struct ExprHash {
    std::size_t operator()(Expr e) const noexcept { return e.hash(); }
};

// Smart constructors: apply the unit/zero laws on the spot.
Expr mk_sum(Expr a, Expr b);
Expr mk_prod(Expr a, Expr b);
Expr mk_star(Expr a);
// Right-nested sums/products in the given order; empty sum is 0, empty product 1.
Expr sum_of(const std::vector<Expr>& xs);
Expr prod_of(const std::vector<Expr>& xs);
Expr word_expr(const Word& w);
Expr letters_sum(const std::vector<Symbol>& letters);
// (Σ letters)*
Expr sigma_star(const std::vector<Symbol>& letters);

Expr simplify(Expr e);

std::string print(Expr e);

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(std::size_t off, const std::string& msg);
};

// Strict: every symbol must be admitted by `alpha`.
Expr parse_expr(std::string_view text, const Alphabet& alpha);
// Permissive: accepts any symbol and reports the ones it saw, in first-occurrence order.
Expr parse_expr_open(std::string_view text, std::vector<Symbol>* seen = nullptr);

// Symbols in first-occurrence order (left to right).
std::vector<Symbol> symbols_of(Expr e);
bool contains_symbol(Expr e, Symbol s);
// Homomorphic substitution of letters; letters absent from the map are kept.
Expr substitute(Expr e, const std::unordered_map<std::uint32_t, Expr>& images);

bool nullable(Expr e);
bool is_empty_lang(Expr e);
// Longest word length, or nullopt if the language is infinite. -1 for the empty language.
std::optional<long> max_word_length(Expr e);
// Shortest word length, or nullopt for the empty language.
std::optional<long> min_word_length(Expr e);
// If e denotes a single word syntactically (products of letters and 1), that word.
std::optional<Word> as_word(Expr e);

// <e> restricted to words of length <= n, exactly.
WordSet lang_upto(Expr e, std::size_t n);

}  // namespace kahyp
