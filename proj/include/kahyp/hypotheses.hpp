#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kahyp/syntax.hpp"

namespace kahyp {

enum class HypClass { LetterOrEpsLhs, WordWord, ZeroRhs, OneRhs, WordRhs, General };

const char* to_string(HypClass c);

struct Hypothesis {
    Expr lhs;
    Expr rhs;

    // Computed on demand: the first matching class in the enum order.
    HypClass classify() const;
    std::string str() const;

    friend bool operator==(const Hypothesis& a, const Hypothesis& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
};

enum class SchemaKind { Top, FullSplit, Conv, Comm };

const char* to_string(SchemaKind k);

// Word-indexed families:
//   top        w <= full
//   fullsplit  w <= w;full;w
//   conv       w <= w;w°;w
//   comm       a;b <= b;a   (a != b)
// `letters` empty means every letter of the surrounding alphabet.
struct SchemaInstance {
    SchemaKind kind;
    std::vector<Symbol> letters;
    int k = 2;

    friend bool operator==(const SchemaInstance& a, const SchemaInstance& b)
    {
        return a.kind == b.kind && a.letters == b.letters && a.k == b.k;
    }
};

struct HypothesisSet {
    std::string name;
    std::vector<Hypothesis> concrete;
    std::vector<SchemaInstance> schemas;

    bool empty() const { return concrete.empty() && schemas.empty(); }
    // Letters mentioned by concrete hypotheses and explicit schema parameters.
    std::vector<Symbol> letters() const;
};

HypothesisSet set_union(const std::string& name, const std::vector<HypothesisSet>& parts);

// Schema parameter words range over `context` when the schema leaves its letters implicit.
HypothesisSet materialize(const HypothesisSet& h, int k, const std::vector<Symbol>& context = {});

// Splits e1+e2 <= f into e1 <= f, e2 <= f, materializes, deduplicates, sorts; two sets with equal
// normal forms have the same one-step function.
std::vector<Hypothesis> normal_form(const HypothesisSet& h, int k = 2, const std::vector<Symbol>& context = {});
bool same_hypotheses(const HypothesisSet& a, const HypothesisSet& b, int k = 2);

HypothesisSet parse_hypotheses(std::string_view text, const std::string& name = "H");
std::string print_hypotheses(const HypothesisSet& h);

// Finite window on a language.
struct BoundedLang {
    WordSet words;
    std::size_t n = 0;
    Alphabet alphabet;
    // `words` is all of the language, not only its part below n.
    bool complete = false;
    // For oracle outputs: whether `words` is provably exact within the window.
    bool exact = true;
};

BoundedLang bounded(Expr e, std::size_t n, const Alphabet& alpha);
BoundedLang bounded(WordSet words, std::size_t n, const Alphabet& alpha, bool complete);

// H(L) restricted to length m (one step).
BoundedLang step(const HypothesisSet& H, const BoundedLang& L, std::size_t m);

// cl_H(L) restricted to length m, exploring words up to m + slack.
BoundedLang closure_upto(const HypothesisSet& H, const BoundedLang& L, std::size_t m, std::size_t slack);

BoundedLang closed_sem_upto(const HypothesisSet& H, Expr e, std::size_t m, std::size_t slack,
                            const Alphabet& alpha = {});

// Hard cap on the dense closure universe; exceeding it is a configuration error.
inline constexpr std::uint64_t kMaxUniverse = 1ull << 28;

// Rules concluding a given word: each entry is a premise list, all of which must be present.
// Used by backward (goal-directed) membership in the table checker.
class RuleIndex {
public:
    RuleIndex(const HypothesisSet& H, const std::vector<Symbol>& letters, std::size_t window);

    // Calls f(premises) for every rule instance with conclusion z whose premises fit the window.
    // A rule with an empty premise list fires unconditionally.
    template <class F>
    void for_each_rule(const Word& z, F&& f) const
    {
        std::vector<std::vector<Word>> out;
        rules_into(z, out);
        for (auto& ps : out) f(ps);
    }
    void rules_into(const Word& z, std::vector<std::vector<Word>>& out) const;

    // Some instance was dropped because a premise fell outside the window.
    bool truncated() const { return truncated_; }

private:
    struct Concrete {
        std::vector<Word> lhs;   // sorted by length
        std::vector<Word> rhs;   // all rhs words within the window
        bool rhs_fits = true;
    };
    std::vector<Concrete> concrete_;
    std::vector<SchemaInstance> schemas_;
    std::vector<Symbol> letters_;
    Symbol full_;
    std::size_t window_;
    bool truncated_ = false;
};

}  // namespace kahyp
