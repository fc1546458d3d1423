#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kahyp/overlap.hpp"
#include "kahyp/reductions.hpp"

namespace kahyp {

struct TheoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TheoryId { KA, KAT, KAO, KABO, KATF, KATC, KAPT, KAPTBounded, NetKAT };

const char* to_string(TheoryId t);
// Accepts the printed names plus "kapt-bounded"/"kaptt".
std::optional<TheoryId> parse_theory_id(std::string_view s);

struct TheoryConfig {
    TheoryId id = TheoryId::KA;
    std::vector<std::string> actions;  // Σ
    std::vector<std::string> tests;    // Ω
    std::vector<std::string> values;   // A (NetKAT)
    std::size_t max_tests = 8;
    std::size_t max_values = 8;
    CheckParams bounds;  // used for the certificates the pipelines depend on
};

// ---------------------------------------------------------------------------
// Atoms. Bit i of a mask is tests[i].

using AtomMask = std::uint64_t;

enum class AtomLogic { Boolean, Lattice, LatticeBounded };

Symbol atom_symbol(AtomMask a, const std::vector<std::string>& tests);
// Throws TheoryError when s is not an atom over `tests`.
AtomMask atom_mask(Symbol s, const std::vector<std::string>& tests);
// Boolean: all 2^Ω valuations; lattice: non-empty subsets (plus ∅ when bounded). Increasing mask order.
std::vector<AtomMask> all_atoms(std::size_t ntests, AtomLogic logic = AtomLogic::Boolean);
std::vector<AtomMask> atoms_of(const Formula& f, const std::vector<std::string>& tests,
                               AtomLogic logic = AtomLogic::Boolean);

// Tests become sums of atoms; actions and atom symbols are left alone.
Expr r_kat(Expr e, const std::vector<std::string>& tests);
// Same map with the lattice reading (negation-free formulas only).
Expr r_kapt(Expr e, const std::vector<std::string>& tests, bool bounded = false);

// ---------------------------------------------------------------------------
// Guarded strings

struct GuardedString {
    std::vector<AtomMask> atoms;  // one more than actions
    std::vector<Symbol> actions;

    friend bool operator==(const GuardedString&, const GuardedString&) = default;
    friend auto operator<=>(const GuardedString&, const GuardedString&) = default;
};

using GSSet = std::set<GuardedString>;

Word to_word(const GuardedString& g, const std::vector<std::string>& tests);
std::optional<GuardedString> as_guarded_string(const Word& w, const std::vector<std::string>& tests);
std::string print_guarded_string(const GuardedString& g, const std::vector<std::string>& tests);

// Undefined (nullopt) unless the boundary atoms agree.
std::optional<GuardedString> coalesce(const GuardedString& x, const GuardedString& y);
// Strings with at most n actions; actions not in `actions` are still accepted when they occur in e.
GSSet guarded_strings_upto(Expr e, const std::vector<std::string>& tests, std::size_t n);
// At (Σ At)*
Nfa guarded_string_nfa(const std::vector<std::string>& tests, const std::vector<Symbol>& actions);

// ---------------------------------------------------------------------------

// Reverses and swaps tags; `alphabet`, when given, must contain the partner of every letter.
Word involute(const Word& w, const std::vector<Symbol>& alphabet = {});

struct Verdict {
    bool equal = false;
    std::optional<Word> witness;
    std::optional<GuardedString> guarded;  // KAT family, when the witness is a guarded string
    std::string witness_text;
    std::vector<std::string> explain;
};

class Theory {
public:
    // Builds the alphabet, the named sets and (for decidable theories) the pipeline with its
    // certificates. Throws TheoryError on bad configuration.
    explicit Theory(TheoryConfig cfg);

    const TheoryConfig& config() const;
    TheoryId id() const;
    // What user expressions may mention.
    const Alphabet& input_alphabet() const;
    // Letters after normalization (Σ+At, A+P+dup, ...).
    const std::vector<Symbol>& letters() const;
    Expr parse(std::string_view text) const;

    // The theory's homomorphism into its letters (tests to atoms); identity elsewhere.
    Expr normalize(Expr e) const;
    // Hypotheses over letters() that normalize() leaves to be dealt with.
    const HypothesisSet& hypotheses() const;
    // Reduction of hypotheses() to the empty set. Throws for KATF and KATC.
    const Reduction& pipeline() const;
    bool decidable() const;

    std::optional<HypothesisSet> set(const std::string& name) const;
    std::vector<std::string> set_names() const;
    // Certificates checked while building the pipeline.
    const std::vector<TableReport>& certificates() const;

    Verdict decide(Expr e, Expr f) const;
    Verdict decide_leq(Expr e, Expr f) const;

    struct Impl;

private:
    std::shared_ptr<const Impl> impl_;
};

// Convenience wrappers over Theory.
Verdict decide_kat(Expr e, Expr f, const std::vector<std::string>& tests, const std::vector<std::string>& actions);
Verdict decide_kao(Expr e, Expr f, const std::vector<std::string>& tests, const std::vector<std::string>& actions);
Verdict decide_kabo(Expr e, Expr f, const std::vector<std::string>& tests, const std::vector<std::string>& actions);
Verdict decide_kapt(Expr e, Expr f, const std::vector<std::string>& tests, const std::vector<std::string>& actions,
                    bool bounded = false);
Verdict decide_netkat(Expr e, Expr f, const std::vector<std::string>& values);

// Duplicate-free atom sequences whose union is `alpha` (the image of an atom under the 2,4 -> 4
// homomorphism), as words.
std::vector<Word> kapt_sequences(AtomMask alpha, const std::vector<std::string>& tests, bool bounded = false);

// NetKAT's defining equations (each as two inequations) over A+P+dup.
HypothesisSet netkat_axioms(const std::vector<std::string>& values);

// ---------------------------------------------------------------------------
// Shipped tables

// Names of the tables shipped with the library ("kabo", "katf", ...).
std::vector<std::string> builtin_table_names();
const std::string& builtin_table_text(const std::string& name);

// Resolves factory sets through the theory named in the spec (params: tests, actions, values).
CommTable load_table(const TableSpec& spec);
// A path, or a builtin name.
TableSpec read_table_spec(const std::string& path_or_name);

}  // namespace kahyp
