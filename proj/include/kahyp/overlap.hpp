#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kahyp/hypotheses.hpp"
#include "kahyp/reductions.hpp"

namespace kahyp {

// x·u·y = s·v·t for the pair (u, v) it was computed from.
struct Overlap {
    Word x, y, s, t;

    friend bool operator==(const Overlap&, const Overlap&) = default;
    friend auto operator<=>(const Overlap&, const Overlap&) = default;
};

std::vector<Overlap> overlaps(const Word& u, const Word& v);
std::string print_overlap(const Overlap& o);

struct TableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One factor of a bound word. Rows are indices into the table order; a group (<k) lists every row
// before k.
struct BoundFactor {
    enum Kind { Step, OrId, Closure } kind = Step;
    std::vector<int> rows;
    std::string text;
};

// Factors compose right to left, as functions: "c;c" applies c twice, "2;1" applies 1 first.
struct Bound {
    std::vector<BoundFactor> factors;
    std::string text;
};

// Tokens separated by ';': NAME, NAME=, NAME*, (<NAME), (<NAME)=, (<NAME)*, id.
Bound parse_bound(std::string_view text, const std::vector<std::string>& names);

struct Obligation {
    enum Kind { NoOverlap, DlZero, Bound, Triple } kind = NoOverlap;
    kahyp::Bound bound;  // Bound: as written; Triple: j=;i=
    int alt = 0;         // 0 when the line gave none
    std::string text;
};

struct CommTable {
    std::string name;
    std::vector<std::string> names;
    std::vector<HypothesisSet> rows;
    std::vector<Symbol> letters;  // context for schema rows
    std::map<std::pair<int, int>, Obligation> cells;
    std::vector<int> alt;  // per column; 0 when every cell of the column is unconstrained
};

// Raw file contents before the sets are resolved.
struct TableSpec {
    std::string name;
    std::string theory;
    std::map<std::string, std::string> params;
    std::vector<std::string> order;
    std::map<std::string, std::string> sets;  // row name -> factory name or "file:PATH"
    struct Cell {
        std::string row, col, obligation;
        int alt = 0;
        int line = 0;
    };
    std::vector<Cell> cells;
    std::string dir;  // for relative file references
};

TableSpec parse_table_spec(std::string_view text, const std::string& name = "table", const std::string& dir = ".");

// Looks up a factory set by name; returns nullopt for unknown names.
using SetResolver = std::function<std::optional<HypothesisSet>(const std::string&)>;

CommTable resolve_table(const TableSpec& spec, const SetResolver& resolve, const std::vector<Symbol>& letters);

struct CheckParams {
    std::size_t m = 6;
    std::size_t slack = 4;
    int k = 2;
    int star_depth = 4;  // closure factors are explored as (H=)^star_depth
};

struct CellReport {
    int i = -1, j = -1;
    bool ok = false;
    std::size_t pairs = 0;        // hypothesis pairs with at least one overlap
    std::size_t obligations = 0;  // words checked
    bool truncated = false;       // some word or premise fell outside the window
    std::string failure;          // failing obligation, when !ok
    std::optional<Word> witness;
    std::string obligation_text;
};

// Discharges every overlap obligation x<e>y ⊆ g(s<f>t) for e <= u in Hi and v <= f in Hj; `fns` are
// the sets the indices of g refer to.
CellReport check_cell(const HypothesisSet& Hi, const HypothesisSet& Hj, const Bound& g,
                      const std::vector<HypothesisSet>& fns, const std::vector<Symbol>& letters,
                      const CheckParams& p = {});

// No overlap at all between the rhs of Hi and the lhs of Hj; reports the first one found otherwise.
CellReport check_no_overlap(const HypothesisSet& Hi, const HypothesisSet& Hj, const std::vector<Symbol>& letters,
                            int k);

// g applied forwards to a bounded language (for sampling checks). With `closed_window` the caller
// guarantees no intermediate word exceeds m, so a complete L stays complete.
BoundedLang apply_bound(const Bound& g, const std::vector<HypothesisSet>& fns, const BoundedLang& L, std::size_t m,
                        int star_depth = 4, bool closed_window = false);

struct ColumnReport {
    int j = -1;
    int alt = 0;
    bool ok = false;
    std::string collected;  // the alternative's bound, as text
    std::string failure;
};

struct TableReport {
    std::string table;
    std::vector<std::string> names;
    bool ok = false;
    std::vector<CellReport> cells;  // ordered by (i, j)
    std::vector<ColumnReport> columns;
    std::vector<std::string> errors;
    std::optional<Certificate> certificate;
};

TableReport check_table(const CommTable& t, const CheckParams& p = {});
// Same checks on one thread; kept as the reference for the parallel version.
TableReport check_table_serial(const CommTable& t, const CheckParams& p = {});

std::string print_report(const TableReport& r);

}  // namespace kahyp
