#include <algorithm>
#include <cstring>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "kahyp/automata.hpp"
#include "kahyp/overlap.hpp"

namespace kahyp {

namespace {

std::string trim(std::string s)
{
    auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && sp(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t a = 0;
    while (a < s.size() && sp(static_cast<unsigned char>(s[a]))) ++a;
    return s.substr(a);
}

std::vector<std::string> split_ws(const std::string& s)
{
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

[[noreturn]] void fail_at(const std::string& name, int line, const std::string& msg)
{
    throw TableError(name + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

TableSpec parse_table_spec(std::string_view text, const std::string& name, const std::string& dir)
{
    TableSpec t;
    t.name = name;
    t.dir = dir;
    static const std::regex alt_re(R"(;\s*alt\s*=\s*(\S*)\s*$)");
    std::istringstream is{std::string(text)};
    int ln = 0;
    for (std::string raw; std::getline(is, raw);) {
        ++ln;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto key_is = [&](const char* k) {
            std::size_t n = std::strlen(k);
            return line.compare(0, n, k) == 0 && (line.size() == n || line[n] == ' ' || line[n] == ':');
        };
        if (key_is("name") || key_is("theory") || key_is("param") || key_is("order")) {
            auto colon = line.find(':');
            if (colon == std::string::npos) fail_at(name, ln, "expected ':'");
            std::string key = trim(line.substr(0, colon)), val = trim(line.substr(colon + 1));
            if (key == "name") {
                t.name = val;
            } else if (key == "theory") {
                t.theory = val;
            } else if (key == "param") {
                auto eq = val.find('=');
                if (eq == std::string::npos) fail_at(name, ln, "param needs key = value");
                t.params[trim(val.substr(0, eq))] = trim(val.substr(eq + 1));
            } else {
                if (!t.order.empty()) fail_at(name, ln, "duplicate order line");
                std::size_t pos = 0;
                while (pos <= val.size()) {
                    auto lt = val.find('<', pos);
                    if (lt == std::string::npos) lt = val.size();
                    std::string n = trim(val.substr(pos, lt - pos));
                    if (n.empty() || split_ws(n).size() != 1) fail_at(name, ln, "bad set name in order");
                    if (std::find(t.order.begin(), t.order.end(), n) != t.order.end())
                        fail_at(name, ln, "set '" + n + "' listed twice");
                    t.order.push_back(n);
                    pos = lt + 1;
                }
            }
        } else if (key_is("set")) {
            auto eq = line.find('=');
            if (eq == std::string::npos) fail_at(name, ln, "set needs NAME = REF");
            auto lhs = split_ws(line.substr(3, eq - 3));
            std::string ref = trim(line.substr(eq + 1));
            if (lhs.size() != 1 || ref.empty()) fail_at(name, ln, "set needs NAME = REF");
            if (!t.sets.emplace(lhs[0], ref).second) fail_at(name, ln, "set '" + lhs[0] + "' defined twice");
        } else if (key_is("cell")) {
            auto eq = line.find('=');
            if (eq == std::string::npos) fail_at(name, ln, "cell needs ROW COL = OBLIGATION");
            auto rc = split_ws(line.substr(4, eq - 4));
            if (rc.size() != 2) fail_at(name, ln, "cell needs ROW COL = OBLIGATION");
            TableSpec::Cell c;
            c.row = rc[0];
            c.col = rc[1];
            c.line = ln;
            std::string ob = line.substr(eq + 1);
            std::smatch m;
            if (std::regex_search(ob, m, alt_re)) {
                if (m[1] != "1" && m[1] != "2") fail_at(name, ln, "alt must be 1 or 2");
                c.alt = m[1] == "1" ? 1 : 2;
                ob = ob.substr(0, static_cast<std::size_t>(m.position(0)));
            }
            c.obligation = trim(ob);
            if (c.obligation.empty()) fail_at(name, ln, "empty obligation");
            t.cells.push_back(std::move(c));
        } else {
            fail_at(name, ln, "unrecognised line '" + line + "'");
        }
    }
    if (t.order.empty()) throw TableError(name + ": missing order line");
    return t;
}

CommTable resolve_table(const TableSpec& spec, const SetResolver& resolve, const std::vector<Symbol>& letters)
{
    CommTable t;
    t.name = spec.name;
    t.names = spec.order;
    t.letters = letters;
    const int n = static_cast<int>(t.names.size());
    for (auto& nm : t.names) {
        auto it = spec.sets.find(nm);
        if (it == spec.sets.end()) throw TableError(spec.name + ": no set line for '" + nm + "'");
        HypothesisSet H;
        if (it->second.rfind("file:", 0) == 0) {
            std::string path = it->second.substr(5);
            if (!path.empty() && path[0] != '/') path = spec.dir + "/" + path;
            std::ifstream in(path);
            if (!in) throw TableError(spec.name + ": cannot read " + path);
            std::stringstream ss;
            ss << in.rdbuf();
            try {
                H = parse_hypotheses(ss.str(), nm);
            } catch (const std::exception& e) {
                throw TableError(spec.name + ": " + path + ": " + e.what());
            }
        } else {
            auto r = resolve ? resolve(it->second) : std::nullopt;
            if (!r) throw TableError(spec.name + ": unknown set '" + it->second + "'");
            H = *r;
        }
        H.name = nm;
        t.rows.push_back(std::move(H));
    }
    for (auto& [nm, ref] : spec.sets)
        if (std::find(t.names.begin(), t.names.end(), nm) == t.names.end())
            throw TableError(spec.name + ": set '" + nm + "' is not in the order");

    auto index = [&](const std::string& nm, int line) {
        auto it = std::find(t.names.begin(), t.names.end(), nm);
        if (it == t.names.end()) fail_at(spec.name, line, "unknown set '" + nm + "'");
        return static_cast<int>(it - t.names.begin());
    };
    t.alt.assign(static_cast<std::size_t>(n), 0);
    for (auto& c : spec.cells) {
        int i = index(c.row, c.line), j = index(c.col, c.line);
        if (i >= j) fail_at(spec.name, c.line, "cell (" + c.row + ", " + c.col + ") is not above the diagonal");
        Obligation ob;
        ob.text = c.obligation;
        ob.alt = c.alt;
        if (c.obligation == "." || c.obligation == "noop") {
            ob.kind = Obligation::NoOverlap;
        } else if (c.obligation == ".." || c.obligation == "dl0") {
            ob.kind = Obligation::DlZero;
        } else if (c.obligation == "...") {
            ob.kind = Obligation::Triple;
            ob.bound = parse_bound(t.names[static_cast<std::size_t>(j)] + "=;" + t.names[static_cast<std::size_t>(i)] + "=",
                                   t.names);
        } else {
            ob.kind = Obligation::Bound;
            try {
                ob.bound = parse_bound(c.obligation, t.names);
            } catch (const TableError& e) {
                fail_at(spec.name, c.line, e.what());
            }
        }
        if (c.alt) {
            int& a = t.alt[static_cast<std::size_t>(j)];
            if (a && a != c.alt) fail_at(spec.name, c.line, "column " + c.col + " mixes both alternatives");
            a = c.alt;
        }
        if (!t.cells.emplace(std::make_pair(i, j), std::move(ob)).second)
            fail_at(spec.name, c.line, "cell (" + c.row + ", " + c.col + ") given twice");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!t.cells.count({i, j}))
                throw TableError(spec.name + ": cell (" + t.names[static_cast<std::size_t>(i)] + ", " +
                                 t.names[static_cast<std::size_t>(j)] + ") is missing");
    return t;
}

namespace {

Symbol row_letter(int r) { return sym_action("row." + std::to_string(r)); }

Expr rows_sum(const std::vector<int>& rows)
{
    std::vector<Symbol> ls;
    for (int r : rows) ls.push_back(row_letter(r));
    return letters_sum(ls);
}

std::vector<int> below(int j)
{
    std::vector<int> v;
    for (int r = 0; r < j; ++r) v.push_back(r);
    return v;
}

// Bound words as regular expressions over one letter per row; composition order is irrelevant for
// containment since both sides read the same direction.
Expr bound_expr(const Bound& g)
{
    std::vector<Expr> fs;
    for (auto& f : g.factors) {
        Expr s = rows_sum(f.rows);
        fs.push_back(f.kind == BoundFactor::Step ? s : f.kind == BoundFactor::OrId ? mk_sum(s, Expr::one()) : mk_star(s));
    }
    return prod_of(fs);
}

Expr alternative_expr(int j, int alt)
{
    Expr jj = Expr::sym(row_letter(j)), lt = rows_sum(below(j));
    if (alt == 1) return mk_prod(mk_star(jj), mk_sum(lt, Expr::one()));
    return mk_prod(mk_sum(jj, Expr::one()), mk_star(lt));
}

std::string alternative_text(const CommTable& t, int j, int alt)
{
    const std::string& n = t.names[static_cast<std::size_t>(j)];
    if (alt == 1) return n + "*;(<" + n + ")=";
    if (alt == 2) return n + "=;(<" + n + ")*";
    return n + "=;(<" + n + ")=";
}

bool rhs_word_or_zero(const HypothesisSet& H, const CommTable& t, int k)
{
    for (auto& h : normal_form(H, k, t.letters))
        if (!h.rhs.is_zero() && !as_word(h.rhs)) return false;
    return true;
}

CellReport run_cell(const CommTable& t, int i, int j, const Obligation& ob, const CheckParams& p)
{
    CellReport rep;
    const auto& Hi = t.rows[static_cast<std::size_t>(i)];
    const auto& Hj = t.rows[static_cast<std::size_t>(j)];
    try {
        switch (ob.kind) {
        case Obligation::NoOverlap:
            rep = check_no_overlap(Hi, Hj, t.letters, p.k);
            break;
        case Obligation::DlZero: {
            rep.ok = true;
            for (auto& h : normal_form(Hi, p.k, t.letters))
                if (!h.rhs.is_zero()) {
                    rep.ok = false;
                    rep.failure = "set " + Hi.name + " has " + h.str() + ", not of the form e <= 0";
                    break;
                }
            break;
        }
        case Obligation::Bound:
        case Obligation::Triple:
            rep = check_cell(Hi, Hj, ob.bound, t.rows, t.letters, p);
            break;
        }
    } catch (const std::exception& e) {
        rep.ok = false;
        rep.failure = e.what();
    }
    rep.i = i;
    rep.j = j;
    rep.obligation_text = ob.text;
    return rep;
}

TableReport check_table_impl(const CommTable& t, const CheckParams& p, bool parallel)
{
    TableReport r;
    r.table = t.name;
    r.names = t.names;
    const int n = static_cast<int>(t.rows.size());
    for (int i = 0; i + 1 < n; ++i)
        if (!rhs_word_or_zero(t.rows[static_cast<std::size_t>(i)], t, p.k))
            r.errors.push_back("set " + t.names[static_cast<std::size_t>(i)] +
                               " is not the last row but has a right-hand side that is neither a word nor 0");

    std::vector<std::pair<int, int>> keys;
    for (auto& [ij, ob] : t.cells) keys.push_back(ij);
    r.cells.resize(keys.size());
    const long nk = static_cast<long>(keys.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long c = 0; c < nk; ++c) {
            auto [i, j] = keys[static_cast<std::size_t>(c)];
            r.cells[static_cast<std::size_t>(c)] = run_cell(t, i, j, t.cells.at({i, j}), p);
        }
    } else {
        for (long c = 0; c < nk; ++c) {
            auto [i, j] = keys[static_cast<std::size_t>(c)];
            r.cells[static_cast<std::size_t>(c)] = run_cell(t, i, j, t.cells.at({i, j}), p);
        }
    }

    for (int j = 1; j < n; ++j) {
        ColumnReport col;
        col.j = j;
        col.alt = t.alt[static_cast<std::size_t>(j)];
        col.ok = true;
        col.collected = alternative_text(t, j, col.alt);
        for (int i = 0; i < j; ++i) {
            auto it = t.cells.find({i, j});
            if (it == t.cells.end() || it->second.kind != Obligation::Bound) continue;
            if (col.alt == 0) {
                col.ok = false;
                col.failure = "bound " + it->second.text + " from row " + t.names[static_cast<std::size_t>(i)] +
                              " needs an alternative for the column";
                break;
            }
            if (!ka_leq(bound_expr(it->second.bound), alternative_expr(j, col.alt)).equal) {
                col.ok = false;
                col.failure = "bound " + it->second.text + " from row " + t.names[static_cast<std::size_t>(i)] +
                              " is not below " + col.collected;
                break;
            }
        }
        r.columns.push_back(std::move(col));
    }

    r.ok = r.errors.empty() && std::all_of(r.cells.begin(), r.cells.end(), [](auto& c) { return c.ok; }) &&
           std::all_of(r.columns.begin(), r.columns.end(), [](auto& c) { return c.ok; });
    if (r.ok) {
        Certificate cert;
        cert.table = t.name;
        cert.ok = true;
        cert.row_names = t.names;
        cert.rows = t.rows;
        cert.schema_k = p.k;
        cert.notes.push_back("verified at k=" + std::to_string(p.k) + ", m=" + std::to_string(p.m) +
                             ", slack=" + std::to_string(p.slack));
        for (auto& c : r.cells)
            if (c.truncated)
                cert.notes.push_back("cell (" + t.names[static_cast<std::size_t>(c.i)] + ", " +
                                     t.names[static_cast<std::size_t>(c.j)] + ") hit the window");
        r.certificate = std::move(cert);
    }
    return r;
}

}  // namespace

TableReport check_table(const CommTable& t, const CheckParams& p) { return check_table_impl(t, p, true); }

TableReport check_table_serial(const CommTable& t, const CheckParams& p) { return check_table_impl(t, p, false); }

std::string print_report(const TableReport& r)
{
    std::ostringstream os;
    const auto& cert = r.certificate;
    auto nm = [&](int i) { return i >= 0 && i < static_cast<int>(r.names.size()) ? r.names[static_cast<std::size_t>(i)] : std::to_string(i); };
    os << "table " << r.table << "\n";
    for (auto& e : r.errors) os << "error " << e << "\n";
    for (auto& c : r.cells) {
        os << "cell " << nm(c.i) << " " << nm(c.j) << "  " << c.obligation_text << "  " << (c.ok ? "PASS" : "FAIL");
        if (c.ok) {
            if (c.pairs) os << "  (" << c.pairs << " pairs, " << c.obligations << " obligations)";
            if (c.truncated) os << "  [window]";
        } else {
            os << "  " << c.failure;
            if (c.witness) os << "  witness " << print_word(*c.witness);
        }
        os << "\n";
    }
    for (auto& c : r.columns) {
        os << "column " << nm(c.j) << "  alt=" << c.alt << "  " << c.collected << "  " << (c.ok ? "PASS" : "FAIL");
        if (!c.ok) os << "  " << c.failure;
        os << "\n";
    }
    if (cert)
        for (auto& n : cert->notes) os << "note " << n << "\n";
    os << (r.ok ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace kahyp
