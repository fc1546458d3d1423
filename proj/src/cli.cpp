#include "kahyp/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "kahyp/theories.hpp"

namespace kahyp {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Opts {
    std::string theory = "ka";
    std::string tests, actions, values, variant;
    std::size_t maxlen = 0, slack = 0;
    int schema_k = 2;
    bool explain = false, as_json = false, leq = false, serial = false;
    std::vector<std::string> exprs;
    std::string hyps, of, table, constructor, letter, with, side = "self", zero;
};

std::vector<std::string> split_csv(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string x; std::getline(ss, x, ',');) {
        x.erase(0, x.find_first_not_of(" \t"));
        x.erase(x.find_last_not_of(" \t") + 1);
        if (!x.empty()) out.push_back(x);
    }
    return out;
}

std::string read_file_or_text(const std::string& s)
{
    std::error_code ec;
    if (!s.empty() && std::filesystem::is_regular_file(s, ec)) {
        std::ifstream in(s);
        std::stringstream b;
        b << in.rdbuf();
        return b.str();
    }
    return s;
}

// Tests, actions and values mentioned by the inputs, used when the flags leave them out.
void infer(TheoryConfig& c, const std::vector<std::string>& texts)
{
    std::set<std::string> T, A, V;
    for (auto& t : texts) {
        std::vector<Symbol> seen;
        parse_expr_open(t, &seen);
        for (Symbol s : seen) {
            const auto& I = info(s);
            switch (I.kind) {
            case SymKind::Action: A.insert(I.value.empty() ? I.name : I.value); break;
            case SymKind::Test: formula_vars(*I.formula, T); break;
            case SymKind::Atom: T.insert(I.tests.begin(), I.tests.end()); break;
            case SymKind::NetAtom:
            case SymKind::Assign: V.insert(I.value); break;
            default: break;
            }
        }
    }
    if (c.tests.empty()) c.tests.assign(T.begin(), T.end());
    if (c.actions.empty()) c.actions.assign(A.begin(), A.end());
    if (c.values.empty()) c.values.assign(V.begin(), V.end());
}

TheoryConfig config(const Opts& o, const std::vector<std::string>& texts)
{
    auto id = parse_theory_id(o.theory);
    if (!id) throw UsageError("unknown theory '" + o.theory + "'");
    TheoryConfig c;
    c.id = *id;
    if (!o.variant.empty()) {
        if (o.variant != "bounded") throw UsageError("unknown variant '" + o.variant + "'");
        if (c.id != TheoryId::KAPT && c.id != TheoryId::KAPTBounded)
            throw UsageError("--variant bounded applies to kapt only");
        c.id = TheoryId::KAPTBounded;
    }
    c.tests = split_csv(o.tests);
    c.actions = split_csv(o.actions);
    c.values = split_csv(o.values);
    infer(c, texts);
    if (c.id == TheoryId::NetKAT && c.values.empty()) c.values = {"v"};
    if ((c.id == TheoryId::KAPT || c.id == TheoryId::KAPTBounded) && c.tests.empty()) c.tests = {"o"};
    if (o.maxlen) c.bounds.m = o.maxlen;
    if (o.slack) c.bounds.slack = o.slack;
    c.bounds.k = o.schema_k;
    return c;
}

CheckParams check_params(const Opts& o)
{
    CheckParams p;
    if (o.maxlen) p.m = o.maxlen;
    if (o.slack) p.slack = o.slack;
    p.k = o.schema_k;
    return p;
}

std::vector<Symbol> merged_letters(std::vector<Symbol> a, const std::vector<Symbol>& b)
{
    for (Symbol s : b)
        if (std::find(a.begin(), a.end(), s) == a.end()) a.push_back(s);
    return a;
}

// Alphabet ordered by printed name, so listings do not depend on interning order.
Alphabet sorted_alphabet(std::vector<Symbol> syms)
{
    std::sort(syms.begin(), syms.end(), [](Symbol a, Symbol b) { return name_of(a) < name_of(b); });
    syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
    return Alphabet(syms);
}

std::vector<Word> sorted_words(const WordSet& ws, const Alphabet& A)
{
    std::vector<Word> v(ws.begin(), ws.end());
    std::sort(v.begin(), v.end(), [&](const Word& a, const Word& b) { return shortlex_less(a, b, A); });
    return v;
}

// Hypotheses from a file, a set of the selected theory, or literal text.
HypothesisSet load_hyps(const Opts& o, const std::vector<std::string>& texts)
{
    if (o.hyps.empty()) return HypothesisSet{"empty", {}, {}};
    if (std::filesystem::is_regular_file(o.hyps)) return parse_hypotheses(read_file_or_text(o.hyps), o.hyps);
    if (o.theory != "ka" && o.hyps.find("<=") == std::string::npos && o.hyps.find('=') == std::string::npos) {
        Theory t(config(o, texts));
        if (auto h = t.set(o.hyps)) return *h;
        throw UsageError("theory " + o.theory + " has no set '" + o.hyps + "'");
    }
    return parse_hypotheses(o.hyps, "H");
}

int cmd_decide(const Opts& o, std::ostream& out)
{
    if (o.exprs.size() != 2) throw UsageError("decide needs two expressions");
    Theory t(config(o, o.exprs));
    Expr e = t.parse(o.exprs[0]), f = t.parse(o.exprs[1]);
    Verdict v = o.leq ? t.decide_leq(e, f) : t.decide(e, f);
    if (o.as_json) {
        json j;
        j["theory"] = to_string(t.id());
        j["relation"] = o.leq ? "leq" : "eq";
        j["equal"] = v.equal;
        j["witness"] = v.witness ? json(print_word(*v.witness)) : json(nullptr);
        j["guarded"] = v.guarded ? json(print_guarded_string(*v.guarded, t.config().tests)) : json(nullptr);
        if (o.explain) j["explain"] = v.explain;
        out << j.dump(2) << "\n";
    } else {
        out << (v.equal ? "EQUAL" : "INEQUAL " + v.witness_text) << "\n";
        if (o.explain)
            for (auto& l : v.explain) out << "  " << l << "\n";
    }
    return v.equal ? 0 : 1;
}

int cmd_closure(const Opts& o, std::ostream& out)
{
    if (o.of.empty()) throw UsageError("closure needs --of EXPR");
    HypothesisSet H = load_hyps(o, {o.of});
    Expr e = parse_expr_open(o.of);
    Alphabet A = sorted_alphabet(merged_letters(symbols_of(e), H.letters()));
    std::size_t m = o.maxlen ? o.maxlen : 4, slack = o.slack ? o.slack : 2;
    auto L = closed_sem_upto(H, e, m, slack, A);
    auto ws = sorted_words(L.words, A);
    if (o.as_json) {
        json j;
        j["maxlen"] = m;
        j["slack"] = slack;
        j["exact"] = L.exact;
        j["words"] = json::array();
        for (auto& w : ws) j["words"].push_back(print_word(w));
        out << j.dump(2) << "\n";
    } else {
        for (auto& w : ws) out << print_word(w) << "\n";
        out << "# " << ws.size() << " words up to length " << m << ", " << (L.exact ? "exact" : "not exact") << "\n";
    }
    return 0;
}

Reduction make_reduction(const Opts& o, const std::vector<std::string>& texts)
{
    const std::string& c = o.constructor;
    if (c.empty() || c == "theory") {
        Theory t(config(o, texts));
        Reduction r = t.pipeline();
        Reduction n;
        n = r;
        n.transform = [t, r](Expr e) { return r(t.normalize(e)); };
        n.nfa_transform = [t, r](const Nfa& a) { return r.apply(expr_to_nfa(t.normalize(nfa_to_expr(a)))); };
        return n;
    }
    std::vector<Symbol> sigma;
    for (auto& s : texts) sigma = merged_letters(sigma, symbols_of(parse_expr_open(s)));
    if (c == "letter-word" || c == "one-sum" || c == "drop-zero") {
        HypothesisSet H = load_hyps(o, texts);
        if (c == "letter-word") return red_letter_word(H, sigma);
        if (c == "one-sum") return red_one_sum(H, sigma);
        if (o.zero.empty()) throw UsageError("drop-zero needs --zero EXPR");
        return red_drop_zero(H, parse_expr_open(o.zero), sigma);
    }
    if (c == "e-zero") {
        if (o.zero.empty()) throw UsageError("e-zero needs --zero EXPR");
        return red_e_zero(parse_expr_open(o.zero), sigma);
    }
    if (c == "absorb") {
        if (o.letter.empty()) throw UsageError("absorb needs --letter");
        AbsorbSide side = o.side == "left" ? AbsorbSide::Left : o.side == "right" ? AbsorbSide::Right : AbsorbSide::Self;
        if (o.side != "left" && o.side != "right" && o.side != "self") throw UsageError("--side is left, right or self");
        Symbol a = parse_symbol(o.letter);
        Expr w = o.with.empty() ? Expr::sym(a) : parse_expr_open(o.with);
        return red_absorb(side, a, w, sigma);
    }
    if (c == "top") return red_top(sym_full(), sigma);
    if (c == "self-loop") {
        // the NetKAT instance: v;p_v <= 1 into the 2,3 sets of v
        std::string v = o.letter.empty() ? "v" : o.letter;
        TheoryConfig cfg;
        cfg.id = TheoryId::NetKAT;
        cfg.values = split_csv(o.values);
        if (cfg.values.empty()) cfg.values = {v};
        Theory t(cfg);
        auto target = t.set("23:" + v);
        if (!target) throw UsageError("no value " + v);
        Expr A = Expr::sym(sym_netatom(v)), Pv = Expr::sym(sym_assign(v));
        return red_self_loop(mk_prod(A, Pv), mk_prod(A, mk_star(mk_sum(A, Pv))), *target, t.letters());
    }
    throw UsageError("unknown constructor '" + c + "'");
}

int cmd_reduce(const Opts& o, std::ostream& out)
{
    if (o.of.empty()) throw UsageError("reduce needs --of EXPR");
    Reduction r = make_reduction(o, {o.of});
    Expr e = parse_expr_open(o.of);
    Expr re = r(e);
    if (o.as_json) {
        json j;
        j["reduction"] = r.name;
        j["input"] = print(e);
        j["output"] = print(re);
        if (o.explain) j["explain"] = r.provenance;
        out << j.dump(2) << "\n";
    } else {
        out << print(re) << "\n";
        if (o.explain)
            for (auto& l : r.provenance) out << "  " << l << "\n";
    }
    return 0;
}

int cmd_verify(const Opts& o, std::ostream& out)
{
    if (o.of.empty()) throw UsageError("verify-reduction needs --of EXPR");
    Reduction r = make_reduction(o, {o.of});
    Expr e = parse_expr_open(o.of);
    if (o.constructor.empty() || o.constructor == "theory") {
        Theory t(config(o, {o.of}));
        e = t.normalize(t.parse(o.of));
    }
    std::size_t m = o.maxlen ? o.maxlen : 6, slack = o.slack ? o.slack : 4;
    auto rep = verify_reduction(r, e, m, slack);
    if (o.as_json) {
        json j;
        j["reduction"] = r.name;
        j["equal"] = rep.equal;
        j["m"] = m;
        j["lhs_exact"] = rep.lhs_exact;
        j["rhs_exact"] = rep.rhs_exact;
        j["witness"] = rep.witness ? json(print_word(*rep.witness)) : json(nullptr);
        out << j.dump(2) << "\n";
    } else {
        out << (rep.equal ? "PASS" : "FAIL") << " " << r.name << " at m=" << m;
        if (rep.witness) out << " witness " << print_word(*rep.witness);
        out << " (" << rep.lhs.size() << " words" << (rep.lhs_exact && rep.rhs_exact ? ", exact" : "") << ")\n";
    }
    return rep.equal ? 0 : 1;
}

int cmd_check_table(const Opts& o, std::ostream& out)
{
    if (o.table.empty()) throw UsageError("check-table needs a table file or builtin name");
    TableSpec spec = read_table_spec(o.table);
    CommTable t = load_table(spec);
    auto p = check_params(o);
    TableReport r = o.serial ? check_table_serial(t, p) : check_table(t, p);
    if (o.as_json) {
        json j;
        j["table"] = r.table;
        j["ok"] = r.ok;
        j["m"] = p.m;
        j["slack"] = p.slack;
        j["schema_k"] = p.k;
        j["cells"] = json::array();
        for (auto& c : r.cells) {
            json x;
            x["row"] = r.names[c.i];
            x["col"] = r.names[c.j];
            x["ok"] = c.ok;
            x["pairs"] = c.pairs;
            x["obligations"] = c.obligations;
            if (!c.ok) x["failure"] = c.failure;
            if (c.witness) x["witness"] = print_word(*c.witness);
            j["cells"].push_back(x);
        }
        j["columns"] = json::array();
        for (auto& c : r.columns)
            j["columns"].push_back({{"col", r.names[c.j]}, {"alt", c.alt}, {"ok", c.ok}, {"bound", c.collected}});
        j["errors"] = r.errors;
        out << j.dump(2) << "\n";
    } else {
        out << print_report(r);
        out << "verified at k=" << p.k << ", m=" << p.m << ", slack=" << p.slack << "\n";
    }
    return r.ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Kleene algebra with hypotheses: decision procedures, closures and commutation tables", "kahyp"};
    app.require_subcommand(1);
    Opts o;
    auto common = [&](CLI::App* s) {
        s->add_option("--maxlen", o.maxlen, "word length bound");
        s->add_option("--slack", o.slack, "extra length explored beyond --maxlen");
        s->add_option("--schema-k", o.schema_k, "instances of schema rows up to this word length");
        s->add_flag("--explain", o.explain, "print the reduction chain");
        s->add_flag("--json", o.as_json, "machine-readable output");
    };
    auto theory = [&](CLI::App* s) {
        s->add_option("--theory", o.theory, "ka, kat, kao, kabo, katf, katc, kapt, kapt-bounded, netkat");
        s->add_option("--tests", o.tests, "primitive tests, comma separated");
        s->add_option("--actions", o.actions, "actions, comma separated");
        s->add_option("--values", o.values, "NetKAT values, comma separated");
        s->add_option("--variant", o.variant, "bounded (KAPT with a bounded lattice)");
    };
    auto* dec = app.add_subcommand("decide", "decide e = f (or e <= f) in a theory");
    common(dec);
    theory(dec);
    dec->add_flag("--leq", o.leq, "decide e <= f");
    // two single-string positionals: a vector option would read [..] as a list
    std::string e1, e2;
    dec->add_option("e", e1, "left expression")->required();
    dec->add_option("f", e2, "right expression")->required();

    auto* clo = app.add_subcommand("closure", "list the bounded closure of an expression");
    common(clo);
    theory(clo);
    clo->add_option("--hyps", o.hyps, "hypotheses: file, set name of --theory, or text");
    clo->add_option("--of", o.of, "expression")->required();

    auto red_opts = [&](CLI::App* s) {
        common(s);
        theory(s);
        s->add_option("--constructor", o.constructor,
                      "letter-word, one-sum, drop-zero, e-zero, absorb, top, self-loop, theory (default)");
        s->add_option("--hyps", o.hyps, "hypotheses for letter-word, one-sum, drop-zero");
        s->add_option("--zero", o.zero, "the expression below 0 (e-zero, drop-zero)");
        s->add_option("--letter", o.letter, "absorbing letter, or the value of the self-loop instance");
        s->add_option("--with", o.with, "absorbed expression");
        s->add_option("--side", o.side, "left, right or self");
        s->add_option("--of", o.of, "expression")->required();
    };
    auto* red = app.add_subcommand("reduce", "print r(e) for a reduction");
    red_opts(red);
    auto* ver = app.add_subcommand("verify-reduction", "check [e]_H = [r(e)]_H' on bounded words");
    red_opts(ver);

    auto* tab = app.add_subcommand("check-table", "check a commutation table");
    common(tab);
    tab->add_option("table", o.table, "table file or builtin name")->required();
    tab->add_flag("--serial", o.serial, "check cells on one thread");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "kahyp: " << e.what() << "\n";
        return 2;
    }
    try {
        if (dec->parsed()) {
            o.exprs = {e1, e2};
            return cmd_decide(o, out);
        }
        if (clo->parsed()) return cmd_closure(o, out);
        if (red->parsed()) return cmd_reduce(o, out);
        if (ver->parsed()) return cmd_verify(o, out);
        if (tab->parsed()) return cmd_check_table(o, out);
    } catch (const std::exception& e) {
        err << "kahyp: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace kahyp
