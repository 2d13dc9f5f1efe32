// Command-line front end: series expansion with a tiny expression grammar,
// corpus verification, numeric modular checks, and fusion-ring solving.
//
// Exit codes: 0 success, 1 identity/consistency failure, 2 parse or usage
// error, 3 I/O error, 4 resource cap exceeded.

#include <algorithm>
#include <complex>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qchar/blocks.hpp"
#include "qchar/characters.hpp"
#include "qchar/fusion.hpp"
#include "qchar/ucpf.hpp"
#include "qchar/verify.hpp"

using namespace qchar;

namespace {

struct CliError {
    int code;  // exit code
    std::string msg;
};

[[noreturn]] void fail(int code, const std::string& msg) {
    throw CliError{code, msg};
}

// ---- rational formatting ---------------------------------------------------

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << numerator(r) << "/" << denominator(r);
    return os.str();
}

// ---- expression grammar -----------------------------------------------------
//
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := primary ('^' signed-integer)?
//   primary := number | 'q' | call | '(' expr ')' | '-' primary
//   call    := name '(' arguments ')'   (arguments split on ';', then ',')
//
// Calls: eta(m), L(c,h), sf(rank,level; Lambda; lambda), bc(rank,level;
// Lambda; lambda), ucpf(name), lattice(name; shift), orbifold(name; sector),
// coeff(expr; e).  Numbers are integers; rationals are formed by division.

struct Parser {
    std::string src;
    size_t pos = 0;
    Rat T;       // target order
    Rat C;       // internal working cut (>= T)

    explicit Parser(std::string s, const Rat& order)
        : src(std::move(s)), T(order), C(order + 2) {}

    void skip() {
        while (pos < src.size() && std::isspace((unsigned char)src[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < src.size() && src[pos] == c) { ++pos; return true; }
        return false;
    }
    char peek() {
        skip();
        return pos < src.size() ? src[pos] : '\0';
    }
    [[noreturn]] void err(const std::string& what) {
        fail(2, "parse error at position " + std::to_string(pos) + ": " + what);
    }

    long long integer() {
        skip();
        size_t start = pos;
        if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) ++pos;
        while (pos < src.size() && std::isdigit((unsigned char)src[pos])) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit((unsigned char)src[start])))
            err("expected integer");
        return std::stoll(src.substr(start, pos - start));
    }

    Rat rational() {
        long long n = integer();
        skip();
        if (pos < src.size() && src[pos] == '/') {
            ++pos;
            long long d = integer();
            if (d == 0) err("zero denominator");
            return Rat(n, d);
        }
        return Rat(n);
    }

    std::string name() {
        skip();
        size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum((unsigned char)src[pos]) || src[pos] == '_' ||
                src[pos] == '-'))
            ++pos;
        if (pos == start) err("expected name");
        return src.substr(start, pos - start);
    }

    // Split the argument list of a call on top-level ';'.
    std::vector<std::string> call_args() {
        if (!eat('(')) err("expected '('");
        std::vector<std::string> parts(1);
        int depth = 0;
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) { ++pos; return parts; }
                --depth;
            }
            if (c == ';' && depth == 0) {
                parts.emplace_back();
                ++pos;
                continue;
            }
            parts.back() += c;
            ++pos;
        }
        err("unterminated call");
    }

    static std::vector<Rat> rat_list(const std::string& s) {
        std::vector<Rat> out;
        std::string piece;
        std::stringstream ss(s);
        while (std::getline(ss, piece, ',')) {
            Parser p(piece, 1);
            out.push_back(p.rational());
            p.skip();
            if (p.pos != piece.size()) p.err("trailing input in list");
        }
        return out;
    }
    static Labels label_list(const std::string& s) {
        Labels out;
        for (auto& r : rat_list(s)) out.push_back(rat_to_int(r));
        return out;
    }

    QSeries call(const std::string& fn) {
        auto args = call_args();
        auto want = [&](size_t n) {
            if (args.size() != n)
                err(fn + " takes " + std::to_string(n) + " argument group(s)");
        };
        if (fn == "eta") {
            want(1);
            auto v = rat_list(args[0]);
            if (v.size() != 1 || v[0] <= 0) err("eta needs one positive rational");
            return eta(v[0], C);
        }
        if (fn == "L") {
            want(1);
            auto v = rat_list(args[0]);
            if (v.size() != 2) err("L needs (c,h)");
            for (long long pp = 3; pp <= 24; ++pp)
                for (long long p = 2; p < pp; ++p)
                    if (std::gcd(p, pp) == 1 && minimal_cc(p, pp) == v[0])
                        return minimal_char_by_h(p, pp, v[1], C);
            err("no minimal model with that central charge");
        }
        if (fn == "sf" || fn == "bc") {
            want(3);
            auto rl = rat_list(args[0]);
            if (rl.size() != 2) err(fn + " needs (rank,level; Lambda; lambda)");
            int rank = (int)rat_to_int(rl[0]);
            long long level = rat_to_int(rl[1]);
            Labels L = label_list(args[1]), l = label_list(args[2]);
            StringEngine eng(rank, level);
            return fn == "sf" ? eng.string_function(L, l, C)
                              : eng.coset_character(L, l, C);
        }
        if (fn == "ucpf") {
            want(1);
            Parser np(args[0], 1);
            std::string which = np.name();
            Rat h(1, 2);
            Mat g3 = {{1, h, h}, {h, 1, h}, {h, h, 1}};
            Mat g4 = {{1, h, 0, h, h, h}, {h, 1, h, h, h, 0}, {0, h, 1, h, h, h},
                      {h, h, h, 1, 1, h}, {h, h, h, 1, 1, h}, {h, 0, h, h, h, 1}};
            auto hv = [&](std::initializer_list<int> b) {
                std::vector<Rat> a;
                for (int x : b) a.push_back(Rat(x, 2));
                return a;
            };
            if (which == "G3") return ucpf_sum(g3, {0, 0, 0}, false, C);
            if (which == "G3-twisted") return ucpf_sum(g3, hv({0, 1, 1}), false, C);
            if (which == "G4") return ucpf_sum(g4, std::vector<Rat>(6, 0), false, C);
            if (which == "G4-sixth")
                return ucpf_sum(g4, hv({0, 1, 0, 1, 1, 1}), false, C);
            if (which == "G4-eighth")
                return ucpf_sum(g4, hv({1, 1, 0, 0, 1, 0}), false, C);
            err("unknown ucpf name (G3, G3-twisted, G4, G4-sixth, G4-eighth)");
        }
        if (fn == "lattice") {
            want(2);
            Parser np(args[0], 1);
            std::string which = np.name();
            auto shift = rat_list(args[1]);
            Rat h(1, 2);
            if (which == "A1") return lattice_character({{1}}, shift, C);
            if (which == "A2h")
                return lattice_character({{1, -h}, {-h, 1}}, shift, C);
            if (which == "2A2")
                return lattice_character({{4, -2}, {-2, 4}}, shift, C);
            err("unknown lattice (A1, A2h, 2A2)");
        }
        if (fn == "orbifold") {
            want(2);
            Parser np(args[0], 1);
            std::string which = np.name();
            std::string sector = args[1];
            sector.erase(remove_if(sector.begin(), sector.end(), ::isspace),
                         sector.end());
            if (which != "A2h") err("unknown orbifold model (A2h)");
            Rat h(1, 2);
            Mat g = {{1, -h}, {-h, 1}};
            std::vector<long long> tw = {1, 1};
            QSeries etam2 = eta(1, C).truncated(C).inverse().pow(2);
            if (sector == "+-")
                return (theta_lattice(g, {0, 0}, C, &tw) * etam2).truncated(C - 1);
            if (sector == "t+-")
                return (theta_lattice(g, {Rat(4, 3), Rat(2, 3)}, C, &tw) * etam2)
                    .truncated(C - 1);
            if (sector == "-+")
                return eta_quotient({{1, 2}, {Rat(1, 2), -2}}, C);
            if (sector == "--")
                return eta_quotient({{2, 2}, {Rat(1, 2), 2}, {1, -4}}, C);
            err("unknown sector (+-, t+-, -+, --)");
        }
        if (fn == "coeff") {
            want(2);
            Parser sub(args[0], T);
            QSeries s = sub.expr();
            sub.skip();
            if (sub.pos != args[0].size()) sub.err("trailing input");
            auto e = rat_list(args[1]);
            if (e.size() != 1) err("coeff needs one exponent");
            return QSeries::monomial(s.truncated(C).coeff(e[0]), 0);
        }
        err("unknown function '" + fn + "'");
    }

    QSeries primary() {
        char c = peek();
        if (c == '(') {
            eat('(');
            QSeries s = expr();
            if (!eat(')')) err("expected ')'");
            return s;
        }
        if (c == '-') {
            eat('-');
            return -primary();
        }
        if (std::isdigit((unsigned char)c)) return QSeries::monomial(Rat(integer()), 0);
        std::string id = name();
        if (id == "q") {
            Rat e = 1;
            if (eat('^')) {
                bool paren = eat('(');
                e = rational();
                if (paren && !eat(')')) err("expected ')'");
            }
            return QSeries::monomial(1, e);
        }
        return call(id);
    }

    QSeries factor() {
        QSeries s = primary();
        while (peek() == '^') {
            eat('^');
            bool paren = eat('(');
            long long e = integer();
            if (paren && !eat(')')) err("expected ')'");
            s = s.truncated(C).pow(e).truncated(C);
        }
        return s;
    }

    QSeries term() {
        QSeries s = factor();
        for (;;) {
            if (eat('*')) {
                s = (s * factor()).truncated(C);
            } else if (eat('/')) {
                s = (s * factor().truncated(C).inverse()).truncated(C);
            } else {
                return s;
            }
        }
    }

    QSeries expr() {
        QSeries s = term();
        for (;;) {
            if (eat('+')) s = s + term();
            else if (peek() == '-') { eat('-'); s = s - term(); }
            else return s;
        }
    }
};

// ---- output -----------------------------------------------------------------

std::string series_json(const QSeries& s, const Rat& T) {
    std::ostringstream os;
    os << "{\"order\":\"" << rat_str(T) << "\",\"terms\":[";
    bool first = true;
    for (auto& [e, c] : s.terms()) {
        if (!first) os << ",";
        first = false;
        os << "[\"" << rat_str(e) << "\",\"" << rat_str(c) << "\"]";
    }
    os << "]}";
    return os.str();
}

// Minimal reader for the exact json shape produced above (round-trip check).
QSeries series_from_json(const std::string& j, Rat* order) {
    auto grab = [&](size_t& p) {
        size_t a = j.find('"', p) + 1, b = j.find('"', a);
        p = b + 1;
        std::string tok = j.substr(a, b - a);
        size_t sl = tok.find('/');
        return Rat(Int(tok.substr(0, sl)), Int(tok.substr(sl + 1)));
    };
    size_t p = j.find("order") + 6;  // past the closing quote of the key
    *order = grab(p);
    QSeries s = QSeries::zero(*order);
    p = j.find("terms");
    while ((p = j.find('[', p + 1)) != std::string::npos) {
        if (p + 1 >= j.size() || j[p + 1] != '"') continue;  // array opener
        Rat e = grab(p);
        Rat c = grab(p);
        s += QSeries::monomial(c, e);
    }
    return s;
}

void print_series(const QSeries& s, const Rat& T, const std::string& format) {
    if (format == "text") {
        std::cout << s.truncated(T).str() << "\n";
    } else if (format == "json") {
        std::string out = series_json(s.truncated(T), T);
        Rat back_order;
        QSeries back = series_from_json(out, &back_order);
        if (series_json(back.truncated(T), back_order) != out)
            fail(1, "internal error: json round-trip mismatch");
        std::cout << out << "\n";
    } else if (format == "csv") {
        std::cout << "exponent,coefficient\n";
        for (auto& [e, c] : s.truncated(T).terms())
            std::cout << rat_str(e) << "," << rat_str(c) << "\n";
    } else {
        fail(2, "unknown format '" + format + "'");
    }
}

// ---- commands -----------------------------------------------------------------

int cmd_expand(const std::string& expr, const Rat& T, const std::string& format) {
    Parser p(expr, T);
    QSeries s = p.expr();
    p.skip();
    if (p.pos != p.src.size()) p.err("trailing input");
    print_series(s, T, format);
    return 0;
}

int cmd_verify(const std::string& filter, const std::string& corpus_file,
               bool controls, int workers,
               const std::vector<std::complex<double>>& taus,
               const std::string& format) {
    bool all_pass = true;
    std::vector<IdentityReport> reports;
    if (!corpus_file.empty()) {
        std::ifstream in(corpus_file);
        if (!in) fail(3, "cannot read corpus file '" + corpus_file + "'");
        std::string line;
        while (std::getline(in, line)) {
            while (!line.empty() && std::isspace((unsigned char)line.back()))
                line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            auto some = run_corpus(line, controls, workers);
            if (some.empty())
                fail(2, "corpus line '" + line + "' matches no case");
            for (auto& r : some) reports.push_back(std::move(r));
        }
    } else {
        reports = run_corpus(filter, controls, workers);
        if (reports.empty() && !filter.empty())
            fail(2, "filter '" + filter + "' matches no corpus case");
    }
    for (auto& r : reports) {
        bool ok = r.pass && (!controls || r.control_caught);
        all_pass = all_pass && ok;
        if (format == "json") {
            std::cout << "{\"id\":\"" << r.id << "\",\"pass\":" << (ok ? "true" : "false");
            if (r.mismatch_at)
                std::cout << ",\"mismatch_at\":\"" << rat_str(*r.mismatch_at) << "\"";
            std::cout << "}\n";
        } else {
            std::printf("%-34s %s  (%.2fs)", r.id.c_str(), ok ? "pass" : "FAIL",
                        r.seconds);
            if (!r.pass && r.mismatch_at)
                std::printf("  first mismatch at q^(%s)  %s",
                            r.mismatch_at->str().c_str(), r.detail.c_str());
            if (controls && !r.control_caught)
                std::printf("  [negative control NOT caught]");
            std::printf("\n");
        }
    }
    for (auto tau : taus)
        for (auto& c : modular_numeric_checks(tau, 60, 1e-6)) {
            all_pass = all_pass && c.pass;
            std::printf("numeric %-20s tau=%g%+gi rel_err=%.3e %s\n", c.id.c_str(),
                        tau.real(), tau.imag(), c.rel_err, c.pass ? "pass" : "FAIL");
        }
    return all_pass ? 0 : 1;
}

int cmd_fusion(const std::string& which, bool solve) {
    if (which != "sl3" && which != "sl4") fail(2, "--builtin must be sl3 or sl4");
    FusionRing ring = which == "sl3" ? sl3_coset_ring() : sl4_coset_ring();
    if (solve) {
        const size_t cap = 1 << 20;
        auto sols = solve_fr(ring, cap);
        if (sols.size() >= cap) fail(4, "solution cap exceeded");
        std::printf("%zu consistent F/R assignments\n", sols.size());
        if (which == "sl3") {
            auto known = sl3_known_solution();
            bool found = false;
            for (auto& s : sols)
                if (s.fexp == known.fexp && s.rexp == known.rexp) found = true;
            std::printf("reference solution (all F = -1) %s\n",
                        found ? "present" : "MISSING");
            if (!found) return 1;
        }
        return 0;
    }
    std::vector<std::string> bad;
    if (which == "sl3") {
        bad = fr_residuals(ring, sl3_known_solution());
    } else {
        bad = gcr_residuals(sl4_gcr_constants());
    }
    if (bad.empty()) {
        std::printf("all consistency relations satisfied\n");
        return 0;
    }
    for (auto& b : bad) std::printf("violated: %s\n", b.c_str());
    return 1;
}

const char* kUsage = R"(usage: qchar <command> [options]

commands:
  expand "<expr>"       print the exact series expansion of an expression
  verify                run the built-in identity corpus
  fusion                fusion-ring consistency checks / solving

options:
  --order T             truncation order as a rational, default 20 (expand)
  --format F            text | json | csv, default text
  --filter X            restrict verify to cases whose id or tag matches X
  --corpus FILE         verify ids/tags listed in FILE (one per line, # comments)
  --negative-controls   also perturb each identity and require detection
  --workers N           parallel corpus evaluation, default 1
  --tau LIST            comma-separated tau values (pure-imaginary parts)
                        for numeric modular checks, e.g. --tau 0.9,1.3
  --builtin NAME        fusion ring: sl3 | sl4
  --solve               fusion: enumerate all solutions (default: residuals)

expression grammar (expand):
  expr   := term (('+'|'-') term)*
  term   := factor (('*'|'/') factor)*
  factor := primary ('^' int)?
  primary:= int | q | q^r | '(' expr ')' | call
  calls  : eta(m)                   Dedekind eta of m*tau (rational m > 0)
           L(c,h)                   Virasoro minimal-model character
           sf(rank,level; L; l)     affine string function (labels comma-sep)
           bc(rank,level; L; l)     coset character (eta^rank * sf, shifted)
           ucpf(G3|G3-twisted|G4|G4-sixth|G4-eighth)   bare quasiparticle sum
           lattice(A1|A2h|2A2; shift)                  theta / eta^d
           orbifold(A2h; +-|t+-|-+|--)                 reflection sectors
           coeff(expr; e)           coefficient of q^e as a constant

environment:
  QCHAR_CACHE_DIR       persistent cache for string-function tables

exit codes: 0 ok, 1 identity failure, 2 parse/usage, 3 I/O, 4 resource cap
)";

}  // namespace

int main(int argc, char** argv) {
    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        if (args.empty() || args[0] == "--help" || args[0] == "-h") {
            std::cout << kUsage;
            return args.empty() ? 2 : 0;
        }
        std::string command = args[0];
        Rat order = 20;
        std::string format = "text", filter, corpus_file, builtin = "sl3", expr;
        bool controls = false, solve = false;
        int workers = 1;
        std::vector<std::complex<double>> taus;
        for (size_t i = 1; i < args.size(); ++i) {
            auto need = [&](const char* f) -> std::string {
                if (i + 1 >= args.size()) fail(2, std::string(f) + " needs a value");
                return args[++i];
            };
            if (args[i] == "--order") {
                Parser p(need("--order"), 1);
                order = p.rational();
                if (order <= 0) fail(2, "--order must be positive");
            } else if (args[i] == "--format") {
                format = need("--format");
            } else if (args[i] == "--filter") {
                filter = need("--filter");
            } else if (args[i] == "--corpus") {
                corpus_file = need("--corpus");
            } else if (args[i] == "--negative-controls") {
                controls = true;
            } else if (args[i] == "--workers") {
                workers = std::stoi(need("--workers"));
                if (workers < 1) fail(2, "--workers must be >= 1");
            } else if (args[i] == "--tau") {
                std::stringstream ss(need("--tau"));
                std::string piece;
                while (std::getline(ss, piece, ','))
                    taus.emplace_back(0.0, std::stod(piece));
            } else if (args[i] == "--builtin") {
                builtin = need("--builtin");
            } else if (args[i] == "--solve") {
                solve = true;
            } else if (args[i].rfind("--", 0) == 0) {
                fail(2, "unknown flag " + args[i]);
            } else if (expr.empty()) {
                expr = args[i];
            } else {
                fail(2, "unexpected argument " + args[i]);
            }
        }
        if (command == "expand") {
            if (expr.empty()) fail(2, "expand needs an expression");
            return cmd_expand(expr, order, format);
        }
        if (command == "verify")
            return cmd_verify(filter, corpus_file, controls, workers, taus, format);
        if (command == "fusion") return cmd_fusion(builtin, solve);
        fail(2, "unknown command '" + command + "'");
    } catch (const CliError& e) {
        std::cerr << "error: " << e.msg << "\n";
        return e.code;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
