#include "steenrod/cache.hpp"
#include "steenrod/chainmap.hpp"
#include "steenrod/report.hpp"

#include "steenrod/parallel.hpp"

#include <charconv>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

using namespace steenrod;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Args {
    std::map<std::string, std::string> values;
    std::set<std::string> switches;
};

const std::set<std::string> kSwitches = {"odd", "no-cache", "help"};

Args parse_args(int argc, char** argv, int first)
{
    Args args;
    for (int i = first; i < argc; ++i) {
        std::string tok = argv[i];
        if (tok.rfind("--", 0) != 0)
            throw UsageError("unexpected argument: " + tok);
        std::string name = tok.substr(2);
        if (kSwitches.count(name)) {
            args.switches.insert(name);
            continue;
        }
        if (i + 1 >= argc)
            throw UsageError("flag --" + name + " needs a value");
        args.values[name] = argv[++i];
    }
    return args;
}

int64_t to_int(const std::string& name, const std::string& text)
{
    int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw UsageError("flag --" + name + " expects an integer, got '" + text + "'");
    return value;
}

int64_t need_int(const Args& args, const std::string& name)
{
    auto it = args.values.find(name);
    if (it == args.values.end())
        throw UsageError("missing required flag --" + name);
    return to_int(name, it->second);
}

int64_t get_int(const Args& args, const std::string& name, int64_t fallback)
{
    auto it = args.values.find(name);
    return it == args.values.end() ? fallback : to_int(name, it->second);
}

std::string get_str(const Args& args, const std::string& name, const std::string& fallback)
{
    auto it = args.values.find(name);
    return it == args.values.end() ? fallback : it->second;
}

std::vector<int32_t> to_int_list(const std::string& name, const std::string& text)
{
    std::vector<int32_t> out;
    size_t pos = 0;
    if (text.empty())
        return out;
    while (true) {
        int32_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc())
            throw UsageError("flag --" + name + " expects a comma-separated integer list");
        out.push_back(value);
        pos = size_t(ptr - text.data());
        if (pos == text.size())
            break;
        if (text[pos] != ',')
            throw UsageError("flag --" + name + ": bad separator in '" + text + "'");
        ++pos;
    }
    return out;
}

Rational parse_eps(const std::string& text)
{
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return Rational::of(to_int("eps", text), 1);
    return Rational::of(to_int("eps", text.substr(0, slash)),
                        to_int("eps", text.substr(slash + 1)));
}

int jobs_flag(const Args& args)
{
    return int(get_int(args, "jobs", std::min(default_jobs(), 8)));
}

DimCache make_cache(const Args& args)
{
    return DimCache(DimCache::resolve_dir(get_str(args, "cache-dir", ""),
                                          args.switches.count("no-cache") > 0));
}

uint32_t prime_flag(const Args& args)
{
    int64_t p = need_int(args, "p");
    if (p < 2 || !is_prime(uint32_t(p)))
        throw UsageError("--p must be a prime");
    return uint32_t(p);
}

int cmd_basis(const Args& args)
{
    uint32_t p = prime_flag(args);
    int n = int(need_int(args, "n"));
    int64_t w = need_int(args, "w");
    std::optional<int64_t> t;
    if (args.values.count("t"))
        t = need_int(args, "t");
    auto monomials = enumerate_basis(p, n, w, t);
    std::string format = get_str(args, "format", "text");
    if (format == "json") {
        std::cout << basis_to_json(p, n, w, t, monomials);
    }
    else if (format == "csv") {
        std::cout << basis_to_csv(monomials, p);
    }
    else if (format == "text") {
        for (const auto& m : monomials)
            std::cout << monomial_to_text(m) << '\n';
    }
    else {
        throw UsageError("basis: unsupported --format " + format);
    }
    return 0;
}

std::vector<ExtEntry> run_ext_table(const Args& args, uint32_t p, int m, int n, bool odd_only)
{
    int64_t w_min = 0, w_max = 0;
    if (args.values.count("w"))
        w_min = w_max = need_int(args, "w");
    else
        w_max = need_int(args, "wmax");
    int32_t s_min = 0, s_max = 0;
    if (args.values.count("s"))
        s_min = s_max = int32_t(need_int(args, "s"));
    else
        s_max = int32_t(get_int(args, "smax", 10));
    DimCache cache = make_cache(args);
    return ext_table(p, m, n, w_max, s_max, odd_only, jobs_flag(args), cache.lookup(p, m, n),
                     w_min, s_min);
}

int cmd_ext(const Args& args)
{
    uint32_t p = prime_flag(args);
    int m = int(need_int(args, "m"));
    int n = int(need_int(args, "n"));
    auto entries = run_ext_table(args, p, m, n, args.switches.count("odd") > 0);
    std::string format = get_str(args, "format", "json");
    if (format == "json")
        std::cout << ext_entries_to_json(p, m, n, entries);
    else if (format == "csv")
        std::cout << ext_entries_to_csv(entries);
    else
        throw UsageError("ext: unsupported --format " + format);
    return 0;
}

int cmd_chart(const Args& args)
{
    uint32_t p = prime_flag(args);
    int m = int(need_int(args, "m"));
    int n = int(need_int(args, "n"));
    auto entries = run_ext_table(args, p, m, n, true);

    int64_t pw = 1;  // p^{n+1}
    for (int i = 0; i <= n; ++i)
        pw *= p;
    ChartOptions opt;
    opt.s_max = int32_t(get_int(args, "smax", 10));
    opt.line_x0 = 1 - 2 * pw;
    if (args.values.count("eps"))
        opt.eps = parse_eps(args.values.at("eps"));
    opt.x_min = opt.line_x0 - 4;
    opt.x_max = opt.line_x0 + 6;
    for (const auto& e : entries) {
        opt.x_min = std::min(opt.x_min, e.tri.topological() - 1);
        opt.x_max = std::max(opt.x_max, e.tri.topological() + 1);
    }
    opt.x_min = std::max(opt.x_min, get_int(args, "xmin", opt.x_min));
    opt.x_max = std::min(opt.x_max, get_int(args, "xmax", opt.x_max));

    std::string format = get_str(args, "format", "ascii");
    if (format == "ascii")
        std::cout << ascii_chart(entries, opt);
    else if (format == "svg")
        std::cout << svg_chart(entries, opt);
    else
        throw UsageError("chart: unsupported --format " + format);
    return 0;
}

int render_audit(const AuditReport& report, const Args& args)
{
    std::string format = get_str(args, "format", "ascii");
    if (format == "json")
        std::cout << audit_to_json_text(report);
    else if (format == "ascii")
        std::cout << audit_to_table(report);
    else
        throw UsageError("audit: unsupported --format " + format);
    return report.pass ? 0 : 2;
}

int cmd_audit(const std::string& kind, const Args& args)
{
    uint32_t p = prime_flag(args);
    int jobs = jobs_flag(args);
    if (kind == "exactness") {
        return render_audit(audit_exactness(p, int(need_int(args, "n")), need_int(args, "wmax"), jobs),
                            args);
    }
    if (kind == "mainineq") {
        return render_audit(audit_main_inequality(p, int(need_int(args, "m")),
                                                  int(need_int(args, "n")), need_int(args, "wmax"),
                                                  int32_t(get_int(args, "smax", 10)), jobs),
                            args);
    }
    if (kind == "vanishing") {
        return render_audit(audit_vanishing(p, int(need_int(args, "m")), int(need_int(args, "n")),
                                            need_int(args, "wmax"),
                                            int32_t(get_int(args, "smax", 10)), jobs),
                            args);
    }
    if (kind == "degrees") {
        return render_audit(audit_degree_bounds(p, int(need_int(args, "n")), need_int(args, "wmax")),
                            args);
    }
    throw UsageError("audit: unknown kind '" + kind + "' (use exactness|mainineq|vanishing|degrees)");
}

int cmd_phi(const Args& args)
{
    uint32_t p = prime_flag(args);
    int m = int(need_int(args, "m"));
    int n = int(need_int(args, "n"));
    ExponentSeq I(to_int_list("I", get_str(args, "I", "")));
    auto phi = build_phi(p, m, n, I);
    std::cout << phi_to_text(phi) << '\n';
    return 0;
}

int cmd_action(const Args& args)
{
    uint32_t p = prime_flag(args);
    int m = int(need_int(args, "m"));
    int n = int(need_int(args, "n"));
    ExponentSeq I(to_int_list("I", get_str(args, "I", "")));
    Seq x(to_int_list("x", get_str(args, "x", "")));
    auto phi = build_phi(p, m, n, I);
    std::cout << vpoly_to_text(phi_action(phi, x)) << '\n';
    return 0;
}

int cmd_surjectivity(const Args& args)
{
    uint32_t p = prime_flag(args);
    int m = int(need_int(args, "m"));
    int n = int(need_int(args, "n"));
    auto report = surjectivity_matrix(p, m, n, need_int(args, "D"), need_int(args, "k"),
                                      jobs_flag(args));
    std::string format = get_str(args, "format", "csv");
    if (format != "csv")
        throw UsageError("surjectivity: unsupported --format " + format);
    std::cout << surj_to_csv(report);
    return report.pass ? 0 : 2;
}

void print_help()
{
    std::cout << R"(extcalc - exact Ext computations for quotients of the Steenrod algebra

Usage: extcalc <command> [flags]

Commands:
  basis         list A//E(n) monomials of one weight slice
                  --p P --n N --w W [--t T] [--format text|json|csv]
  ext           Ext dimension table over a finite range
                  --p P --m M --n N (--wmax W | --w W) [--smax S | --s S]
                  [--odd] [--format json|csv]
  chart         Adams chart of the odd-class inventory (x = t-s, y = s)
                  --p P --m M --n N --wmax W [--smax S] [--eps A[/B]]
                  [--xmin X --xmax X] [--format ascii|svg]
  audit         finite-range checks; exit code 2 on violations
                  extcalc audit exactness --p P --n N --wmax W
                  extcalc audit mainineq  --p P --m M --n N --wmax W [--smax S]
                  extcalc audit vanishing --p P --m M --n N --wmax W [--smax S]
                  extcalc audit degrees   --p P --n N --wmax W
                  [--format ascii|json]
  phi           build the class with leading term v0^N P^I
                  --p P --m M --n N --I i1,i2,...
  action        evaluate the induced action of phi^I on a v-monomial
                  --p P --m M --n N --I i1,... --x r0,r1,...
  surjectivity  triangular action matrix up to a degree cutoff (CSV)
                  --p P --m M --n N --D D --k K
  version, help

Common flags: --jobs N, --cache-dir DIR, --no-cache
Cache dir resolution: --cache-dir, then EXTCALC_CACHE_DIR, then ~/.cache/extcalc.
)";
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc < 2) {
        print_help();
        return 1;
    }
    std::string cmd = argv[1];
    try {
        if (cmd == "help" || cmd == "--help" || cmd == "-h") {
            print_help();
            return 0;
        }
        if (cmd == "version") {
            std::cout << "extcalc 1.0.0\n";
            return 0;
        }
        if (cmd == "basis")
            return cmd_basis(parse_args(argc, argv, 2));
        if (cmd == "ext")
            return cmd_ext(parse_args(argc, argv, 2));
        if (cmd == "chart")
            return cmd_chart(parse_args(argc, argv, 2));
        if (cmd == "audit") {
            if (argc < 3)
                throw UsageError("audit needs a kind: exactness|mainineq|vanishing|degrees");
            return cmd_audit(argv[2], parse_args(argc, argv, 3));
        }
        if (cmd == "phi")
            return cmd_phi(parse_args(argc, argv, 2));
        if (cmd == "action")
            return cmd_action(parse_args(argc, argv, 2));
        if (cmd == "surjectivity")
            return cmd_surjectivity(parse_args(argc, argv, 2));
        throw UsageError("unknown command '" + cmd + "'");
    }
    catch (const UsageError& e) {
        std::cerr << "extcalc: " << e.what() << "\nRun 'extcalc help' for usage.\n";
        return 1;
    }
    catch (const std::exception& e) {
        std::cerr << "extcalc: " << e.what() << '\n';
        return 1;
    }
}
