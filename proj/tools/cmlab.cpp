// cmlab: Cartan data, candidate images, the verification suite, division polynomials, tables.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "cmlab/cartan.hpp"
#include "cmlab/classify.hpp"
#include "cmlab/divpoly.hpp"
#include "cmlab/manifest.hpp"
#include "cmlab/oracle.hpp"
#include "cmlab/serialize.hpp"

using namespace cmlab;

namespace {


u64 parse_cap(const std::string& text, const char* source) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(text, &pos, 0);
        if (pos != text.size() || v <= 0) throw std::invalid_argument(text);
        if (u64(v) > kHardCap) throw UsageError(std::string(source) + " exceeds the hard cap 2^26");
        return u64(v);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError(std::string(source) + ": not a positive integer: " + text);
    }
}

// flag > CMLAB_CAP > default
u64 resolve_cap(const std::optional<std::string>& flag) {
    if (flag) return parse_cap(*flag, "--cap");
    if (const char* env = std::getenv("CMLAB_CAP"); env && *env) return parse_cap(env, "CMLAB_CAP");
    return kDefaultCap;
}

std::vector<int> parse_range(const std::string& s) {
    std::vector<int> out;
    const auto dash = s.find('-', 1);
    try {
        if (dash == std::string::npos) {
            out.push_back(std::stoi(s));
        } else {
            const int a = std::stoi(s.substr(0, dash)), b = std::stoi(s.substr(dash + 1));
            for (int n = a; n <= b; ++n) out.push_back(n);
        }
    } catch (const std::exception&) {
        throw UsageError("bad exponent range '" + s + "'");
    }
    if (out.empty() || out.front() < 1) throw UsageError("exponents must be >= 1");
    return out;
}

void check_prime_power(u64 p, int n) {
    if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
    if (n < 1) throw UsageError("exponent must be >= 1");
    u64 q = 1;
    for (int i = 0; i < n; ++i) {
        q *= p;
        if (q > kMaxLevel) throw TooLarge("level " + std::to_string(p) + "^" + std::to_string(n) + " is too large");
    }
}

std::string ints_text(const std::vector<u64>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

std::string mats(const std::vector<Mat2>& ms) {
    std::string s;
    for (std::size_t i = 0; i < ms.size(); ++i) s += (i ? " | " : "") + to_text(ms[i]);
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cmlab: Cartan subgroups, normalizers and CM Galois image candidates"};
    app.require_subcommand(1);
    std::optional<std::string> cap;
    app.add_option("--cap", cap, "enumeration cap in group elements (max 2^26)");

    bool json = false, dump = false;

    auto* cartan = app.add_subcommand("cartan", "Cartan subgroup and normalizer data");
    i64 disc = 0, conductor = 1;
    u32 level = 2;
    bool with_normalizer = false;
    cartan->add_option("--disc", disc, "fundamental discriminant")->required();
    cartan->add_option("--conductor", conductor, "conductor f")->default_val(1);
    cartan->add_option("--level", level, "level N")->required();
    cartan->add_flag("--normalizer", with_normalizer, "also print the normalizer");
    cartan->add_flag("--json", json);
    cartan->add_flag("--dump-elements", dump);

    auto* cls = app.add_subcommand("classify", "candidate images at level p^n");
    u64 prime = 2;
    int exponent = 1;
    cls->add_option("--disc", disc, "fundamental discriminant")->required();
    cls->add_option("--conductor", conductor, "conductor f")->default_val(1);
    cls->add_option("--prime", prime)->required();
    cls->add_option("--exponent", exponent)->required();
    cls->add_flag("--json", json);
    cls->add_flag("--dump-elements", dump);

    auto* ver = app.add_subcommand("verify", "run the verification suite");
    std::string lemma, grid_path;
    unsigned threads = 0;
    bool no_timing = false, list = false, print_grid = false;
    ver->add_option("--lemma", lemma, "run only this lemma id");
    ver->add_option("--grid", grid_path, "parameter grid (TOML)");
    ver->add_option("--threads", threads, "worker threads (0 = all cores)");
    ver->add_flag("--no-timing", no_timing, "omit elapsed times");
    ver->add_flag("--list", list, "list lemma ids");
    ver->add_flag("--print-grid", print_grid, "print the effective grid as TOML and exit");
    ver->add_flag("--json", json);

    auto* dp = app.add_subcommand("divpoly", "reduced division polynomials of y^2 = x^3 + Ax + B");
    std::string a_text = "0", b_text = "s";
    int m = 2;
    bool check = false;
    dp->add_option("--a", a_text, "A as c0+c1*s, e.g. 0, s, 1-2s")->default_val("0");
    dp->add_option("--b", b_text, "B as c0+c1*s")->default_val("s");
    dp->add_option("--m", m, "index m >= 0")->default_val(2);
    dp->add_flag("--check", check, "verify the j = 0 quartic identity");

    auto* tab = app.add_subcommand("table", "classification table, one row per candidate");
    std::vector<i64> discs, conductors{1};
    std::vector<u64> primes;
    std::string exps = "1";
    tab->add_option("--disc", discs, "discriminants (comma separated)")->required()->delimiter(',');
    tab->add_option("--conductor", conductors, "conductors (comma separated)")->delimiter(',');
    tab->add_option("--prime", primes, "primes (comma separated)")->required()->delimiter(',');
    tab->add_option("--exponent", exps, "exponent or range a-b")->default_val("1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::ostream& out = std::cout;
    try {
        set_enumeration_cap(resolve_cap(cap));
        const RenderOptions ropt{dump, !no_timing};

        if (cartan->parsed()) {
            const OrderDesc o{disc, conductor};
            validate(o);
            if (level < 2 || level > kMaxLevel) throw UsageError("level must be in [2, 65536]");
            const auto s = cartan_params(o, level);
            const Subgroup C = cartan_group(s);
            std::optional<Subgroup> Nz;
            if (with_normalizer) Nz = normalizer_group(s);
            if (json) {
                out << shape_to_json(o, s, C, Nz, ropt);
            } else {
                out << "order: disc " << o.disc_K << ", conductor " << o.conductor << "\n";
                out << "level " << level << ": delta " << s.delta << ", phi " << s.phi << "\n";
                for (auto [p, e] : factorize(level)) out << "class at " << p << ": " << to_string(conj_class(s, p)) << "\n";
                out << "cartan: order " << C.order() << ", invariants " << ints_text(abelian_invariants(C)) << "\n";
                out << "generators: " << mats(C.generators()) << "\n";
                out << "weber quotient order: " << weber_quotient_order(o, level) << "\n";
                if (Nz) out << "normalizer: order " << Nz->order() << ", generators " << mats(Nz->generators()) << "\n";
                if (dump)
                    for (const auto& x : C.elements()) out << "  " << to_text(x) << "\n";
            }
            return 0;
        }
        if (cls->parsed()) {
            const OrderDesc o{disc, conductor};
            validate(o);
            check_prime_power(prime, exponent);
            const auto cands = classify(o, prime, exponent);
            std::vector<CheckReport> checks;
            bool ok = true;
            for (const auto& c : cands) {
                checks.push_back(candidate_check(c));
                ok = ok && checks.back().pass;
            }
            out << (json ? candidates_to_json(cands, checks, ropt) : candidates_to_text(cands, checks));
            return ok ? 0 : 1;
        }
        if (ver->parsed()) {
            if (list) {
                for (const auto& id : lemma_ids()) out << id << "\n";
                return 0;
            }
            const Grid g = grid_path.empty() ? Grid{} : load_grid(grid_path);
            if (print_grid) {
                out << grid_to_toml(g);
                return 0;
            }
            const auto reports = run_suite(g, SuiteOptions{lemma, threads});
            out << (json ? reports_to_json(reports, ropt) : reports_to_text(reports, ropt));
            std::size_t failed = 0;
            for (const auto& r : reports) failed += !r.pass;
            if (!json) out << reports.size() << " reports, " << failed << " failed\n";
            return failed ? 1 : 0;
        }
        if (dp->parsed()) {
            if (check) {
                const auto rep = verify_j0_quartic();
                out << "quotient: " << rep.quotient << "\n";
                for (const auto& c : rep.checks) out << (c.pass ? "pass " : "FAIL ") << c.name << ": " << c.detail << "\n";
                return rep.pass ? 0 : 1;
            }
            if (m < 0) throw UsageError("m must be >= 0");
            out << division_poly(parse_param(a_text), parse_param(b_text), m).to_string() << "\n";
            return 0;
        }
        if (tab->parsed()) {
            const auto ns = parse_range(exps);
            out << "# disc f p n | label | index | generators | condition\n";
            for (i64 d : discs)
                for (i64 f : conductors) {
                    const OrderDesc o{d, f};
                    validate(o);
                    for (u64 p : primes)
                        for (int n : ns) {
                            try {
                                check_prime_power(p, n);
                                out << table_rows(classify(o, p, n));
                            } catch (const TooLarge& e) {
                                out << "# skipped " << d << " " << f << " " << p << " " << n << ": " << e.what() << "\n";
                            }
                        }
                }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const InvalidOrder& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const TooLarge& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
