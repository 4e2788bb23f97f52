// One PASS/FAIL line per acceptance criterion, exact equality throughout.
//
// Three subgroup-lemma clauses have genuine counterexamples (see README, "Known
// counterexamples"). Criteria 4 and 9 therefore print FAIL. The process still exits 0
// when the failing reports are exactly that documented set and nothing else fails.

#include <cmlab/cartan.hpp>
#include <cmlab/classify.hpp>
#include <cmlab/divpoly.hpp>
#include <cmlab/manifest.hpp>
#include <cmlab/oracle.hpp>
#include <cmlab/serialize.hpp>
#include <cmlab/subgrp.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace cmlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

i64 param(const LemmaReport& r, const std::string& k) {
    for (const auto& [key, v] : r.params)
        if (key == k) return v;
    return 0;
}

struct Known {
    std::string lemma;
    i64 disc, f, p, n;
    std::string witness_prefix;
};

std::vector<Known> known_counterexamples() {
    std::vector<Known> v;
    const std::string idx2 = "(4) subgroups exist although disc_K is not 0 mod 8";
    for (i64 d : {-4, -20})
        for (i64 n = 3; n <= 6; ++n) v.push_back({"2adicindex2", d, 4, 2, n, idx2});
    for (i64 n : {3, 4}) v.push_back({"subgroups-jzero-3adic", -3, 1, 3, n, "(3) zeta_3"});
    for (i64 n : {4, 5}) v.push_back({"subgroups-j1728", -4, 1, 2, n, "(3) tau"});
    return v;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// Failures are "documented" when they match the known list exactly, including every
// secondary failure recorded in the notes.
struct Tally {
    std::size_t total = 0, failed = 0, documented = 0;
    std::vector<std::string> undocumented, documented_list;
    bool only_documented() const { return undocumented.empty(); }
};

Tally tally(const std::vector<LemmaReport>& reps, bool expect_all_known) {
    Tally t;
    const auto known = known_counterexamples();
    std::set<std::size_t> seen;
    std::set<std::string> ids;
    for (const auto& r : reps) {
        ids.insert(r.lemma_id);
        ++t.total;
        if (r.pass) continue;
        ++t.failed;
        bool ok = false;
        for (std::size_t i = 0; i < known.size(); ++i) {
            const auto& k = known[i];
            if (r.lemma_id != k.lemma || param(r, "disc") != k.disc || param(r, "f") != k.f ||
                param(r, "p") != k.p || param(r, "n") != k.n || !starts_with(r.witness, k.witness_prefix))
                continue;
            ok = std::all_of(r.notes.begin(), r.notes.end(), [&](const std::string& note) {
                return !starts_with(note, "also failed: ") || starts_with(note.substr(13), k.witness_prefix);
            });
            if (ok) seen.insert(i);
            break;
        }
        if (ok) {
            ++t.documented;
            t.documented_list.push_back(r.lemma_id + " disc=" + std::to_string(param(r, "disc")) + " f=" +
                                        std::to_string(param(r, "f")) + " p=" + std::to_string(param(r, "p")) +
                                        " n=" + std::to_string(param(r, "n")) + ": " + r.witness);
        }
        else
            t.undocumented.push_back(r.lemma_id + ": " + r.witness);
    }
    // a documented counterexample that disappeared is also a change worth flagging
    if (expect_all_known)
        for (std::size_t i = 0; i < known.size(); ++i)
            if (ids.count(known[i].lemma) && !seen.count(i))
                t.undocumented.push_back("documented counterexample not reproduced: " + known[i].lemma + " disc=" +
                                         std::to_string(known[i].disc) + " n=" + std::to_string(known[i].n));
    return t;
}

std::vector<LemmaReport> run(const Grid& g, std::initializer_list<const char*> ids) {
    std::vector<LemmaReport> out;
    for (const char* id : ids) {
        auto v = run_suite(g, SuiteOptions{id, 0});
        out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    }
    return out;
}

int exit_status = 0;

void line(int k, bool pass, const std::string& what, bool acceptable = false) {
    std::printf("criterion %d: %s  %s\n", k, pass ? "PASS" : "FAIL", what.c_str());
    if (!pass && !acceptable) exit_status = 1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return in ? ss.str() : std::string();
}

std::string summary(const Tally& t, double secs) {
    std::ostringstream os;
    os << t.total << " reports, " << t.failed << " failed";
    if (t.failed) os << " (" << t.documented << " documented counterexamples)";
    os.setf(std::ios::fixed);
    os.precision(1);
    os << ", " << secs << " s";
    return os.str();
}

void report_undocumented(const Tally& t) {
    for (const auto& u : t.undocumented) std::printf("    undocumented: %s\n", u.c_str());
}

}  // namespace

int main() {
    const Grid g;

    {  // 1
        const auto t0 = Clock::now();
        const auto reps = run(g, {"order-formula"});
        const double s = seconds_since(t0);
        const Tally t = tally(reps, false);
        line(1, t.failed == 0 && s < 60, "order formulas and p^2 level ratio: " + summary(t, s));
        report_undocumented(t);
    }
    {  // 2
        const auto t0 = Clock::now();
        auto reps = run(g, {"normalizer-modp", "normalizer-modpn"});
        const bool gl2 = normalizer_group(shape_from_params(1, 1, 2)).order() == 6 &&
                         brute_normalizer(cartan_group(shape_from_params(1, 1, 2))).order() == 6;
        const double s = seconds_since(t0);
        const Tally t = tally(reps, false);
        line(2, t.failed == 0 && gl2 && s < 120,
             "normalizers vs full GL(2) scan" + std::string(gl2 ? ", delta=phi=1 mod 2 gives order 6: " : ": ") +
                 summary(t, s));
        report_undocumented(t);
    }
    {  // 3
        const auto t0 = Clock::now();
        const auto reps = run(g, {"2adiccartan", "cartan-jzero", "2adiccartanj1728", "2adiccartanjzero"});
        const Tally t = tally(reps, false);
        line(3, t.failed == 0, "unit-group structure theorems: " + summary(t, seconds_since(t0)));
        report_undocumented(t);
    }
    Tally sub;
    {  // 4
        const auto t0 = Clock::now();
        const auto reps = run(g, {"2adicindex2", "subgroups-jzero-3adic", "subgroups-j1728", "subgroups-jzero-2adic"});
        sub = tally(reps, true);
        line(4, sub.failed == 0, "subgroup lemmas: " + summary(sub, seconds_since(t0)), sub.only_documented());
        for (const auto& d : sub.documented_list) std::printf("    documented: %s\n", d.c_str());
        report_undocumented(sub);
    }
    {  // 5
        const auto t0 = Clock::now();
        struct Key {
            i64 d, f;
            u64 p;
            int n;
        };
        const std::vector<Key> keys = {{-3, 1, 3, 2}, {-4, 1, 2, 4}, {-3, 1, 2, 4}, {-8, 1, 2, 3},
                                       {-4, 2, 2, 4}, {-7, 1, 5, 1}, {-3, 1, 7, 1}, {-3, 1, 5, 1}};
        std::size_t matched = 0, files = 0;
        bool elkies_ok = false, jp_ok = false;
        std::vector<std::string> bad;
        for (const auto& k : keys) {
            const auto cands = classify(OrderDesc{k.d, k.f}, k.p, k.n);
            std::vector<CheckReport> checks;
            for (const auto& c : cands) checks.push_back(candidate_check(c));
            const std::string stem = std::string(CMLAB_SOURCE_DIR) + "/golden/classify/d" + std::to_string(k.d) +
                                     "_f" + std::to_string(k.f) + "_p" + std::to_string(k.p) + "_n" +
                                     std::to_string(k.n);
            for (const auto& [ext, text] : {std::pair<std::string, std::string>{".json", candidates_to_json(cands, checks)},
                                            {".txt", candidates_to_text(cands, checks)}}) {
                ++files;
                if (read_file(stem + ext) == text)
                    ++matched;
                else
                    bad.push_back(stem + ext);
            }
            if (k.d == -3 && k.p == 3) {
                const Subgroup N3 = normalizer_group(cartan_params(OrderDesc{-3, 1}, 3));
                int e = 0;
                bool ok = true;
                for (const auto& c : cands)
                    if (c.label.find("elkies3") != std::string::npos) {
                        ++e;
                        ok = ok && c.level == 9 && c.index_in_normalizer == 3 && reduce_mod(c.group, 3) == N3;
                    }
                elkies_ok = ok && e == 2;
            }
            if (k.d == -8) {
                const Subgroup C8 = cartan_group(cartan_params(OrderDesc{-8, 1}, 8));
                const Subgroup C4 = cartan_group(cartan_params(OrderDesc{-8, 1}, 4));
                int j = 0;
                bool ok = true;
                for (const auto& c : cands)
                    if (c.label.rfind("2adic.Jp", 0) == 0) {
                        ++j;
                        ok = ok && index_in(c.cartan_part, C8) == 2 && reduce_mod(c.cartan_part, 4) == C4;
                    }
                jp_ok = ok && j >= 1;
            }
        }
        std::ostringstream os;
        os << "classification goldens: " << matched << "/" << files << " files byte-identical, Elkies-analog index 3 at level 9 onto N(3): "
           << (elkies_ok ? "yes" : "no") << ", J' index 2 in C(8) and onto C(4): " << (jp_ok ? "yes" : "no");
        os.setf(std::ios::fixed);
        os.precision(1);
        os << ", " << seconds_since(t0) << " s";
        line(5, matched == files && elkies_ok && jp_ok, os.str());
        for (const auto& b : bad) std::printf("    mismatch: %s\n", b.c_str());
    }
    {  // 6
        const auto t0 = Clock::now();
        const auto reps = run(g, {"cc-identities", "cc-conjugators"});
        const Tally t = tally(reps, false);
        line(6, t.failed == 0, "complex-conjugation identities and conjugators: " + summary(t, seconds_since(t0)));
        report_undocumented(t);
    }
    {  // 7
        const auto rep = verify_j0_quartic();
        bool sum = false, prod = false;
        for (const auto& c : rep.checks) {
            if (c.name == "resolvent-sum") sum = c.pass && c.detail == "-20*s";
            if (c.name == "resolvent-product") prod = c.pass && c.detail == "-8*s^2";
        }
        const bool q = rep.quotient == "x^6 + 20*s*x^3 - 8*s^2";
        line(7, rep.pass && q && sum && prod,
             "psi_4/psi_2 = " + rep.quotient + ", resolvent sum -20s: " + (sum ? "yes" : "no") +
                 ", product -8s^2: " + (prod ? "yes" : "no"));
    }
    {  // 8
        const auto t0 = Clock::now();
        const auto reps = run(g, {"classification"});
        const Tally t = tally(reps, false);
        line(8, t.failed == 0, "candidate_check on every classify output over the grid: " + summary(t, seconds_since(t0)));
        report_undocumented(t);
    }
    {  // 9
        const auto t0 = Clock::now();
        const auto reps = run_suite(g, SuiteOptions{});
        const double s = seconds_since(t0);
        const Tally t = tally(reps, true);
        line(9, t.failed == 0 && s < 300,
             "full default verify suite: " + summary(t, s) + (t.documented ? ", the criterion 4 set" : ""),
             t.only_documented() && s < 300);
        report_undocumented(t);
    }
    if (!sub.only_documented()) exit_status = 1;
    std::printf("exit status %d: %s\n", exit_status,
                exit_status ? "an undocumented failure occurred"
                            : "every failure is one of the documented counterexamples");
    return exit_status;
}
