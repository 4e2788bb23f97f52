#pragma once
// Brute-force re-verification of the group-theoretic statements at finite levels.
// Every check enumerates independently of the construction it tests.

#include <string>
#include <utility>
#include <vector>

#include "cmlab/cartan.hpp"
#include "cmlab/manifest.hpp"
#include "cmlab/subgrp.hpp"

namespace cmlab {

struct LemmaReport {
    std::string lemma_id;
    std::vector<std::pair<std::string, i64>> params;  // (disc, f, p, n, delta, phi, level) as applicable
    bool pass = true;
    std::string witness;              // set whenever pass is false
    std::vector<std::string> notes;   // measured data that is logged, not asserted
    double elapsed_ms = 0;

    // The first failure is the witness; later ones go to notes.
    void fail(const std::string& w) {
        if (pass)
            witness = w;
        else
            notes.push_back("also failed: " + w);
        pass = false;
    }
    void expect(bool ok, const std::string& w) {
        if (!ok) fail(w);
    }
};

std::string witness_text(const Mat2& m);
std::string witness_text(const Subgroup& g);

// {g in GL(2, Z/NZ) : g sub g^-1 = sub}, by full scan.
Subgroup brute_normalizer(const Subgroup& sub);

std::vector<LemmaReport> verify_order_formula(const OrderDesc& order, u64 p, u32 max_level);
LemmaReport verify_crt(const OrderDesc& order, u32 m1, u32 m2);
LemmaReport verify_weber(const OrderDesc& order, u32 level);
LemmaReport verify_cartan_model(const OrderDesc& order, u32 level);

std::vector<LemmaReport> verify_normalizer_props(u64 p, int n);
// Kernel of GL(2, p^{n+1}) -> GL(2, p^n) and its intersection with the Cartan of `shape`
// (shape at level p^{n+1}; p odd requires phi = 0).
LemmaReport verify_kernel_lemma(u64 p, int n, const CartanShape& shape);
LemmaReport verify_cc_identities(u64 p, int n, u32 delta);
// Conjugators from c_{-1} to c_1 in GL(2, p^n): the antidiagonal units for odd p; logged at p = 2.
LemmaReport verify_cc_conjugators(u64 p, int n);
// No conjugator from c_1 to c_{-1} inside N_{delta,0}(p^n) when p | delta.
LemmaReport verify_cc_conjugators_ramified(const OrderDesc& order, u64 p, int n);
// Shape at level p (odd p) or 4 (p = 2).
LemmaReport verify_insidecartan_constraint(const CartanShape& shape, u64 p);

// `special_max_n` bounds the j = 0 / 1728 statements (defaults to max_n).
std::vector<LemmaReport> verify_structure_theorems(const OrderDesc& order, u64 p, int max_n, int special_max_n = -1);
std::vector<LemmaReport> verify_subgroup_lemmas(const OrderDesc& order, u64 p, int max_n, int special_max_n = -1);
std::vector<LemmaReport> verify_classification_consistency(const OrderDesc& order, u64 p, int n);

LemmaReport verify_divpoly_identity();
// Reduced psi_m vanishes at x(P) iff [m]P = O, over every curve y^2 = x^3 + Ax + B mod p.
LemmaReport verify_divpoly_points(u64 p, int max_m);

// Lemma ids in suite order.
const std::vector<std::string>& lemma_ids();

struct SuiteOptions {
    std::string lemma;      // empty runs everything
    unsigned threads = 0;   // 0 = hardware concurrency
};
// Throws UsageError for an unknown lemma id.
std::vector<LemmaReport> run_suite(const Grid& grid, const SuiteOptions& opt = {});
bool all_pass(const std::vector<LemmaReport>& reports);

}  // namespace cmlab
