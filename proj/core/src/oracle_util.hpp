#pragma once
// Shared helpers for the oracle sources; not installed.

#include <chrono>

#include "cmlab/oracle.hpp"

namespace cmlab::oracle_detail {

// Size of C_{delta,phi}(N) by counting unit norms directly.
u64 raw_cartan_count(const CartanShape& s);
bool raw_cartan_pattern(const Mat2& m, const CartanShape& s);
// Group generated by `gens` and every element of `extra`, adding only the missing ones.
Subgroup closure_of_set(std::vector<Mat2> gens, const std::vector<Mat2>& extra, u32 level);
// Elementwise reduction mod m (independent of reduce_mod).
Subgroup project(const Subgroup& g, u32 m);
// Stable under conjugation by c_phi, which acts on the Cartan as complex conjugation.
bool cc_stable(const Subgroup& h, const CartanShape& s);

class Timer {
public:
    explicit Timer(LemmaReport& r);
    ~Timer();
    Timer(const Timer&) = delete;
    Timer& operator=(const Timer&) = delete;

private:
    LemmaReport& r_;
    std::chrono::steady_clock::time_point t0_;
};

LemmaReport make_report(const std::string& id, std::vector<std::pair<std::string, i64>> params);
std::vector<std::pair<std::string, i64>> order_params(const OrderDesc& o, u64 p, int n);

}  // namespace cmlab::oracle_detail
