#pragma once
// Parameter grid for the verification suite, loaded from a small TOML subset.

#include <map>
#include <string>
#include <vector>

#include "cmlab/modmat.hpp"

namespace cmlab {

struct Grid {
    std::vector<i64> discriminants{-3, -4, -7, -8, -11, -15, -19, -20, -24, -40};
    std::vector<i64> conductors{1, 2, 3, 4, 5, 6};

    std::vector<u64> order_primes{2, 3, 5, 7};
    u32 order_max_level = 128;
    std::vector<u32> model_levels{2, 3, 4, 5, 6, 7, 8, 9, 12, 16};

    std::vector<u64> normalizer_modp_primes{2, 3, 5, 7, 11, 13};
    std::vector<u64> normalizer_modpn_primes{2, 3};
    int normalizer_modpn_max_exponent = 3;

    std::vector<u64> kernel_primes{2, 3, 5};
    int kernel_max_exponent = 2;

    std::vector<u64> cc_primes{3, 5, 7};
    int cc_max_exponent = 2;
    int cc_two_adic_max_exponent = 3;

    std::vector<u64> insidecartan_primes{2, 3, 5, 7};

    int structure_two_adic_max_exponent = 7;
    int structure_three_adic_max_exponent = 4;
    int j1728_max_exponent = 5;
    int j0_two_adic_max_exponent = 5;

    int index2_max_exponent = 6;
    int subgroups_three_adic_max_exponent = 4;
    int subgroups_j1728_max_exponent = 5;
    int subgroups_j0_two_adic_max_exponent = 5;

    // Largest exponent classified per prime.
    std::map<u64, int> classify_max_exponent{{2, 5}, {3, 3}, {5, 2}, {7, 2}, {11, 1}, {13, 1}};

    std::vector<u64> divpoly_primes{5, 7, 11};
    int divpoly_max_m = 8;
};

// Throws UsageError on syntax errors or unknown keys; missing keys keep their defaults.
Grid parse_grid(const std::string& text);
Grid load_grid(const std::string& path);
std::string grid_to_toml(const Grid& g);

}  // namespace cmlab
