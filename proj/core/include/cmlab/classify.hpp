#pragma once
// Candidate p-adic images at level p^n for CM orders.

#include <optional>
#include <string>
#include <vector>

#include "cmlab/cartan.hpp"
#include "cmlab/subgrp.hpp"

namespace cmlab {

enum class Frame { delta_phi, split_diagonal };
std::string to_string(Frame f);

struct ImageCandidate {
    std::string label;
    std::vector<std::string> aliases;  // variants that gave literally the same group
    OrderDesc order;
    u64 p = 2;
    int n = 1;
    u32 level = 2;
    CartanShape shape;
    Frame frame = Frame::delta_phi;
    std::string condition;
    std::string note;

    Subgroup group;
    Subgroup cartan_part;
    std::vector<Mat2> generators;
    std::vector<Mat2> cartan_part_generators;
    Mat2 cc_element;
    u64 index_in_normalizer = 1;

    // Index in the frame normalizer asserted at this level, when the statement covers it.
    std::optional<u64> stated_index;
    // The group is the full preimage of its reduction mod p^defining_exponent.
    int defining_exponent = 1;
    // Generators exactly as printed; their closure must be the group (empty if set-defined).
    std::vector<Mat2> stated_generators;
};

std::vector<ImageCandidate> classify(const OrderDesc& order, u64 p, int n);

// Diagonal units, and diagonal plus antidiagonal units, at a level.
Subgroup split_cartan_group(u32 level);
Subgroup split_normalizer_group(u32 level);
Subgroup frame_normalizer(const ImageCandidate& c);
Subgroup frame_cartan(const ImageCandidate& c);

// P with P^{-1} C_{delta,0}(N) P = diagonal units; needs delta a unit square mod p^n at odd p.
Mat2 split_frame_conjugator(const CartanShape& s, u64 p, int n);

struct CheckItem {
    std::string name;
    bool applicable = true;
    bool pass = true;
    std::string detail;
};

struct CheckReport {
    bool pass = true;
    std::vector<CheckItem> items;
};

CheckReport candidate_check(const ImageCandidate& c);

}  // namespace cmlab
