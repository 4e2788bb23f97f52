#pragma once
#include <cmlab/cartan.hpp>
#include <cmlab/modmat.hpp>
#include <cmlab/subgrp.hpp>

namespace testutil {
using namespace cmlab;

inline CartanShape shape(i64 disc, i64 f, u32 level) { return cartan_params(OrderDesc{disc, f}, level); }
inline Subgroup C(i64 disc, i64 f, u32 level) { return cartan_group(shape(disc, f, level)); }
inline Subgroup N(i64 disc, i64 f, u32 level) { return normalizer_group(shape(disc, f, level)); }

}  // namespace testutil
