#pragma once
// JSON and text renderings of subgroups, candidates and lemma reports.

#include <optional>
#include <string>
#include <vector>

#include "cmlab/cartan.hpp"
#include "cmlab/classify.hpp"
#include "cmlab/subgrp.hpp"

namespace cmlab {

struct LemmaReport;

struct RenderOptions {
    bool dump_elements = false;
    bool include_elapsed = true;
};

// {level, order, generators[], invariants[]?, elements[]?}
std::string subgroup_to_json(const Subgroup& g, const RenderOptions& opt = {});
std::string shape_to_json(const OrderDesc& order, const CartanShape& s, const Subgroup& g,
                          const std::optional<Subgroup>& normalizer, const RenderOptions& opt = {});
std::string candidates_to_json(const std::vector<ImageCandidate>& cands,
                               const std::vector<CheckReport>& checks, const RenderOptions& opt = {});
std::string reports_to_json(const std::vector<LemmaReport>& reports, const RenderOptions& opt = {});

std::string candidates_to_text(const std::vector<ImageCandidate>& cands,
                               const std::vector<CheckReport>& checks);
std::string reports_to_text(const std::vector<LemmaReport>& reports, const RenderOptions& opt = {});
// One line per candidate: label | index | generators | condition.
std::string table_rows(const std::vector<ImageCandidate>& cands);

struct ParsedCandidate {
    std::string label;
    u32 level = 2;
    u64 order = 0;
    std::vector<Mat2> generators;
    Mat2 cc_element;
    std::vector<Mat2> elements;  // present only in --dump-elements output
};
// Throws UsageError on malformed input.
std::vector<ParsedCandidate> parse_candidates_json(const std::string& text);

}  // namespace cmlab
