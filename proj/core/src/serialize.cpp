#include "cmlab/serialize.hpp"

#include <cmath>
#include <json.hpp>
#include <sstream>

#include "cmlab/oracle.hpp"

namespace cmlab {
namespace {

using nlohmann::json;

json mat_json(const Mat2& m) {
    return json::array({json::array({m.a11, m.a12}), json::array({m.a21, m.a22})});
}

json mats_json(const std::vector<Mat2>& ms) {
    json a = json::array();
    for (const auto& m : ms) a.push_back(mat_json(m));
    return a;
}

json subgroup_json(const Subgroup& g, const RenderOptions& opt, bool with_invariants) {
    json j;
    j["level"] = g.level();
    j["order"] = g.order();
    j["generators"] = mats_json(g.generators());
    if (with_invariants) j["invariants"] = abelian_invariants(g);
    if (opt.dump_elements) j["elements"] = mats_json(g.elements());
    return j;
}

bool is_flat(const json& j) {
    if (!j.is_array()) return !j.is_object();
    for (const auto& x : j)
        if (x.is_object() || (x.is_array() && !is_flat(x))) return false;
    return true;
}

// Pretty printer that keeps matrices and short scalar arrays on one line.
void render(const json& j, std::string& out, int depth) {
    const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + json(it.key()).dump() + ": ";
            render(it.value(), out, depth + 1);
        }
        out += "\n" + close + "}";
    } else if (j.is_array() && !is_flat(j)) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += pad;
            render(j[i], out, depth + 1);
        }
        out += "\n" + close + "]";
    } else if (j.is_array() && j.size() > 1 && j[0].is_array() && j[0].size() == 2 && j[0][0].is_array()) {
        // list of matrices: one per line
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ",\n" : "") + pad + j[i].dump();
        out += "\n" + close + "]";
    } else {
        out += j.dump();
    }
}

std::string pretty(const json& j) {
    std::string s;
    render(j, s, 0);
    return s + "\n";
}

json check_json(const CheckReport& r) {
    json items = json::array();
    for (const auto& it : r.items) {
        json x;
        x["name"] = it.name;
        x["status"] = !it.applicable ? "n/a" : it.pass ? "pass" : "fail";
        x["detail"] = it.detail;
        items.push_back(x);
    }
    json j;
    j["pass"] = r.pass;
    j["items"] = items;
    return j;
}

json candidate_json(const ImageCandidate& c, const CheckReport* chk, const RenderOptions& opt) {
    json j;
    j["label"] = c.label;
    j["aliases"] = c.aliases;
    j["disc"] = c.order.disc_K;
    j["conductor"] = c.order.conductor;
    j["p"] = c.p;
    j["n"] = c.n;
    j["level"] = c.level;
    j["frame"] = to_string(c.frame);
    j["delta"] = c.shape.delta;
    j["phi"] = c.shape.phi;
    j["condition"] = c.condition;
    if (!c.note.empty()) j["note"] = c.note;
    j["order"] = c.group.order();
    j["index_in_normalizer"] = c.index_in_normalizer;
    j["stated_index"] = c.stated_index ? json(*c.stated_index) : json(nullptr);
    j["defining_exponent"] = c.defining_exponent;
    j["generators"] = mats_json(c.generators);
    j["stated_generators"] = mats_json(c.stated_generators);
    j["cartan_part_generators"] = mats_json(c.cartan_part_generators);
    j["cc_element"] = mat_json(c.cc_element);
    j["cartan_part"] = subgroup_json(c.cartan_part, RenderOptions{}, true);
    if (opt.dump_elements) j["elements"] = mats_json(c.group.elements());
    if (chk) j["check"] = check_json(*chk);
    return j;
}

std::string mats_text(const std::vector<Mat2>& ms) {
    std::string s;
    for (std::size_t i = 0; i < ms.size(); ++i) s += (i ? " | " : "") + to_text(ms[i]);
    return s.empty() ? "-" : s;
}

std::string ints_text(const std::vector<u64>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

Mat2 mat_from_json(const json& j, u32 level) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
        j[1].size() != 2)
        throw UsageError("malformed matrix in candidate JSON");
    return Mat2(j[0][0].get<i64>(), j[0][1].get<i64>(), j[1][0].get<i64>(), j[1][1].get<i64>(), level);
}

}  // namespace

std::string subgroup_to_json(const Subgroup& g, const RenderOptions& opt) {
    return pretty(subgroup_json(g, opt, g.is_abelian()));
}

std::string shape_to_json(const OrderDesc& order, const CartanShape& s, const Subgroup& g,
                          const std::optional<Subgroup>& normalizer, const RenderOptions& opt) {
    json j;
    j["disc"] = order.disc_K;
    j["conductor"] = order.conductor;
    j["level"] = s.level;
    j["delta"] = s.delta;
    j["phi"] = s.phi;
    json classes = json::object();
    for (auto [p, e] : factorize(s.level)) classes[std::to_string(p)] = to_string(conj_class(s, p));
    j["conjugacy_class"] = classes;
    j["cartan"] = subgroup_json(g, opt, true);
    j["weber_quotient_order"] = weber_quotient_order(order, s.level);
    if (normalizer) j["normalizer"] = subgroup_json(*normalizer, opt, false);
    return pretty(j);
}

std::string candidates_to_json(const std::vector<ImageCandidate>& cands,
                               const std::vector<CheckReport>& checks, const RenderOptions& opt) {
    json a = json::array();
    for (std::size_t i = 0; i < cands.size(); ++i)
        a.push_back(candidate_json(cands[i], i < checks.size() ? &checks[i] : nullptr, opt));
    return pretty(a);
}

std::string reports_to_json(const std::vector<LemmaReport>& reports, const RenderOptions& opt) {
    json a = json::array();
    for (const auto& r : reports) {
        json j;
        j["lemma_id"] = r.lemma_id;
        json params = json::object();
        for (const auto& [k, v] : r.params) params[k] = v;
        j["params"] = params;
        j["status"] = r.pass ? "pass" : "fail";
        j["witness"] = r.witness.empty() ? json(nullptr) : json(r.witness);
        j["notes"] = r.notes;
        if (opt.include_elapsed) j["elapsed_ms"] = std::round(r.elapsed_ms * 1000.0) / 1000.0;
        a.push_back(j);
    }
    return pretty(a);
}

std::string candidates_to_text(const std::vector<ImageCandidate>& cands,
                               const std::vector<CheckReport>& checks) {
    std::ostringstream o;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const auto& c = cands[i];
        o << "[" << i + 1 << "] " << c.label;
        if (!c.aliases.empty()) {
            o << " (also:";
            for (const auto& a : c.aliases) o << " " << a;
            o << ")";
        }
        o << "\n";
        o << "  level " << c.level << ", frame " << to_string(c.frame) << ", delta " << c.shape.delta
          << ", phi " << c.shape.phi << "\n";
        o << "  condition: " << c.condition << "\n";
        if (!c.note.empty()) o << "  note: " << c.note << "\n";
        o << "  order " << c.group.order() << ", index in normalizer " << c.index_in_normalizer;
        if (c.stated_index) o << " (stated " << *c.stated_index << ")";
        o << ", defined at exponent " << c.defining_exponent << "\n";
        o << "  generators: " << mats_text(c.generators) << "\n";
        o << "  cartan part: order " << c.cartan_part.order() << ", invariants "
          << ints_text(abelian_invariants(c.cartan_part)) << ", generators "
          << mats_text(c.cartan_part_generators) << "\n";
        o << "  cc element: " << to_text(c.cc_element) << "\n";
        if (i < checks.size()) {
            o << "  check: " << (checks[i].pass ? "pass" : "FAIL") << "\n";
            for (const auto& it : checks[i].items)
                if (it.applicable && !it.pass) o << "    failed " << it.name << ": " << it.detail << "\n";
        }
    }
    return o.str();
}

std::string reports_to_text(const std::vector<LemmaReport>& reports, const RenderOptions& opt) {
    std::ostringstream o;
    for (const auto& r : reports) {
        o << (r.pass ? "pass " : "FAIL ") << r.lemma_id;
        for (const auto& [k, v] : r.params) o << " " << k << "=" << v;
        if (opt.include_elapsed) {
            std::ostringstream t;
            t.setf(std::ios::fixed);
            t.precision(1);
            t << r.elapsed_ms;
            o << " (" << t.str() << " ms)";
        }
        o << "\n";
        if (!r.pass) o << "  witness: " << r.witness << "\n";
        for (const auto& n : r.notes) o << "  note: " << n << "\n";
    }
    return o.str();
}

std::string table_rows(const std::vector<ImageCandidate>& cands) {
    std::ostringstream o;
    for (const auto& c : cands) {
        o << c.order.disc_K << " " << c.order.conductor << " " << c.p << " " << c.n << " | " << c.label
          << " | " << c.index_in_normalizer << " | " << mats_text(c.generators) << " | " << c.condition
          << "\n";
    }
    return o.str();
}

std::vector<ParsedCandidate> parse_candidates_json(const std::string& text) {
    json a;
    try {
        a = json::parse(text);
    } catch (const json::exception& e) {
        throw UsageError(std::string("candidate JSON: ") + e.what());
    }
    if (!a.is_array()) throw UsageError("candidate JSON must be an array");
    std::vector<ParsedCandidate> out;
    try {
        for (const auto& j : a) {
            ParsedCandidate c;
            c.label = j.at("label").get<std::string>();
            c.level = j.at("level").get<u32>();
            c.order = j.at("order").get<u64>();
            for (const auto& m : j.at("generators")) c.generators.push_back(mat_from_json(m, c.level));
            c.cc_element = mat_from_json(j.at("cc_element"), c.level);
            if (j.contains("elements"))
                for (const auto& m : j.at("elements")) c.elements.push_back(mat_from_json(m, c.level));
            out.push_back(std::move(c));
        }
    } catch (const json::exception& e) {
        throw UsageError(std::string("candidate JSON: ") + e.what());
    }
    return out;
}

}  // namespace cmlab
