#include "cmlab/manifest.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace cmlab {
namespace {

struct Value {
    bool is_array = false;
    std::vector<i64> ints;
};

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

i64 parse_int(const std::string& raw, int line) {
    const std::string s = trim(raw);
    i64 v = 0;
    std::string digits;
    for (char c : s)
        if (c != '_') digits += c;
    const char* first = digits.data();
    if (!digits.empty() && digits[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
        throw UsageError("grid line " + std::to_string(line) + ": expected an integer, got '" + s + "'");
    return v;
}

Value parse_value(const std::string& raw, int line) {
    const std::string s = trim(raw);
    Value v;
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') throw UsageError("grid line " + std::to_string(line) + ": unterminated array");
        v.is_array = true;
        std::stringstream in(s.substr(1, s.size() - 2));
        std::string item;
        while (std::getline(in, item, ','))
            if (!trim(item).empty()) v.ints.push_back(parse_int(item, line));
        return v;
    }
    v.ints.push_back(parse_int(s, line));
    return v;
}

using Setter = std::function<void(Grid&, const Value&, int)>;

i64 scalar(const Value& v, int line) {
    if (v.is_array) throw UsageError("grid line " + std::to_string(line) + ": expected a scalar");
    return v.ints[0];
}

template <class T>
std::vector<T> array(const Value& v, int line) {
    if (!v.is_array) throw UsageError("grid line " + std::to_string(line) + ": expected an array");
    std::vector<T> out;
    for (i64 x : v.ints) {
        if constexpr (std::is_unsigned_v<T>)
            if (x < 0) throw UsageError("grid line " + std::to_string(line) + ": negative entry");
        out.push_back(T(x));
    }
    return out;
}

#define ARRAY(field, T) [](Grid& g, const Value& v, int l) { g.field = array<T>(v, l); }
#define SCALAR(field, T) [](Grid& g, const Value& v, int l) { g.field = T(scalar(v, l)); }

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table{
        {"grid.discriminants", ARRAY(discriminants, i64)},
        {"grid.conductors", ARRAY(conductors, i64)},
        {"order-formula.primes", ARRAY(order_primes, u64)},
        {"order-formula.max_level", SCALAR(order_max_level, u32)},
        {"order-formula.model_levels", ARRAY(model_levels, u32)},
        {"normalizer.modp_primes", ARRAY(normalizer_modp_primes, u64)},
        {"normalizer.modpn_primes", ARRAY(normalizer_modpn_primes, u64)},
        {"normalizer.modpn_max_exponent", SCALAR(normalizer_modpn_max_exponent, int)},
        {"kernel.primes", ARRAY(kernel_primes, u64)},
        {"kernel.max_exponent", SCALAR(kernel_max_exponent, int)},
        {"cc.primes", ARRAY(cc_primes, u64)},
        {"cc.max_exponent", SCALAR(cc_max_exponent, int)},
        {"cc.two_adic_max_exponent", SCALAR(cc_two_adic_max_exponent, int)},
        {"insidecartan.primes", ARRAY(insidecartan_primes, u64)},
        {"structure.two_adic_max_exponent", SCALAR(structure_two_adic_max_exponent, int)},
        {"structure.three_adic_max_exponent", SCALAR(structure_three_adic_max_exponent, int)},
        {"structure.j1728_max_exponent", SCALAR(j1728_max_exponent, int)},
        {"structure.j0_two_adic_max_exponent", SCALAR(j0_two_adic_max_exponent, int)},
        {"subgroups.index2_max_exponent", SCALAR(index2_max_exponent, int)},
        {"subgroups.three_adic_max_exponent", SCALAR(subgroups_three_adic_max_exponent, int)},
        {"subgroups.j1728_max_exponent", SCALAR(subgroups_j1728_max_exponent, int)},
        {"subgroups.j0_two_adic_max_exponent", SCALAR(subgroups_j0_two_adic_max_exponent, int)},
        {"divpoly.primes", ARRAY(divpoly_primes, u64)},
        {"divpoly.max_m", SCALAR(divpoly_max_m, int)},
    };
    return table;
}

#undef ARRAY
#undef SCALAR

template <class T>
std::string join(const std::vector<T>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
}

}  // namespace

Grid parse_grid(const std::string& text) {
    Grid g;
    std::stringstream in(text);
    std::string raw, section;
    int line = 0;
    bool classify_seen = false;
    while (std::getline(in, raw)) {
        ++line;
        // no string values in this subset, so '#' always starts a comment
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw UsageError("grid line " + std::to_string(line) + ": bad table header");
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("grid line " + std::to_string(line) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const Value v = parse_value(s.substr(eq + 1), line);
        if (section == "classify.max_exponent") {
            if (!classify_seen) g.classify_max_exponent.clear();
            classify_seen = true;
            const i64 p = parse_int(key, line);
            if (p < 2 || !is_prime(u64(p))) throw UsageError("grid line " + std::to_string(line) + ": key must be a prime");
            g.classify_max_exponent[u64(p)] = int(scalar(v, line));
            continue;
        }
        const auto it = setters().find(section + "." + key);
        if (it == setters().end())
            throw UsageError("grid line " + std::to_string(line) + ": unknown key '" + section + "." + key + "'");
        it->second(g, v, line);
    }
    return g;
}

Grid load_grid(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read grid file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_grid(ss.str());
}

std::string grid_to_toml(const Grid& g) {
    std::ostringstream o;
    o << "[grid]\n"
      << "discriminants = " << join(g.discriminants) << "\n"
      << "conductors = " << join(g.conductors) << "\n\n"
      << "[order-formula]\n"
      << "primes = " << join(g.order_primes) << "\n"
      << "max_level = " << g.order_max_level << "\n"
      << "model_levels = " << join(g.model_levels) << "\n\n"
      << "[normalizer]\n"
      << "modp_primes = " << join(g.normalizer_modp_primes) << "\n"
      << "modpn_primes = " << join(g.normalizer_modpn_primes) << "\n"
      << "modpn_max_exponent = " << g.normalizer_modpn_max_exponent << "\n\n"
      << "[kernel]\n"
      << "primes = " << join(g.kernel_primes) << "\n"
      << "max_exponent = " << g.kernel_max_exponent << "\n\n"
      << "[cc]\n"
      << "primes = " << join(g.cc_primes) << "\n"
      << "max_exponent = " << g.cc_max_exponent << "\n"
      << "two_adic_max_exponent = " << g.cc_two_adic_max_exponent << "\n\n"
      << "[insidecartan]\n"
      << "primes = " << join(g.insidecartan_primes) << "\n\n"
      << "[structure]\n"
      << "two_adic_max_exponent = " << g.structure_two_adic_max_exponent << "\n"
      << "three_adic_max_exponent = " << g.structure_three_adic_max_exponent << "\n"
      << "j1728_max_exponent = " << g.j1728_max_exponent << "\n"
      << "j0_two_adic_max_exponent = " << g.j0_two_adic_max_exponent << "\n\n"
      << "[subgroups]\n"
      << "index2_max_exponent = " << g.index2_max_exponent << "\n"
      << "three_adic_max_exponent = " << g.subgroups_three_adic_max_exponent << "\n"
      << "j1728_max_exponent = " << g.subgroups_j1728_max_exponent << "\n"
      << "j0_two_adic_max_exponent = " << g.subgroups_j0_two_adic_max_exponent << "\n\n"
      << "[classify.max_exponent]\n";
    for (auto [p, n] : g.classify_max_exponent) o << p << " = " << n << "\n";
    o << "\n[divpoly]\n"
      << "primes = " << join(g.divpoly_primes) << "\n"
      << "max_m = " << g.divpoly_max_m << "\n";
    return o.str();
}

}  // namespace cmlab
