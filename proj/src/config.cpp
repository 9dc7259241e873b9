#include "regspec/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "regspec/format.hpp"

namespace regspec {

namespace {

const std::pair<ExperimentKind, const char*> kKindNames[] = {
    {ExperimentKind::Sample, "sample"},        {ExperimentKind::Spectrum, "spectrum"},
    {ExperimentKind::CircularLaw, "circular-law"}, {ExperimentKind::SvRegimes, "sv-regimes"},
    {ExperimentKind::Normals, "normals"},      {ExperimentKind::Anticonc, "anticonc"},
    {ExperimentKind::Report, "report"},
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty list element in '" + s + "'");
        out.push_back(item);
    }
    return out;
}

double parse_real(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v))
        throw ConfigError("key '" + key + "': expected a finite number, got '" + text + "'");
    return v;
}

template <class Int>
Int parse_integer(const std::string& key, const std::string& text) {
    Int v = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw ConfigError("key '" + key + "': expected an integer, got '" + text + "'");
    return v;
}

std::string sampler_name(SamplerKind k) {
    switch (k) {
        case SamplerKind::Rejection:
            return "rejection";
        case SamplerKind::SwitchChain:
            return "switch-chain";
        case SamplerKind::Automatic:
            break;
    }
    return "automatic";
}

SamplerKind parse_sampler(const std::string& s) {
    if (s == "automatic") return SamplerKind::Automatic;
    if (s == "rejection") return SamplerKind::Rejection;
    if (s == "switch-chain") return SamplerKind::SwitchChain;
    throw ConfigError("key 'sampler': expected automatic, rejection or switch-chain, got '" + s + "'");
}

void check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
    for (const auto& [k, n] : kKindNames)
        if (name == n) return k;
    throw ConfigError("unknown experiment kind '" + name + "'");
}

Complex parse_complex(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (ch != ' ' && ch != '\t') s.push_back(ch);
    if (s.empty()) throw ConfigError("empty complex number");
    auto number = [](std::string part) {
        if (!part.empty() && part.front() == '+') part.erase(0, 1);
        return parse_real("complex", part);
    };
    auto coefficient = [&](const std::string& part) -> double {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        return number(part);
    };
    if (s.back() != 'i') return {number(s), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t cut = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    if (cut == std::string::npos) return {0.0, coefficient(body)};
    return {number(body.substr(0, cut)), coefficient(body.substr(cut))};
}

std::string format_complex(Complex z) {
    std::string out = format_double(z.real());
    if (z.imag() != 0.0 || std::signbit(z.imag())) {
        const std::string im = format_double(z.imag());
        out += (im.front() == '-' ? "" : "+") + im + "i";
    }
    return out;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[k] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

void ExperimentConfig::validate() const {
    check(schema_version == kConfigSchemaVersion,
          "schema_version must be " + std::to_string(kConfigSchemaVersion));
    check(trials >= 1, "trials must be at least 1");
    check(threads >= 0, "threads must be nonnegative");
    check(!z_grid.empty(), "z_grid must not be empty");
    if (kind == ExperimentKind::Report) {
        check(!inputs.empty(), "report needs at least one entry in inputs");
        return;
    }
    if (!(kind == ExperimentKind::Spectrum && !matrix.empty())) {
        check(n >= 1 && n <= 4096, "n must lie in [1, 4096]");
        check(d >= 1 && d <= n, "d must lie in [1, n]");
    }
    check(burn_in_factor > 0.0, "burn_in_factor must be positive");
    check(overlay == "circular" || overlay == "kesten-mckay", "overlay must be circular or kesten-mckay");
    check(overlay == "circular" || d >= 2, "kesten-mckay overlay needs d >= 2");
    check(T > 0.0, "T must be positive");
    check(C > 0.0 && c > 0.0, "C and c must be positive");
    check(alpha > 0.0, "alpha must be positive");
    check(beta > 0.0 && beta <= 0.5, "beta must lie in (0, 1/2]");
    check(gamma > 0.0, "gamma must be positive");
    check(a > 0.0 && a <= 1.0, "a must lie in (0, 1]");
    check(rho >= 0.0, "rho must be nonnegative (0 = auto)");
    check(floor > 0.0, "floor must be positive");
    check(delta > 0.0 && delta <= 0.5, "delta must lie in (0, 1/2]");
    check(L == 0.0 || (L >= 1.0 && L <= 1.0 / (2.0 * delta)), "L must be 0 (auto) or lie in [1, 1/(2 delta)]");
    if (kind == ExperimentKind::Normals) check(span_rows >= 0 && span_rows < n, "span_rows must lie in [0, n)");
    if (kind == ExperimentKind::Anticonc) {
        check(n >= 4, "anticonc needs n >= 4");
        check(row_index >= 0 && row_index <= n, "row_index must lie in [0, n]");
        check(u >= 0 && u < n, "u must lie in [0, n)");
    }
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream out;
    auto line = [&](const char* key, const std::string& value) { out << key << '=' << value << '\n'; };
    std::string zs;
    for (std::size_t k = 0; k < z_grid.size(); ++k) zs += (k ? "," : "") + format_complex(z_grid[k]);
    std::string in;
    for (std::size_t k = 0; k < inputs.size(); ++k) in += (k ? "," : "") + inputs[k];
    line("schema_version", std::to_string(schema_version));
    line("kind", to_string(kind));
    line("n", std::to_string(n));
    line("d", std::to_string(d));
    line("z_grid", zs);
    line("trials", std::to_string(trials));
    line("master_seed", std::to_string(master_seed));
    line("sampler", sampler_name(sampler));
    line("burn_in_factor", format_double(burn_in_factor));
    // Empty strings are omitted so the canonical text parses back.
    if (!matrix.empty()) line("matrix", matrix);
    if (!in.empty()) line("inputs", in);
    line("overlay", overlay);
    line("T", format_double(T));
    line("C", format_double(C));
    line("c", format_double(c));
    line("alpha", format_double(alpha));
    line("beta", format_double(beta));
    line("gamma", format_double(gamma));
    line("a", format_double(a));
    line("rho", format_double(rho));
    line("floor", format_double(floor));
    line("delta", format_double(delta));
    line("L", format_double(L));
    line("lambda", format_complex(lambda));
    line("span_rows", std::to_string(span_rows));
    line("row_index", std::to_string(row_index));
    line("u", std::to_string(u));
    // threads is deliberately absent: it never changes the artifacts.
    return out.str();
}

std::uint64_t ExperimentConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    using Setter = std::function<void(const std::string&, const std::string&)>;
    auto real = [](double& field) -> Setter {
        return [&field](const std::string& k, const std::string& v) { field = parse_real(k, v); };
    };
    auto integer = [](int& field) -> Setter {
        return [&field](const std::string& k, const std::string& v) { field = parse_integer<int>(k, v); };
    };
    const std::map<std::string, Setter> setters = {
        {"schema_version", integer(cfg.schema_version)},
        {"kind",
         [&](const std::string&, const std::string& v) {
             cfg.kind = parse_kind(v);
             cfg.kind_declared = true;
         }},
        {"n", integer(cfg.n)},
        {"d", integer(cfg.d)},
        {"z_grid",
         [&](const std::string&, const std::string& v) {
             cfg.z_grid.clear();
             for (const auto& item : split_list(v)) cfg.z_grid.push_back(parse_complex(item));
         }},
        {"trials", integer(cfg.trials)},
        {"master_seed",
         [&](const std::string& k, const std::string& v) { cfg.master_seed = parse_integer<std::uint64_t>(k, v); }},
        {"threads", integer(cfg.threads)},
        {"sampler", [&](const std::string&, const std::string& v) { cfg.sampler = parse_sampler(v); }},
        {"burn_in_factor", real(cfg.burn_in_factor)},
        {"matrix", [&](const std::string&, const std::string& v) { cfg.matrix = v; }},
        {"inputs", [&](const std::string&, const std::string& v) { cfg.inputs = split_list(v); }},
        {"overlay", [&](const std::string&, const std::string& v) { cfg.overlay = v; }},
        {"T", real(cfg.T)},
        {"C", real(cfg.C)},
        {"c", real(cfg.c)},
        {"alpha", real(cfg.alpha)},
        {"beta", real(cfg.beta)},
        {"gamma", real(cfg.gamma)},
        {"a", real(cfg.a)},
        {"rho", real(cfg.rho)},
        {"floor", real(cfg.floor)},
        {"delta", real(cfg.delta)},
        {"L", real(cfg.L)},
        {"lambda", [&](const std::string&, const std::string& v) { cfg.lambda = parse_complex(v); }},
        {"span_rows", integer(cfg.span_rows)},
        {"row_index", integer(cfg.row_index)},
        {"u", integer(cfg.u)},
    };

    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (eq == std::string::npos) throw ConfigError(where + "expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError(where + "unknown key '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
        if (value.empty()) throw ConfigError(where + "empty value for '" + key + "'");
        try {
            it->second(key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    if (!seen.count("schema_version")) throw ConfigError("missing schema_version");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return parse_config(text);
}

}  // namespace regspec
