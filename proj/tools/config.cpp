#include "config.hpp"

#include "optocool/errors.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

namespace optocool::cli {

namespace {

constexpr std::array<std::string_view, 20> kKeys{
    "delta",       "kappa",          "gamma",          "coupling_a", "coupling_b",
    "n_th",        "drive.kind",     "drive.omega0_re", "drive.omega0_im", "drive.chi0",
    "drive.alpha", "drive.beta",     "drive.t0",       "a0_re",      "a0_im",
    "b0_re",       "b0_im",          "dt",             "t_end",      "sample_every",
};

constexpr std::array<std::string_view, 2> kConstantKeys{"drive.omega0_re", "drive.omega0_im"};
constexpr std::array<std::string_view, 4> kChirpKeys{"drive.chi0", "drive.alpha", "drive.beta",
                                                     "drive.t0"};

bool known_key(std::string_view key) {
    for (auto k : kKeys)
        if (k == key) return true;
    return false;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Entry {
    std::string value;
    int line;
};

using Entries = std::map<std::string, Entry, std::less<>>;

[[noreturn]] void parse_error(int line, const std::string& what) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

double to_double(const Entry& e, std::string_view key) {
    double v = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || e.value.empty()) {
        parse_error(e.line, "'" + std::string(key) + "' expects a number, got '" + e.value + "'");
    }
    return v;
}

std::size_t to_count(const Entry& e, std::string_view key) {
    unsigned long long v = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || e.value.empty()) {
        parse_error(e.line,
                    "'" + std::string(key) + "' expects a positive integer, got '" + e.value + "'");
    }
    return static_cast<std::size_t>(v);
}

const Entry& require(const Entries& entries, std::string_view key) {
    const auto it = entries.find(key);
    if (it == entries.end() || it->second.value.empty()) {
        throw Error(ErrorKind::MissingKey, "missing required key '" + std::string(key) + "'");
    }
    return it->second;
}

double required_number(const Entries& entries, std::string_view key) {
    return to_double(require(entries, key), key);
}

double optional_number(const Entries& entries, std::string_view key, double fallback) {
    const auto it = entries.find(key);
    return it == entries.end() ? fallback : to_double(it->second, key);
}

}  // namespace

std::string format_number(double value) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", value);
    return buf.data();
}

RunConfig parse_config(std::string_view text) {
    Entries entries;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) parse_error(line_no, "expected key=value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!known_key(key)) parse_error(line_no, "unknown key '" + std::string(key) + "'");
        if (entries.contains(key)) parse_error(line_no, "duplicate key '" + std::string(key) + "'");
        entries.emplace(std::string(key), Entry{std::string(value), line_no});
    }

    RunConfig cfg;
    cfg.params.delta = required_number(entries, "delta");
    cfg.params.kappa = required_number(entries, "kappa");
    cfg.params.gamma = required_number(entries, "gamma");
    cfg.params.coupling_a = required_number(entries, "coupling_a");
    cfg.params.coupling_b = required_number(entries, "coupling_b");
    cfg.params.n_th = required_number(entries, "n_th");

    const Entry& kind = require(entries, "drive.kind");
    const auto has_any = [&](const auto& keys) {
        for (auto k : keys)
            if (entries.contains(k)) return true;
        return false;
    };
    if (kind.value == "constant") {
        if (has_any(kChirpKeys)) {
            throw Error(ErrorKind::ConflictingDriveKeys,
                        "chirp keys given with drive.kind=constant");
        }
        cfg.drive = ConstantDrive{complex{optional_number(entries, "drive.omega0_re", 0.0),
                                          optional_number(entries, "drive.omega0_im", 0.0)}};
    } else if (kind.value == "chirped") {
        if (has_any(kConstantKeys)) {
            throw Error(ErrorKind::ConflictingDriveKeys,
                        "drive.omega0 keys given with drive.kind=chirped");
        }
        cfg.drive = ChirpedDrive{required_number(entries, "drive.chi0"),
                                 required_number(entries, "drive.alpha"),
                                 required_number(entries, "drive.beta"),
                                 required_number(entries, "drive.t0")};
    } else {
        parse_error(kind.line, "drive.kind must be 'constant' or 'chirped', got '" + kind.value + "'");
    }

    cfg.mf0.a = {optional_number(entries, "a0_re", 0.0), optional_number(entries, "a0_im", 0.0)};
    cfg.mf0.b = {optional_number(entries, "b0_re", 0.0), optional_number(entries, "b0_im", 0.0)};
    cfg.controls.t_end = required_number(entries, "t_end");
    cfg.controls.dt = optional_number(entries, "dt", 1e-3);
    if (const auto it = entries.find("sample_every"); it != entries.end()) {
        cfg.controls.sample_every = to_count(it->second, "sample_every");
    }

    cfg.params.validate();
    validate_drive(cfg.params, cfg.drive);
    cfg.controls.validate();
    return cfg;
}

std::string render_config(const RunConfig& cfg) {
    std::ostringstream out;
    const auto put = [&](std::string_view key, double v) { out << key << '=' << format_number(v) << '\n'; };
    put("delta", cfg.params.delta);
    put("kappa", cfg.params.kappa);
    put("gamma", cfg.params.gamma);
    put("coupling_a", cfg.params.coupling_a);
    put("coupling_b", cfg.params.coupling_b);
    put("n_th", cfg.params.n_th);
    if (const auto* c = std::get_if<ConstantDrive>(&cfg.drive)) {
        out << "drive.kind=constant\n";
        put("drive.omega0_re", c->omega0.real());
        put("drive.omega0_im", c->omega0.imag());
    } else {
        const auto& chirp = std::get<ChirpedDrive>(cfg.drive);
        out << "drive.kind=chirped\n";
        put("drive.chi0", chirp.chi0);
        put("drive.alpha", chirp.alpha);
        put("drive.beta", chirp.beta);
        put("drive.t0", chirp.t0);
    }
    put("a0_re", cfg.mf0.a.real());
    put("a0_im", cfg.mf0.a.imag());
    put("b0_re", cfg.mf0.b.real());
    put("b0_im", cfg.mf0.b.imag());
    put("dt", cfg.controls.dt);
    put("t_end", cfg.controls.t_end);
    out << "sample_every=" << cfg.controls.sample_every << '\n';
    return out.str();
}

}  // namespace optocool::cli
