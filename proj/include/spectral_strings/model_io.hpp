#pragma once

// Model and sweep file handling for the command-line tool. A model file
// is JSON of the form
//   {"K": [[1,0],[0,1]], "L": [[2,0],[0,3]], "phi": [1,0], "kappa": 1}
// with K, L row-major frame matrices, phi = [re, im] and kappa = +-1.
// A sweep file carries a base model, a parameter path addressing one
// real scalar in it ("K.0.1", "L.1.1", "phi.0", ...), an inclusive
// [start, stop] range, a step count and the list of output terms.
//
// Error taxonomy (mapped to process exit codes by the CLI): file system
// problems throw IoError, schema violations throw ModelFormatError with
// the offending field named, and singular frames surface as the
// std::domain_error thrown by Zweibein itself.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "analytic.hpp"
#include "geometry.hpp"
#include "symbols.hpp"

namespace spectral_strings {

struct ModelFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raw model scalars, kept mutable so sweeps can address single entries
// before the validating geometry types are constructed.
struct ModelValues {
    double K[2][2];
    double L[2][2];
    double phi_re;
    double phi_im;
    int kappa;

    DoubledGeometry to_geometry() const {
        return DoubledGeometry(Zweibein(Mat2{K[0][0], K[0][1], K[1][0], K[1][1]}),
                               Zweibein(Mat2{L[0][0], L[0][1], L[1][0], L[1][1]}),
                               cplx(phi_re, phi_im), kappa);
    }
};

struct SweepSpec {
    ModelValues base;
    std::string parameter;
    double start;
    double stop;
    int steps;
    std::vector<std::string> outputs;
};

namespace io_detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const std::string& name,
                                           const std::string& where) {
    const auto it = j.find(name);
    if (it == j.end())
        throw ModelFormatError(where + ": missing field \"" + name + "\"");
    return *it;
}

inline double require_number(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number())
        throw ModelFormatError(where + ": expected a number");
    return j.get<double>();
}

inline void read_matrix(const nlohmann::json& j, const std::string& name, double (&m)[2][2]) {
    if (!j.is_array() || j.size() != 2)
        throw ModelFormatError("field \"" + name + "\": expected a 2x2 array");
    for (int r = 0; r < 2; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != 2)
            throw ModelFormatError("field \"" + name + "\": row " + std::to_string(r) +
                                   " is not an array of 2 numbers");
        for (int c = 0; c < 2; ++c)
            m[r][c] = require_number(row[static_cast<std::size_t>(c)],
                                     "field \"" + name + "[" + std::to_string(r) + "][" +
                                         std::to_string(c) + "]\"");
    }
}

}  // namespace io_detail

inline ModelValues parse_model(const nlohmann::json& j) {
    if (!j.is_object())
        throw ModelFormatError("model: top level must be a JSON object");
    ModelValues m{};
    io_detail::read_matrix(io_detail::require_field(j, "K", "model"), "K", m.K);
    io_detail::read_matrix(io_detail::require_field(j, "L", "model"), "L", m.L);

    const auto& phi = io_detail::require_field(j, "phi", "model");
    if (!phi.is_array() || phi.size() != 2)
        throw ModelFormatError("field \"phi\": expected [re, im]");
    m.phi_re = io_detail::require_number(phi[0], "field \"phi[0]\"");
    m.phi_im = io_detail::require_number(phi[1], "field \"phi[1]\"");

    const auto& kappa = io_detail::require_field(j, "kappa", "model");
    const double kv = io_detail::require_number(kappa, "field \"kappa\"");
    if (kv != 1.0 && kv != -1.0)
        throw ModelFormatError("field \"kappa\": must be 1 or -1");
    m.kappa = static_cast<int>(kv);
    return m;
}

inline nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("cannot read file: " + path);
    return nlohmann::json::parse(buf.str());  // parse_error reports line and column
}

inline ModelValues load_model(const std::string& path) {
    return parse_model(parse_json_file(path));
}

/// Resolve a sweep parameter path to the addressed scalar. Valid paths:
/// "K.r.c" and "L.r.c" with r, c in {0, 1}, "phi.0" (real part) and
/// "phi.1" (imaginary part).
inline double& resolve_parameter(ModelValues& m, const std::string& path) {
    const auto bad = [&]() {
        return ModelFormatError("sweep parameter \"" + path +
                                "\": expected K.r.c, L.r.c (r, c in {0,1}), phi.0 or phi.1");
    };
    std::vector<std::string> parts;
    std::string token;
    std::istringstream ss(path);
    while (std::getline(ss, token, '.')) parts.push_back(token);

    const auto index = [&](const std::string& s) {
        if (s == "0") return 0;
        if (s == "1") return 1;
        throw bad();
    };
    if (parts.size() == 3 && (parts[0] == "K" || parts[0] == "L")) {
        const int r = index(parts[1]);
        const int c = index(parts[2]);
        return parts[0] == "K" ? m.K[r][c] : m.L[r][c];
    }
    if (parts.size() == 2 && parts[0] == "phi")
        return index(parts[1]) == 0 ? m.phi_re : m.phi_im;
    throw bad();
}

inline const std::vector<std::string>& known_terms() {
    static const std::vector<std::string> names = {"cosmological", "mass_correction", "v1",
                                                   "v_int"};
    return names;
}

inline double term_value(const ActionTerms& t, const std::string& name) {
    if (name == "cosmological") return t.cosmological;
    if (name == "mass_correction") return t.mass_correction;
    if (name == "v1") return t.v1;
    if (name == "v_int") return t.v_int;
    throw ModelFormatError("unknown term \"" + name +
                           "\": expected cosmological, mass_correction, v1 or v_int");
}

inline SweepSpec parse_sweep(const nlohmann::json& j) {
    if (!j.is_object())
        throw ModelFormatError("sweep: top level must be a JSON object");
    SweepSpec s;
    s.base = parse_model(io_detail::require_field(j, "base", "sweep"));

    const auto& param = io_detail::require_field(j, "parameter", "sweep");
    if (!param.is_string())
        throw ModelFormatError("field \"parameter\": expected a string path");
    s.parameter = param.get<std::string>();
    resolve_parameter(s.base, s.parameter);  // validate the path up front

    const auto& range = io_detail::require_field(j, "range", "sweep");
    if (!range.is_array() || range.size() != 2)
        throw ModelFormatError("field \"range\": expected [start, stop]");
    s.start = io_detail::require_number(range[0], "field \"range[0]\"");
    s.stop = io_detail::require_number(range[1], "field \"range[1]\"");

    const auto& steps = io_detail::require_field(j, "steps", "sweep");
    if (!steps.is_number_integer() || steps.get<long>() < 2)
        throw ModelFormatError("field \"steps\": expected an integer >= 2");
    s.steps = static_cast<int>(steps.get<long>());

    const auto& outputs = io_detail::require_field(j, "outputs", "sweep");
    if (!outputs.is_array() || outputs.empty())
        throw ModelFormatError("field \"outputs\": expected a non-empty array of term names");
    for (const auto& o : outputs) {
        if (!o.is_string())
            throw ModelFormatError("field \"outputs\": entries must be strings");
        const std::string name = o.get<std::string>();
        bool known = false;
        for (const auto& k : known_terms()) known = known || k == name;
        if (!known)
            throw ModelFormatError("field \"outputs\": unknown term \"" + name + "\"");
        s.outputs.push_back(name);
    }
    return s;
}

inline SweepSpec load_sweep(const std::string& path) {
    return parse_sweep(parse_json_file(path));
}

/// Shortest round-trip decimal form, 17 significant digits.
inline std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double sweep_value(const SweepSpec& s, int step) {
    if (s.steps == 1) return s.start;
    return s.start + (s.stop - s.start) * static_cast<double>(step) /
                         static_cast<double>(s.steps - 1);
}

/// Run the sweep and render the CSV table: header "param,<terms...>",
/// one row per step, LF line endings, 17 significant digits.
inline std::string sweep_csv(const SweepSpec& spec) {
    std::string out = "param";
    for (const auto& name : spec.outputs) out += "," + name;
    out += "\n";
    for (int i = 0; i < spec.steps; ++i) {
        ModelValues m = spec.base;
        const double value = sweep_value(spec, i);
        resolve_parameter(m, spec.parameter) = value;
        const ActionTerms terms = action_terms(m.to_geometry());
        out += format_g17(value);
        for (const auto& name : spec.outputs) out += "," + format_g17(term_value(terms, name));
        out += "\n";
    }
    return out;
}

}  // namespace spectral_strings
