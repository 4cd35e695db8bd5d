#pragma once

// JSON state files. Schema:
//   { "kind": "pure" | "mixed",
//     "dims": [d1, d2, ...],
//     "data": [[re, im], ...] }
// Pure data holds prod(dims) amplitudes; mixed data holds the row-major
// density matrix, prod(dims)^2 entries. Loading validates the state and
// reports every violated invariant in the error message.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "chshov/state.hpp"

namespace chshov {

struct StateFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline nlohmann::ordered_json state_to_json(const QState& s) {
    nlohmann::ordered_json j;
    j["kind"] = s.is_pure() ? "pure" : "mixed";
    j["dims"] = s.dims();
    auto& data = j["data"];
    data = nlohmann::ordered_json::array();
    if (s.is_pure()) {
        for (const auto& a : s.amplitudes()) data.push_back({a.real(), a.imag()});
    } else {
        const CMatrix& rho = s.density_matrix();
        for (std::size_t r = 0; r < rho.rows(); ++r)
            for (std::size_t c = 0; c < rho.cols(); ++c)
                data.push_back({rho(r, c).real(), rho(r, c).imag()});
    }
    return j;
}

inline QState state_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw StateFormatError("state file: top level must be an object");
    for (const char* key : {"kind", "dims", "data"})
        if (!j.contains(key)) throw StateFormatError(std::string("state file: missing field '") + key + "'");

    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "pure" && kind != "mixed")
        throw StateFormatError("state file: kind must be 'pure' or 'mixed', got '" + kind + "'");

    std::vector<std::size_t> dims;
    for (const auto& d : j.at("dims")) {
        if (!d.is_number_unsigned() || d.get<std::size_t>() < 2)
            throw StateFormatError("state file: dims must be integers >= 2");
        dims.push_back(d.get<std::size_t>());
    }
    if (dims.empty()) throw StateFormatError("state file: dims must be nonempty");

    const std::size_t total = product_of(dims);
    const std::size_t expected = kind == "pure" ? total : total * total;
    const auto& data = j.at("data");
    if (!data.is_array() || data.size() != expected)
        throw StateFormatError("state file: data must hold " + std::to_string(expected) +
                               " [re, im] pairs, got " + std::to_string(data.size()));

    std::vector<cplx> entries;
    entries.reserve(expected);
    for (const auto& pair : data) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw StateFormatError("state file: every data entry must be a [re, im] number pair");
        entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }

    if (kind == "pure") return QState::pure(std::move(dims), std::move(entries));
    CMatrix rho(total, total);
    for (std::size_t r = 0; r < total; ++r)
        for (std::size_t c = 0; c < total; ++c) rho(r, c) = entries[r * total + c];
    return QState::mixed(std::move(dims), std::move(rho));
}

inline void save_state(const QState& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw StateFormatError("cannot open '" + path + "' for writing");
    out << state_to_json(s).dump(2) << '\n';
}

/// Parse + full physical validation; throws StateFormatError carrying the
/// diagnostic report when the parsed state violates any invariant.
inline QState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StateFormatError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw StateFormatError("state file '" + path + "': " + e.what());
    }
    QState s = state_from_json(j);
    const auto issues = validate(s);
    if (!issues.empty()) {
        std::ostringstream msg;
        msg << "state file '" << path << "' fails validation:";
        for (const auto& issue : issues)
            msg << "\n  " << issue.what << " (deviation " << issue.deviation << ")";
        throw StateFormatError(msg.str());
    }
    return s;
}

}  // namespace chshov
