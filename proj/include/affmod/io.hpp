#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "affmod/invariant.hpp"
#include "affmod/modular.hpp"

namespace affmod {

/// Full-precision decimal rendering; JSON numeric output goes through here
/// so files are bit-stable across runs.
inline std::string decimal(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline nlohmann::json context_to_json(const AlgebraContext& ctx) {
    return {{"rank", ctx.rank}, {"level", ctx.level}};
}

inline nlohmann::json invariant_to_json(const InvariantMatrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, v] : m.entries())
        entries.push_back({format_weight(m.index()[key.first]),
                           format_weight(m.index()[key.second]), v});
    nlohmann::json j = context_to_json(m.ctx());
    j["name"] = m.name();
    j["entries"] = std::move(entries);
    return j;
}

inline InvariantMatrix invariant_from_json(const nlohmann::json& j,
                                           std::shared_ptr<const WeightIndex> index) {
    if (j.at("rank") != index->ctx().rank || j.at("level") != index->ctx().level)
        throw std::invalid_argument("invariant context does not match the index");
    InvariantMatrix m(index, j.value("name", ""));
    for (const auto& e : j.at("entries"))
        m.set(index->index_of(parse_weight(e.at(0).get<std::string>())),
              index->index_of(parse_weight(e.at(1).get<std::string>())),
              e.at(2).get<long long>());
    return m;
}

inline nlohmann::json modular_to_json(const ModularData& md) {
    nlohmann::json j = context_to_json(md.ctx);
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& w : md.index.all()) labels.push_back(format_weight(w));
    j["weights"] = std::move(labels);
    nlohmann::json t = nlohmann::json::array();
    for (int i = 0; i < md.size(); ++i)
        t.push_back({decimal(md.Tdiag[i].real()), decimal(md.Tdiag[i].imag())});
    j["T"] = std::move(t);
    nlohmann::json s = nlohmann::json::array();
    for (int i = 0; i < md.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int jj = 0; jj < md.size(); ++jj)
            row.push_back({decimal(md.S(i, jj).real()), decimal(md.S(i, jj).imag())});
        s.push_back(std::move(row));
    }
    j["S"] = std::move(s);
    return j;
}

/// moduli and phases of S, one line per entry
inline void modular_to_csv(const ModularData& md, std::ostream& os) {
    os << "lambda,mu,modulus,phase\n";
    for (int i = 0; i < md.size(); ++i)
        for (int j = 0; j < md.size(); ++j)
            os << format_weight(md.index[i]) << ',' << format_weight(md.index[j]) << ','
               << decimal(std::abs(md.S(i, j))) << ',' << decimal(std::arg(md.S(i, j))) << '\n';
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << text;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    is >> j;
    return j;
}

}  // namespace affmod
