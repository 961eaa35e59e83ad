#pragma once

// Text and structured renderings of results, plus the parsers the
// round-trip guarantees are tested against.

#include <json.hpp>

#include <string>
#include <vector>

#include "dyniso/errors.hpp"
#include "dyniso/graph.hpp"
#include "dyniso/iso.hpp"
#include "dyniso/series.hpp"
#include "dyniso/sim.hpp"

namespace dyniso {

using nlohmann::json;

// "{0,2} {1}"
inline std::string render_partition_text(const Partition& p) {
    std::string out;
    for (const auto& cls : p.classes()) {
        if (!out.empty()) out += ' ';
        out += '{';
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(cls[i]);
        }
        out += '}';
    }
    return out;
}

inline json partition_to_json(const Partition& p) { return json(p.classes()); }

inline Partition partition_from_json(const json& j) {
    return Partition::from_classes(j.get<std::vector<std::vector<int>>>());
}

inline json gamma_to_json(const std::vector<int>& gamma) { return json(gamma); }

inline std::vector<int> gamma_from_json(const json& j) { return j.get<std::vector<int>>(); }

inline std::string render_gamma_text(const std::vector<int>& gamma) {
    std::string out;
    for (std::size_t v = 0; v < gamma.size(); ++v) {
        if (v) out += ' ';
        out += std::to_string(v) + "->" + std::to_string(gamma[v]);
    }
    return out;
}

inline std::string render_verdict_text(const IsoResult& res) {
    std::string out = to_string(res.verdict);
    if (res.verdict == Verdict::Yes)
        out += " (gamma verified)";
    else if (!res.reason.empty())
        out += " (" + res.reason + ")";
    return out;
}

inline json iso_result_to_json(const IsoResult& res) {
    json j;
    j["verdict"] = to_string(res.verdict);
    j["reason"] = res.reason;
    j["used_complements"] = res.used_complements;
    j["partition_calls"] = res.partition_calls;
    if (res.gamma) j["gamma"] = gamma_to_json(*res.gamma);
    json trace = json::array();
    for (const auto& step : res.trace)
        trace.push_back({{"sigma", step.sigma},
                         {"tau", step.tau},
                         {"classes", partition_to_json(step.partition)}});
    j["trace"] = std::move(trace);
    return j;
}

// One record per (n, i, j) with exact decimal numerator/denominator.
inline json series_records_json(const SeriesCoefficients& c) {
    json records = json::array();
    auto emit = [&](const char* which, int n, const SquareMat<Rat>& mat) {
        for (int i = 0; i < mat.size(); ++i)
            for (int j = 0; j < mat.size(); ++j)
                records.push_back({{"matrix", which},
                                   {"n", n},
                                   {"i", i},
                                   {"j", j},
                                   {"num", mat(i, j).get_num().get_str()},
                                   {"den", mat(i, j).get_den().get_str()}});
    };
    for (int n = 0; n < c.terms(); ++n) {
        emit("A", n, c.A[n]);
        emit("R", n, c.R[n]);
    }
    return records;
}

inline std::string render_series_text(const SeriesCoefficients& c) {
    std::string out;
    auto emit = [&](const char* which, int n, const SquareMat<Rat>& mat) {
        for (int i = 0; i < mat.size(); ++i)
            for (int j = 0; j < mat.size(); ++j)
                out += std::string(which) + " " + std::to_string(n) + " " + std::to_string(i) +
                       " " + std::to_string(j) + " " + mat(i, j).get_str() + "\n";
    };
    for (int n = 0; n < c.terms(); ++n) {
        emit("A", n, c.A[n]);
        emit("R", n, c.R[n]);
    }
    return out;
}

// Rebuilds the A/R matrices from the structured records.
inline SeriesCoefficients series_from_records(const json& records, int m, int terms) {
    SeriesCoefficients c;
    c.m = m;
    c.A.assign(terms, SquareMat<Rat>(m));
    c.R.assign(terms, SquareMat<Rat>(m));
    for (const auto& rec : records) {
        Rat value(Int(rec.at("num").get<std::string>()), Int(rec.at("den").get<std::string>()));
        value.canonicalize();
        auto& target = rec.at("matrix").get<std::string>() == "A" ? c.A : c.R;
        target.at(rec.at("n").get<int>())(rec.at("i").get<int>(), rec.at("j").get<int>()) = value;
    }
    return c;
}

}  // namespace dyniso
