#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qhgeo/core.hpp"

namespace qhgeo {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

// Structured counterexample: labeled points and scalars, enough to re-verify
// the violation independently.
struct CheckWitness {
    std::vector<std::pair<std::string, HPoint>> points;
    std::vector<std::pair<std::string, double>> values;
};

// Result of a sampling check. "pass" means no counterexample at the stated
// resolution, never a proof; a "fail" always carries a witness.
struct CheckReport {
    std::string name;
    Verdict verdict = Verdict::inconclusive;
    long samples = 0;
    double worst_residual = 0.0;
    std::optional<CheckWitness> witness;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::string note;

    bool passed() const { return verdict == Verdict::pass; }
};

inline nlohmann::json to_json(HPoint p) { return nlohmann::json::array({p.x, p.y}); }

inline nlohmann::json to_json(const CheckWitness& w) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [label, p] : w.points) j[label] = to_json(p);
    for (const auto& [label, v] : w.values) j[label] = v;
    return j;
}

inline nlohmann::json to_json(const CheckReport& r) {
    nlohmann::json j{{"name", r.name},
                     {"verdict", to_string(r.verdict)},
                     {"samples", r.samples},
                     {"worst_residual", r.worst_residual},
                     {"seed", r.seed},
                     {"tolerances", {{"residual", r.tolerance}}}};
    if (r.witness) j["witness"] = to_json(*r.witness);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

} // namespace qhgeo
