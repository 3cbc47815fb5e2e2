#include "cyclebound/params_json.hpp"

#include <stdexcept>

namespace cyclebound {

namespace {

bool has_all(const nlohmann::json& j, std::initializer_list<const char*> keys) {
    for (const char* k : keys)
        if (!j.contains(k)) return false;
    return true;
}

bool has_any(const nlohmann::json& j, std::initializer_list<const char*> keys) {
    for (const char* k : keys)
        if (j.contains(k)) return true;
    return false;
}

}  // namespace

Params params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("parameter record must be a JSON object");
    const bool nondim = has_all(j, {"a", "lambda", "m"});
    const bool dim = has_all(j, {"r", "K", "q", "H", "p", "d"});
    if (nondim && has_any(j, {"r", "K", "q", "H", "p", "d"}))
        throw std::invalid_argument("parameter record mixes nondimensional and dimensional keys");
    if (dim && has_any(j, {"a", "lambda", "m"}))
        throw std::invalid_argument("parameter record mixes nondimensional and dimensional keys");
    if (nondim)
        return Params(j.at("a").get<double>(), j.at("lambda").get<double>(), j.at("m").get<double>());
    if (dim) {
        RMParams rm{j.at("r").get<double>(), j.at("K").get<double>(), j.at("q").get<double>(),
                    j.at("H").get<double>(), j.at("p").get<double>(), j.at("d").get<double>()};
        return nondimensionalize(rm);
    }
    throw std::invalid_argument(
        "parameter record needs keys {a, lambda, m} or {r, K, q, H, p, d}");
}

nlohmann::json to_json(const Params& p) {
    return {{"a", p.a()},
            {"lambda", p.lambda()},
            {"m", p.m()},
            {"cycle_regime", p.cycle_regime()},
            {"star_star", p.star_star()}};
}

}  // namespace cyclebound
