#include "knotcalc/config.hpp"

#include <cstdlib>
#include <stdexcept>

namespace kc {

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["convention"] = convention.name();
    j["budget"] = budget.get_str();
    j["bound"] = bound.get_str();
    j["precision_digits"] = precision_digits;
    j["registry"] = resolved_registry();
    j["format"] = format;
    j["r"] = r;
    return j;
}

std::string RunConfig::resolved_registry() const {
    if (!registry_path.empty()) return registry_path;
    if (const char* env = std::getenv("KNOTCALC_REGISTRY"); env && *env) return env;
    return std::string(KNOTCALC_DATA_DIR) + "/facts.json";
}

SignatureConvention parse_convention(const std::string& s) {
    SignatureConvention c;
    std::string mass = s, rest;
    if (auto p = s.find(','); p != std::string::npos) {
        mass = s.substr(0, p);
        rest = s.substr(p + 1);
    }
    if (mass == "mass-1")
        c.mass = SignatureConvention::Mass::One;
    else if (mass == "mass-2pi")
        c.mass = SignatureConvention::Mass::TwoPi;
    else
        throw std::invalid_argument("unknown signature convention '" + s + "'");
    if (rest == "jump-averaging")
        c.jump_averaging = true;
    else if (!rest.empty() && rest != "no-jump-averaging")
        throw std::invalid_argument("unknown signature convention '" + s + "'");
    return c;
}

int digits_to_bits(int digits) { return digits * 3322 / 1000 + 16; }

}  // namespace kc
