#pragma once

#include <gmpxx.h>

#include <string>

#include "json.hpp"
#include "knotcalc/seifert.hpp"

namespace kc {

constexpr int kSchemaVersion = 1;

struct RunConfig {
    SignatureConvention convention;
    mpz_class budget = 1000000;
    mpz_class bound = 1000000;
    int precision_digits = 60;
    std::string registry_path;  // empty: KNOTCALC_REGISTRY, then the shipped registry
    std::string format = "json";
    unsigned r = 3;

    nlohmann::json to_json() const;
    std::string resolved_registry() const;
};

SignatureConvention parse_convention(const std::string& s);  // "mass-1", "mass-2pi", optional ",jump-averaging"
int digits_to_bits(int digits);

}  // namespace kc
