#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "knotcalc/config.hpp"

namespace kc {

struct CheckRow {
    std::string id, claim, expected, observed;
    bool pass = false;
};

struct ReproduceGrid {
    std::vector<long> m{1, 3, 5, 7};
    std::vector<long> cover_m{1, 3, 5};
    std::vector<unsigned> r{2, 3, 5};
    std::vector<long> i{1, 2, 3, 4, 5};
    int rewriter_corpus = 200;
};

struct ReproduceReport {
    std::vector<CheckRow> rows;
    RunConfig config;
    bool all_pass() const;
    nlohmann::json to_json() const;
    std::string to_tsv() const;
    std::string to_human() const;
};

ReproduceReport reproduce_paper(const RunConfig& config, const ReproduceGrid& grid = {});

}  // namespace kc
