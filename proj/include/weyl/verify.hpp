#pragma once

// Invariant suites run by `weyl verify`. Each suite is a list of named
// assertions, deterministic for a given seed.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "weyl/models.hpp"
#include "weyl/report.hpp"

namespace weyl {

struct Assertion {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteResult {
    std::string name;
    std::vector<Assertion> assertions;
    double seconds = 0.0;
    bool passed() const;
};

/// One representative model per catalog kind (8 kinds), with labels.
std::vector<std::pair<std::string, WeylModel>> catalog_models();

/// Uniform samples with |Re z| <= 20, 0.3 <= Im z <= 20.
std::vector<cplx> random_upper_points(std::uint64_t seed, int count);

std::vector<std::string> suite_names();
/// Throws ContractError for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);
/// `which` is a suite name or "all"; suites run on up to `jobs` threads.
std::vector<SuiteResult> run_suites(const std::string& which, std::uint64_t seed, int jobs);

ojson suites_to_json(const std::vector<SuiteResult>& results);

}  // namespace weyl
