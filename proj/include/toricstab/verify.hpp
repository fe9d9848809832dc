// The aggregated invariant suite behind `toricstab verify`.
#ifndef TORICSTAB_VERIFY_HPP
#define TORICSTAB_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace toricstab {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs every module's invariant suite with the given seed; `fast` trims the
/// instance counts and skips the Monte Carlo cross-check.
std::vector<SuiteResult> run_verify(std::uint64_t seed, bool fast);

}  // namespace toricstab

#endif  // TORICSTAB_VERIFY_HPP
