#pragma once

// Invariant suites shared by the CLI `verify` command and the test binaries.

#include <string>
#include <vector>

#include "hypercount/arith.hpp"

namespace hypercount {

struct VerifyOptions {
    std::string suite = "all"; // all | forms | theta | kernel | moments
    u64 seed = 42;
    i64 theta_N = 2000;
    i64 d_min = -200; // discriminant range for the class group and theta sweeps
    bool inject_fault = false; // flips one theta coefficient (negative control)
};

struct VerifyCheck {
    std::string suite;
    std::string name;
    bool ok;
    std::string detail;
};

struct VerifyReport {
    u64 seed = 0;
    std::vector<VerifyCheck> checks;
    bool ok() const;
    /// Deterministic JSON document: {"seed": ..., "ok": ..., "checks": [...]}
    std::string to_json() const;
};

/// Throws std::invalid_argument for an unknown suite name.
VerifyReport run_verify(const VerifyOptions& opts);

} // namespace hypercount
