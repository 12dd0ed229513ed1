#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nslab/integrators.hpp"

namespace nslab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNonConvergence = 3;

/// JSON array of {n, energy, divergence_inf, solver_iterations,
/// solver_residual, finite}; non-finite numbers become null.
std::string diagnostics_json(std::span<const StepDiagnostics> diags);
void write_diagnostics(std::span<const StepDiagnostics> diags, const std::filesystem::path& path);

/// Entry point of the nslab tool. Results go to `out` (unless --out is given),
/// one-line diagnostics and summaries to `err`.
///
/// Exit codes: 0 on success (including runs that blow up, which are reported
/// as NAN), 2 on invalid flags, 3 when an implicit solve does not converge.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nslab::cli
