#pragma once

#include <filesystem>
#include <string>

#include "dyadlab/dyadic.hpp"
#include "dyadlab/weights.hpp"

namespace dyadlab {

/// Shared file format: JSON with fields `depth` (integer) and `values`
/// (array of 2^depth numbers). Values are read as doubles; a bit-exact
/// decimal round trip is not part of the contract.
StepFunction read_step_function(const std::filesystem::path& path);
Weight read_weight(const std::filesystem::path& path);

void write_step_function(const StepFunction& f, const std::filesystem::path& path);

/// Write-to-temp-then-rename, so readers never observe a partial file.
void atomic_write_text(const std::filesystem::path& path, const std::string& body);

} // namespace dyadlab
