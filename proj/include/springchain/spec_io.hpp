#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "springchain/chain_model.hpp"

namespace springchain {

struct LoadedSpec {
    RawChainSpec raw;
    std::vector<std::string> warnings;
};

/// Chain spec documents: keys `masses`, `stiffness`, `damping`, each an array
/// of numbers or strings ("3/2", "0.25"); `natural_lengths` is accepted and
/// ignored with a warning. Unknown keys are ignored. Number literals are read
/// from their source text, so decimals become exact decimal fractions.
LoadedSpec parse_spec_json(std::string_view text);
LoadedSpec parse_spec_toml(std::string_view text);

/// Dispatches on the file extension: ".toml" reads TOML, anything else JSON.
LoadedSpec load_spec_file(const std::filesystem::path& path);

/// JSON document accepted by parse_spec_json, with every value as a "p/q" string.
std::string spec_to_json(const ChainSpec& spec);

}  // namespace springchain
