#pragma once

// Command-line front end shared by the dwt97 tool and its tests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dwt97/fixpoint.hpp"
#include "dwt97/lifting.hpp"
#include "dwt97/rtlsim.hpp"

namespace dwt97::cli {

enum class Command { Transform, Roundtrip, Simulate, Study, Report };

std::string_view to_string(Command c);

struct CliConfig {
    Command command = Command::Report;
    std::string input_path;
    std::string output_path;
    std::string trace_path;
    int design = 3;
    Mode mode = Mode::Fixed;
    std::optional<int> octaves;  ///< nullopt: automatic
    CoeffVariant coeff_variant = CoeffVariant::BinaryColumn;
    std::uint64_t seed = 1;
    rtl::OverflowPolicy overflow = rtl::OverflowPolicy::Halt;
};

/// Side of the random image `simulate` streams when no input is given.
inline constexpr std::size_t kRandomImageSide = 64;

/// Throws std::invalid_argument describing the first problem.
void validate(const CliConfig& config);

/// Executes a validated configuration. Results go to `out`, diagnostics to
/// `err`. Returns the process exit status.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments (argv[0] is the program name) and runs. Returns the exit
/// status.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dwt97::cli
