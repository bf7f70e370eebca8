#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gridmender/milp.hpp"

namespace gridmender::milp {

/// Exports the model to `<workdir>/model.mps`, runs the command template
/// with `{mps}` and `{sol}` substituted, and parses `<workdir>/model.sol`.
/// Child-process contract: exit 0 plus a solution file means success.
/// Errors carry the captured child output.
Solution solve_external(const Model& m, std::string_view cmd_template,
                        const std::filesystem::path& workdir);

}  // namespace gridmender::milp
