#include "gridmender/external.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

#include "gridmender/mps.hpp"

namespace gridmender::milp {
namespace {

std::string substitute(std::string_view tmpl, const std::string& key, const std::string& value,
                       bool& found) {
  std::string out;
  size_t pos = 0;
  while (true) {
    const size_t hit = tmpl.find(key, pos);
    if (hit == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      return out;
    }
    found = true;
    out.append(tmpl.substr(pos, hit - pos));
    out.append(value);
    pos = hit + key.size();
  }
}

}  // namespace

Solution solve_external(const Model& m, std::string_view cmd_template,
                        const std::filesystem::path& workdir) {
  namespace fs = std::filesystem;
  fs::create_directories(workdir);
  const fs::path mps_path = workdir / "model.mps";
  const fs::path sol_path = workdir / "model.sol";
  std::error_code ec;
  fs::remove(sol_path, ec);  // never accept a stale solution

  export_mps(m, mps_path);

  bool has_mps = false, has_sol = false;
  std::string cmd = substitute(cmd_template, "{mps}", mps_path.string(), has_mps);
  cmd = substitute(cmd, "{sol}", sol_path.string(), has_sol);
  if (!has_mps || !has_sol) {
    throw SolveError("solver command template must contain {mps} and {sol}: '" +
                     std::string(cmd_template) + "'");
  }

  const std::string shell_cmd = cmd + " 2>&1";
  FILE* pipe = popen(shell_cmd.c_str(), "r");
  if (!pipe) throw SolveError("failed to launch solver command: " + cmd);
  std::string output;
  std::array<char, 4096> buf{};
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    output.append(buf.data(), got);
    if (output.size() > 1 << 20) output.resize(1 << 20);  // cap captured output
  }
  const int rc = pclose(pipe);
  const int exit_code = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
  if (exit_code != 0) {
    throw SolveError("solver command exited with code " + std::to_string(exit_code) + ": " + cmd +
                     "\n--- captured output ---\n" + output);
  }
  if (!fs::exists(sol_path)) {
    throw SolveError("solver command produced no solution file at '" + sol_path.string() +
                     "'\n--- captured output ---\n" + output);
  }
  return parse_solution(m, sol_path);
}

}  // namespace gridmender::milp
