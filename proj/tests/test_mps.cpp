#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gridmender/external.hpp"
#include "gridmender/milp.hpp"
#include "gridmender/mps.hpp"

using namespace gridmender::milp;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  auto dir = fs::temp_directory_path() / "gridmender_mps_tests";
  fs::create_directories(dir);
  return dir;
}

Model small_model() {
  Model m("small");
  const int x = m.add_variable("x", 0, 1, VarKind::Binary);
  const int y = m.add_variable("y", 0, 1, VarKind::Binary);
  const int z = m.add_variable("z", -2.5, 7.25, VarKind::Continuous);
  m.add_objective(x, 1.0);
  m.add_objective(y, 1.0);
  m.add_objective(z, 0.125);
  m.add_constraint("cap", {{x, 1.0}, {y, 1.0}}, Sense::LessEq, 1.0);
  m.add_constraint("mix", {{x, 2.0}, {z, -1.0}}, Sense::GreaterEq, -3.5);
  m.add_constraint("fixit", {{z, 1.0}, {y, 0.5}}, Sense::Eq, 2.0);
  return m;
}

}  // namespace

TEST_CASE("empty model exports the skeleton sections") {
  Model m("empty");
  const auto path = temp_dir() / "empty.mps";
  export_mps(m, path);
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("NAME empty") != std::string::npos);
  CHECK(text.find("ROWS") != std::string::npos);
  CHECK(text.find(" N OBJ") != std::string::npos);
  CHECK(text.find("ENDATA") != std::string::npos);
}

TEST_CASE("export and read back reproduce the model structurally") {
  Model m = small_model();
  const auto path = temp_dir() / "small.mps";
  export_mps(m, path);
  Model back = read_mps(path);
  CHECK(structurally_equal(m, back, 1e-12));
}

TEST_CASE("exports are byte-stable across repeated writes") {
  Model m = small_model();
  const auto p1 = temp_dir() / "s1.mps";
  const auto p2 = temp_dir() / "s2.mps";
  export_mps(m, p1);
  export_mps(m, p2);
  std::ifstream a(p1), b(p2);
  std::string ta((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string tb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(ta == tb);
}

TEST_CASE("solution files parse with defaults and errors") {
  Model m = small_model();
  const auto path = temp_dir() / "a.sol";
  {
    std::ofstream out(path);
    out << "status optimal\nobjective 1\nx 1\ny 0\nz 2\n";
  }
  Solution sol = parse_solution(m, path);
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0));
  CHECK(sol.value(m.column("x")) == doctest::Approx(1.0));
  CHECK(sol.value(m.column("y")) == doctest::Approx(0.0));

  {
    std::ofstream out(path);
    out << "# nothing but a comment\n";
  }
  Solution empty = parse_solution(m, path);
  CHECK(empty.status == SolveStatus::Feasible);
  CHECK(empty.value(m.column("x")) == doctest::Approx(0.0));   // binary default
  CHECK(empty.value(m.column("z")) == doctest::Approx(-2.5));  // lower-bound default

  {
    std::ofstream out(path);
    out << "zz 3\n";
  }
  CHECK_THROWS_WITH_AS(static_cast<void>(parse_solution(m, path)),
                       doctest::Contains("zz"), ModelError);

  {
    std::ofstream out(path);
    out << "x notanumber\n";
  }
  CHECK_THROWS_AS(static_cast<void>(parse_solution(m, path)), ModelError);
}

TEST_CASE("external solver runs through a stub command") {
  Model m("two");
  const int x = m.add_variable("x", 0, 1, VarKind::Binary);
  const int y = m.add_variable("y", 0, 1, VarKind::Binary);
  m.add_objective(x, 1.0);
  m.add_objective(y, 1.0);
  m.add_constraint("cap", {{x, 1.0}, {y, 1.0}}, Sense::LessEq, 1.0);

  const auto dir = temp_dir() / "ext";
  fs::create_directories(dir);
  const auto stub = dir / "stub.sh";
  {
    std::ofstream out(stub);
    out << "#!/bin/sh\n"
        << "test -f \"$1\" || exit 3\n"
        << "printf 'status optimal\\nobjective 1\\nx 1\\ny 0\\n' > \"$2\"\n";
  }
  fs::permissions(stub, fs::perms::owner_all, fs::perm_options::add);

  Solution sol = solve_external(m, stub.string() + " {mps} {sol}", dir);
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0));
  CHECK(sol.value(x) == doctest::Approx(1.0));
  CHECK(sol.value(y) == doctest::Approx(0.0));

  SUBCASE("nonzero exit carries the captured output") {
    const auto bad = dir / "bad.sh";
    {
      std::ofstream out(bad);
      out << "#!/bin/sh\necho boom-message\nexit 1\n";
    }
    fs::permissions(bad, fs::perms::owner_all, fs::perm_options::add);
    CHECK_THROWS_WITH_AS(static_cast<void>(solve_external(m, bad.string() + " {mps} {sol}", dir)),
                         doctest::Contains("boom-message"), SolveError);
  }
  SUBCASE("missing placeholders are rejected") {
    CHECK_THROWS_AS(static_cast<void>(solve_external(m, "true", dir)), SolveError);
  }
  SUBCASE("missing solution file is an error") {
    CHECK_THROWS_AS(static_cast<void>(solve_external(m, "true {mps} {sol}-never", dir)),
                    SolveError);
  }
}
