// Text formats: dense matrix, MatrixMarket coordinate, trace CSV, and the
// colon set-spec grammar.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "projopt/ascent.hpp"
#include "projopt/errors.hpp"
#include "projopt/matrix_io.hpp"
#include "projopt/sets.hpp"
#include "test_util.hpp"

using namespace projopt;
using namespace testutil;

namespace {

template <typename Fn>
std::string message_of(Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

bool same_mat(const SymMatrix& a, const SymMatrix& b) {
  if (a.n() != b.n()) return false;
  for (int i = 0; i < a.n(); ++i)
    for (int j = i; j < a.n(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

std::filesystem::path temp_path(const char* name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("projopt_test_io_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("dense matrix text parses a small frozen example") {
  const SymMatrix m = parse_dense_matrix("2\n1 0.5\n0.5 2\n");
  CHECK(m.n() == 2);
  CHECK(m(0, 0) == 1.0);
  CHECK(m(0, 1) == 0.5);
  CHECK(m(1, 0) == 0.5);
  CHECK(m(1, 1) == 2.0);

  // Blank lines, indentation, and CRLF endings are tolerated.
  const SymMatrix m2 =
      parse_dense_matrix("\n  2 \r\n\n1 0.5\r\n0.5 2\r\n\n");
  CHECK(same_mat(m2, m));
}

TEST_CASE("dense matrix write then parse round-trips bitwise") {
  SubstreamRng rng(20240817, 0);
  const SymMatrix a = random_symmetric(rng, 7, -3.0, 3.0);
  std::ostringstream out;
  write_dense_matrix(out, a);
  const std::string text = out.str();
  CHECK(text.substr(0, 2) == "7\n");
  CHECK(same_mat(parse_dense_matrix(text), a));
}

TEST_CASE("dense matrix symmetrizes tiny asymmetry and rejects gross") {
  // Entries differ by 1e-13 < 1e-9 * max(1, 2): averaged exactly.
  const double v = std::stod("0.5000000000001");
  const SymMatrix m = parse_dense_matrix("2\n1 0.5\n0.5000000000001 2\n");
  CHECK(m(0, 1) == 0.5 * (0.5 + v));

  // Tolerance scales with the largest entry: 1e-4 passes against 1e6.
  const SymMatrix big =
      parse_dense_matrix("2\n1000000 1000000.0001\n1000000 1000000\n");
  CHECK(big(0, 1) == 0.5 * (1000000.0001 + 1000000.0));

  const std::string msg =
      message_of([] { parse_dense_matrix("2\n1 0.5\n0.6 2\n"); });
  CHECK(msg.find("not symmetric within tolerance") != std::string::npos);
  CHECK_THROWS_AS(parse_dense_matrix("2\n1 0.5\n0.6 2\n"), ValidationError);
}

TEST_CASE("dense matrix parse errors carry line numbers") {
  CHECK(message_of([] { parse_dense_matrix(""); })
            .find("missing dimension") != std::string::npos);
  CHECK(message_of([] { parse_dense_matrix("2 3\n1 2\n3 4\n"); })
            .find("line 1") != std::string::npos);
  CHECK(message_of([] { parse_dense_matrix("0\n"); })
            .find("must be positive") != std::string::npos);
  CHECK(message_of([] { parse_dense_matrix("-3\n"); })
            .find("must be positive") != std::string::npos);
  CHECK(message_of([] { parse_dense_matrix("2\n1 2 3\n4 5\n"); })
            .find("line 2") != std::string::npos);
  CHECK(message_of([] { parse_dense_matrix("2\n1 2 3\n4 5\n"); })
            .find("more than 2") != std::string::npos);
  CHECK(message_of([] { parse_dense_matrix("2\n1\n2 3\n"); })
            .find("fewer than 2") != std::string::npos);
  CHECK(message_of([] { parse_dense_matrix("2\n1 x\n3 4\n"); })
            .find("line 2") != std::string::npos);
  CHECK(message_of([] { parse_dense_matrix("2\n1 2\n"); })
            .find("expected 2 rows, found 1") != std::string::npos);
  CHECK_THROWS_AS(parse_dense_matrix("2\n1 2\n"), ParseError);
}

TEST_CASE("matrix market symmetric coordinate format parses") {
  const std::string text =
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "% generated by hand\n"
      "3 3 4\n"
      "1 1 2.0\n"
      "2 1 -1.5\n"
      "% entries may sit in either triangle\n"
      "3 3 1.0\n"
      "2 3 0.25\n";
  const SymMatrix m = parse_matrix_market(text);
  CHECK(m.n() == 3);
  CHECK(m(0, 0) == 2.0);
  CHECK(m(0, 1) == -1.5);
  CHECK(m(1, 0) == -1.5);
  CHECK(m(1, 2) == 0.25);
  CHECK(m(2, 1) == 0.25);
  CHECK(m(2, 2) == 1.0);
  CHECK(m(0, 2) == 0.0);
  CHECK(m(1, 1) == 0.0);

  // Field names are case-insensitive; integer field is accepted.
  const SymMatrix mi = parse_matrix_market(
      "%%MatrixMarket MATRIX Coordinate INTEGER Symmetric\n2 2 1\n2 1 -3\n");
  CHECK(mi(0, 1) == -3.0);

  // Zero stored entries is a legal (zero) matrix.
  const SymMatrix z = parse_matrix_market(
      "%%MatrixMarket matrix coordinate real symmetric\n2 2 0\n");
  CHECK(z(0, 0) == 0.0);
  CHECK(z(0, 1) == 0.0);
}

TEST_CASE("matrix market rejects malformed input with line numbers") {
  auto mm = [](const std::string& t) {
    return message_of([&] { parse_matrix_market(t); });
  };
  CHECK(mm("").find("empty input") != std::string::npos);
  CHECK(mm("% not a banner\n1 1 0\n").find("banner") != std::string::npos);
  CHECK(mm("%%MatrixMarket matrix array real symmetric\n")
            .find("coordinate") != std::string::npos);
  CHECK(mm("%%MatrixMarket matrix coordinate complex symmetric\n")
            .find("real or integer") != std::string::npos);
  CHECK(mm("%%MatrixMarket matrix coordinate real general\n")
            .find("symmetric") != std::string::npos);
  CHECK(mm("%%MatrixMarket matrix coordinate real general\n")
            .find("line 1") != std::string::npos);
  CHECK(mm("%%MatrixMarket matrix coordinate real symmetric\n%\n")
            .find("missing size line") != std::string::npos);
  CHECK(mm("%%MatrixMarket matrix coordinate real symmetric\n3 4 0\n")
            .find("square") != std::string::npos);
  CHECK(mm("%%MatrixMarket matrix coordinate real symmetric\n0 0 0\n")
            .find("positive") != std::string::npos);
  CHECK(mm("%%MatrixMarket matrix coordinate real symmetric\n2 2 -1\n")
            .find("nonnegative") != std::string::npos);

  const std::string head =
      "%%MatrixMarket matrix coordinate real symmetric\n";
  CHECK(mm(head + "2 2 1\n3 1 1.0\n").find("out of range") !=
        std::string::npos);
  // A mirrored pair names the same entry.
  const std::string dup = mm(head + "2 2 2\n1 2 0.5\n2 1 0.25\n");
  CHECK(dup.find("duplicate entry (2, 1)") != std::string::npos);
  CHECK(dup.find("line 4") != std::string::npos);
  CHECK(mm(head + "2 2 2\n1 2 0.5\n").find("expected 2 entries, found 1") !=
        std::string::npos);
  CHECK(mm(head + "2 2 1\n1 2 0.5\n1 1 1.0\n")
            .find("unexpected content after 1 entries") != std::string::npos);
  CHECK(mm(head + "2 2 1\n1 2\n").find("expected entry") != std::string::npos);
  CHECK(mm(head + "2 2 1\n1 2 0.5 9\n").find("expected entry") !=
        std::string::npos);
  CHECK_THROWS_AS(parse_matrix_market(head + "2 2 1\n1 2\n"), ParseError);
}

TEST_CASE("matrix file reading dispatches on the banner") {
  SubstreamRng rng(20240817, 1);
  const SymMatrix a = random_symmetric(rng, 5, -2.0, 2.0);

  const auto dense_path = temp_path("dense.txt");
  write_dense_matrix_file(dense_path.string(), a);
  CHECK(same_mat(read_matrix_file(dense_path.string()), a));

  const auto mm_path = temp_path("coord.mtx");
  {
    std::ofstream out(mm_path);
    out << "%%MatrixMarket matrix coordinate real symmetric\n"
        << "2 2 2\n1 1 4\n1 2 -0.5\n";
  }
  const SymMatrix mm = read_matrix_file(mm_path.string());
  CHECK(mm(0, 0) == 4.0);
  CHECK(mm(0, 1) == -0.5);
  CHECK(mm(1, 1) == 0.0);

  CHECK_THROWS_AS(read_matrix_file((temp_path("gone.txt")).string() + ".x"),
                  IoError);
  CHECK_THROWS_AS(
      write_dense_matrix_file(
          (temp_path("no_dir").string() + "/sub/a.txt"), a),
      IoError);
  std::filesystem::remove(dense_path);
  std::filesystem::remove(mm_path);
}

TEST_CASE("trace csv matches the golden layout") {
  IterateTrace trace;
  trace.records.push_back({0, 0.5, 1.0, 0.25, 0.125, 0.0});
  trace.records.push_back({1, 0.75, 0.0625, 0.25, 0.03125, 0.0});
  std::ostringstream out;
  write_trace_csv(out, trace);
  CHECK(out.str() ==
        "k,f,step_norm,eta,fw_gap\n"
        "0,0.5,1,0.25,0.125\n"
        "1,0.75,0.0625,0.25,0.03125\n");
}

TEST_CASE("trace csv file round-trips values at full precision") {
  const auto set = ConvexSetSpec::ball({0.0, 0.0}, 1.0);
  const auto oracle = SubgradientOracle::linear({0.6, 0.8});
  const auto trace = pga_run(oracle, set, {0.0, 0.0},
                             StepSchedule::constant(0.7), {});
  REQUIRE(!trace.records.empty());

  const auto path = temp_path("trace.csv");
  write_trace_csv_file(path.string(), trace);
  const std::string text = slurp(path);

  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "k,f,step_norm,eta,fw_gap");
  std::size_t rows = 0;
  std::string last;
  while (std::getline(in, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == trace.records.size());
  // %.17g makes the printed doubles parse back exactly.
  const auto comma = last.find(',');
  const auto second = last.find(',', comma + 1);
  CHECK(std::stod(last.substr(comma + 1, second - comma - 1)) ==
        trace.records.back().f);
  std::filesystem::remove(path);
}

TEST_CASE("set specs round-trip through describe") {
  auto sets = sample_exact_sets();
  sets.push_back(ConvexSetSpec::elliptope(3));
  for (const auto& s : sets) {
    const ConvexSetSpec p = parse_set_spec(s.describe());
    CHECK(p.kind == s.kind);
    CHECK(p.ambient_dim() == s.ambient_dim());
    CHECK(p.describe() == s.describe());
  }
}

TEST_CASE("set spec grammar accepts the documented forms") {
  const auto ball = parse_set_spec("ball:0,0:1");
  CHECK(ball.kind == ConvexSetSpec::Kind::Ball);
  CHECK(ball.center == Vector{0.0, 0.0});
  CHECK(ball.radius == 1.0);
  CHECK(ball.describe() == "ball:0,0:1");

  const auto box = parse_set_spec("box:-1,-1:1,1");
  CHECK(box.kind == ConvexSetSpec::Kind::Box);
  CHECK(box.lower == Vector{-1.0, -1.0});
  CHECK(box.upper == Vector{1.0, 1.0});

  const auto simplex = parse_set_spec("simplex:3");
  CHECK(simplex.kind == ConvexSetSpec::Kind::Simplex);
  CHECK(simplex.ambient_dim() == 3);
  CHECK(simplex.matrix_order() == 0);

  const auto l1 = parse_set_spec("l1ball:4:1.5");
  CHECK(l1.kind == ConvexSetSpec::Kind::L1Ball);
  CHECK(l1.ambient_dim() == 4);
  CHECK(l1.radius == 1.5);

  const auto ell = parse_set_spec("elliptope:4");
  CHECK(ell.kind == ConvexSetSpec::Kind::Elliptope);
  CHECK(ell.ambient_dim() == 16);
  CHECK(ell.matrix_order() == 4);

  // Scientific notation is fine anywhere a real is expected.
  const auto sci = parse_set_spec("ball:1e-3,2.5E2:0.5");
  CHECK(sci.center == Vector{0.001, 250.0});
}

TEST_CASE("set spec errors are specific") {
  auto msg = [](const std::string& t) {
    return message_of([&] { parse_set_spec(t); });
  };
  CHECK(msg("cube:1:2").find("unknown set kind \"cube\"") !=
        std::string::npos);
  CHECK(msg("cube:1:2").find("expected box") != std::string::npos);
  CHECK(msg("").find("unknown set kind") != std::string::npos);
  CHECK(msg("ball:0,0").find("ball:center:radius") != std::string::npos);
  CHECK(msg("ball:0,0:1:2").find("ball:center:radius") != std::string::npos);
  CHECK(msg("simplex").find("simplex:n") != std::string::npos);
  CHECK(msg("simplex:3:4").find("simplex:n") != std::string::npos);
  CHECK(msg("box:1").find("box:lower:upper") != std::string::npos);
  CHECK(msg("l1ball:3").find("l1ball:n:radius") != std::string::npos);
  CHECK(msg("elliptope:2:3").find("elliptope:n") != std::string::npos);

  CHECK(msg("ball:0,x:1").find("cannot parse number \"x\"") !=
        std::string::npos);
  CHECK(msg("simplex:3.5").find("positive integer") != std::string::npos);
  CHECK(msg("simplex:-2").find("positive integer") != std::string::npos);
  CHECK(msg("simplex:0").find("positive integer") != std::string::npos);
  CHECK(msg("elliptope:4x").find("trailing characters") != std::string::npos);
  CHECK(msg("box:1,,2:3,4,5").find("cannot parse number \"\"") !=
        std::string::npos);

  // Factory validation surfaces through the parser unchanged.
  CHECK_THROWS_AS(parse_set_spec("box:1,2:0,0,0"), ValidationError);
  CHECK_THROWS_AS(parse_set_spec("ball:0,0:-1"), ValidationError);
  CHECK_THROWS_AS(parse_set_spec("ball:0,0:0"), ValidationError);
  CHECK_THROWS_AS(parse_set_spec("cube:1"), ValidationError);
}
