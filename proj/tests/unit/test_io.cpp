#include <doctest.h>

#include <filesystem>

#include "moonshine/io.hpp"
#include "support/oracles.hpp"

using namespace moonshine;

namespace {

template <class F>
ParseError parse_error(F&& f) {
  try {
    f();
  } catch (ParseError const& e) {
    return e;
  }
  FAIL("no ParseError");
  return ParseError("", 0);
}

}  // namespace

TEST_CASE("series file round trip") {
  PuiseuxSeries J = oracle::j_series(30);
  std::string text = io::write_series(J);
  CHECK(text.rfind("M 1\nL 1\nK 31\n-1 1\n1 196884\n", 0) == 0);
  CHECK(io::parse_series(text) == J);

  PuiseuxSeries twisted =
      PuiseuxSeries::from_terms(3, {{-1, CycNum::root(3, 1)}, {2, CycNum(make_rational(-5, 7))}, {4, CycNum::root(4, 1)}},
                                Rational(7, 3));
  CHECK(io::parse_series(io::write_series(twisted)) == twisted);
  PuiseuxSeries exact = PuiseuxSeries::monomial(CycNum(2L), -1, 2);
  CHECK(io::write_series(exact) == "M 2\nL 1\nK exact\n-1 2\n");
  CHECK(io::parse_series(io::write_series(exact)) == exact);
  // Bound off the exponent lattice widens M.
  PuiseuxSeries odd = PuiseuxSeries::from_terms(1, {{-1, CycNum(1L)}}, Rational(1, 2));
  CHECK(io::parse_series(io::write_series(odd)) == odd);
}

TEST_CASE("series file comments and coefficient forms") {
  auto f = io::parse_series("# j-like\nM 1\n\nL 4\nK 3\n-1 1\n0 L=4 0 1\n2 3/2\n");
  CHECK(f.coefficient_at(0) == CycNum::root(4, 1));
  CHECK(f.coefficient_at(2) == CycNum(make_rational(3, 2)));
  CHECK(f.bound() == Rational(3));
}

TEST_CASE("series file diagnostics") {
  auto e = parse_error([] { io::parse_series("M 1\nL 1\nK 5\n-1 1\n-1 2\n"); });
  CHECK(e.line() == 5);
  CHECK(e.column() == 1);
  e = parse_error([] { io::parse_series("M 1\nL 1\nK 5\n2 L=3 1\n"); });
  CHECK(e.line() == 4);
  CHECK(e.column() == 3);
  e = parse_error([] { io::parse_series("M 1\nL 1\nK 5\n2 L=3 1 1\n"); });
  CHECK(std::string(e.what()).find("does not divide") != std::string::npos);
  e = parse_error([] { io::parse_series("M 1\nK 5\n"); });
  CHECK(e.line() == 2);
  e = parse_error([] { io::parse_series("M 1\nL 1\nK x\n"); });
  CHECK(e.line() == 3);
  CHECK(e.column() == 3);
  e = parse_error([] { io::parse_series("M 1\nL 1\nK 2\n2 1\n"); });
  CHECK(e.line() == 4);
  e = parse_error([] { io::parse_series("M 1\nL 1\nK 2\n1 1/0\n"); });
  CHECK(e.column() == 3);
  e = parse_error([] { io::parse_series(""); });
  CHECK(e.line() == 1);
}

TEST_CASE("group file formats") {
  GroupTable z4 = GroupTable::cyclic(4);
  GroupTable back = io::parse_group(io::write_group(z4));
  CHECK(io::write_group(back) == io::write_group(z4));

  GroupTable s3 = io::parse_group("perm (1 2)\nperm (1 2 3)\n");
  CHECK(s3.order() == 6);
  CHECK(io::parse_group("perm (1 2 3 4)\nperm (1 3)\n").order() == 8);
  CHECK(io::parse_group("perm (1 2)(3 4)\n").order() == 2);

  auto e = parse_error([] { io::parse_group("order 2\n0 1\n1 2\n"); });
  CHECK(e.line() == 3);
  CHECK(e.column() == 3);
  e = parse_error([] { io::parse_group("order 2\n0 1\n0 1\n"); });
  CHECK(e.line() == 2);
  e = parse_error([] { io::parse_group("perm (1 2\n"); });
  CHECK(e.line() == 1);
  e = parse_error([] { io::parse_group("perm (1 2)(2 3)\n"); });
  CHECK(e.column() == 12);
  e = parse_error([] { io::parse_group("order 2\n0 1\n"); });
  CHECK(e.line() == 3);
}

TEST_CASE("character data file") {
  ModuleCharacterData d(2, 3, 8);
  d.set(1, 1, 1, 3, CycNum(1L));
  d.set(0, 1, 4, 1, CycNum::root(3, 1));
  d.set(1, 0, 6, 2, CycNum(make_rational(-2, 3)));
  std::string text = io::write_character_data(d);
  CHECK(text.rfind("N 2\norders h=3\nK 8\n", 0) == 0);
  ModuleCharacterData back = io::parse_character_data(text);
  CHECK(back.traces() == d.traces());
  CHECK(back.max_grading() == 8);

  auto e = parse_error([] { io::parse_character_data("N 2\norders h=1\nK 4\n1 1 2 1 5\n"); });
  CHECK(e.line() == 4);
  CHECK(e.column() == 5);
  e = parse_error([] { io::parse_character_data("N 2\norders 3\n"); });
  CHECK(e.line() == 2);
  CHECK(e.column() == 8);
  e = parse_error([] { io::parse_character_data("N 1\norders h=1\nK 4\n0 0 1 1 2\n0 0 1 1 3\n"); });
  CHECK(e.line() == 5);
}

TEST_CASE("H table, polynomial and bivariate files") {
  HTable H = bivarial(oracle::j_series(30), 6);
  HTable back = io::parse_htable(io::write_htable(H));
  CHECK(back.order() == 6);
  CHECK(back.values() == H.values());
  CHECK(parse_error([] { io::parse_htable("order 2\n3 1 1\n"); }).line() == 2);

  Polynomial p({CycNum(-393768L), CycNum(0L), CycNum(1L)});
  CHECK(io::write_polynomial(p) == "x^2 - 393768\n");
  CHECK(io::parse_polynomial(io::write_polynomial(p)) == p);
  Polynomial q({CycNum::root(5, 2), CycNum(make_rational(1, 3)), CycNum(1L)});
  CHECK(io::parse_polynomial(io::write_polynomial(q)) == q);
  auto e = parse_error([] { io::parse_polynomial("# c\n  x^2 + ? \n"); });
  CHECK(e.line() == 2);
  CHECK(e.column() == 9);

  BivariatePolynomial F({{{0, 3}, CycNum(1L)}, {{1, 1}, CycNum::root(3, 1)}, {{2, 0}, CycNum(-7L)}});
  CHECK(io::parse_bivariate(io::write_bivariate(F)) == F);
  CHECK(parse_error([] { io::parse_bivariate("0 1 1\n1 x 2\n"); }).line() == 2);
}

TEST_CASE("family directory") {
  auto G = std::make_shared<GroupTable const>(GroupTable::cyclic(3));
  EquivariantFamily f = random_family(G, 6, 11);
  auto dir = std::filesystem::temp_directory_path() / "moonshine_test_family";
  std::filesystem::remove_all(dir);
  io::write_family(f, dir);
  EquivariantFamily back = io::read_family(G, dir);
  CHECK(back.entries() == f.entries());

  io::write_file(dir / "0_0.qs", "M 1\nL 1\nK 3\n1 1\n0 1\n");
  try {
    io::read_family(G, dir);
    FAIL("expected a parse error");
  } catch (io::FileParseError const& e) {
    CHECK(e.line() == 5);
    CHECK(std::string(e.what()).find("0_0.qs") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(io::read_family(G, dir), DomainError);
}
