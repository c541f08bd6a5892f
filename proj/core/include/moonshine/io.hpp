#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "moonshine/denominator.hpp"
#include "moonshine/groups.hpp"
#include "moonshine/hecke.hpp"
#include "moonshine/replication.hpp"

/// Text formats. Every parser skips blank lines and lines starting with '#',
/// and throws ParseError with a 1-based line and column.
namespace moonshine::io {

/// "M <den>", "L <conductor>", "K <bound numerator>" (or "K exact"), then
/// "<n> <cycnum>" lines with n strictly increasing, meaning c q^(n/M).
/// Coefficient conductors must divide L.
std::string write_series(PuiseuxSeries const& f);
PuiseuxSeries parse_series(std::string_view text);

/// "order N" followed by N rows of the multiplication table, or one or more
/// "perm <cycles>" lines such as "perm (1 2 3)(4 5)" on points 1..n.
std::string write_group(GroupTable const& G);
GroupTable parse_group(std::string_view text);

/// "N <int>", "orders h=<int>", "K <max grading>", then "i r k e <cycnum>"
/// trace lines.
std::string write_character_data(ModuleCharacterData const& data);
ModuleCharacterData parse_character_data(std::string_view text);

/// "order M" then "m n <cycnum>" lines.
std::string write_htable(HTable const& H);
HTable parse_htable(std::string_view text);

/// Polynomial on one line, as printed by Polynomial::to_string.
std::string write_polynomial(Polynomial const& p);
Polynomial parse_polynomial(std::string_view text);

/// "i j <cycnum>" lines for the coefficient of y^i x^j.
std::string write_bivariate(BivariatePolynomial const& F);
BivariatePolynomial parse_bivariate(std::string_view text);

/// A directory of series files named "<g>_<h>.qs", one per class
/// representative; files with other names are ignored.
void write_family(EquivariantFamily const& f, std::filesystem::path const& dir);
EquivariantFamily read_family(std::shared_ptr<GroupTable const> group, std::filesystem::path const& dir);

/// Whole file as a string; DomainError when it cannot be opened.
std::string read_file(std::filesystem::path const& path);
void write_file(std::filesystem::path const& path, std::string_view contents);

/// ParseError with the file name prefixed to the message.
class FileParseError : public ParseError {
 public:
  FileParseError(std::filesystem::path const& path, ParseError const& e);
  std::string const& message() const { return message_; }
  char const* what() const noexcept override { return message_.c_str(); }

 private:
  std::string message_;
};

/// read_file + parser, rethrowing ParseError as FileParseError.
template <class Parser>
auto load(std::filesystem::path const& path, Parser parse) {
  std::string text = read_file(path);
  try {
    return parse(std::string_view(text));
  } catch (ParseError const& e) {
    throw FileParseError(path, e);
  }
}

}  // namespace moonshine::io
