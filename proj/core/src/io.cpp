#include "moonshine/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "moonshine/arith.hpp"

namespace moonshine::io {

namespace {

/// Line-oriented tokenizer tracking 1-based positions.
class Lines {
 public:
  explicit Lines(std::string_view text) : text_(text) {}

  /// Advances to the next non-blank, non-comment line.
  bool next() {
    while (pos_ < text_.size()) {
      std::size_t end = std::min(text_.find('\n', pos_), text_.size());
      line_ = text_.substr(pos_, end - pos_);
      if (!line_.empty() && line_.back() == '\r') line_.remove_suffix(1);
      pos_ = end + 1;
      ++lineno_;
      col_ = 0;
      std::size_t first = line_.find_first_not_of(" \t");
      if (first != std::string_view::npos && line_[first] != '#') return true;
    }
    return false;
  }

  std::size_t lineno() const { return lineno_; }
  std::size_t column() const { return col_ + 1; }
  std::size_t token_column() const { return token_col_ + 1; }
  ParseError error(std::string const& msg) const { return ParseError(msg, lineno_, col_ + 1); }
  ParseError error_here(std::string const& msg) const { return ParseError(msg, lineno_, token_col_ + 1); }

  bool at_end() {
    skip_ws();
    return col_ >= line_.size();
  }

  std::string_view token() {
    skip_ws();
    token_col_ = col_;
    std::size_t start = col_;
    while (col_ < line_.size() && line_[col_] != ' ' && line_[col_] != '\t') ++col_;
    return line_.substr(start, col_ - start);
  }

  std::string_view rest() {
    skip_ws();
    token_col_ = col_;
    std::string_view r = line_.substr(col_);
    col_ = line_.size();
    return r;
  }

  std::int64_t integer(char const* what) {
    std::string_view t = token();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size())
      throw error_here(std::string("expected ") + what + (t.empty() ? "" : ", got '" + std::string(t) + "'"));
    return v;
  }

  void keyword(std::string_view kw) {
    std::string_view t = token();
    if (t != kw) throw error_here("expected '" + std::string(kw) + "'");
  }

  void expect_end() {
    if (!at_end()) throw error("unexpected trailing text");
  }

  CycNum cycnum() {
    std::string_view r = rest();
    if (r.empty()) throw error_here("expected a coefficient");
    try {
      return CycNum::parse(r);
    } catch (DomainError const& e) {
      throw error_here(e.what());
    }
  }

 private:
  void skip_ws() {
    while (col_ < line_.size() && (line_[col_] == ' ' || line_[col_] == '\t')) ++col_;
  }

  std::string_view text_;
  std::string_view line_;
  std::size_t pos_ = 0;
  std::size_t lineno_ = 0;
  std::size_t col_ = 0;
  std::size_t token_col_ = 0;
};

void require_line(Lines& in, char const* what) {
  if (!in.next()) throw ParseError(std::string("unexpected end of input, expected ") + what, in.lineno() + 1);
}

}  // namespace

std::string write_series(PuiseuxSeries const& f) {
  std::int64_t M = f.denominator();
  if (f.bound()) {
    std::int64_t den = f.bound()->get_den().get_si();
    M = std::lcm(M, den);
  }
  std::int64_t scale = M / f.denominator();
  std::int64_t L = 1;
  for (auto const& [n, c] : f.terms()) L = std::lcm(L, c.conductor());
  std::ostringstream os;
  os << "M " << M << "\nL " << L << "\nK ";
  if (f.bound())
    os << Rational(*f.bound() * M).get_num().get_str();
  else
    os << "exact";
  os << '\n';
  for (auto const& [n, c] : f.terms()) os << n * scale << ' ' << c.to_string() << '\n';
  return os.str();
}

PuiseuxSeries parse_series(std::string_view text) {
  Lines in(text);
  require_line(in, "'M <denominator>'");
  in.keyword("M");
  std::int64_t M = in.integer("exponent denominator");
  if (M < 1) throw in.error_here("exponent denominator must be positive");
  in.expect_end();
  require_line(in, "'L <conductor>'");
  in.keyword("L");
  std::int64_t L = in.integer("conductor");
  if (L < 1) throw in.error_here("conductor must be positive");
  in.expect_end();
  require_line(in, "'K <precision>'");
  in.keyword("K");
  std::optional<Rational> bound;
  if (std::string_view t = in.token(); t != "exact") {
    std::int64_t K = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), K);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size())
      throw in.error_here("expected precision numerator or 'exact'");
    bound = make_rational(K, M);
  }
  in.expect_end();
  PuiseuxSeries::Terms terms;
  std::optional<std::int64_t> last;
  while (in.next()) {
    std::int64_t n = in.integer("exponent numerator");
    if (last && n <= *last) throw in.error_here("exponents must be strictly increasing");
    if (bound && make_rational(n, M) >= *bound) throw in.error_here("term lies beyond the precision K");
    last = n;
    CycNum c = in.cycnum();
    if (L % c.conductor() != 0)
      throw in.error_here("coefficient conductor " + std::to_string(c.conductor()) + " does not divide L");
    if (!c.is_zero()) terms.emplace(n, std::move(c));
  }
  return PuiseuxSeries::from_terms(M, std::move(terms), bound);
}

std::string write_group(GroupTable const& G) {
  std::ostringstream os;
  os << "order " << G.order() << '\n';
  for (Element a = 0; a < G.order(); ++a) {
    for (Element b = 0; b < G.order(); ++b) os << (b ? " " : "") << G.mul(a, b);
    os << '\n';
  }
  return os.str();
}

namespace {

GroupTable parse_perm_lines(Lines& in) {
  // Cycles on points 1..n; the degree is the largest point named anywhere.
  std::vector<std::vector<std::vector<std::uint32_t>>> gens;
  std::uint32_t degree = 0;
  do {
    in.keyword("perm");
    std::string_view body = in.rest();
    std::size_t base = in.column() - 1 - body.size();
    std::vector<std::vector<std::uint32_t>> cycles;
    std::size_t i = 0;
    auto fail = [&](std::string const& msg) { return ParseError(msg, in.lineno(), base + i + 1); };
    while (i < body.size()) {
      if (body[i] == ' ' || body[i] == '\t') {
        ++i;
        continue;
      }
      if (body[i] != '(') throw fail("expected '('");
      ++i;
      std::vector<std::uint32_t> cycle;
      while (true) {
        while (i < body.size() && (body[i] == ' ' || body[i] == ',' || body[i] == '\t')) ++i;
        if (i >= body.size()) throw fail("unterminated cycle");
        if (body[i] == ')') {
          ++i;
          break;
        }
        std::uint32_t point = 0;
        auto [p, ec] = std::from_chars(body.data() + i, body.data() + body.size(), point);
        if (ec != std::errc() || point == 0) throw fail("expected a point number >= 1");
        for (auto const& c : cycles)
          if (std::find(c.begin(), c.end(), point) != c.end()) throw fail("point repeated across cycles");
        if (std::find(cycle.begin(), cycle.end(), point) != cycle.end()) throw fail("point repeated in cycle");
        cycle.push_back(point);
        degree = std::max(degree, point);
        i = static_cast<std::size_t>(p - body.data());
      }
      cycles.push_back(std::move(cycle));
    }
    gens.push_back(std::move(cycles));
  } while (in.next());
  std::vector<std::vector<std::uint32_t>> perms;
  for (auto const& cycles : gens) {
    std::vector<std::uint32_t> img(degree);
    std::iota(img.begin(), img.end(), 0U);
    for (auto const& c : cycles)
      for (std::size_t k = 0; k < c.size(); ++k) img[c[k] - 1] = c[(k + 1) % c.size()] - 1;
    perms.push_back(std::move(img));
  }
  return GroupTable::from_permutations(perms);
}

}  // namespace

GroupTable parse_group(std::string_view text) {
  Lines in(text);
  require_line(in, "'order N' or 'perm ...'");
  {
    Lines peek = in;
    if (peek.token() == "perm") {
      try {
        return parse_perm_lines(in);
      } catch (DomainError const& e) {
        throw ParseError(e.what(), 1);
      }
    }
  }
  in.keyword("order");
  std::int64_t n = in.integer("group order");
  if (n < 1 || n > 100000) throw in.error_here("group order out of range");
  in.expect_end();
  std::size_t header = in.lineno();
  std::vector<std::vector<Element>> rows;
  for (std::int64_t a = 0; a < n; ++a) {
    require_line(in, "a multiplication table row");
    std::vector<Element> row;
    for (std::int64_t b = 0; b < n; ++b) {
      std::int64_t v = in.integer("element index");
      if (v < 0 || v >= n) throw in.error_here("element index out of range");
      row.push_back(static_cast<Element>(v));
    }
    in.expect_end();
    rows.push_back(std::move(row));
  }
  if (in.next()) throw in.error("unexpected extra line after the table");
  try {
    return GroupTable::from_table(std::move(rows));
  } catch (DomainError const& e) {
    throw ParseError(e.what(), header + 1);
  }
}

std::string write_character_data(ModuleCharacterData const& data) {
  std::ostringstream os;
  os << "N " << data.N() << "\norders h=" << data.h_order() << "\nK " << data.max_grading() << '\n';
  for (auto const& [key, value] : data.traces())
    os << key[0] << ' ' << key[1] << ' ' << key[2] << ' ' << key[3] << ' ' << value.to_string() << '\n';
  return os.str();
}

ModuleCharacterData parse_character_data(std::string_view text) {
  Lines in(text);
  require_line(in, "'N <order of g>'");
  in.keyword("N");
  std::int64_t N = in.integer("order of g");
  if (N < 1) throw in.error_here("order of g must be positive");
  in.expect_end();
  require_line(in, "'orders h=<order>'");
  in.keyword("orders");
  std::string_view h = in.token();
  std::int64_t H = 0;
  if (h.substr(0, 2) != "h=") throw in.error_here("expected 'h=<order>'");
  auto [p, ec] = std::from_chars(h.data() + 2, h.data() + h.size(), H);
  if (ec != std::errc() || p != h.data() + h.size() || H < 1) throw in.error_here("bad order of h");
  in.expect_end();
  require_line(in, "'K <max grading>'");
  in.keyword("K");
  std::int64_t K = in.integer("maximal grading numerator");
  in.expect_end();
  ModuleCharacterData data(N, H, K);
  std::set<ModuleCharacterData::Key> seen;
  while (in.next()) {
    std::int64_t i = in.integer("twist index i");
    std::int64_t r = in.integer("eigenvalue index r");
    std::int64_t k = in.integer("grading numerator k");
    std::size_t col = in.token_column();
    std::int64_t e = in.integer("power e of h");
    CycNum value = in.cycnum();
    if (!seen.insert({mod_floor(i, N), mod_floor(r, N), k, mod_floor(e - 1, H) + 1}).second)
      throw ParseError("duplicate trace entry", in.lineno(), 1);
    try {
      data.set(i, r, k, e, std::move(value));
    } catch (DomainError const& err) {
      throw ParseError(err.what(), in.lineno(), col);
    }
  }
  return data;
}

std::string write_htable(HTable const& H) {
  std::ostringstream os;
  os << "order " << H.order() << '\n';
  for (auto const& [mn, v] : H.values()) os << mn.first << ' ' << mn.second << ' ' << v.to_string() << '\n';
  return os.str();
}

HTable parse_htable(std::string_view text) {
  Lines in(text);
  require_line(in, "'order M'");
  in.keyword("order");
  std::int64_t M = in.integer("order");
  if (M < 1) throw in.error_here("order must be positive");
  in.expect_end();
  std::map<std::pair<std::int64_t, std::int64_t>, CycNum> values;
  while (in.next()) {
    std::int64_t m = in.integer("row index m");
    std::int64_t n = in.integer("column index n");
    if (m < 1 || n < 1 || m > M || n > M) throw in.error_here("index outside 1..order");
    if (!values.emplace(std::pair{m, n}, in.cycnum()).second) throw ParseError("duplicate entry", in.lineno(), 1);
  }
  return HTable(M, std::move(values));
}

std::string write_polynomial(Polynomial const& p) { return p.to_string() + '\n'; }

Polynomial parse_polynomial(std::string_view text) {
  Lines in(text);
  require_line(in, "a polynomial");
  std::size_t line = in.lineno();
  std::string_view body = in.rest();
  std::size_t offset = in.column() - 1 - body.size();
  if (in.next()) throw in.error("unexpected extra line after the polynomial");
  try {
    return Polynomial::parse(body);
  } catch (ParseError const& e) {
    throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(": ") + 2), line,
                     offset + e.column());
  }
}

std::string write_bivariate(BivariatePolynomial const& F) { return F.to_text(); }

BivariatePolynomial parse_bivariate(std::string_view text) { return BivariatePolynomial::parse(text); }

void write_family(EquivariantFamily const& f, std::filesystem::path const& dir) {
  std::filesystem::create_directories(dir);
  for (auto const& [pair, series] : f.entries())
    write_file(dir / (std::to_string(pair.g) + "_" + std::to_string(pair.h) + ".qs"), write_series(series));
}

EquivariantFamily read_family(std::shared_ptr<GroupTable const> group, std::filesystem::path const& dir) {
  if (!std::filesystem::is_directory(dir)) throw DomainError("not a directory: " + dir.string());
  static std::regex const name(R"((\d+)_(\d+)\.qs)");
  std::vector<std::filesystem::path> files;
  for (auto const& entry : std::filesystem::directory_iterator(dir)) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  EquivariantFamily family(group);
  for (auto const& path : files) {
    std::smatch m;
    std::string fname = path.filename().string();
    if (!std::regex_match(fname, m, name)) continue;
    auto g = static_cast<Element>(std::stoul(m[1]));
    auto h = static_cast<Element>(std::stoul(m[2]));
    if (g >= group->order() || h >= group->order())
      throw DomainError(path.string() + ": pair index beyond the group order");
    if (!group->commutes(g, h)) throw DomainError(path.string() + ": elements do not commute");
    family.set({g, h}, load(path, parse_series));
  }
  return family;
}

std::string read_file(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(std::filesystem::path const& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path.string());
  out << contents;
  if (!out) throw DomainError("write failed for " + path.string());
}

FileParseError::FileParseError(std::filesystem::path const& path, ParseError const& e)
    : ParseError(e), message_(path.string() + ": " + e.what()) {}

}  // namespace moonshine::io
