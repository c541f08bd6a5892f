#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "acceptance.hpp"
#include "moonshine/io.hpp"
#include "moonshine/monic.hpp"
#include "report.hpp"

namespace moonshine::cli {
namespace {

namespace fs = std::filesystem;

/// Bad arguments that CLI11 cannot catch on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::optional<std::int64_t> precision;
  std::optional<std::int64_t> conductor_bound;
  std::uint64_t seed = acceptance::default_seed;
  std::string report_path;
  std::string output;
  bool timing = false;
};

std::string str(Rational const& r) { return r.get_str(); }
std::optional<std::string> window_of(std::optional<Rational> const& b) {
  return b ? std::optional<std::string>(str(*b)) : std::nullopt;
}

CommutingPair parse_pair(std::string const& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("pair must be written \"g,h\", got '" + text + "'");
  try {
    return {static_cast<Element>(std::stoul(text.substr(0, comma))),
            static_cast<Element>(std::stoul(text.substr(comma + 1)))};
  } catch (std::exception const&) {
    throw UsageError("pair must be written \"g,h\", got '" + text + "'");
  }
}

/// State shared by one command run: inputs, checks and the emitted file.
class Session {
 public:
  Session(Globals const& g, RunReport& report) : g_(g), report_(report) {}

  /// Reads, digests and parses one input file.
  template <class Parser>
  auto load(fs::path const& path, Parser parse) {
    std::string text = io::read_file(path);
    report_.add_input(path.string(), text);
    try {
      return parse(std::string_view(text));
    } catch (ParseError const& e) {
      throw io::FileParseError(path, e);
    }
  }

  PuiseuxSeries series(fs::path const& path) {
    PuiseuxSeries f = load(path, io::parse_series);
    check_conductors(f, path);
    if (g_.precision) f = f.truncated(Rational(*g_.precision));
    return f;
  }

  std::shared_ptr<GroupTable const> group(fs::path const& path) {
    return std::make_shared<GroupTable const>(load(path, io::parse_group));
  }

  ModuleCharacterData character_data(fs::path const& path) {
    ModuleCharacterData d = load(path, io::parse_character_data);
    if (g_.conductor_bound)
      for (auto const& [key, value] : d.traces())
        if (value.conductor() > *g_.conductor_bound)
          throw UsageError(path.string() + ": trace conductor " + std::to_string(value.conductor()) +
                           " exceeds --conductor-bound");
    return d;
  }

  EquivariantFamily family(std::shared_ptr<GroupTable const> G, fs::path const& dir) {
    static std::regex const name(R"((\d+)_(\d+)\.qs)");
    std::vector<fs::path> files;
    for (auto const& e : fs::directory_iterator(dir))
      if (std::regex_match(e.path().filename().string(), name)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    EquivariantFamily f(G);
    for (auto const& p : files) {
      std::smatch m;
      std::string fname = p.filename().string();
      std::regex_match(fname, m, name);
      auto g = static_cast<Element>(std::stoul(m[1]));
      auto h = static_cast<Element>(std::stoul(m[2]));
      if (g >= G->order() || h >= G->order() || !G->commutes(g, h))
        throw UsageError(p.string() + ": not a commuting pair of the group");
      f.set({g, h}, series(p));
    }
    return f;
  }

  /// Family from --group/--family, or the trivial-group family of --input.
  EquivariantFamily family_or_series(std::string const& group_path, std::string const& dir,
                                     std::string const& input) {
    if (!input.empty()) {
      if (!dir.empty() || !group_path.empty()) throw UsageError("give either --input or --group with --family");
      PuiseuxSeries f = series(input);
      return hecke_replication_bridge({f, {{1, f}}}, 1);
    }
    if (dir.empty() || group_path.empty()) throw UsageError("--group and --family are required without --input");
    return family(group(group_path), dir);
  }

  void add(CheckResult c) { report_.add(std::move(c)); }
  void note(std::string key, std::string value) { report_.note(std::move(key), std::move(value)); }
  std::ostringstream& out() { return out_; }
  std::string emitted() const { return out_.str(); }

 private:
  void check_conductors(PuiseuxSeries const& f, fs::path const& path) const {
    if (!g_.conductor_bound) return;
    for (auto const& [n, c] : f.terms())
      if (c.conductor() > *g_.conductor_bound)
        throw UsageError(path.string() + ": coefficient conductor " + std::to_string(c.conductor()) +
                         " exceeds --conductor-bound");
  }

  Globals const& g_;
  RunReport& report_;
  std::ostringstream out_;
};

std::int64_t known_index(PuiseuxSeries const& f) {
  if (!f.bound()) throw UsageError("series is exact; give the order explicitly");
  Rational b = *f.bound();
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  return c.get_si() - 1;
}

CheckResult from_indexed(std::string name, IndexedReport const& r) {
  CheckResult c{std::move(name), r.verdict, std::nullopt, r.detail};
  if (r.location)
    c.detail += (c.detail.empty() ? "" : " ") + std::string("at (") + std::to_string(r.location->first) + "," +
                std::to_string(r.location->second) + ")";
  return c;
}

CheckResult from_comparison(std::string name, SeriesComparison const& r) {
  CheckResult c{std::move(name), r.verdict, window_of(r.window), ""};
  if (r.first_difference) c.detail = "first difference at q^" + str(*r.first_difference);
  return c;
}

CheckResult from_monicity(std::string name, MonicityReport const& r) {
  CheckResult c{std::move(name), r.verdict, window_of(r.window), r.detail};
  if (r.verdict != Verdict::inconclusive) c.detail = r.polynomial.to_string() + (r.detail.empty() ? "" : "; " + r.detail);
  return c;
}

void emit_sections(Session& s, std::map<std::int64_t, PuiseuxSeries> const& series, std::string const& dir,
                   char const* stem) {
  for (auto const& [t, f] : series) {
    if (dir.empty()) {
      s.out() << "# " << stem << " " << t << "\n" << io::write_series(f);
    } else {
      fs::create_directories(dir);
      io::write_file(fs::path(dir) / (std::string(stem) + "_" + std::to_string(t) + ".qs"), io::write_series(f));
    }
  }
}

struct Options {
  std::string input, group, family, data, pair = "0,0", compose_pair = "all", window, output_dir;
  std::vector<std::string> inputs;
  std::vector<std::int64_t> powers, criteria;
  std::int64_t n = 1, order = 0, t = 4, target = 20, k = 1, l = 0, m = 1, p = 2, n_max = 10, N = 0, cyclic = 0;
  bool complete = false;
};

using Handler = std::function<void(Session&, Options const&, Globals const&)>;

void cmd_faber(Session& s, Options const& o, Globals const&) {
  s.out() << io::write_polynomial(faber(s.series(o.input), o.n));
}

void cmd_bivarial(Session& s, Options const& o, Globals const&) {
  PuiseuxSeries f = s.series(o.input);
  std::int64_t M = o.order > 0 ? o.order : (known_index(f) + 1) / 2;
  s.out() << io::write_htable(bivarial(f, M));
}

void cmd_replicates(Session& s, Options const& o, Globals const&) {
  PuiseuxSeries f = s.series(o.input);
  std::int64_t M = o.order > 0 ? o.order : known_index(f) / (o.t * o.t);
  if (M < 1) throw UsageError("series is too short for replicates up to t = " + std::to_string(o.t));
  ReplicateResult r = extract_replicates(f, o.t, M);
  s.add(from_indexed("replicates t<=" + std::to_string(o.t) + " to index " + std::to_string(M), r.report));
  if (r.report.verdict == Verdict::pass) emit_sections(s, r.set.replicates, o.output_dir, "replicate");
}

void cmd_check_replicable(Session& s, Options const& o, Globals const&) {
  PuiseuxSeries f = s.series(o.input);
  std::int64_t M = o.order > 0 ? o.order : (known_index(f) + 1) / 2;
  s.add(from_indexed("replicable M=" + std::to_string(M), replicability_check(f, M)));
  if (o.complete) {
    std::int64_t Mc = o.order > 0 ? o.order : known_index(f) / (o.t * o.t);
    s.add(from_indexed("completely replicable T=" + std::to_string(o.t) + " M=" + std::to_string(Mc),
                       complete_replicability_check(f, o.t, Mc)));
  }
}

void cmd_extend7(Session& s, Options const& o, Globals const&) {
  std::map<std::int64_t, std::vector<CycNum>> partials;
  for (auto const& entry : o.inputs) {
    auto colon = entry.find(':');
    if (colon == std::string::npos) throw UsageError("--inputs entries are t:file, got '" + entry + "'");
    std::int64_t t = 0;
    try {
      t = std::stoll(entry.substr(0, colon));
    } catch (std::exception const&) {
      throw UsageError("bad replicate index in '" + entry + "'");
    }
    if (t < 1 || !partials.emplace(t, coefficient_list(s.series(entry.substr(colon + 1)))).second)
      throw UsageError("replicate index must be positive and distinct in '" + entry + "'");
  }
  if (partials.empty()) throw UsageError("--inputs needs at least one t:file");
  std::optional<std::int64_t> order;
  if (o.order > 0) order = o.order;
  ExtendResult r = extend_from_partial(partials, o.target, order);
  s.add(from_indexed("extend to a_" + std::to_string(o.target), r.report));
  emit_sections(s, r.replicates, o.output_dir, "replicate");
}

void cmd_hecke(Session& s, Options const& o, Globals const&) {
  EquivariantFamily f = s.family_or_series(o.group, o.family, o.input);
  s.out() << io::write_series(hecke_apply(f, o.n, parse_pair(o.pair)));
}

void cmd_hecke_compose(Session& s, Options const& o, Globals const& g) {
  std::optional<EquivariantFamily> f;
  if (o.family.empty() && o.input.empty()) {
    if (o.group.empty()) throw UsageError("--group is required");
    f = random_family(s.group(o.group), g.precision.value_or(24), g.seed);
  } else {
    f = s.family_or_series(o.group, o.family, o.input);
  }
  GroupTable const& G = f->group();
  std::vector<CommutingPair> pairs;
  if (o.compose_pair != "all") {
    pairs.push_back(parse_pair(o.compose_pair));
  } else {
    for (Element a = 0; a < G.order(); ++a)
      for (Element b = 0; b < G.order(); ++b)
        if (G.commutes(a, b)) pairs.push_back({a, b});
  }
  for (CommutingPair p : pairs)
    s.add(from_comparison("T_" + std::to_string(o.k) + " T_" + std::to_string(o.m) + " at (" + std::to_string(p.g) +
                              "," + std::to_string(p.h) + ")",
                          hecke_compose_check(*f, o.k, o.m, p)));
}

void cmd_monic_check(Session& s, Options const& o, Globals const&) {
  EquivariantFamily f = s.family_or_series(o.group, o.family, o.input);
  auto reports = weak_monicity_check(f, parse_pair(o.pair), o.n_max);
  for (std::size_t i = 0; i < reports.size(); ++i) s.add(from_monicity("n=" + std::to_string(i + 1), reports[i]));
}

void cmd_modular_eq(Session& s, Options const& o, Globals const&) {
  EquivariantFamily f = s.family_or_series(o.group, o.family, o.input);
  CommutingPair pair = parse_pair(o.pair);
  std::string name = "F_" + std::to_string(o.p);
  try {
    BivariatePolynomial F = modular_equation(f, pair, o.p);
    s.out() << io::write_bivariate(F);
    s.add({name + " monic of degree " + std::to_string(o.p + 1), Verdict::pass, std::nullopt, ""});
    s.add({name + " symmetric", symmetry_check(F), std::nullopt, ""});
    auto roots = root_substitution_check(F, f, pair, o.p);
    for (std::size_t i = 0; i < roots.size(); ++i)
      s.add(from_comparison(name + " root " + std::to_string(i + 1), roots[i]));
  } catch (NotMonicError const& e) {
    s.add({name + " monic of degree " + std::to_string(o.p + 1), Verdict::fail, std::nullopt, e.what()});
  } catch (InconclusiveError const& e) {
    s.add({name + " monic of degree " + std::to_string(o.p + 1), Verdict::inconclusive, std::nullopt, e.what()});
  }
}

void cmd_classify(Session& s, Options const& o, Globals const&) {
  PuiseuxSeries f = s.series(o.input);
  TrigTypeReport t = trig_type_detect(f);
  if (t.verdict == Verdict::pass) {
    s.note("trigonometric-type", "yes");
    s.note("parameters", "a=" + str(t.a) + (t.b ? " b=" + str(*t.b) : "") + " a0=" + t.a0.to_string() +
                             " zeta=" + t.zeta.to_string());
  } else if (t.verdict == Verdict::fail) {
    s.note("trigonometric-type", "no");
    s.note("reason", t.detail);
    s.note("branch", "consistent with holomorphic congruence genus zero (not certified here)");
  } else {
    s.note("trigonometric-type", "inconclusive");
    s.add({"trigonometric-type", Verdict::inconclusive, window_of(f.bound()), t.detail});
  }
  std::int64_t N = o.N > 0 ? o.N : f.denominator();
  LeadingBehavior lb = leading_behavior(f, N);
  s.add({"leading exponent support", lb.support, std::nullopt,
         "q^" + str(lb.exponent) + " with coefficient " + lb.zeta.to_string() +
             (lb.support_violation ? "; stray exponent " + str(*lb.support_violation) : "")});
  s.add({"leading coefficient order divides 2N", lb.zeta_order_ok ? Verdict::pass : Verdict::fail, std::nullopt,
         "N=" + std::to_string(N) +
             (lb.root ? ", order " + std::to_string(lb.root->order) : ", not a root of unity")});
}

void cmd_orbits(Session& s, Options const& o, Globals const&) {
  std::shared_ptr<GroupTable const> G =
      o.cyclic > 0 ? std::make_shared<GroupTable const>(GroupTable::cyclic(static_cast<std::uint32_t>(o.cyclic)))
                   : s.group(o.group);
  Components c = enumerate_components(*G);
  s.out() << "classes " << c.classes.size() << "\norbits " << c.orbit_count << '\n';
  for (std::size_t i = 0; i < c.classes.size(); ++i)
    s.out() << c.classes[i].g << ' ' << c.classes[i].h << ' ' << c.orbit[i] << '\n';
}

void cmd_orbifold_z(Session& s, Options const& o, Globals const&) {
  s.out() << io::write_series(orbifold_partition(s.character_data(o.data), o.k, o.l, o.m));
}

std::pair<std::int64_t, Rational> parse_window(std::string const& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--window must be P,Q");
  try {
    std::int64_t P = std::stoll(text.substr(0, comma));
    Rational Q(text.substr(comma + 1));
    Q.canonicalize();
    if (P < 0) throw UsageError("--window P must be non-negative");
    return {P, Q};
  } catch (std::invalid_argument const&) {
    throw UsageError("--window must be P,Q with an integer P and rational Q");
  }
}

void cmd_denominator(Session& s, Options const& o, Globals const&) {
  ModuleCharacterData d = s.character_data(o.data);
  auto [P, Q] = parse_window(o.window);
  std::vector<std::int64_t> powers = o.powers;
  if (powers.empty())
    for (std::int64_t e = 1; e <= d.h_order(); ++e) powers.push_back(e);
  for (std::int64_t e : powers) {
    DenominatorReport r = denominator_verify(d, {e}, P, Q);
    CheckResult c{"denominator formula h^" + std::to_string(e), r.verdict, std::nullopt, r.detail};
    if (r.location) c.detail += " (p^" + str(r.location->first) + " q^" + str(r.location->second) + ")";
    s.add(std::move(c));
  }
}

void cmd_fricke(Session& s, Options const& o, Globals const&) {
  auto reports = fricke_monicity_suite(s.character_data(o.data), o.l, o.m, o.n_max);
  for (std::size_t i = 0; i < reports.size(); ++i) s.add(from_monicity("n=" + std::to_string(i + 1), reports[i]));
}

void cmd_selftest(Session& s, Options const& o, Globals const& g) {
  std::vector<std::int64_t> ids = o.criteria;
  if (ids.empty())
    for (int i = 1; i <= acceptance::criterion_count; ++i) ids.push_back(i);
  for (std::int64_t id : ids) {
    if (id < 1 || id > acceptance::criterion_count) throw UsageError("no criterion " + std::to_string(id));
    auto r = acceptance::run_criterion(static_cast<int>(id), g.seed);
    s.add({"criterion " + std::to_string(id) + " " + r.title, r.verdict, std::nullopt, r.detail});
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Exact verification of Hecke-monic and replicable q-series"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  Options o;
  app.add_option("--precision", g.precision, "Truncate every input series below q^K")->check(CLI::NonNegativeNumber);
  app.add_option("--conductor-bound", g.conductor_bound, "Reject inputs with coefficient conductors above L")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized families and property suites");
  app.add_option("--report", g.report_path, "Write a JSON run report to this path");
  app.add_option("-o,--output", g.output, "Write the emitted file here instead of standard output");
  app.add_flag("--timing", g.timing, "Include wall-clock timing in reports");

  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto sub = [&](char const* name, char const* help, Handler h) {
    CLI::App* c = app.add_subcommand(name, help);
    commands.emplace_back(c, std::move(h));
    return c;
  };
  auto input = [&](CLI::App* c) { return c->add_option("--input", o.input, "Series file")->check(CLI::ExistingFile); };
  auto family = [&](CLI::App* c, std::string& pair) {
    c->add_option("--group", o.group, "Group file")->check(CLI::ExistingFile);
    c->add_option("--family", o.family, "Directory of <g>_<h>.qs series files")->check(CLI::ExistingDirectory);
    input(c);
    c->add_option("--pair", pair, "Commuting pair \"g,h\"")->capture_default_str();
  };

  auto* faber_cmd = sub("faber", "Faber polynomial Phi_n of a normalized series", cmd_faber);
  input(faber_cmd)->required();
  faber_cmd->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);

  auto* biv = sub("bivarial", "H_{m,n} table of a normalized series", cmd_bivarial);
  input(biv)->required();
  biv->add_option("--order", o.order, "Table size M (default: largest exact)");

  auto* rep = sub("replicates", "Replicates f^(t) for t <= T", cmd_replicates);
  input(rep)->required();
  rep->add_option("--t", o.t)->check(CLI::PositiveNumber);
  rep->add_option("--order", o.order, "Index M each replicate is extracted to");
  rep->add_option("--output-dir", o.output_dir, "Write replicate_<t>.qs files here");

  auto* chk = sub("check-replicable", "Replicability (and complete replicability) of a series", cmd_check_replicable);
  input(chk)->required();
  chk->add_option("--order", o.order, "Order M of the check");
  chk->add_flag("--complete", o.complete);
  chk->add_option("--t", o.t, "Largest replication power for --complete")->check(CLI::PositiveNumber);

  auto* ext = sub("extend7", "Extend replicates from their first coefficients", cmd_extend7);
  ext->add_option("--inputs", o.inputs, "t:file pairs")->required();
  ext->add_option("--target", o.target)->check(CLI::PositiveNumber);
  ext->add_option("--order", o.order, "Replication order N with f^(u) = f^(u+N)");
  ext->add_option("--output-dir", o.output_dir);

  auto* hk = sub("hecke", "n T_n of an equivariant family at a pair", cmd_hecke);
  family(hk, o.pair);
  hk->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);

  auto* hc = sub("hecke-compose-check", "Composition law of Hecke operators", cmd_hecke_compose);
  family(hc, o.compose_pair);
  hc->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
  hc->add_option("--m", o.m)->required()->check(CLI::PositiveNumber);

  auto* mc = sub("monic-check", "Weak Hecke-monicity for n <= n-max", cmd_monic_check);
  family(mc, o.pair);
  mc->add_option("--n-max", o.n_max)->check(CLI::PositiveNumber);

  auto* me = sub("modular-eq", "Equivariant modular equation F_p", cmd_modular_eq);
  family(me, o.pair);
  me->add_option("--p", o.p)->required();

  auto* cl = sub("classify", "Trigonometric-type classification and leading behavior", cmd_classify);
  input(cl)->required();
  cl->add_option("--N", o.N, "Level N for the leading-coefficient order bound 2N");

  auto* orb = sub("orbits", "Classes of commuting pairs and their SL2(Z) orbits", cmd_orbits);
  orb->add_option("--group", o.group)->check(CLI::ExistingFile);
  orb->add_option("--cyclic", o.cyclic, "Use Z/N instead of a group file");

  auto* oz = sub("orbifold-z", "Orbifold partition function Z(g^k, g^l h^m)", cmd_orbifold_z);
  oz->add_option("--data", o.data)->required()->check(CLI::ExistingFile);
  oz->add_option("--k", o.k);
  oz->add_option("--l", o.l);
  oz->add_option("--m", o.m);

  auto* dc = sub("denominator-check", "Twisted denominator formula", cmd_denominator);
  dc->add_option("--data", o.data)->required()->check(CLI::ExistingFile);
  dc->add_option("--window", o.window, "P,Q")->required();
  dc->add_option("--powers", o.powers, "Powers of h (default: all)")->delimiter(',');

  auto* fr = sub("fricke-suite", "Weak monicity of the orbifold family at (g, g^l h^m)", cmd_fricke);
  fr->add_option("--data", o.data)->required()->check(CLI::ExistingFile);
  fr->add_option("--n-max", o.n_max)->check(CLI::PositiveNumber);
  fr->add_option("--l", o.l);
  fr->add_option("--m", o.m);

  auto* st = sub("selftest", "Run the acceptance suite", cmd_selftest);
  st->add_option("--criterion", o.criteria, "Criteria to run (default: all)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return exit_usage;
  }

  RunReport report(std::vector<std::string>(argv + 1, argv + argc));
  Session session(g, report);
  auto start = std::chrono::steady_clock::now();
  try {
    for (auto& [c, handler] : commands)
      if (c->parsed()) {
        if (c == orb && o.group.empty() && o.cyclic <= 0) throw UsageError("orbits needs --group or --cyclic");
        handler(session, o, g);
      }
  } catch (io::FileParseError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (UsageError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (DomainError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (IncompleteFamilyError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (InconclusiveError const& e) {
    report.add({"precision", Verdict::inconclusive, std::nullopt, e.what()});
  }
  report.set_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

  std::string emitted = session.emitted();
  bool emitted_to_stdout = !emitted.empty() && g.output.empty();
  if (!emitted.empty()) {
    if (g.output.empty())
      std::cout << emitted;
    else
      io::write_file(g.output, emitted);
  }
  std::string human = report.human(g.timing);
  (emitted_to_stdout ? std::cerr : std::cout) << human;
  if (!g.report_path.empty()) io::write_file(g.report_path, report.json(g.timing).dump(2) + "\n");
  return report.exit_code();
}

}  // namespace
}  // namespace moonshine::cli

int main(int argc, char** argv) {
  try {
    return moonshine::cli::run(argc, argv);
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return moonshine::cli::exit_usage;
  }
}
