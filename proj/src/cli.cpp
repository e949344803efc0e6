#include "anosov/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "anosov/boundary.hpp"
#include "anosov/group.hpp"
#include "anosov/invariants.hpp"
#include "anosov/orbits.hpp"
#include "anosov/selftest.hpp"
#include "anosov/zeta.hpp"

namespace anosov::cli {

namespace {

constexpr const char* kCsvVersion = "anosov-csv/1";
constexpr const char* kReportVersion = "anosov-report/1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  int jobs = 0;
  std::uint64_t seed = 20240611;
  bool dump_config = false;
  std::string resolved;  // global keys and those of the active subcommand
};

// Keeps global keys and keys of the active subcommand from CLI11's dump.
std::string resolved_config(const std::string& dump, const std::string& sub) {
  std::stringstream ss(dump);
  std::string line, out;
  while (std::getline(ss, line)) {
    auto eq = line.find('=');
    if (line.empty() || line[0] == '[' || eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    auto dot = key.find('.');
    if (dot == std::string::npos || key.compare(0, dot, sub) == 0) out += line + "\n";
  }
  return out;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> split_doubles(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + ": '" + s + "'");
    }
  }
  return out;
}

zeta::cplx parse_s(const std::string& s) {
  auto v = split_doubles(s, "--s");
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() != 2) throw UsageError("--s expects re,im");
  return {v[0], v[1]};
}

boundary::BumpFunction parse_bump(const std::string& s, const char* what) {
  auto v = split_doubles(s, what);
  if (v.size() != 3 || !(v[1] > 0.0) || !(v[2] > v[1])) throw UsageError(std::string(what) + " expects center,r_in,r_out with 0 < r_in < r_out");
  return {v[0], v[1], v[2], 1.0};
}

// Output sink: the named file, opened before any work, or `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw UsageError("cannot open output file " + path);
    os_ = file_.get();
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

void config_header(std::ostream& os, const Global& g, const char* prefix) {
  if (!g.dump_config) return;
  std::stringstream ss(g.resolved);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) os << prefix << "config " << line << "\n";
}

const char* kZetaNote =
    "the Euler product converges only for Re s > h_top; behaviour at s = 0 comes from the closed form (cat map) or "
    "from `classify`, never from this product";

// ---------------------------------------------------------------------------

struct OrbitsArgs {
  std::vector<long> catmap;
  int max_period = 12;
  std::string group;
  double cutoff = 3.5;
  double slack = 8.0;
  std::string out;
};

int cmd_orbits(const OrbitsArgs& a, const Global& g, std::ostream& out) {
  if (a.catmap.empty() == a.group.empty()) throw UsageError("orbits needs exactly one of --catmap or --group");
  if (!a.out.empty() && a.out != "-") {
    std::ofstream probe(a.out, std::ios::app);
    if (!probe) throw UsageError("cannot open output file " + a.out);
  }
  orbits::OrbitCatalog cat;
  if (!a.catmap.empty()) {
    if (a.catmap.size() != 4) throw UsageError("--catmap expects a,b,c,d");
    if (a.max_period < 1) throw UsageError("--max-period must be positive");
    try {
      cat = orbits::catmap_orbits({a.catmap[0], a.catmap[1], a.catmap[2], a.catmap[3]}, a.max_period);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    if (a.group != "bolza") throw UsageError("unknown group '" + a.group + "' (available: bolza)");
    if (!(a.cutoff > 0.0)) throw UsageError("--cutoff must be positive");
    orbits::FuchsianOptions fo;
    fo.jobs = g.jobs;
    fo.slack = a.slack;
    fo.name = "bolza";
    cat = orbits::fuchsian_orbits(group::bolza_generators(), a.cutoff, fo);
  }
  if (g.dump_config) {
    std::stringstream ss(g.resolved);
    std::string line;
    while (std::getline(ss, line))
      if (!line.empty()) cat.header_extra.push_back("config " + line);
  }
  Sink sink(a.out, out);
  orbits::write_catalog(*sink, cat);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ZetaArgs {
  std::string catalog;
  std::vector<std::string> s;
  std::string twist;
  bool factor = false;
  bool closed_form = false;
  std::string iterates = "converged";
  int beta = 1;
  double h_top = 1.0;
  double margin = 0.5;
  std::string out;
};

int cmd_zeta(const ZetaArgs& a, const Global& g, std::ostream& out, std::ostream& err) {
  if (a.s.empty()) throw UsageError("zeta needs at least one --s re,im");
  std::vector<zeta::cplx> pts;
  for (const auto& s : a.s) pts.push_back(parse_s(s));
  zeta::ZetaOptions zo;
  zo.beta = a.beta;
  zo.h_top = a.h_top;
  zo.margin = a.margin;
  if (!(zo.margin > 0.0)) throw UsageError("--margin must be positive");
  if (a.iterates == "converged")
    zo.iterates = zeta::IterateMode::Converged;
  else if (a.iterates == "cutoff")
    zo.iterates = zeta::IterateMode::Cutoff;
  else
    throw UsageError("--iterates must be converged or cutoff");
  for (auto s : pts)
    if (s.real() < zo.h_top + zo.margin)
      throw UsageError("Re s = " + g17(s.real()) + " is outside the convergence domain (Re s >= " +
                       g17(zo.h_top + zo.margin) + "); " + kZetaNote);
  orbits::OrbitCatalog cat;
  try {
    cat = orbits::load_catalog(a.catalog);
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot read catalog: ") + e.what());
  }
  std::size_t rank = cat.orbits.empty() ? 0 : cat.orbits.front().h1_class.size();
  orbits::HolonomyCharacter chi = orbits::HolonomyCharacter::trivial(rank);
  if (!a.twist.empty()) {
    chi.angles = split_doubles(a.twist, "--twist");
    if (chi.angles.size() != rank)
      throw UsageError("--twist needs " + std::to_string(rank) + " angle(s) for this catalog");
  }
  if (a.closed_form && !cat.is_catmap()) throw UsageError("--closed-form is available for cat-map catalogs only");
  Sink sink(a.out, out);
  std::ostream& os = *sink;
  os << "# " << kCsvVersion << " zeta catalog=" << cat.source << " cutoff=" << g17(cat.cutoff)
     << " complete=" << (cat.complete ? "true" : "false") << "\n";
  os << "# note: " << kZetaNote << "\n";
  config_header(os, g, "# ");
  os << "s_re,s_im,value_re,value_im,err_bound";
  if (a.factor) os << ",F0_re,F0_im,F1_re,F1_im,F2_re,F2_im,factor_residual";
  if (a.closed_form) os << ",closed_re,closed_im,closed_diff";
  os << "\n";
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
  for (auto s : pts) {
    auto z = zeta::ruelle_zeta(cat, chi, s, zo);
    for (const auto& w : z.warnings)
      if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
    os << g17(s.real()) << ',' << g17(s.imag()) << ',' << g17(z.value.real()) << ',' << g17(z.value.imag()) << ','
       << g17(z.err_bound);
    if (a.factor) {
      auto f = zeta::factorization_check(cat, chi, s, zo);
      for (const auto& F : f.F) os << ',' << g17(F.real()) << ',' << g17(F.imag());
      os << ',' << g17(f.residual);
      if (f.residual >= 1e-7) failures.push_back("factorization identity at s=" + g17(s.real()) + "," + g17(s.imag()));
    }
    if (a.closed_form) {
      double theta = chi.angles.empty() ? 0.0 : chi.angles[0];
      auto c = zeta::catmap_closed_form(cat.catmap_matrix(), theta, s);
      double d = std::abs(c - z.value);
      os << ',' << g17(c.real()) << ',' << g17(c.imag()) << ',' << g17(d);
      if (d > z.err_bound) failures.push_back("closed-form agreement at s=" + g17(s.real()) + "," + g17(s.imag()));
    }
    os << "\n";
  }
  for (const auto& w : warnings) os << "# warning: " << w << "\n";
  if (!failures.empty()) {
    for (const auto& f : failures) err << "verification failed: " << f << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string family = "contact-geodesic";
  int genus = 2;
  std::vector<long> matrix{2, 1, 1, 1};
  std::vector<int> twist_betti;
  double eps = 0.0;
  double lambda = 0.0;
  std::string out;
};

int cmd_classify(const ClassifyArgs& a, const Global& g, std::ostream& out, std::ostream& err) {
  invariants::FlowDescriptor f;
  try {
    f.family = invariants::parse_family(a.family);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (f.family == invariants::Family::User) throw UsageError("user flows need the library API (a frame field)");
  if (a.genus < 2) throw UsageError("--genus must be >= 2");
  if (a.matrix.size() != 4) throw UsageError("--matrix expects a,b,c,d");
  f.genus = a.genus;
  f.matrix = {a.matrix[0], a.matrix[1], a.matrix[2], a.matrix[3]};
  f.eps = a.eps;
  f.magnetic_strength = a.lambda;
  std::optional<invariants::Betti> betti;
  if (!a.twist_betti.empty()) {
    if (a.twist_betti.size() != 2 || a.twist_betti[0] < 0 || a.twist_betti[1] < 0)
      throw UsageError("--twist-betti expects b0,b1 >= 0");
    betti = invariants::Betti{a.twist_betti[0], a.twist_betti[1]};
  }
  Sink sink(a.out, out);
  invariants::QuadOptions q;
  q.jobs = g.jobs;
  auto c = invariants::classify(f, betti, q);
  std::ostream& os = *sink;
  os << "# " << kReportVersion << " classify family=" << invariants::family_name(f.family) << "\n";
  config_header(os, g, "# ");
  os << c.report();
  if (!c.report().empty() && c.report().back() != '\n') os << "\n";
  os << "record: " << c.record() << "\n";
  if (c.ambiguous) {
    err << "verification failed: classification is ambiguous (helicity or winding not resolved by quadrature)\n";
    return kExitVerification;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::string eigs;
  int genus = 2;
  double eps = 0.0;
  std::optional<double> winding;
  std::string out;
};

int cmd_spectrum(const SpectrumArgs& a, const Global& g, std::ostream& out) {
  std::ifstream in(a.eigs);
  if (!in) throw UsageError("cannot open eigenvalue file " + a.eigs);
  if (a.genus < 2) throw UsageError("--genus must be >= 2");
  std::vector<double> mu;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::stringstream ss(line);
    double v;
    while (ss >> v) mu.push_back(v);
    if (!ss.eof()) throw UsageError("cannot parse eigenvalue line: " + line);
  }
  double W = 0.0;
  std::string w_origin = "none";
  if (a.winding) {
    W = *a.winding;
    w_origin = "given";
  } else if (a.eps != 0.0) {
    invariants::FlowDescriptor f;
    f.family = invariants::Family::HarmonicPerturbation;
    f.genus = a.genus;
    f.eps = a.eps;
    invariants::QuadOptions q;
    q.jobs = g.jobs;
    W = invariants::winding_cycle(f, invariants::pullback_form(f.harmonic), q).value;
    w_origin = "computed for theta = d Re z";
  }
  std::vector<invariants::SpectrumPoint> pts;
  try {
    pts = invariants::assemble_with_splitting(mu, a.genus, a.eps, W);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Sink sink(a.out, out);
  std::ostream& os = *sink;
  os << "# " << kCsvVersion << " spectrum genus=" << a.genus << " eps=" << g17(a.eps) << " W=" << g17(W)
     << " (" << w_origin << ")\n";
  config_header(os, g, "# ");
  os << invariants::spectrum_csv(pts);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TimeChangeArgs {
  std::string group = "bolza";
  int K = 32;
  double radius = 0.0;
  std::size_t index = 0;
  std::size_t pool = 6000;
  std::size_t verify = 10000;
  std::string report;
};

int cmd_timechange(const TimeChangeArgs& a, const Global& g, std::ostream& out, std::ostream& err) {
  if (a.group != "bolza") throw UsageError("unknown group '" + a.group + "' (available: bolza)");
  if (a.K < 4) throw UsageError("--fourier-K must be at least 4");
  if (a.radius < 0.0) throw UsageError("--radius must be nonnegative");
  Sink sink(a.report, out);
  auto gens = group::bolza_generators();
  boundary::Bd0Options bo;
  bo.K = a.K;
  bo.jobs = g.jobs;
  auto basis = boundary::bd0_approximate(gens, {-1.0, 0.0}, bo);
  if (a.index >= basis.densities.size()) throw UsageError("--index out of range");
  boundary::TimeChangeOptions to;
  to.seed = g.seed;
  to.jobs = g.jobs;
  to.radius = a.radius;
  to.pool = a.pool;
  to.verify = a.verify;
  boundary::TimeChangeReport rep;
  boundary::build_time_change(gens, basis, a.index, to, &rep);
  std::ostream& os = *sink;
  os << "# " << kReportVersion << " timechange group=bolza K=" << a.K << " index=" << a.index << " seed=" << g.seed
     << "\n";
  config_header(os, g, "# ");
  os << "bd0_gap " << g17(basis.gap(basis.densities.size())) << "\n";
  for (const auto& w : basis.warnings) os << "bd0_warning " << w << "\n";
  os << rep.text();
  auto c = boundary::timechange_consequence(rep, 2);
  os << "consequence " << c.text << "\n";
  if (!rep.passed) {
    err << "verification failed: time-change positivity/pairing check\n";
    return kExitVerification;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PairArgs {
  int K = 32;
  std::size_t w1 = 0, w2 = 0;
  std::string minus = "1.0,0.15,0.4", plus = "3.6,0.2,0.5", psi = "0.0,0.25,0.5";
  bool kernel = false;
};

int cmd_pair(const PairArgs& a, const Global& g, std::ostream& out) {
  if (a.K < 4) throw UsageError("--fourier-K must be at least 4");
  auto bm = parse_bump(a.minus, "--minus"), bp = parse_bump(a.plus, "--plus"), bs = parse_bump(a.psi, "--psi");
  auto gens = group::bolza_generators();
  boundary::Bd0Options bo;
  bo.K = a.K;
  bo.jobs = g.jobs;
  auto basis = boundary::bd0_approximate(gens, {-1.0, 0.0}, bo);
  if (a.w1 >= basis.densities.size() || a.w2 >= basis.densities.size()) throw UsageError("density index out of range");
  boundary::BumpTriple t;
  t.phi_minus = bm;
  t.psi = bs;
  std::string plus_desc = "bump";
  if (a.kernel) {
    auto kb = boundary::kernel_bump(basis.densities[a.w2], bm.center, bp.center, gens[0]);
    if (!kb.ok) throw std::runtime_error("kernel bump failed: " + kb.diagnostics);
    t.phi_plus = kb.phi;
    plus_desc = "kernel bump eps=" + g17(kb.eps);
  } else {
    t.phi_plus.terms.push_back({bp, 1.0, std::nullopt});
  }
  auto v = boundary::pair_product(basis.densities[a.w1], basis.densities[a.w2], {t});
  out << "# " << kReportVersion << " pair K=" << a.K << " w1=" << a.w1 << " w2=" << a.w2 << " phi_plus=" << plus_desc
      << "\n";
  config_header(out, g, "# ");
  out << "pairing " << g17(v.real()) << " " << g17(v.imag()) << " abs " << g17(std::abs(v)) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SelftestArgs {
  std::vector<int> only;
  bool quiet = false;
};

int cmd_selftest(const SelftestArgs& a, const Global& g, std::ostream& out, std::ostream& err) {
  selftest::Options o;
  o.jobs = g.jobs;
  o.seed = g.seed;
  o.only = a.only;
  for (int id : o.only)
    if (id < 1 || id > 11) throw UsageError("criterion ids run from 1 to 11");
  auto rs = selftest::run(o);
  selftest::print_table(out, rs, !a.quiet);
  int failed = 0;
  for (const auto& c : rs)
    if (!c.pass) {
      err << "verification failed: criterion " << c.id << " (" << c.name << ")\n";
      ++failed;
    }
  out << (rs.size() - failed) << "/" << rs.size() << " criteria passed\n";
  return failed ? kExitVerification : kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeta functions, resonance invariants and boundary constructions for Anosov flows"};
  app.require_subcommand(1, 1);
  app.fallthrough();  // global options may follow the subcommand
  Global g;
  app.add_option("--jobs", g.jobs, "worker threads (0: hardware count)")->envname("ANOSOV_JOBS")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized checks")->capture_default_str();
  app.add_flag("--dump-config", g.dump_config, "echo the resolved configuration into output headers");
  app.set_config("--config", "", "key=value configuration file (flags take precedence)");

  OrbitsArgs oa;
  auto* orb = app.add_subcommand("orbits", "enumerate primitive closed orbits");
  orb->add_option("--catmap", oa.catmap, "cat-map matrix a,b,c,d")->delimiter(',');
  orb->add_option("--max-period", oa.max_period, "largest cat-map period")->capture_default_str();
  orb->add_option("--group", oa.group, "surface group (bolza)");
  orb->add_option("--cutoff", oa.cutoff, "length cutoff for surface groups")->capture_default_str();
  orb->add_option("--slack", oa.slack, "pruning slack when no certified bound exists")->capture_default_str();
  orb->add_option("--out", oa.out, "output catalog (default stdout)");

  ZetaArgs za;
  auto* zet = app.add_subcommand("zeta", "evaluate the truncated Euler product");
  zet->add_option("--catalog", za.catalog, "orbit catalog")->required()->check(CLI::ExistingFile);
  zet->add_option("--s", za.s, "evaluation point re,im (repeatable)")->allow_extra_args(false);
  zet->add_option("--twist", za.twist, "holonomy angles, comma separated");
  zet->add_flag("--factor", za.factor, "emit F0, F1, F2 and the factorization residual");
  zet->add_flag("--closed-form", za.closed_form, "compare with the cat-map closed form");
  zet->add_option("--iterates", za.iterates, "converged or cutoff")->capture_default_str();
  zet->add_option("--beta", za.beta, "dimension of the stable bundle")->capture_default_str();
  zet->add_option("--h-top", za.h_top, "entropy bound")->capture_default_str();
  zet->add_option("--margin", za.margin, "required Re s - h_top")->capture_default_str();
  zet->add_option("--out", za.out, "output CSV (default stdout)");

  ClassifyArgs ca;
  auto* cls = app.add_subcommand("classify", "resonance dimensions and the vanishing order at 0");
  cls->add_option("--family", ca.family, "contact-geodesic, magnetic, harmonic-perturbation or catmap-suspension")
      ->capture_default_str();
  cls->add_option("--genus", ca.genus)->capture_default_str();
  cls->add_option("--matrix", ca.matrix, "cat-map matrix a,b,c,d")->delimiter(',');
  cls->add_option("--twist-betti", ca.twist_betti, "twisted Betti numbers b0,b1")->delimiter(',');
  cls->add_option("--eps", ca.eps, "perturbation size")->capture_default_str();
  cls->add_option("--lambda", ca.lambda, "constant magnetic strength")->capture_default_str();
  cls->add_option("--out", ca.out, "output report (default stdout)");

  SpectrumArgs sa;
  auto* spe = app.add_subcommand("spectrum", "first-band and splitting resonances as CSV");
  spe->add_option("--eigs", sa.eigs, "Laplace eigenvalues, whitespace separated, # comments")->required()->check(CLI::ExistingFile);
  spe->add_option("--genus", sa.genus)->capture_default_str();
  spe->add_option("--eps", sa.eps)->capture_default_str();
  spe->add_option("--winding", sa.winding, "winding cycle W (computed for theta = d Re z when omitted)");
  spe->add_option("--out", sa.out, "output CSV (default stdout)");

  TimeChangeArgs ta;
  auto* tim = app.add_subcommand("timechange", "build and verify the positive time change");
  tim->add_option("--group", ta.group)->capture_default_str();
  tim->add_option("--fourier-K", ta.K)->capture_default_str();
  tim->add_option("--radius", ta.radius, "orbit-sum radius (0: certified value)")->capture_default_str();
  tim->add_option("--index", ta.index, "which basis density plays w2")->capture_default_str();
  tim->add_option("--pool", ta.pool, "covering candidates")->capture_default_str();
  tim->add_option("--verify", ta.verify, "fresh positivity samples")->capture_default_str();
  tim->add_option("--report", ta.report, "report file (default stdout)");

  PairArgs pa;
  auto* par = app.add_subcommand("pair", "product pairing of two densities against one bump triple");
  par->add_option("--fourier-K", pa.K)->capture_default_str();
  par->add_option("--w1", pa.w1)->capture_default_str();
  par->add_option("--w2", pa.w2)->capture_default_str();
  par->add_option("--minus", pa.minus, "phi_minus center,r_in,r_out")->capture_default_str();
  par->add_option("--plus", pa.plus, "phi_plus center,r_in,r_out")->capture_default_str();
  par->add_option("--psi", pa.psi, "psi center,r_in,r_out")->capture_default_str();
  par->add_flag("--kernel", pa.kernel, "replace phi_plus by the kernel bump for w2 centred at --plus");

  SelftestArgs ta2;
  auto* sel = app.add_subcommand("selftest", "run the acceptance criteria");
  sel->add_option("--only", ta2.only, "criterion ids")->delimiter(',');
  sel->add_flag("--quiet", ta2.quiet, "one line per criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if (g.dump_config) g.resolved = resolved_config(app.config_to_str(true, false), app.get_subcommands().front()->get_name());

  try {
    if (orb->parsed()) return cmd_orbits(oa, g, out);
    if (zet->parsed()) return cmd_zeta(za, g, out, err);
    if (cls->parsed()) return cmd_classify(ca, g, out, err);
    if (spe->parsed()) return cmd_spectrum(sa, g, out);
    if (tim->parsed()) return cmd_timechange(ta, g, out, err);
    if (par->parsed()) return cmd_pair(pa, g, out);
    if (sel->parsed()) return cmd_selftest(ta2, g, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerification;
  }
  return kExitUsage;
}

}  // namespace anosov::cli
