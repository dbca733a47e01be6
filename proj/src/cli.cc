#include "popcert/cli.h"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "popcert/certify.h"
#include "popcert/errors.h"
#include "popcert/json_io.h"
#include "popcert/reductions.h"
#include "popcert/sat.h"

namespace popcert {

namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

/// Writes to `path`, or to `out` when the path is empty.
void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    WriteFile(path, text);
  }
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

Rational RationalArg(const std::string& text, const char* what) {
  try {
    return ParseRational(text);
  } catch (const std::invalid_argument&) {
    throw FormatError(std::string(what) + " must be an integer or num/den, got '" + text + "'");
  }
}

CertifyOptions OptionsFrom(const Config& cfg) {
  CertifyOptions opts;
  opts.sdp.tol = cfg.tol;
  opts.sdp.max_iter = cfg.max_iter;
  opts.sdp.dimension_cap = cfg.dimension_cap;
  opts.seed = cfg.seed;
  opts.denom_power = cfg.denom_power;
  return opts;
}

/// Writes the certificate (if any) and the report; returns the exit code.
int Finish(const CertifyOutcome& outcome, const std::string& cert_path, const std::string& report_path,
           const Config& cfg, std::ostream& out) {
  Json ref = nullptr;
  if (outcome.certificate) {
    const Json cert = ToJson(*outcome.certificate);
    if (cert_path.empty()) {
      ref = cert;
    } else {
      WriteFile(cert_path, Dump(cert));
      ref = cert_path;
    }
  }
  Emit(report_path, Dump(OutcomeToJson(outcome, ref, cfg.timings)), out);
  return outcome.certified() ? kExitOk : kExitInconclusive;
}

void Validate(const Config& cfg) {
  if (!(cfg.tol > 0)) throw DomainError("tol must be positive");
  if (cfg.max_iter < 1 || cfg.dimension_cap < 1 || cfg.r_max < 1 || cfg.brute_force_cap < 1 ||
      cfg.denom_power < 1) {
    throw DomainError("caps must be positive");
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact sum-of-squares certificates for polynomial optimization problems", "popcert"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--tol", cfg.tol, "solver tolerance")->envname("POPCERT_TOL");
  app.add_option("--max-iter", cfg.max_iter, "solver iteration budget");
  app.add_option("--dim-cap", cfg.dimension_cap, "max total Gram dimension");
  app.add_option("--r-max", cfg.r_max, "default ladder bound")->envname("POPCERT_RMAX");
  app.add_option("--seed", cfg.seed, "seed for sampling and falsifiers")->envname("POPCERT_SEED");
  app.add_option("--bf-cap", cfg.brute_force_cap, "max variables for brute-force SAT");
  app.add_option("--denom-power", cfg.denom_power, "rounding exponent for exact certificates");
  app.add_flag("--timings", cfg.timings, "include wall-clock timings in reports");

  std::string cnf_path, out_path, report_path, in_path, construction, radius_text;
  int r = 0;
  int ladder = 0;
  bool restricted = false;

  auto* gen = app.add_subcommand("gen", "generate a construction from a ONE-IN-THREE instance");
  gen->add_option("construction", construction, "construction name")->required();
  gen->add_option("--cnf", cnf_path, "instance file")->required();
  gen->add_option("--out", out_path, "output file (default stdout)");

  auto* coercive = app.add_subcommand("coercive", "certify coercivity of a polynomial");
  coercive->add_option("--poly", in_path, "polynomial file")->required();
  auto* r_opt = coercive->add_option("--r", r, "single level");
  coercive->add_option("--ladder", ladder, "try levels 1..N")->excludes(r_opt);
  coercive->add_option("--out", out_path, "certificate file");
  coercive->add_option("--report", report_path, "report file (default stdout)");

  auto* compact = app.add_subcommand("compact", "certify compactness of a closed semialgebraic set");
  compact->add_option("--pop", in_path, "constraint set file")->required();
  compact->add_option("--radius", radius_text, "radius override R (ball |x|^2 < R + 1)");
  compact->add_option("--r", r, "level")->required();
  compact->add_flag("--restricted", restricted, "products of at most one constraint");
  compact->add_option("--out", out_path, "certificate file");
  compact->add_option("--report", report_path, "report file (default stdout)");

  auto* arch = app.add_subcommand("archimedean", "certify the Archimedean property of a quadratic module");
  arch->add_option("--polys", in_path, "generator list file")->required();
  arch->add_option("--R", radius_text, "radius R")->required();
  arch->add_option("--r", r, "level")->required();
  arch->add_option("--out", out_path, "certificate file");
  arch->add_option("--report", report_path, "report file (default stdout)");

  auto* stable = app.add_subcommand("stable", "certify stable compactness");
  stable->add_option("--instance", in_path, "stable instance file")->required();
  auto* sr_opt = stable->add_option("--r", r, "single level");
  stable->add_option("--ladder", ladder, "try levels 1..N")->excludes(sr_opt);
  stable->add_flag("--restricted", restricted, "products of at most one component");
  stable->add_option("--out", out_path, "certificate file");
  stable->add_option("--report", report_path, "report file (default stdout)");

  auto* verify = app.add_subcommand("verify", "verify a certificate file exactly");
  verify->add_option("--cert", in_path, "certificate file")->required();

  auto* oracle = app.add_subcommand("oracle", "ground-truth label through the SAT oracle");
  oracle->add_option("--cnf", cnf_path, "instance file")->required();
  oracle->add_option("--construction", construction, "construction name")->required();

  auto* sdp = app.add_subcommand("sdp-solve", "solve a semidefinite feasibility problem");
  sdp->add_option("--problem", in_path, "problem file")->required();
  sdp->add_option("--out", out_path, "solution file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    Validate(cfg);
    const CertifyOptions opts = OptionsFrom(cfg);
    if (gen->parsed()) {
      const auto inst = ParseCnf(ReadFile(cnf_path));
      Json doc;
      switch (ParseConstruction(construction)) {
        case Construction::kSPhi: doc = ToJson(GenSPhi(inst)); break;
        case Construction::kPPhi: doc = ToJson(GenPPhi(inst)); break;
        case Construction::kPHatPhi: doc = ToJson(GenPHatPhi(inst)); break;
        case Construction::kQcqp: doc = ToJson(GenQcqp(inst)); break;
        case Construction::kSPhiH: doc = ToJson(GenSPhiH(inst)); break;
        case Construction::kSetClosedness: doc = ToJson(GenSet(inst, SetKind::kClosedness)); break;
        case Construction::kSetClosednessBounded:
          doc = ToJson(GenSet(inst, SetKind::kClosednessBounded));
          break;
        case Construction::kSetBoundedness: doc = ToJson(GenSet(inst, SetKind::kBoundedness)); break;
        case Construction::kSetArchimedean: doc = ToJson(GenSet(inst, SetKind::kArchimedean)); break;
        case Construction::kStable: doc = ToJson(GenStableInstance(inst)); break;
      }
      Emit(out_path, doc.dump() + "\n", out);
      return kExitOk;
    }
    if (coercive->parsed()) {
      const Polynomial p = PolyFromJson(ParseJson(ReadFile(in_path)));
      const int top = ladder > 0 ? ladder : cfg.r_max;
      CertifyOutcome outcome = r > 0 ? CertifyCoercive(p, r, opts)
                                     : Ladder(1, top, [&](int level) { return CertifyCoercive(p, level, opts); });
      if (!outcome.certified()) {
        outcome.coercivity_witness = FalsifyCoercive(p, opts.falsifier_trials, cfg.seed);
      }
      return Finish(outcome, out_path, report_path, cfg, out);
    }
    if (compact->parsed()) {
      const Pop set = PopFromJson(ParseJson(ReadFile(in_path)));
      std::optional<Rational> radius;
      if (!radius_text.empty()) radius = RationalArg(radius_text, "--radius");
      CertifyOptions o = opts;
      o.restricted = restricted;
      return Finish(CertifyCompact(set, r, radius, o), out_path, report_path, cfg, out);
    }
    if (arch->parsed()) {
      const auto gs = PolyListFromJson(ParseJson(ReadFile(in_path)));
      const Rational radius = RationalArg(radius_text, "--R");
      return Finish(CertifyArchimedean(gs, r, radius, opts), out_path, report_path, cfg, out);
    }
    if (stable->parsed()) {
      const StableInstance si = StableFromJson(ParseJson(ReadFile(in_path)));
      CertifyOptions o = opts;
      o.restricted = restricted;
      const int top = ladder > 0 ? ladder : cfg.r_max;
      const CertifyOutcome outcome =
          r > 0 ? CertifyStableCompact(si, r, o)
                : Ladder(1, top, [&](int level) { return CertifyStableCompact(si, level, o); });
      return Finish(outcome, out_path, report_path, cfg, out);
    }
    if (verify->parsed()) {
      const AnyCertificate any = CertificateFromJson(ParseJson(ReadFile(in_path)));
      if (const auto* exact = std::get_if<RationalCertificate>(&any)) {
        const VerifyReport vr = VerifyIdentity(*exact);
        Json report{{"form", "exact"}, {"verified", vr.ok}};
        if (!vr.ok) report["diagnostic"] = vr.diagnostic;
        out << Dump(report);
        return vr.ok ? kExitOk : kExitInconclusive;
      }
      // Numeric certificates are not proof objects; report the residual only.
      const auto& numeric = std::get<SosCertificate>(any);
      out << Dump(Json{{"form", "numeric"}, {"verified", false}, {"residual", numeric.residual}});
      return kExitInconclusive;
    }
    if (oracle->parsed()) {
      const auto inst = ParseCnf(ReadFile(cnf_path));
      const ExpectedLabel label = ExpectedProperty(inst, ParseConstruction(construction), cfg.brute_force_cap);
      out << Dump(Json{{"construction", std::string(ConstructionName(label.construction))},
                       {"satisfiable", label.satisfiable},
                       {"origin", label.satisfiable ? "SAT-derived" : "UNSAT-derived"},
                       {"label", label.label},
                       {"holds", label.holds}});
      return kExitOk;
    }
    if (sdp->parsed()) {
      const SdpProblem problem = SdpProblemFromJson(ParseJson(ReadFile(in_path)));
      const SdpSolution sol = SolveFeasibility(problem, opts.sdp);
      Emit(out_path, Dump(ToJson(sol)), out);
      return sol.status == SdpStatus::kInconclusive ? kExitInconclusive : kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  err << "error: no subcommand\n";
  return kExitError;
}

}  // namespace popcert
