#include "martbounds/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "martbounds/entropy.hpp"
#include "martbounds/sharpness.hpp"
#include "martbounds/verification.hpp"

namespace martbounds::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

struct Common {
  std::string config_path;
  std::string out_path;
  bool force = false;
  int precision = 7;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  int exit_code = 0;

  nlohmann::json config;

  void load_config() {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw DomainError("cannot read config file " + config_path);
    in >> config;
    if (!seed && config.contains("seed"))
      seed = config["seed"].get<std::uint64_t>();
    if (out_path.empty() && config.contains("out"))
      out_path = config["out"].get<std::string>();
    if (threads == 0 && config.contains("threads"))
      threads = config["threads"].get<int>();
  }
};

void add_common(CLI::App* app, Common* c) {
  app->add_option("--config", c->config_path, "flat JSON config for this run");
  app->add_option("--out", c->out_path, "output file or directory");
  app->add_flag("--force", c->force, "allow overwriting existing outputs");
  app->add_option("--precision", c->precision, "significant digits printed");
  app->add_option_function<std::uint64_t>(
      "--seed", [c](std::uint64_t s) { c->seed = s; }, "RNG seed");
  app->add_option("--threads", c->threads, "cap on worker threads");
}

void write_text(const std::string& path, const std::string& text, bool force) {
  if (fs::exists(path) && !force)
    throw DomainError("refusing to overwrite " + path +
                      " without --force");
  if (fs::path(path).has_parent_path())
    fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MomentTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read moment table " + path);
  return MomentTable::load_csv(in);
}

std::uint64_t require_seed(const Common& c) {
  if (!c.seed)
    throw DomainError("this subcommand is stochastic: --seed is required");
  return *c.seed;
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty())
    out << text << "\n";
  else
    write_text(c.out_path, text + "\n", c.force);
}

AnalyticEntropyModel parse_model(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw DomainError("model syntax: power:c,s | log:q[,c0] | const:h");
  const std::string kind = text.substr(0, colon);
  std::vector<double> vals;
  std::istringstream rest(text.substr(colon + 1));
  std::string tok;
  while (std::getline(rest, tok, ',')) vals.push_back(std::stod(tok));
  if (kind == "power" && vals.size() == 2)
    return AnalyticEntropyModel::power(vals[0], vals[1]);
  if (kind == "log" && !vals.empty())
    return AnalyticEntropyModel::log_law(vals[0],
                                         vals.size() > 1 ? vals[1] : 0.0);
  if (kind == "const" && vals.size() == 1)
    return AnalyticEntropyModel::constant(vals[0]);
  throw DomainError("bad model spec: " + text);
}

int run_impl(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"martbounds: moment and tail bounds for martingale transforms"};
  app.require_subcommand(1);

  Common c;

  // zeta
  auto* zeta_cmd = app.add_subcommand("zeta", "Riemann zeta value");
  double zeta_p = 2.0;
  zeta_cmd->add_option("--p", zeta_p, "argument p > 1")->required();
  add_common(zeta_cmd, &c);
  zeta_cmd->callback([&] {
    c.load_config();
    const int digits = c.precision == 7 ? 8 : c.precision;
    emit(c, fmt_g(riemann_zeta(zeta_p), digits), out);
  });

  // sharpness
  auto* sharp_cmd =
      app.add_subcommand("sharpness", "lower-bound construction report");
  bool want_c = false;
  int sharp_p = 3, sharp_m = 5;
  std::uint64_t sharp_budget = DyadicMartingale::kDefaultBudget;
  sharp_cmd->add_flag("--constant-c", want_c, "print the limiting constant");
  sharp_cmd->add_option("--p", sharp_p, "integer moment order >= 2");
  sharp_cmd->add_option("--levels", sharp_m, "stored refinement levels");
  sharp_cmd->add_option("--budget", sharp_budget, "cell budget");
  add_common(sharp_cmd, &c);
  sharp_cmd->callback([&] {
    c.load_config();
    if (want_c) {
      emit(c, fmt_g(constant_c(), c.precision), out);
      return;
    }
    const SharpnessRatio row = lower_bound_ratio(sharp_p, sharp_m, sharp_budget);
    std::ostringstream ss;
    save_sharpness_csv(ss, {row});
    emit(c, ss.str(), out);
  });

  // bound-martingale
  auto* bm_cmd = app.add_subcommand("bound-martingale",
                                    "Burkholder-type martingale moment bound");
  std::string bm_table;
  double bm_p = 2.0;
  std::size_t bm_n = 0;
  bm_cmd->add_option("--table", bm_table, "moment table CSV")->required();
  bm_cmd->add_option("--p", bm_p)->required();
  bm_cmd->add_option("--n", bm_n)->required();
  add_common(bm_cmd, &c);
  bm_cmd->callback([&] {
    c.load_config();
    const double b = bound_martingale(load_table(bm_table), bm_p, bm_n);
    nlohmann::json j{{"bound", b}, {"p", bm_p}, {"n", bm_n}};
    emit(c, j.dump(), out);
  });

  // bound-transform
  auto* bt_cmd =
      app.add_subcommand("bound-transform", "martingale transform bound");
  std::string bt_b, bt_xi;
  double bt_p = 2.0, bt_ia = 0.5, bt_il = 0.5;
  std::size_t bt_n = 0;
  bt_cmd->add_option("--b", bt_b, "multiplier moment table CSV")->required();
  bt_cmd->add_option("--xi", bt_xi, "difference moment table CSV")->required();
  bt_cmd->add_option("--p", bt_p)->required();
  bt_cmd->add_option("--n", bt_n)->required();
  bt_cmd->add_option("--inv-alpha", bt_ia, "1/alpha in [0,1]");
  bt_cmd->add_option("--inv-lambda", bt_il, "1/lambda in [0,1]");
  add_common(bt_cmd, &c);
  bt_cmd->callback([&] {
    c.load_config();
    const HolderQuadruple quad = HolderQuadruple::from_inverses(bt_ia, bt_il);
    const double b =
        bound_transform(load_table(bt_b), load_table(bt_xi), bt_p, bt_n, quad);
    nlohmann::json j{{"bound", b},
                     {"p", bt_p},
                     {"n", bt_n},
                     {"quadruple",
                      {{"inv_alpha", bt_ia}, {"inv_lambda", bt_il}}}};
    emit(c, j.dump(), out);
  });

  // optimize-quad
  auto* oq_cmd = app.add_subcommand("optimize-quad",
                                    "best Holder quadruple for the bound");
  std::string oq_b, oq_xi;
  double oq_p = 2.0;
  std::size_t oq_n = 0;
  oq_cmd->add_option("--b", oq_b)->required();
  oq_cmd->add_option("--xi", oq_xi)->required();
  oq_cmd->add_option("--p", oq_p)->required();
  oq_cmd->add_option("--n", oq_n)->required();
  add_common(oq_cmd, &c);
  oq_cmd->callback([&] {
    c.load_config();
    const OptimizeResult r =
        optimize_quadruple(load_table(oq_b), load_table(oq_xi), oq_p, oq_n);
    nlohmann::json j{{"bound", r.value},
                     {"p", oq_p},
                     {"n", oq_n},
                     {"evaluated", r.evaluated},
                     {"excluded", r.excluded},
                     {"quadruple",
                      {{"inv_alpha", r.quad.inv_alpha()},
                       {"inv_lambda", r.quad.inv_lambda()}}}};
    emit(c, j.dump(), out);
  });

  // theta
  auto* th_cmd = app.add_subcommand(
      "theta", "optimized bound as a generating function of p");
  std::string th_b, th_xi;
  std::size_t th_n = 0;
  double th_pmin = 2.0, th_pmax = 64.0;
  std::size_t th_count = 48;
  th_cmd->add_option("--b", th_b)->required();
  th_cmd->add_option("--xi", th_xi)->required();
  th_cmd->add_option("--n", th_n)->required();
  th_cmd->add_option("--p-min", th_pmin);
  th_cmd->add_option("--p-max", th_pmax);
  th_cmd->add_option("--p-count", th_count);
  add_common(th_cmd, &c);
  th_cmd->callback([&] {
    c.load_config();
    const PsiFunction theta =
        theta_function(load_table(th_b), load_table(th_xi), th_n,
                       log_spaced(th_pmin, th_pmax, th_count));
    emit(c, theta.to_json(), out);
  });

  // tail
  auto* tail_cmd =
      app.add_subcommand("tail", "exponential tail bound from a psi function");
  std::string tail_psi;
  double tail_norm = 1.0;
  std::optional<double> tail_u;
  double tail_umin = 0.5, tail_umax = 8.0;
  std::size_t tail_count = 16;
  tail_cmd->add_option("--psi", tail_psi, "psi JSON file")->required();
  tail_cmd->add_option("--norm", tail_norm, "GLS norm of the variable");
  tail_cmd->add_option_function<double>(
      "--u", [&](double u) { tail_u = u; }, "single threshold");
  tail_cmd->add_option("--u-min", tail_umin);
  tail_cmd->add_option("--u-max", tail_umax);
  tail_cmd->add_option("--u-count", tail_count);
  add_common(tail_cmd, &c);
  tail_cmd->callback([&] {
    c.load_config();
    const PsiFunction psi = PsiFunction::from_json(read_text(tail_psi));
    if (tail_u) {
      emit(c, fmt_g(tail_bound(psi, tail_norm, *tail_u), c.precision), out);
      return;
    }
    std::ostringstream ss;
    ss << "u,bound\n";
    ss.precision(17);
    for (double u : log_spaced(tail_umin, tail_umax, tail_count))
      ss << u << "," << tail_bound(psi, tail_norm, u) << "\n";
    emit(c, ss.str(), out);
  });

  // simulate
  auto* sim_cmd =
      app.add_subcommand("simulate", "generate a seeded path ensemble");
  std::string sim_gen, sim_mult;
  sim_cmd->add_option("--generator", sim_gen,
                      "GeneratorSpec JSON (inline or @file)");
  sim_cmd->add_option("--multipliers", sim_mult,
                      "MultiplierSpec JSON (inline or @file)");
  add_common(sim_cmd, &c);
  sim_cmd->callback([&] {
    c.load_config();
    std::string gen_text = sim_gen;
    if (gen_text.empty() && c.config.contains("generator"))
      gen_text = c.config["generator"].dump();
    if (gen_text.empty())
      throw DomainError("simulate: --generator (or config.generator) needed");
    if (!gen_text.empty() && gen_text.front() == '@')
      gen_text = read_text(gen_text.substr(1));
    GeneratorSpec g = GeneratorSpec::from_json(gen_text);
    g.seed = require_seed(c);
    PathBatch batch = generate(g);
    if (!sim_mult.empty()) {
      std::string mtext = sim_mult;
      if (mtext.front() == '@') mtext = read_text(mtext.substr(1));
      batch = attach_multipliers(batch, MultiplierSpec::from_json(mtext));
    }
    const BatchNorms norms = empirical_norms(batch, default_p_grid());
    nlohmann::json j{{"generator", nlohmann::json::parse(g.to_json())},
                     {"reps", g.reps},
                     {"materialized", batch.materialized()}};
    if (c.out_path.empty()) {
      emit(c, j.dump(), out);
      return;
    }
    fs::create_directories(c.out_path);
    if (batch.materialized()) {
      SampleMatrix mat{g.reps, g.n, g.seed, to_string(g.family), batch.xi};
      const std::string bin = (fs::path(c.out_path) / "differences.f64").string();
      if (fs::exists(bin) && !c.force)
        throw DomainError("refusing to overwrite " + bin + " without --force");
      mat.save(bin);
    }
    std::ostringstream scsv;
    norms.sum.curve.save_csv(scsv);
    write_text((fs::path(c.out_path) / "norms_s.csv").string(), scsv.str(),
               c.force);
    if (norms.transform) {
      std::ostringstream wcsv;
      norms.transform->curve.save_csv(wcsv);
      write_text((fs::path(c.out_path) / "norms_w.csv").string(), wcsv.str(),
                 c.force);
    }
    write_text((fs::path(c.out_path) / "summary.json").string(),
               j.dump(2) + "\n", c.force);
    out << "wrote " << c.out_path << "\n";
  });

  // verify
  auto* ver_cmd = app.add_subcommand(
      "verify", "run the full domination matrix against Monte Carlo");
  std::string ver_preset = "default";
  std::optional<std::size_t> ver_reps;
  ver_cmd->add_option("--preset", ver_preset, "default | medium | quick");
  ver_cmd->add_option_function<std::size_t>(
      "--reps", [&](std::size_t r) { ver_reps = r; }, "replicates per cell");
  add_common(ver_cmd, &c);
  ver_cmd->callback([&] {
    c.load_config();
    VerifyConfig cfg = VerifyConfig::preset(ver_preset);
    cfg.seed = require_seed(c);
    if (ver_reps) cfg.reps = *ver_reps;
    if (c.threads > 0) cfg.threads = c.threads;
    const VerifyReport report = run_verification(cfg);
    if (!c.out_path.empty()) {
      fs::create_directories(c.out_path);
      write_text((fs::path(c.out_path) / "verify_report.json").string(),
                 report.to_json() + "\n", c.force);
      std::ostringstream csv;
      report.save_csv(csv);
      write_text((fs::path(c.out_path) / "verify_report.csv").string(),
                 csv.str(), c.force);
      out << "cells=" << report.reports.size()
          << " violations=" << report.violations
          << " inconclusive=" << report.inconclusive << "\n";
    } else {
      out << report.to_json() << "\n";
    }
    if (report.violations > 0) c.exit_code = 1;
  });

  // entropy
  auto* ent_cmd =
      app.add_subcommand("entropy", "integral continuity criteria");
  std::string ent_criterion, ent_profile, ent_model, ent_psi, ent_curve =
      "upper";
  double ent_r = 2.0;
  ent_cmd->add_option("--criterion", ent_criterion, "gls | pisier | dudley")
      ->required();
  ent_cmd->add_option("--profile", ent_profile, "entropy CSV");
  ent_cmd->add_option("--curve", ent_curve, "upper | lower");
  ent_cmd->add_option("--model", ent_model, "power:c,s | log:q[,c0] | const:h");
  ent_cmd->add_option("--psi", ent_psi, "psi JSON (gls criterion)");
  ent_cmd->add_option("--r", ent_r, "exponent for the pisier criterion");
  add_common(ent_cmd, &c);
  ent_cmd->callback([&] {
    c.load_config();
    std::optional<AnalyticEntropyModel> model;
    std::optional<EntropyProfile> profile;
    if (!ent_model.empty()) model = parse_model(ent_model);
    if (!ent_profile.empty()) {
      std::ifstream in(ent_profile);
      if (!in) throw DomainError("cannot read profile " + ent_profile);
      const EntropyBracket bracket = EntropyBracket::load_csv(in);
      profile = ent_curve == "lower" ? bracket.lower : bracket.upper;
    }
    if (!model && !profile)
      throw DomainError("entropy: need --profile or --model");
    ConvergenceReport rep;
    if (ent_criterion == "pisier") {
      rep = model ? integral_pisier(*model, ent_r)
                  : integral_pisier(*profile, ent_r);
    } else if (ent_criterion == "dudley") {
      rep = model ? integral_dudley(*model) : integral_dudley(*profile);
    } else if (ent_criterion == "gls") {
      if (ent_psi.empty()) throw DomainError("gls criterion needs --psi");
      const PsiFunction psi = PsiFunction::from_json(read_text(ent_psi));
      rep = model ? integral_gls(psi, *model) : integral_gls(psi, *profile);
    } else {
      throw DomainError("unknown criterion: " + ent_criterion);
    }
    emit(c, rep.to_json(), out);
  });

  // report
  auto* rep_cmd = app.add_subcommand(
      "report", "summarize bound-report JSON artifacts in a directory");
  std::string rep_dir;
  rep_cmd->add_option("--dir", rep_dir, "directory of report JSON files")
      ->required();
  add_common(rep_cmd, &c);
  rep_cmd->callback([&] {
    c.load_config();
    std::vector<BoundReport> reports;
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(rep_dir))
      if (entry.path().extension() == ".json")
        files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      try {
        const nlohmann::json j = nlohmann::json::parse(read_text(f));
        if (j.contains("reports")) {
          for (const auto& r : j["reports"])
            reports.push_back(BoundReport::from_json(r.dump()));
        } else if (j.contains("bound")) {
          reports.push_back(BoundReport::from_json(j.dump()));
        }
      } catch (const nlohmann::json::exception&) {
        // not a report artifact; skip
      }
    }
    std::ostringstream csv;
    csv << "name,generator,p,n,bound,empirical,halfwidth,verdict\n";
    csv.precision(17);
    std::size_t violated = 0;
    for (const auto& r : reports) {
      csv << r.name << "," << r.generator << "," << r.p << "," << r.n << ","
          << r.bound << "," << r.empirical << "," << r.halfwidth << ","
          << to_string(r.verdict) << "\n";
      if (r.verdict == Verdict::Violated) ++violated;
    }
    emit(c, csv.str(), out);
    err << reports.size() << " reports, " << violated << " violated\n";
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 64;
  }
  return c.exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    return run_impl(args, out, err);
  } catch (const DomainError& e) {
    nlohmann::json j{{"type", "domain"}, {"error", e.what()}};
    out << j.dump() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    nlohmann::json j{{"type", "resource"}, {"error", e.what()}};
    out << j.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json j{{"type", "internal"}, {"error", e.what()}};
    out << j.dump() << "\n";
    return 2;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace martbounds::cli
