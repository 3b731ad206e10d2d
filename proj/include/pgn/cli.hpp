#pragma once

#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgn/builder.hpp"
#include "pgn/error.hpp"
#include "pgn/exactnum.hpp"
#include "pgn/invariants.hpp"
#include "pgn/io.hpp"
#include "pgn/nsystem.hpp"
#include "pgn/search.hpp"
#include "pgn/spectra.hpp"
#include "pgn/verify.hpp"

namespace pgn::cli {

enum Exit : int { ok = 0, violation = 1, bad_input = 2 };

namespace detail {

inline std::vector<Rational> rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    out.push_back(Rational::parse(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::set<std::string> word_list(const std::string& text) {
  std::set<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    out.insert(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    io::write_file(path, text);
}

inline NSystem load_system(const std::string& path) { return io::system_from_json(io::load_json_text(io::read_file(path))); }
inline SelfSimilarSeed load_seed(const std::string& path) { return io::seed_from_json(io::load_json_text(io::read_file(path))); }

inline std::optional<Curve> curve_named(const std::string& name) {
  if (name == "s24") return Curve::s24;
  if (name == "s35_high") return Curve::s35_high;
  if (name == "s35_conj") return Curve::s35_conj;
  if (name == "s35_arc2") return Curve::s35_arc2;
  return std::nullopt;
}

// Every audit rule applicable to a system whose axioms hold.
inline AuditReport audit_system(const NSystem& sys, const std::set<std::string>& rules, std::optional<int> only_m) {
  auto want = [&](const char* r) { return rules.empty() || rules.count(r) > 0; };
  AuditReport rep;
  if (!is_nondegenerate(sys)) {
    rep.checks.push_back({"nondegenerate", "[" + sys.q0.str() + ", " + sys.q1().str() + "]", CheckStatus::fail, std::nullopt,
                          "adjacent components coincide on a whole segment"});
    return rep;
  }
  for (int m = 1; m < sys.n; ++m) {
    if (only_m && *only_m != m) continue;
    auto d = division_numbers(sys, m);
    std::string tag = "m=" + std::to_string(m);
    if (want("type_kl")) rep.merge(check_type_staircase(sys, m));
    if (want("chi_extrema")) {
      if (d.size() < 2)
        rep.skip("chi_extrema", tag, "fewer than 2 division numbers");
      else if (d.sums.front().first.sign() <= 0)
        rep.skip("chi_extrema", tag, "S_m^- vanishes on the domain");
      else
        rep.merge(check_chi_extrema(sys, m));
    }
  }
  if (want("mm_lemma") && sys.n >= 3 && (!only_m || *only_m == 1)) rep.merge(check_mm_lemma(sys));
  if (want("s35_blocs") && sys.n == 5 && (!only_m || *only_m == 2)) rep.merge(audit_s35_blocs(sys));
  return rep;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parametric geometry of numbers toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = default_threads();
  app.add_option("--threads", threads, "worker threads (default PGN_THREADS or 1)")->check(CLI::PositiveNumber);

  std::string path, seed_path, out_path, rules_text, name, g_text, rho_text, eps_text, grid_text, rho_grid_text,
      curves_text, in_path;
  int periods = 2, s = 0, m = 0, n = 0, m_cons = 0, iters = 60, s_max = 2, digits = 12, samples = 40;
  bool all_rows = false;

  auto* validate_cmd = app.add_subcommand("validate", "check the n-system axioms");
  validate_cmd->add_option("system", path, "system JSON")->required();

  auto* build_cmd = app.add_subcommand("build", "unfold a self-similar seed");
  build_cmd->add_option("--seed", seed_path)->required();
  build_cmd->add_option("--periods", periods)->check(CLI::PositiveNumber);
  build_cmd->add_option("--out", out_path);

  auto* inv_cmd = app.add_subcommand("invariants", "exact (alpha, beta) of a seed");
  inv_cmd->add_option("--seed", seed_path)->required();
  inv_cmd->add_option("--m", m, "division index (default: the seed's m)");
  inv_cmd->add_option("--digits", digits);

  auto* fam_cmd = app.add_subcommand("family", "explicit spectrum families");
  fam_cmd->add_option("--name", name)->required()->check(CLI::IsMember({"regular", "s35", "s35arc2"}));
  fam_cmd->add_option("--g", g_text, "comma-separated p/q values")->required();
  fam_cmd->add_option("--s", s, "period length (s35; default 3)");
  fam_cmd->add_option("--rho", rho_text, "scale (regular; default g)");
  fam_cmd->add_option("--eps", eps_text, "perturbation (s35arc2; default scans 1/100, 1/1000, ...)");
  fam_cmd->add_option("--n", n, "dimension (regular)");
  fam_cmd->add_option("--m-cons", m_cons, "constructor m (regular)");
  fam_cmd->add_option("--out", out_path);
  fam_cmd->add_option("--digits", digits);

  auto* probe_cmd = app.add_subcommand("probe", "LP boundary probe over periodic patterns");
  probe_cmd->add_option("--m", m)->required();
  probe_cmd->add_option("--n", n)->required();
  probe_cmd->add_option("--g-grid", grid_text)->required();
  probe_cmd->add_option("--s-max", s_max)->check(CLI::PositiveNumber);
  probe_cmd->add_option("--rho-grid", rho_grid_text, "fixed rho values (default g^s * 2^j, |j| <= 2)");
  probe_cmd->add_option("--iters", iters)->check(CLI::NonNegativeNumber);
  probe_cmd->add_flag("--all-rows", all_rows, "emit every (pattern, rho) result, not only the best per g");
  probe_cmd->add_option("--out", out_path);
  probe_cmd->add_option("--digits", digits);

  auto* audit_cmd = app.add_subcommand("audit", "run lemma certificates");
  auto* sys_opt = audit_cmd->add_option("--system", path);
  auto* seed_opt = audit_cmd->add_option("--seed", seed_path, "audit the unfolding plus the global bounds");
  sys_opt->excludes(seed_opt);
  audit_cmd->add_option("--rules", rules_text,
                        "subset of type_kl,chi_extrema,mm_lemma,s35_blocs,global_bounds");
  audit_cmd->add_option("--m", m, "restrict per-m rules to this m");
  audit_cmd->add_option("--periods", periods)->check(CLI::PositiveNumber);

  auto* plot_cmd = app.add_subcommand("plotdata", "merge points with exact curve samples");
  plot_cmd->add_option("--in", in_path, "probe or family CSV");
  plot_cmd->add_option("--curves", curves_text)->required();
  plot_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
  plot_cmd->add_option("--out", out_path);
  plot_cmd->add_option("--digits", digits);

  std::vector<const char*> argv{"pgn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << io::error_json("usage", e.what()).dump() << "\n";
    return bad_input;
  }

  try {
    if (*validate_cmd) {
      NSystem sys = detail::load_system(path);
      auto rep = validate(sys);
      io::json j = io::to_json(rep);
      if (rep.ok()) j["nondegenerate"] = is_nondegenerate(sys);
      out << io::dump(j);
      return rep.ok() ? ok : violation;
    }

    if (*build_cmd) {
      NSystem sys = unfold_self_similar(detail::load_seed(seed_path), periods);
      detail::emit(out_path, io::dump(io::to_json(sys)), out);
      return ok;
    }

    if (*inv_cmd) {
      SelfSimilarSeed seed = detail::load_seed(seed_path);
      int mp = m ? m : seed.m();
      if (mp < 1 || mp >= seed.n()) fail(ErrorCode::invalid_argument, "--m must lie in 1..n-1");
      SpectrumPoint p = mp == seed.m() ? chi_pair_periodic(seed) : chi_pair_self_similar(seed, mp);
      out << "alpha = " << p.alpha << ", beta = " << p.beta << "\n";
      out << "alpha ~ " << p.alpha.decimal(digits) << ", beta ~ " << p.beta.decimal(digits) << "\n";
      return ok;
    }

    if (*fam_cmd) {
      std::vector<io::FamilyRow> rows;
      for (const auto& g : detail::rational_list(g_text)) {
        if (name == "regular") {
          if (!n || !m_cons) fail(ErrorCode::invalid_argument, "regular family needs --n and --m-cons");
          Rational rho = rho_text.empty() ? g : Rational::parse(rho_text);
          auto fp = regular_family_seed(n, m_cons, g, rho);
          rows.push_back({g, 1, fp.point, fp.seed ? "regular" : "regular_limit"});
        } else if (name == "s35") {
          int period = s ? s : 3;
          rows.push_back({g, period, s35_family_seed(g, period).point, "s35"});
        } else {
          Arc2Point a = eps_text.empty() ? s35_arc2_seed(g) : s35_arc2_seed(g, Rational::parse(eps_text));
          rows.push_back({g, static_cast<int>(a.seed.s()), a.point, "s35arc2 eps=" + a.eps.str()});
        }
      }
      detail::emit(out_path, io::family_csv(rows, digits), out);
      return ok;
    }

    if (*probe_cmd) {
      ProbeConfig cfg;
      cfg.m = m;
      cfg.n = n;
      cfg.g_grid = detail::rational_list(grid_text);
      cfg.s_max = s_max;
      if (!rho_grid_text.empty()) cfg.rho_grid = detail::rational_list(rho_grid_text);
      cfg.iters = iters;
      cfg.threads = threads;
      cfg.all_rows = all_rows;
      if (m < 1 || m >= n) fail(ErrorCode::invalid_argument, "need 1 <= m < n");
      detail::emit(out_path, io::probe_csv(probe_boundary(cfg), digits), out);
      return ok;
    }

    if (*audit_cmd) {
      auto rules = rules_text.empty() ? std::set<std::string>{} : detail::word_list(rules_text);
      static const std::set<std::string> known{"type_kl", "chi_extrema", "mm_lemma", "s35_blocs", "global_bounds"};
      for (const auto& r : rules)
        if (!known.count(r)) fail(ErrorCode::invalid_argument, "unknown rule '" + r + "'");
      std::optional<int> only_m;
      if (m) only_m = m;
      AuditReport rep;
      NSystem sys;
      std::optional<SelfSimilarSeed> seed;
      if (!seed_path.empty()) {
        seed = detail::load_seed(seed_path);
        sys = unfold_self_similar(*seed, periods);
      } else if (!path.empty()) {
        sys = detail::load_system(path);
      } else {
        fail(ErrorCode::invalid_argument, "audit needs --system or --seed");
      }
      rep.merge(check_validation(sys));
      if (rep.ok()) {
        rep.merge(detail::audit_system(sys, rules, only_m));
        if (seed && (rules.empty() || rules.count("global_bounds"))) rep.merge(check_global_bounds(*seed));
      }
      out << io::dump(io::to_json(rep));
      return rep.ok() ? ok : violation;
    }

    if (*plot_cmd) {
      std::vector<std::string> out_rows;
      auto line = [&](const std::string& src, const Rational& g, const ExtReal& a, const ExtReal& b) {
        out_rows.push_back(io::join_csv({src, g.str(), a.str(), b.str(), a.decimal(digits), b.decimal(digits)}));
      };
      if (!in_path.empty()) {
        io::CsvTable t = io::parse_csv(io::read_file(in_path));
        bool probe = t.has("alpha_lo");
        std::size_t cg = t.column("g"), ca = t.column(probe ? "alpha_lo" : "alpha"), cb = t.column("beta");
        std::size_t ctag = probe ? t.column("pattern") : t.column("family_tag");
        for (const auto& r : t.rows)
          line((probe ? "probe " : "family ") + r[ctag], Rational::parse(r[cg]), ExtReal::parse(r[ca]),
               ExtReal::parse(r[cb]));
      }
      for (const auto& cname : detail::word_list(curves_text)) {
        auto c = detail::curve_named(cname);
        if (!c) fail(ErrorCode::invalid_argument, "unknown curve '" + cname + "'");
        auto [g0, g1] = curve_g_range(*c);
        for (int k = 0; k <= samples; ++k) {
          Rational g = g0 + (g1 - g0) * Rational(k, samples);
          Rational a = curve_alpha(*c, g);
          line("curve " + cname, g, ExtReal(a), ExtReal(g * a));
        }
      }
      std::string text = io::join_csv({"source", "g", "alpha", "beta", "alpha_dec", "beta_dec"});
      for (const auto& r : out_rows) text += r;
      detail::emit(out_path, text, out);
      return ok;
    }
  } catch (const Error& e) {
    err << io::error_json(std::string(error_code_name(e.code())), e.what()).dump() << "\n";
    return e.code() == ErrorCode::internal_consistency ? violation : bad_input;
  }
  return bad_input;
}

}  // namespace pgn::cli
