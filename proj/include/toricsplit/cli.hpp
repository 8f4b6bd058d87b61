#pragma once

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "toricsplit/arf.hpp"
#include "toricsplit/charnum.hpp"
#include "toricsplit/cohomology.hpp"
#include "toricsplit/fan.hpp"
#include "toricsplit/handles.hpp"
#include "toricsplit/lattice.hpp"

namespace toricsplit::cli {

/// A fan plus the hyperplane class of a built-in preset, when there is one.
struct FanInput {
  Fan fan;
  std::optional<DivisorClass> hyperplane;
};

/// `cp<m>`, `product:cp<a>,cp<b>[,...]`, or a path to a fan JSON file.
inline FanInput resolve_fan(const std::string& spec) {
  require(!spec.empty(), ErrorKind::Input, "no fan given");
  static const std::regex cp(R"(cp([0-9]+))");
  auto preset = [&](const std::string& s) -> std::optional<int> {
    std::smatch mm;
    if (std::regex_match(s, mm, cp)) return std::stoi(mm[1].str());
    return std::nullopt;
  };
  if (auto k = preset(spec)) {
    FanInput in{projective_space_fan(*k), std::nullopt};
    DivisorClass h;
    h.coeffs.assign(in.fan.num_rays(), Integer(0));
    h.coeffs[0] = 1;
    in.hyperplane = h;
    return in;
  }
  const std::string prefix = "product:";
  if (spec.rfind(prefix, 0) == 0) {
    std::vector<Fan> factors;
    std::stringstream ss(spec.substr(prefix.size()));
    std::string part;
    while (std::getline(ss, part, ',')) {
      auto k = preset(part);
      require(k.has_value(), ErrorKind::Input, "unknown product factor '" + part + "'");
      factors.push_back(projective_space_fan(*k));
    }
    require(factors.size() >= 2, ErrorKind::Input, "product preset needs at least two factors");
    Fan fan = factors[0];
    std::vector<std::size_t> first_rays{0};
    for (std::size_t i = 1; i < factors.size(); ++i) {
      first_rays.push_back(fan.num_rays());
      fan = product_fan(fan, factors[i]);
    }
    DivisorClass h;
    h.coeffs.assign(fan.num_rays(), Integer(0));
    for (auto r : first_rays) h.coeffs[r] = 1;
    return FanInput{std::move(fan), std::move(h)};
  }
  return FanInput{load_fan(spec), std::nullopt};
}

inline std::vector<Integer> parse_int_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    require(std::regex_match(tok, std::regex(R"(\s*-?[0-9]+\s*)")), ErrorKind::Input,
            "bad integer '" + tok + "' in list");
    out.emplace_back(tok.substr(tok.find_first_not_of(' ')));
  }
  return out;
}

/// `hyperplane` (presets only), `anticanonical`, or comma-separated integers.
/// Empty selects the preset hyperplane class.
inline DivisorClass resolve_alpha(const FanInput& in, const std::string& spec) {
  if (spec.empty() || spec == "hyperplane" || spec == "h") {
    require(in.hyperplane.has_value(), ErrorKind::Input,
            "--alpha is required for fans without a built-in hyperplane class");
    return *in.hyperplane;
  }
  if (spec == "anticanonical") {
    DivisorClass a;
    a.coeffs.assign(in.fan.num_rays(), Integer(1));
    return a;
  }
  DivisorClass a{parse_int_list(spec)};
  require(a.coeffs.size() == in.fan.num_rays(), ErrorKind::Input,
          "--alpha has " + std::to_string(a.coeffs.size()) + " entries, fan has " +
              std::to_string(in.fan.num_rays()) + " rays");
  return a;
}

inline std::string join(const std::vector<Integer>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i].str();
  return out;
}

inline std::string bracket(const std::vector<Integer>& v) { return "[" + join(v) + "]"; }

inline std::string approx(const Rational& r) { return "~" + to_decimal(r); }

inline nlohmann::json to_json(const std::vector<Integer>& v) {
  auto out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

inline nlohmann::json to_json(const IntMatrix& m) {
  auto out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

inline std::string signature_text(const Signature& s) {
  return std::to_string(s.positive) + "," + std::to_string(s.negative) + "," + std::to_string(s.zero) + " (" +
         (s.value() > 0 ? "+" : "") + std::to_string(s.value()) + ")";
}

inline void require_ample(const Fan& fan, const DivisorClass& alpha) {
  require(is_ample(fan, alpha).ample, ErrorKind::NotAmple, "alpha is not ample");
}

inline const char* kEvenHeader = "d,degree,chi,b_n,sign_Y,sign_HnX,s_d,ratio_2s_deg,ratio_sign_bn";
inline const char* kOddSweepHeader = "d,degree,chi,b_n,s_if_k0,s_if_k1,ratio_bn_deg";
inline const char* kOddHandlesHeader = "d,degree,chi,b_n,b_n_X,s_if_k0,s_if_k1,kervaire,s_d,b_n_reduced";

inline std::string even_row(const HandleReport& r) {
  std::ostringstream o;
  o << r.d << ',' << r.deg << ',' << r.chi << ',' << r.b_n_Y << ',' << r.sign_Y << ',' << r.sign_HnX << ','
    << r.s_d << ',' << to_string(r.ratio_2s_over_deg) << ',' << to_string(r.ratio_sign_over_bn);
  return o.str();
}

inline std::string odd_sweep_row(const HandleReport& r) {
  std::ostringstream o;
  o << r.d << ',' << r.deg << ',' << r.chi << ',' << r.b_n_Y << ',' << r.s_if_kervaire_0 << ','
    << r.s_if_kervaire_1 << ',' << to_string(r.ratio_bn_over_deg);
  return o.str();
}

inline std::string odd_handles_row(const HandleReport& r) {
  std::ostringstream o;
  o << r.d << ',' << r.deg << ',' << r.chi << ',' << r.b_n_Y << ',' << r.b_n_X << ',' << r.s_if_kervaire_0 << ','
    << r.s_if_kervaire_1 << ',';
  if (r.determined) {
    o << (r.kervaire ? std::to_string(*r.kervaire) : std::string("-")) << ',' << r.s_d << ',' << r.b_n_Y_reduced;
  } else {
    o << "undetermined,,";
  }
  return o.str();
}

inline nlohmann::json report_json(const HandleReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["degree"] = r.deg.str();
  j["chi"] = r.chi.str();
  j["b_n_Y"] = r.b_n_Y.str();
  j["b_n_X"] = r.b_n_X.str();
  j["ratio_bn_deg"] = to_string(r.ratio_bn_over_deg);
  if (r.n % 2 == 0) {
    j["sign_Y"] = r.sign_Y.str();
    j["sign_HnX"] = r.sign_HnX.str();
    j["s_d"] = r.s_d.str();
    j["ratio_2s_deg"] = to_string(r.ratio_2s_over_deg);
    j["ratio_sign_bn"] = to_string(r.ratio_sign_over_bn);
    j["hypothesis_ok"] = r.hypothesis_ok;
    j["corollary_residual"] = r.corollary_residual.str();
    j["corollary_sign"] = std::string(1, r.corollary_sign);
  } else {
    j["s_if_kervaire_0"] = r.s_if_kervaire_0.str();
    j["s_if_kervaire_1"] = r.s_if_kervaire_1.str();
    j["determined"] = r.determined;
    if (r.determined) {
      j["s_d"] = r.s_d.str();
      j["b_n_reduced"] = r.b_n_Y_reduced.str();
    }
    if (r.kervaire) j["kervaire"] = *r.kervaire;
  }
  return j;
}

struct Options {
  std::string fan;
  std::string alpha;
  long d = 1;
  long d_min = 1;
  long d_max = 1;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::optional<int> kervaire;
  std::string gram_path;
  std::string sublattice_path;
  std::string psi;
  int max_radius = 12;
  std::size_t max_support = 5;
};

inline int cmd_check(const Options& o, std::ostream& out) {
  const FanInput in = resolve_fan(o.fan);
  const auto smooth = validate_smooth(in.fan);
  nlohmann::json j;
  j["smooth"] = smooth.smooth;
  if (!smooth.smooth) {
    std::vector<Integer> bad(smooth.bad_cones.begin(), smooth.bad_cones.end());
    if (o.format == "json") {
      j["bad_cones"] = to_json(bad);
      out << j.dump(2) << '\n';
    } else {
      out << "smooth: no (cones " << join(bad) << " have |det| != 1)\n";
    }
    return static_cast<int>(ErrorKind::NotSmooth);
  }
  const auto complete = validate_complete(in.fan, o.seed);
  j["complete"] = complete.complete();
  j["walls_ok"] = complete.walls_ok;
  j["coverage"] = std::to_string(complete.covered) + "/" + std::to_string(complete.samples);
  if (!complete.complete()) {
    if (o.format == "json") {
      out << j.dump(2) << '\n';
    } else {
      out << "smooth: yes, complete: no\n"
          << "walls: " << (complete.walls_ok ? "ok" : "unpaired") << "\n"
          << "coverage: " << complete.covered << "/" << complete.samples << "\n";
    }
    return static_cast<int>(ErrorKind::NotComplete);
  }
  const auto proj = is_projective(in.fan);
  j["projective"] = proj.projective;
  if (proj.witness) j["ample_witness"] = to_json(proj.witness->coeffs);
  if (o.format == "json") {
    out << j.dump(2) << '\n';
  } else {
    out << "smooth: yes, complete: yes, projective: " << (proj.projective ? "yes" : "no") << "\n"
        << "walls: ok\n"
        << "coverage: " << complete.covered << "/" << complete.samples << "\n";
    if (proj.witness) out << "ample witness: " << join(proj.witness->coeffs) << "\n";
  }
  return proj.projective ? 0 : static_cast<int>(ErrorKind::NotAmple);
}

inline int cmd_betti(const Options& o, std::ostream& out) {
  const FanInput in = resolve_fan(o.fan);
  const auto ring = build_ring(in.fan);  // validates and cross-checks ranks
  const auto b = betti(in.fan);
  if (o.format == "json") {
    out << nlohmann::json{{"betti", to_json(b)}}.dump(2) << '\n';
  } else {
    out << join(b) << '\n';
  }
  return 0;
}

enum class Scalar { Degree, Chi, Sign };

inline int cmd_scalar(const Options& o, std::ostream& out, Scalar which) {
  const FanInput in = resolve_fan(o.fan);
  const DivisorClass alpha = resolve_alpha(in, o.alpha);
  const auto ring = build_ring(in.fan);
  require_ample(in.fan, alpha);
  Integer value;
  switch (which) {
    case Scalar::Degree: value = degree(*ring, alpha.scaled(o.d)); break;
    case Scalar::Chi: value = euler_char_hypersurface(*ring, alpha, o.d); break;
    case Scalar::Sign: value = signature_hypersurface(*ring, alpha, o.d); break;
  }
  if (o.format == "json") {
    out << nlohmann::json{{"value", value.str()}, {"d", o.d}}.dump(2) << '\n';
  } else {
    out << value << '\n';
  }
  return 0;
}

inline int cmd_gram(const Options& o, std::ostream& out) {
  const FanInput in = resolve_fan(o.fan);
  const DivisorClass alpha = resolve_alpha(in, o.alpha);
  const auto ring = build_ring(in.fan);
  require_ample(in.fan, alpha);
  const IntSymForm g = middle_form_gram(*ring, alpha, o.d);
  const Signature s = signature(g);
  if (o.format == "json") {
    nlohmann::json j;
    j["basis"] = g.labels();
    j["gram"] = to_json(g.gram());
    j["signature"] = {s.positive, s.negative, s.zero};
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "basis:";
  for (std::size_t i = 0; i < g.labels().size(); ++i) out << (i ? "," : " ") << g.labels()[i];
  out << '\n' << g.gram() << "signature: " << signature_text(s) << '\n';
  return 0;
}

inline int cmd_handles(const Options& o, std::ostream& out) {
  const FanInput in = resolve_fan(o.fan);
  const HypersurfaceFamily family(in.fan, resolve_alpha(in, o.alpha));
  const HandleReport r = family.report(o.d, o.kervaire);
  if (o.format == "json") {
    out << report_json(r).dump(2) << '\n';
    return 0;
  }
  if (r.n % 2 == 0) {
    out << kEvenHeader << ",b_n_X,hypothesis_ok,corollary_residual\n"
        << even_row(r) << ',' << r.b_n_X << ',' << (r.hypothesis_ok ? "yes" : "no") << ','
        << r.corollary_residual << " (" << r.corollary_sign << ")\n";
  } else {
    out << kOddHandlesHeader << '\n' << odd_handles_row(r) << '\n';
  }
  return 0;
}

inline int cmd_sweep(const Options& o, std::ostream& out) {
  const FanInput in = resolve_fan(o.fan);
  const SweepResult result = sweep(in.fan, resolve_alpha(in, o.alpha), o.d_min, o.d_max, o.kervaire);
  const bool even = result.rows.front().n % 2 == 0;
  if (o.format == "json") {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : result.rows) j["rows"].push_back(report_json(r));
    j["limits"] = nlohmann::json::array();
    for (const auto& l : result.limits) {
      nlohmann::json e{{"name", l.name},
                       {"value", to_string(l.empirical)},
                       {"limit", to_string(l.limit)},
                       {"gap", to_string(abs(Rational(l.empirical - l.limit)))}};
      if (l.has_alternative) {
        e["alternative"] = to_string(l.alternative);
        e["alternative_gap"] = to_string(abs(Rational(l.empirical - l.alternative)));
      }
      j["limits"].push_back(e);
    }
    out << j.dump(2) << '\n';
    return 0;
  }
  out << (even ? kEvenHeader : kOddSweepHeader) << '\n';
  for (const auto& r : result.rows) out << (even ? even_row(r) : odd_sweep_row(r)) << '\n';
  const long d_last = result.rows.back().d;
  for (const auto& l : result.limits) {
    const Rational gap = abs(Rational(l.empirical - l.limit));
    out << "# " << l.name << " at d=" << d_last << ": " << approx(l.empirical) << "; limit " << to_string(l.limit)
        << " " << approx(l.limit) << "; gap " << approx(gap);
    if (l.has_alternative) {
      const Rational alt_gap = abs(Rational(l.empirical - l.alternative));
      out << "; (n+1)! variant " << to_string(l.alternative) << " " << approx(l.alternative) << ", gap "
          << approx(alt_gap);
    }
    out << '\n';
  }
  return 0;
}

inline int cmd_lattice_split(const Options& o, std::ostream& out) {
  const IntSymForm h = parse_gram(read_text_file(o.gram_path));
  Sublattice f;
  if (!o.sublattice_path.empty()) {
    f = make_sublattice(parse_matrix_text(read_text_file(o.sublattice_path), false));
    require(f.generators.cols() == h.dimension(), ErrorKind::Input, "sublattice vectors have the wrong length");
  }
  SplitOptions opts;
  opts.search.max_radius = o.max_radius;
  opts.search.max_support = o.max_support;
  const SplitResult s = split_decomposition(h, f, opts);
  const Signature rs = signature(s.residual);
  if (o.format == "json") {
    nlohmann::json j;
    j["rank_H"] = h.dimension();
    j["rank_F"] = f.rank();
    j["rank_E"] = s.complement_basis.rows();
    j["rank_hypothesis"] = s.rank_hypothesis;
    j["planes"] = nlohmann::json::array();
    for (const auto& p : s.planes) j["planes"].push_back({{"x", to_json(p.x)}, {"y", to_json(p.y)}, {"c", p.c}});
    j["residual_gram"] = to_json(s.residual.gram());
    j["residual_basis"] = to_json(s.residual_basis);
    j["residual_signature"] = {rs.positive, rs.negative, rs.zero};
    j["terminal"] = to_string(s.terminal);
    j["threshold_planes"] = s.threshold_planes;
    j["threshold_terminal"] = to_string(s.threshold_terminal);
    j["stop_rank"] = s.stop_rank;
    j["transform"] = to_json(s.transform);
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "rank_H: " << h.dimension() << "\nrank_F: " << f.rank() << "\nrank_E: " << s.complement_basis.rows()
      << "\nrank_hypothesis: " << (s.rank_hypothesis ? "yes" : "no") << "\nplanes: " << s.planes.size() << '\n';
  for (std::size_t i = 0; i < s.planes.size(); ++i)
    out << "plane " << i + 1 << ": c=" << s.planes[i].c << " x=" << bracket(s.planes[i].x)
        << " y=" << bracket(s.planes[i].y) << '\n';
  out << "residual_rank: " << s.residual.dimension() << "\nresidual_signature: " << signature_text(rs)
      << "\nresidual_even: " << (is_even(s.residual) ? "yes" : "no") << "\nterminal: " << to_string(s.terminal)
      << "\nthreshold_planes: " << s.threshold_planes << " (stop rank " << s.stop_rank << ", "
      << to_string(s.threshold_terminal) << ")\nresidual_gram:\n"
      << format_matrix_text(s.residual.gram()) << "residual_basis:\n"
      << format_matrix_text(s.residual_basis) << "transform:\n"
      << format_matrix_text(s.transform);
  return 0;
}

inline std::string z2_text(const Z2Vector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

inline int cmd_arf(const Options& o, std::ostream& out) {
  const IntMatrix g = parse_matrix_text(read_text_file(o.gram_path), true);
  require(g.is_symmetric(), ErrorKind::Input, "Gram matrix is not symmetric");
  Z2Vector psi;
  for (const auto& x : parse_int_list(o.psi)) psi.push_back(static_cast<Z2>(x % 2 != 0));
  const QuadraticSpaceZ2 q(reduce_mod2(g), psi);
  const auto norm = normalize_quadratic_basis(q);
  if (o.format == "json") {
    nlohmann::json j;
    j["arf"] = norm.arf;
    j["pairs"] = nlohmann::json::array();
    for (std::size_t i = 0; i < norm.pairs.size(); ++i)
      j["pairs"].push_back({{"a", norm.pairs[i].a},
                            {"b", norm.pairs[i].b},
                            {"psi", {norm.psi_values[i].first, norm.psi_values[i].second}}});
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "arf: " << static_cast<int>(norm.arf) << '\n';
  for (std::size_t i = 0; i < norm.pairs.size(); ++i)
    out << "pair " << i << ": a=" << z2_text(norm.pairs[i].a) << " b=" << z2_text(norm.pairs[i].b) << " psi=("
        << static_cast<int>(norm.psi_values[i].first) << "," << static_cast<int>(norm.psi_values[i].second) << ")\n";
  return 0;
}

/// Parses `args` (without the program name) and runs one subcommand.
/// Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topology of hypersurfaces in projective toric manifolds", "toricsplit"};
  app.require_subcommand(1);
  Options o;
  std::string kervaire;

  auto add_fan = [&](CLI::App* sub) {
    auto* pos = sub->add_option("fan_path", o.fan, "fan JSON file, cp<m>, or product:cp<a>,cp<b>");
    auto* flag = sub->add_option("--fan", o.fan, "same as the positional fan argument");
    pos->excludes(flag);
    flag->excludes(pos);
  };
  auto add_alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", o.alpha, "ample class: comma-separated ints, hyperplane, or anticanonical");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* check = app.add_subcommand("check", "validate smoothness, completeness and projectivity");
  add_fan(check);
  check->add_option("--seed", o.seed, "seed for the coverage sample");
  add_format(check);

  auto* betti_cmd = app.add_subcommand("betti", "Betti numbers of X");
  add_fan(betti_cmd);
  add_format(betti_cmd);

  std::vector<CLI::App*> scalar_cmds;
  for (const char* name : {"degree", "chi", "sign", "gram"}) {
    auto* sub = app.add_subcommand(name, std::string(name) + " of the hypersurface Y_d");
    add_fan(sub);
    add_alpha(sub);
    sub->add_option("--d", o.d, "multiple of alpha")->check(CLI::PositiveNumber);
    add_format(sub);
    scalar_cmds.push_back(sub);
  }

  auto* handles = app.add_subcommand("handles", "handle count report for one d");
  add_fan(handles);
  add_alpha(handles);
  handles->add_option("--d", o.d, "multiple of alpha")->check(CLI::PositiveNumber);
  handles->add_option("--kervaire", kervaire, "Kervaire invariant (odd n): 0 or 1")->check(CLI::IsMember({"0", "1"}));
  add_format(handles);

  auto* sweep_cmd = app.add_subcommand("sweep", "handle counts for a range of d");
  add_fan(sweep_cmd);
  add_alpha(sweep_cmd);
  sweep_cmd->add_option("--d-min", o.d_min)->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--d-max", o.d_max)->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--kervaire", kervaire)->check(CLI::IsMember({"0", "1"}));
  add_format(sweep_cmd);

  auto* split = app.add_subcommand("lattice-split", "hyperbolic splitting of F^perp in a unimodular lattice");
  split->add_option("gram", o.gram_path, "Gram matrix file")->required();
  split->add_option("--sublattice", o.sublattice_path, "generators of F, one per row");
  split->add_option("--rmax", o.max_radius, "isotropic search radius")->check(CLI::PositiveNumber);
  split->add_option("--max-support", o.max_support, "isotropic search support")->check(CLI::PositiveNumber);
  add_format(split);

  auto* arf_cmd = app.add_subcommand("arf", "Arf invariant of a mod-2 quadratic refinement");
  arf_cmd->add_option("gram", o.gram_path, "Gram matrix file (reduced mod 2)")->required();
  arf_cmd->add_option("--psi", o.psi, "psi on the basis, comma-separated")->required();
  add_format(arf_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::Input);
  }
  if (!kervaire.empty()) o.kervaire = std::stoi(kervaire);

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (betti_cmd->parsed()) return cmd_betti(o, out);
    if (scalar_cmds[0]->parsed()) return cmd_scalar(o, out, Scalar::Degree);
    if (scalar_cmds[1]->parsed()) return cmd_scalar(o, out, Scalar::Chi);
    if (scalar_cmds[2]->parsed()) return cmd_scalar(o, out, Scalar::Sign);
    if (scalar_cmds[3]->parsed()) return cmd_gram(o, out);
    if (handles->parsed()) return cmd_handles(o, out);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out);
    if (split->parsed()) return cmd_lattice_split(o, out);
    if (arf_cmd->parsed()) return cmd_arf(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::Internal);
  }
  return static_cast<int>(ErrorKind::Input);
}

}  // namespace toricsplit::cli
