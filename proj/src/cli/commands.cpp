#include <chrono>
#include <ctime>
#include <fstream>
#include <set>

#include "tq/bundle/bundle.hpp"
#include "tq/cartan/cartan.hpp"
#include "tq/cases/cases.hpp"
#include "tq/cli/cli.hpp"
#include "tq/gauge/gauge.hpp"
#include "tq/sym/parse.hpp"
#include "tq/sym/print.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::cli {

using sym::Expr;

namespace {

using sym::print;

Record checks_json(const std::vector<cases::Check>& cs) {
  Record a = Record::array();
  for (const auto& c : cs) {
    Record o;
    o["name"] = c.name;
    o["pass"] = c.pass;
    o["derived"] = c.derived;
    o["expected"] = c.expected;
    if (!c.note.empty()) o["note"] = c.note;
    a.push_back(o);
  }
  return a;
}

Record connection_json(const ext::MatrixForm& w, const std::string& label = "w") {
  Record o = Record::object();
  for (std::size_t a = 0; a < w.size(); ++a) {
    for (std::size_t b = 0; b < w.size(); ++b) {
      if (w(a, b).is_zero()) continue;
      o[label + "[" + std::to_string(a) + "][" + std::to_string(b) + "]"] = ext::to_string(w(a, b));
    }
  }
  return o;
}

Record loci_json(const std::vector<bundle::ClassifiedLocus>& ls, const sym::Context& ctx) {
  Record a = Record::array();
  for (const auto& l : ls) a.push_back(std::string(bundle::to_string(l.kind)) + " " + bundle::to_string(l.locus, ctx));
  return a;
}

Record field_json(const cartan::FieldCheck& f, const std::string& source) {
  Record o;
  o["source"] = source;
  o["pass"] = f.pass;
  o["decided"] = f.symbolic ? "symbolic" : "numeric probes";
  if (!f.pass) o["failing"] = f.failing;
  return o;
}

Record chern_json(const bundle::ChernNumber& k, const std::string& region, const sym::Context& ctx) {
  Record o;
  o["region"] = region;
  o["orientation"] = k.orientation;
  o["value"] = print(k.value, ctx);
  if (k.in_n) o["in_n"] = print(*k.in_n, ctx);
  if (k.numeric) o["quadrature_error"] = k.error;
  return o;
}

Record atlas_json(const bundle::Atlas& atlas, const sym::Context& ctx) {
  auto chk = bundle::check_atlas(atlas);
  Record o;
  o["consistent"] = chk.consistent;
  o["cocycle"] = chk.cocycle.pass;
  o["relations_checked"] = chk.cocycle.checked;
  (void)ctx;
  return o;
}

Record patch_json(const bundle::Patch& p, const ext::Coframe& c) {
  Record o;
  o["name"] = p.name;
  Record ex = Record::array();
  for (const auto& l : p.excluded) ex.push_back(bundle::to_string(l, p.chart->context()));
  o["excluded"] = ex;
  if (p.u1) o["connection (frame)"] = ext::to_string(ext::to_frame_basis(*p.u1, c));
  return o;
}

Record einstein_rosen_record() {
  auto er = cases::einstein_rosen();
  const auto& ctx = er.chart->context();
  auto series = cases::er_axis_regularity(cases::er_axis_series());
  auto lc = cases::er_axis_regularity(cases::er_levi_civita());
  auto q = cases::er_quantize();
  auto geo = cartan::curvature(er.omega);

  Record r;
  r["case"] = "einstein-rosen";
  r["connection"] = connection_json(er.omega);
  r["curvature"] = connection_json(geo, "R");
  r["field_equations"] = field_json(er.field, "vacuum, with the psi and gamma equations imposed");
  Record axis;
  axis["family"] = "psi = psi0 + c*rho^3, gamma = gamma0 + 3/2*c^2*rho^6";
  axis["regular"] = series.regular;
  for (const auto& [k, v] : series.limits) axis["limit " + k] = v;
  r["axis"] = axis;
  Record seed;
  seed["family"] = "psi = a*ln(rho), gamma = a^2*ln(rho)";
  seed["regular"] = lc.regular;
  seed["reason"] = lc.reason;
  r["axis_levi_civita"] = seed;
  Record g;
  g["element"] = "exp(exp(-gamma0)*phi*T_phi)";
  Record primed = connection_json(q.primed, "w'");
  for (const auto& [k, v] : primed.items()) g[k] = v;
  r["gauge"] = g;
  r["condition"] = q.condition.to_string(ctx);
  Record e;
  e["variant1"] = print(q.energy1.quantized, ctx);
  e["variant2"] = print(q.energy2.quantized, ctx);
  r["c_energy"] = e;
  std::vector<cases::Check> all = er.checks;
  all.insert(all.end(), series.checks.begin(), series.checks.end());
  all.insert(all.end(), q.checks.begin(), q.checks.end());
  r["checks"] = checks_json(all);
  return r;
}

Record monopole_record() {
  auto m = cases::weak_field_monopole();
  const auto& ctx = m.chart->context();
  ext::Coframe exact(m.exact_chart, m.coframe->matrix());
  Record r;
  r["case"] = "monopole";
  Record conn;
  conn["A1 (frame)"] = ext::to_string(m.a1_frame);
  conn["A2 (frame)"] = ext::to_string(m.a2_frame);
  r["connection"] = conn;
  r["curvature"] = connection_json(cartan::curvature(cartan::solve_connection(*m.coframe)), "R");
  Record ps = Record::array();
  for (const auto& p : m.atlas.patches) ps.push_back(patch_json(p, exact));
  r["patches"] = ps;
  r["transition"] = gauge::to_string(m.g12.g, ctx);
  r["transition_maps"] = "A_U1 -> A_U2 on " + m.g12.overlap;
  r["atlas"] = atlas_json(m.atlas, ctx);
  r["condition"] = m.condition.to_string(ctx);
  Record loci;
  loci["U1"] = loci_json(m.loci1, ctx);
  loci["U2"] = loci_json(m.loci2, ctx);
  r["loci"] = loci;
  r["chern"] = chern_json(m.chern, "theta in [0, pi], phi in [0, 2*pi]", ctx);
  Record g;
  g["element"] = gauge::to_string(m.g12.g, ctx);
  g["A2 (frame)"] = ext::to_string(m.a2_frame);
  r["gauge"] = g;
  r["checks"] = checks_json(m.checks);
  return r;
}

Record reissner_nordstrom_record() {
  auto rn = cases::reissner_nordstrom();
  const auto& ctx = rn.chart->context();
  Record r;
  r["case"] = "reissner-nordstrom";
  r["connection"] = connection_json(cartan::solve_connection(*rn.coframe));
  Record pot;
  pot["A (frame)"] = ext::to_string(rn.a_frame);
  r["potential"] = pot;
  Record ps = Record::array();
  for (const auto& p : rn.atlas.patches) ps.push_back(patch_json(p, *rn.coframe));
  r["patches"] = ps;
  const auto& t = rn.atlas.transitions.at({0, 1});
  r["transition"] = gauge::to_string(t.g, ctx);
  r["transition_maps"] = "A_U2 -> A_U1 on " + t.overlap;
  r["atlas"] = atlas_json(rn.atlas, ctx);
  r["condition"] = rn.condition.to_string(ctx);
  auto forced = bundle::forced_value(rn.condition, {{"e", sym::sym("m")}}, ctx);
  r["extreme"] = forced ? "e = m forces n = " + forced->get_str() : "e = m: undetermined";
  r["loci"] = loci_json(rn.loci, ctx);
  Record ch = chern_json(rn.chern, "t in [0, 2*pi], r in [rm, rp]", ctx);
  ch["form (i*F)"] = ext::to_string(rn.chern_forms.unnormalized);
  ch["c1"] = ext::to_string(rn.chern_forms.c1);
  ch["normalization"] =
      "c1 = (i/2pi)F integrates to -n; the unnormalized i*F integrates to -2*pi*n; a quoted 4*pi*n is not reproduced";
  r["chern"] = ch;
  Record g;
  g["gamma1"] = "exp(i*e*t/rm)";
  g["gamma2"] = "exp(i*e*t/rp)";
  g["A1 (frame)"] = ext::to_string(rn.a1_frame);
  g["A2 (frame)"] = ext::to_string(rn.a2_frame);
  r["gauge"] = g;
  r["field_equations"] = field_json(rn.field, "electromagnetic");
  r["kretschmann"] = print(rn.kretschmann, ctx);
  r["checks"] = checks_json(rn.checks);
  return r;
}

Record kerr_newman_record() {
  auto kn = cases::kerr_newman();
  const auto& ctx = kn.chart->context();
  Record r;
  r["case"] = "kerr-newman";
  r["derived"] = print(kn.derived, ctx) + " = n";
  r["printed"] = print(kn.printed, ctx) + " = n";
  r["verdict"] = std::string(kn.agree ? "agree" : "differ") + (kn.agree_symbolic ? " (symbolic)" : " (numeric probes)");
  r["checks"] = checks_json(kn.checks);
  return r;
}

const std::map<std::string, std::vector<std::string>>& command_keys() {
  static const std::map<std::string, std::vector<std::string>> k = {
      {"connection", {"connection", "potential"}},
      {"curvature", {"curvature", "bianchi_residual"}},
      {"invariants", {"kretschmann", "ricci_scalar", "field_invariant", "loci", "potential_loci"}},
      {"verify", {"field_equations"}},
      {"gauge", {"gauge"}},
      {"atlas", {"patches", "transition", "transition_maps", "atlas"}},
      {"quantize", {"condition", "extreme", "chern", "c_energy", "derived", "printed", "verdict"}},
  };
  return k;
}

Record select(const Record& full, const std::string& command) {
  if (command == "case") return full;
  const auto& keys = command_keys().at(command);
  Record out;
  if (full.contains("case")) out["case"] = full["case"];
  if (full.contains("definition")) out["definition"] = full["definition"];
  bool any = false;
  for (const auto& k : keys) {
    if (full.contains(k)) {
      out[k] = full[k];
      any = true;
    }
  }
  if (!any) {
    std::string what = full.contains("case") ? full["case"].get<std::string>() : "this definition";
    throw Error("'" + command + "' is not available for " + what);
  }
  return out;
}

// ------------------------------------------------------------------ definition files

struct FileResult {
  Record record;
  bool verified = true;
};

FileResult definition_record(const Definition& d, const Options& o) {
  const auto& ctx = d.chart->context();
  const auto& c = *d.coframe;
  Record r;
  r["definition"] = d.name;
  const std::string& cmd = o.command;
  bool all = cmd == "case";
  FileResult res;

  cartan::Geometry geo;
  bool need_geo = all || cmd == "connection" || cmd == "curvature" || cmd == "invariants" || cmd == "verify" ||
                  (cmd == "gauge" && o.angle);
  if (need_geo) {
    if (all || cmd == "curvature" || cmd == "invariants" || cmd == "verify") {
      geo = cartan::geometry(c);
    } else {
      geo.omega = cartan::solve_connection(c);
    }
  }
  if (all || cmd == "connection") {
    r["connection"] = connection_json(geo.omega);
    r["structure_residual"] = cartan::all_zero(cartan::verify_first_structure(c, geo.omega)) ? "0" : "nonzero";
    if (d.potential) {
      Record p;
      p["A (frame)"] = ext::to_string(ext::to_frame_basis(*d.potential, c));
      r["potential"] = p;
    }
  }
  if (all || cmd == "curvature") {
    r["curvature"] = connection_json(geo.curvature, "R");
    r["bianchi_residual"] = cartan::bianchi_residual(geo.omega, geo.curvature).is_zero() ? "0" : "nonzero";
  }
  if (all || cmd == "invariants") {
    r["ricci_scalar"] = print(cartan::ricci_scalar(cartan::ricci(geo.riemann, ctx), ctx), ctx);
    Expr k = cartan::kretschmann(geo.riemann, ctx);
    r["kretschmann"] = print(k, ctx);
    try {
      r["loci"] = loci_json(bundle::singular_loci({"M", d.chart, {}, std::nullopt, geo.omega}, c, k), ctx);
    } catch (const UnsupportedError& e) {
      r["loci"] = Record::array({std::string("undetermined: ") + e.what()});
    }
    if (d.potential) {
      Expr inv = cartan::field_invariant(cartan::curvature(*d.potential), c);
      r["field_invariant"] = print(inv, ctx);
      try {
        r["potential_loci"] =
            loci_json(bundle::singular_loci({"M", d.chart, {}, d.potential, std::nullopt}, c, inv), ctx);
      } catch (const UnsupportedError& e) {
        r["potential_loci"] = Record::array({std::string("undetermined: ") + e.what()});
      }
    }
  }
  if (all || cmd == "verify") {
    auto src = d.potential ? cartan::em_stress_energy(cartan::curvature(*d.potential), c) : cartan::vacuum();
    auto f = cartan::verify_field_equations(geo, c, src, {}, o.seed);
    r["field_equations"] = field_json(f, d.potential ? "electromagnetic" : "vacuum");
    res.verified = f.pass;
  }
  if (cmd == "gauge") {
    Record g;
    if (o.phase) {
      if (!d.potential) throw Error("gauge --phase needs a potential section");
      auto el = gauge::GroupElement::phase(sym::parse(*o.phase, ctx));
      g["element"] = gauge::to_string(el, ctx);
      g["A' (frame)"] = ext::to_string(ext::to_frame_basis(gauge::gauge_transform_connection(*d.potential, el, d.chart), c));
    } else if (o.angle) {
      auto el = gauge::so13_exp(gauge::t_phi(), sym::parse(*o.angle, ctx), ctx);
      g["element"] = "exp((" + *o.angle + ")*T_phi)";
      Record primed = connection_json(gauge::gauge_transform_connection(geo.omega, el, d.chart), "w'");
      for (const auto& [k, v] : primed.items()) g[k] = v;
    } else {
      throw Error("gauge needs --phase <chi> or --angle <theta>");
    }
    r["gauge"] = g;
  }
  if (cmd == "quantize") {
    if (!o.phase || !o.coordinate) throw Error("quantize on a definition file needs --phase and --coordinate");
    auto q = bundle::quantize(sym::parse(*o.phase, ctx), *d.chart, *o.coordinate, "exp(i*(" + *o.phase + "))");
    r["condition"] = q.to_string(ctx);
  }
  if (cmd == "atlas") throw Error("a definition file describes a single patch; 'atlas' runs on the built-in cases");
  res.record = r;
  return res;
}

// golden comparison of a definition's `expected` lines
std::vector<std::string> compare_expected(const Definition& d, const Record& r, bool complete) {
  std::vector<std::string> bad;
  const auto& ctx = d.chart->context();
  for (const auto& [k, v] : d.expected) {
    const Record* got = nullptr;
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (it.key() == k) got = &it.value();
      if (it.value().is_object() && it.value().contains(k)) got = &it.value()[k];
    }
    if (!got) {
      // a component absent from the record is zero
      if (k.rfind("w[", 0) == 0 && r.contains("connection")) {
        if (!parse_one_form(v, d.chart).is_zero()) bad.push_back(k + ": expected " + v + ", got 0");
        continue;
      }
      if (complete) bad.push_back(k + ": not in the report");
      continue;
    }
    std::string g = got->is_string() ? got->get<std::string>() : got->dump();
    bool ok = g == v;
    if (!ok && k.rfind("w[", 0) == 0) {
      ok = ext::same_form(parse_one_form(v, d.chart), parse_one_form(g, d.chart));
    } else if (!ok) {
      try {
        ok = sym::equivalent(sym::parse(v, ctx), sym::parse(g, ctx), ctx).equal;
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) bad.push_back(k + ": expected " + v + ", got " + g);
  }
  return bad;
}

std::vector<std::string> compare_golden(const Record& r, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open golden file '" + path + "'");
  Record g = Record::parse(f);
  std::vector<std::string> bad;
  for (auto it = g.begin(); it != g.end(); ++it) {
    nlohmann::json::json_pointer p(it.key());
    Record flat = r;
    if (!flat.contains(p)) {
      bad.push_back(it.key() + ": missing");
      continue;
    }
    if (flat.at(p) != it.value()) bad.push_back(it.key() + ": expected " + it.value().dump() + ", got " + flat.at(p).dump());
  }
  return bad;
}

bool checks_pass(const Record& r) {
  if (r.contains("checks")) {
    for (const auto& c : r["checks"]) {
      if (!c["pass"].get<bool>()) return false;
    }
  }
  if (r.contains("field_equations") && !r["field_equations"]["pass"].get<bool>()) return false;
  return true;
}

std::string now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

Record case_record(const std::string& name, const std::string& command, std::uint64_t) {
  Record full;
  if (name == "einstein-rosen") {
    full = einstein_rosen_record();
  } else if (name == "monopole") {
    full = monopole_record();
  } else if (name == "reissner-nordstrom") {
    full = reissner_nordstrom_record();
  } else if (name == "kerr-newman") {
    full = kerr_newman_record();
  } else {
    throw Error("unknown case '" + name + "' (known: einstein-rosen, monopole, reissner-nordstrom, kerr-newman)");
  }
  return select(full, command);
}

int run(const Options& o, std::ostream& out, std::ostream& err) {
  static const std::set<std::string> commands = {"connection", "curvature", "invariants", "verify",
                                                 "gauge",      "atlas",     "quantize",   "case"};
  try {
    if (!commands.count(o.command)) throw Error("unknown command '" + o.command + "'");
    if (o.file.has_value() == o.case_name.has_value()) throw Error("give exactly one of --file or --case");
    std::string started = o.verbose ? now() : "";
    std::vector<std::string> names;
    if (o.case_name && *o.case_name == "all") {
      if (o.command != "case") throw Error("--all is only available for 'case'");
      names = kCases;
    } else if (o.case_name) {
      names = {*o.case_name};
    }

    Record report;
    bool mismatch = false;
    std::vector<std::string> problems;
    if (o.file) {
      Definition d = load_definition(*o.file);
      FileResult fr = definition_record(d, o);
      report = fr.record;
      mismatch = !fr.verified;
      if (o.check_golden) {
        for (auto& p : compare_expected(d, report, o.command == "case")) problems.push_back(d.name + ": " + p);
      }
    } else {
      Record merged;
      for (const auto& n : names) {
        Record r = case_record(n, o.command, o.seed);
        if (!checks_pass(r)) {
          mismatch = true;
          problems.push_back(n + ": a built-in check failed");
        }
        if (o.check_golden) {
          for (auto& p : compare_golden(case_record(n, "case", o.seed), o.golden_dir + "/" + n + ".json")) {
            problems.push_back(n + ": " + p);
          }
        }
        if (names.size() == 1) {
          merged = r;
        } else {
          merged[n] = r;
        }
      }
      report = merged;
    }
    if (names.size() > 1) {
      for (const auto& n : names) out << "=== " << n << "\n" << render_text(report[n]) << "\n";
    }
    if (o.verbose) {
      Record t;
      t["started"] = started;
      t["finished"] = now();
      report["timing"] = t;
    }
    if (names.size() <= 1) out << render_text(report);
    if (o.verbose && names.size() > 1) out << "\n[timing]\nstarted = " << report["timing"]["started"].get<std::string>()
                       << "\nfinished = " << report["timing"]["finished"].get<std::string>() << "\n";
    if (o.json_path) {
      std::ofstream j(*o.json_path);
      if (!j) throw Error("cannot write '" + *o.json_path + "'");
      j << envelope(report).dump(2) << "\n";
    }
    for (const auto& p : problems) err << "mismatch: " << p << "\n";
    return mismatch || !problems.empty() ? 2 : 0;
  } catch (const DefinitionError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "error in " << o.command << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error in " << o.command << ": " << e.what() << "\n";
  }
  return 1;
}

}  // namespace tq::cli
