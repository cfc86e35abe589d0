// Command-line front end: loads algebroid/connection/IDS declaration files,
// runs the exact validations and computations, and emits human-readable or
// JSON reports. Exit codes: 0 pass/verdict computed, 1 mathematical
// violation found, 2 input error, 3 internal cross-check disagreement.

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lieax/connection.hpp"
#include "lieax/integrability.hpp"
#include "lieax/io.hpp"
#include "lieax/random.hpp"

using nlohmann::json;
using namespace lieax;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

struct Options {
  bool json_output = false;
  bool oracle = false;
  std::uint64_t seed = 12345;
  unsigned trials = 25;
  unsigned max_degree = 2;
};

struct Outcome {
  json doc = json::object();
  std::vector<CheckReport> reports;
  int exit_code = kExitPass;
};

void emit(const Outcome& outcome, const Options& opts,
          std::chrono::steady_clock::time_point started) {
  json doc = outcome.doc;
  json reports = json::array();
  for (const auto& r : outcome.reports) reports.push_back(report_to_json(r));
  doc["reports"] = std::move(reports);
  if (opts.json_output) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::cout << "command: " << doc["command"].get<std::string>() << "\n";
  for (const auto& [key, value] : doc.items()) {
    if (key == "command" || key == "reports") continue;
    if (value.is_string()) {
      std::cout << key << ": " << value.get<std::string>() << "\n";
    } else {
      std::cout << key << ": " << value.dump() << "\n";
    }
  }
  for (const auto& r : outcome.reports) {
    std::cout << "report: " << r.name << "\n";
    render_report_text(r, std::cout);
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::cout << "time: " << (static_cast<double>(elapsed) / 1000.0) << " ms\n";
}

bool all_pass(const Outcome& outcome) {
  for (const auto& r : outcome.reports) {
    if (!r.pass()) return false;
  }
  return true;
}

// ---- subcommand handlers ----

Outcome run_validate(const std::string& file) {
  AlgebroidFile f = load_algebroid_file(file);
  Outcome out;
  out.doc["command"] = "validate";
  out.reports.push_back(validate_axioms(f.algebra));
  out.reports.push_back(maurer_cartan_check(f.algebra));
  if (f.generalized) {
    out.reports.push_back(validate_axioms(f.connection_base));
    out.reports.back().name = "pull-back algebroid axioms";
  }
  out.doc["verdict"] = all_pass(out) ? "pass" : "fail";
  out.exit_code = all_pass(out) ? kExitPass : kExitViolation;
  return out;
}

Outcome run_d(const std::string& file, const std::string& literal, const Options& opts) {
  AlgebroidFile f = load_algebroid_file(file);
  Form w = parse_form_literal(literal, f.algebra);
  Form dw = d(w);
  Outcome out;
  out.doc["command"] = "d";
  out.doc["result"] = dw.str();
  if (opts.oracle) {
    Form check = d_intrinsic(w);
    if (!dw.equals(check)) {
      throw std::logic_error("coordinate-formula d disagrees with the intrinsic path");
    }
    out.doc["oracle"] = "agree";
  }
  return out;
}

Outcome run_wedge(const std::string& file, const std::string& lit1, const std::string& lit2,
                  const Options& opts) {
  AlgebroidFile f = load_algebroid_file(file);
  Form a = parse_form_literal(lit1, f.algebra);
  Form b = parse_form_literal(lit2, f.algebra);
  Form w = wedge(a, b);
  Outcome out;
  out.doc["command"] = "wedge";
  out.doc["result"] = w.str();
  if (opts.oracle) {
    if (!w.equals(wedge_definitional(a, b))) {
      throw std::logic_error("shuffle wedge disagrees with the full antisymmetrization sum");
    }
    out.doc["oracle"] = "agree";
  }
  return out;
}

Outcome run_lie(const std::string& file, const std::string& section_lit,
                const std::string& form_lit, const Options& opts) {
  AlgebroidFile f = load_algebroid_file(file);
  Section z = parse_section_literal(section_lit, f.algebra);
  Form w = parse_form_literal(form_lit, f.algebra);
  Form lw = lie_derivative(z, w);
  Outcome out;
  out.doc["command"] = "lie";
  out.doc["result"] = lw.str();
  if (opts.oracle) {
    Form magic = d(interior(z, w)) + interior(z, d(w));
    if (!lw.equals(magic)) {
      throw std::logic_error("Lie derivative disagrees with the Cartan-formula path");
    }
    out.doc["oracle"] = "agree";
  }
  return out;
}

Outcome run_interior(const std::string& file, const std::string& section_lit,
                     const std::string& form_lit, const Options& opts) {
  AlgebroidFile f = load_algebroid_file(file);
  Section z = parse_section_literal(section_lit, f.algebra);
  Form w = parse_form_literal(form_lit, f.algebra);
  Form iw = interior(z, w);
  Outcome out;
  out.doc["command"] = "interior";
  out.doc["result"] = iw.str();
  if (opts.oracle) {
    if (!iw.equals(interior_definitional(z, w))) {
      throw std::logic_error("interior product disagrees with the slot-evaluation path");
    }
    out.doc["oracle"] = "agree";
  }
  return out;
}

Outcome run_pullback_algebroid(const std::string& file) {
  AlgebroidFile f = load_algebroid_file(file);
  Outcome out;
  out.doc["command"] = "pullback-algebroid";
  out.doc["algebroid"] = algebra_to_json(*f.connection_base);
  return out;
}

Outcome run_identities(const std::string& file, const std::optional<std::string>& connection_file,
                       const Options& opts) {
  AlgebroidFile f = load_algebroid_file(file);
  Outcome out;
  out.doc["command"] = "identities";
  out.doc["seed"] = opts.seed;
  out.doc["trials"] = opts.trials;
  out.doc["max_degree"] = opts.max_degree;
  out.reports.push_back(validate_axioms(f.algebra));

  const AlgebraPtr& alg = f.algebra;
  std::size_t p = alg->rank();
  Rng rng(opts.seed);
  CheckReport identities;
  identities.name = "exterior calculus identities";
  for (unsigned t = 0; t < opts.trials; ++t) {
    std::size_t q = t % (p + 1);
    Form w = random_form(alg, q, opts.max_degree, rng);
    Form th = random_form(alg, p > q ? 1 : 0, opts.max_degree, rng);
    Section z = random_section(alg, opts.max_degree, rng);
    Section v = random_section(alg, opts.max_degree, rng);

    Form dd = d(d(w));
    identities.add("d-of-d", {t + 1, q}, dd.is_zero(), dd.str());

    Form magic = lie_derivative(z, w) - (d(interior(z, w)) + interior(z, d(w)));
    identities.add("cartan-magic-formula", {t + 1, q}, magic.is_zero(), magic.str());

    Form comm = lie_derivative(v, interior(z, w)) - interior(z, lie_derivative(v, w)) -
                interior(bracket(v, z), w);
    identities.add("commutator-law", {t + 1, q}, comm.is_zero(), comm.str());

    Form leib_l = lie_derivative(z, wedge(w, th)) -
                  (wedge(lie_derivative(z, w), th) + wedge(w, lie_derivative(z, th)));
    identities.add("leibniz-lie", {t + 1, q}, leib_l.is_zero(), leib_l.str());

    Form iz_second = wedge(w, interior(z, th));
    Form leib_i = interior(z, wedge(w, th)) - (q % 2 == 0 ? wedge(interior(z, w), th) + iz_second
                                                          : wedge(interior(z, w), th) - iz_second);
    identities.add("leibniz-interior", {t + 1, q}, leib_i.is_zero(), leib_i.str());

    Form d_second = wedge(w, d(th));
    Form leib_d = d(wedge(w, th)) -
                  (q % 2 == 0 ? wedge(d(w), th) + d_second : wedge(d(w), th) - d_second);
    identities.add("leibniz-d", {t + 1, q}, leib_d.is_zero(), leib_d.str());

    Form ld = lie_derivative(z, d(w)) - d(lie_derivative(z, w));
    identities.add("lie-d-commute", {t + 1, q}, ld.is_zero(), ld.str());
  }
  out.reports.push_back(std::move(identities));

  if (connection_file) {
    Connection conn = load_connection_file(*connection_file, f.connection_base);
    if (f.generalized) {
      out.reports.push_back(validate_axioms(f.connection_base));
      out.reports.back().name = "pull-back algebroid axioms";
    }
    out.reports.push_back(verify_cartan_identities(conn));
    out.reports.push_back(verify_bianchi_identities(conn));
  }

  out.doc["verdict"] = all_pass(out) ? "pass" : "fail";
  out.exit_code = all_pass(out) ? kExitPass : kExitViolation;
  return out;
}

Outcome run_connection(const std::string& file, const std::string& connection_file) {
  AlgebroidFile f = load_algebroid_file(file);
  Connection conn = load_connection_file(connection_file, f.connection_base);
  Outcome out;
  out.doc["command"] = "connection";
  out.reports.push_back(validate_axioms(f.connection_base));

  auto omega = connection_forms(conn);
  VectorValuedForm t = torsion(conn);
  auto r = curvature(conn);
  std::size_t p = conn.rank();
  json jomega = json::array(), jtorsion = json::array(), jcurv = json::array();
  for (std::size_t a = 0; a < p; ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < p; ++b) row.push_back(omega[a][b].str());
    jomega.push_back(std::move(row));
    jtorsion.push_back(t.components[a].str());
    json crow = json::array();
    for (std::size_t b = 0; b < p; ++b) crow.push_back(r[a][b].str());
    jcurv.push_back(std::move(crow));
  }
  out.doc["connection_forms"] = std::move(jomega);
  out.doc["torsion_forms"] = std::move(jtorsion);
  out.doc["curvature_forms"] = std::move(jcurv);

  out.reports.push_back(verify_cartan_identities(conn));
  out.reports.push_back(verify_bianchi_identities(conn));
  out.doc["verdict"] = all_pass(out) ? "pass" : "fail";
  out.exit_code = all_pass(out) ? kExitPass : kExitViolation;
  return out;
}

json involutivity_json(const IDS& ids, const InvolutivityResult& res) {
  json j;
  j["involutive"] = res.involutive;
  if (res.involutive) {
    json certs = json::array();
    for (const auto& c : res.certificates) {
      json coeffs = json::array();
      for (const auto& e : c.coefficients) coeffs.push_back(e.str());
      certs.push_back(json{{"a", c.a + 1}, {"b", c.b + 1}, {"coefficients", std::move(coeffs)}});
    }
    j["bracket_coefficients"] = std::move(certs);
  } else {
    const auto& ce = *res.counterexample;
    j["counterexample"] = json{{"a", ce.a + 1},
                               {"b", ce.b + 1},
                               {"theta_index", ids.rank() + ce.theta_index + 1},
                               {"residual", ce.residual.str()}};
  }
  return j;
}

Outcome run_frobenius(const std::string& file, const std::string& ids_file) {
  AlgebroidFile f = load_algebroid_file(file);
  IDS ids = load_ids_file(ids_file, f.connection_base);
  InvolutivityResult inv = is_involutive(ids);
  FrobeniusCertificate cert = frobenius_certificate(ids);
  bool eds = eds_closure_check(ids);
  if (inv.involutive != cert.involutive || inv.involutive != eds) {
    throw std::logic_error("Frobenius-type and Cartan-type verdicts disagree");
  }
  Outcome out;
  out.doc["command"] = "frobenius";
  out.doc["verdict"] = inv.involutive ? "involutive" : "not-involutive";
  out.doc["cartan_type_verdict"] = eds ? "differentially-closed" : "not-differentially-closed";
  out.doc["involutivity"] = involutivity_json(ids, inv);
  std::size_t p = ids.algebra->rank();
  std::size_t r = ids.rank();
  if (cert.involutive) {
    json theta = json::array(), omega = json::array();
    for (std::size_t al = r; al < p; ++al) theta.push_back(cert.theta[al].str());
    for (std::size_t al = r; al < p; ++al) {
      json row = json::array();
      for (std::size_t ga = r; ga < p; ++ga) row.push_back(cert.omega[al - r][ga - r].str());
      omega.push_back(std::move(row));
    }
    out.doc["annihilator_coframe"] = std::move(theta);
    out.doc["certificate_omega"] = std::move(omega);
  } else {
    out.doc["witness"] = json{{"alpha", cert.witness->alpha + 1},
                              {"b", cert.witness->b + 1},
                              {"c", cert.witness->c + 1},
                              {"A_coefficient", cert.witness->a_coefficient.str()}};
  }
  return out;
}

Outcome run_eds(const std::string& file, const std::string& ids_file) {
  AlgebroidFile f = load_algebroid_file(file);
  IDS ids = load_ids_file(ids_file, f.connection_base);
  bool eds = eds_closure_check(ids);
  InvolutivityResult inv = is_involutive(ids);
  if (inv.involutive != eds) {
    throw std::logic_error("Cartan-type and Frobenius-type verdicts disagree");
  }
  Outcome out;
  out.doc["command"] = "eds";
  out.doc["verdict"] = eds ? "differentially-closed" : "not-differentially-closed";
  out.doc["involutive_cross_verdict"] = inv.involutive;
  json theta = json::array();
  for (const Form& th : annihilator(ids).coframes) theta.push_back(th.str());
  out.doc["annihilator"] = std::move(theta);
  return out;
}

Outcome run_symplectic(const std::string& file, const std::string& literal) {
  AlgebroidFile f = load_algebroid_file(file);
  Form w = parse_form_literal(literal, f.algebra);
  if (w.degree() != 2) throw DomainError("symplectic check requires a degree-2 form literal");
  Outcome out;
  out.doc["command"] = "symplectic";
  out.doc["closed"] = is_closed(w);
  out.doc["verdict"] = is_symplectic(w) ? "symplectic" : "not-symplectic";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact exterior calculus on (generalized) Lie algebroids"};
  app.require_subcommand(1);

  Options opts;
  app.add_flag("--json", opts.json_output, "emit a JSON report on stdout");

  std::string algebroid_file, ids_file, connection_file;
  std::string literal1, literal2, section_literal;

  auto add_common = [&](CLI::App* cmd, bool with_oracle) {
    cmd->add_flag("--json", opts.json_output, "emit a JSON report on stdout");
    if (with_oracle) {
      cmd->add_flag("--oracle", opts.oracle,
                    "re-run through the definitional path and require agreement");
    }
  };

  auto* c_validate =
      app.add_subcommand("validate", "check the algebroid axioms and the structure equations");
  c_validate->add_option("algebroid", algebroid_file, "algebroid declaration file")->required();
  add_common(c_validate, false);

  auto* c_d = app.add_subcommand("d", "exterior differential of a form literal");
  c_d->add_option("algebroid", algebroid_file)->required();
  c_d->add_option("form", literal1, "form literal")->required();
  add_common(c_d, true);

  auto* c_wedge = app.add_subcommand("wedge", "exterior product of two form literals");
  c_wedge->add_option("algebroid", algebroid_file)->required();
  c_wedge->add_option("form1", literal1)->required();
  c_wedge->add_option("form2", literal2)->required();
  add_common(c_wedge, true);

  auto* c_lie = app.add_subcommand("lie", "Lie derivative of a form along a section");
  c_lie->add_option("algebroid", algebroid_file)->required();
  c_lie->add_option("section", section_literal, "comma-separated section components")->required();
  c_lie->add_option("form", literal1)->required();
  add_common(c_lie, true);

  auto* c_interior = app.add_subcommand("interior", "interior product of a form with a section");
  c_interior->add_option("algebroid", algebroid_file)->required();
  c_interior->add_option("section", section_literal)->required();
  c_interior->add_option("form", literal1)->required();
  add_common(c_interior, true);

  auto* c_pull = app.add_subcommand("pullback-algebroid",
                                    "print the pull-back Lie algebroid as a declaration");
  c_pull->add_option("algebroid", algebroid_file)->required();
  add_common(c_pull, false);

  auto* c_ident = app.add_subcommand("identities",
                                     "randomized exact identity checks (plus Cartan/Bianchi "
                                     "when a connection is given)");
  c_ident->add_option("algebroid", algebroid_file)->required();
  std::string ident_connection;
  auto* ident_conn_opt =
      c_ident->add_option("connection", ident_connection, "connection declaration file");
  c_ident->add_option("--seed", opts.seed, "random seed");
  c_ident->add_option("--trials", opts.trials, "number of randomized trials");
  c_ident->add_option("--max-degree", opts.max_degree, "degree bound for random coefficients");
  add_common(c_ident, false);

  auto* c_conn = app.add_subcommand("connection",
                                    "connection/torsion/curvature forms and the Cartan and "
                                    "Bianchi identities");
  c_conn->add_option("algebroid", algebroid_file)->required();
  c_conn->add_option("connection", connection_file)->required();
  add_common(c_conn, false);

  auto* c_frob = app.add_subcommand("frobenius", "involutivity with a Frobenius-type certificate");
  c_frob->add_option("algebroid", algebroid_file)->required();
  c_frob->add_option("ids", ids_file, "IDS declaration file")->required();
  add_common(c_frob, false);

  auto* c_eds = app.add_subcommand("eds", "differential closure of the annihilator ideal");
  c_eds->add_option("algebroid", algebroid_file)->required();
  c_eds->add_option("ids", ids_file)->required();
  add_common(c_eds, false);

  auto* c_symp = app.add_subcommand("symplectic", "nondegenerate-closed check for a 2-form");
  c_symp->add_option("algebroid", algebroid_file)->required();
  c_symp->add_option("form", literal1)->required();
  add_common(c_symp, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitInputError;
  }

  auto started = std::chrono::steady_clock::now();
  try {
    Outcome out;
    if (*c_validate) {
      out = run_validate(algebroid_file);
    } else if (*c_d) {
      out = run_d(algebroid_file, literal1, opts);
    } else if (*c_wedge) {
      out = run_wedge(algebroid_file, literal1, literal2, opts);
    } else if (*c_lie) {
      out = run_lie(algebroid_file, section_literal, literal1, opts);
    } else if (*c_interior) {
      out = run_interior(algebroid_file, section_literal, literal1, opts);
    } else if (*c_pull) {
      out = run_pullback_algebroid(algebroid_file);
    } else if (*c_ident) {
      out = run_identities(algebroid_file,
                           ident_conn_opt->count() ? std::optional<std::string>(ident_connection)
                                                   : std::nullopt,
                           opts);
    } else if (*c_conn) {
      out = run_connection(algebroid_file, connection_file);
    } else if (*c_frob) {
      out = run_frobenius(algebroid_file, ids_file);
    } else if (*c_eds) {
      out = run_eds(algebroid_file, ids_file);
    } else if (*c_symp) {
      out = run_symplectic(algebroid_file, literal1);
    }
    emit(out, opts, started);
    return out.exit_code;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "internal cross-check failure: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  }
}
