#include "lieax/io.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace lieax {

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& j, const std::set<std::string>& allowed,
                           const std::string& what) {
  if (!j.is_object()) throw DomainError(what + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) throw DomainError(what + ": unknown field '" + key + "'");
  }
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw DomainError(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw DomainError(what + " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

ExprMatrix expr_matrix(const json& j, const CoordsPtr& coords, std::size_t rows, std::size_t cols,
                       const std::string& what) {
  if (!j.is_array() || j.size() != rows) {
    throw DomainError(what + " must be a " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " array of expression strings");
  }
  ExprMatrix m(coords, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != cols) {
      throw DomainError(what + " row " + std::to_string(i + 1) + " must have " +
                        std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_string()) throw DomainError(what + " entries must be expression strings");
      m.at(i, c) = parse_expr(row[c].get<std::string>(), coords);
    }
  }
  return m;
}

std::vector<ScalarExpr> expr_list(const json& j, const CoordsPtr& coords, std::size_t n,
                                  const std::string& what) {
  if (!j.is_array() || j.size() != n) {
    throw DomainError(what + " must be an array of " + std::to_string(n) + " expression strings");
  }
  std::vector<ScalarExpr> out;
  out.reserve(n);
  for (const auto& item : j) {
    if (!item.is_string()) throw DomainError(what + " entries must be expression strings");
    out.push_back(parse_expr(item.get<std::string>(), coords));
  }
  return out;
}

std::size_t index_1based(const json& j, std::size_t limit, const std::string& what) {
  if (!j.is_number_unsigned() && !j.is_number_integer()) {
    throw DomainError(what + " must be a positive integer");
  }
  long long v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > limit) {
    throw DomainError(what + " out of range 1.." + std::to_string(limit));
  }
  return static_cast<std::size_t>(v - 1);
}

std::map<std::array<std::size_t, 3>, ScalarExpr> structure_table(const json& j,
                                                                 const CoordsPtr& coords,
                                                                 std::size_t rank) {
  if (!j.is_array()) throw DomainError("structure must be an array of records");
  std::map<std::array<std::size_t, 3>, ScalarExpr> table;
  for (const auto& rec : j) {
    reject_unknown_fields(rec, {"gamma", "alpha", "beta", "expr"}, "structure record");
    for (const char* field : {"gamma", "alpha", "beta", "expr"}) {
      if (!rec.contains(field)) throw DomainError(std::string("structure record missing '") + field + "'");
    }
    std::size_t gamma = index_1based(rec["gamma"], rank, "structure gamma");
    std::size_t alpha = index_1based(rec["alpha"], rank, "structure alpha");
    std::size_t beta = index_1based(rec["beta"], rank, "structure beta");
    if (alpha >= beta) throw DomainError("structure records require alpha < beta");
    if (!rec["expr"].is_string()) throw DomainError("structure expr must be a string");
    auto key = std::array<std::size_t, 3>{gamma, alpha, beta};
    if (table.count(key)) throw DomainError("duplicate structure record");
    table.emplace(key, parse_expr(rec["expr"].get<std::string>(), coords));
  }
  return table;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DomainError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void require_fields(const json& j, const std::vector<std::string>& fields, const std::string& what) {
  for (const auto& f : fields) {
    if (!j.contains(f)) throw DomainError(what + ": missing field '" + f + "'");
  }
}

}  // namespace

AlgebroidFile parse_algebroid_json(const json& j) {
  bool generalized = j.is_object() && j.contains("M_coords");
  if (!generalized) {
    reject_unknown_fields(j, {"base_coords", "rank", "frame", "anchor", "structure"},
                          "algebroid declaration");
    require_fields(j, {"base_coords", "rank", "frame", "anchor", "structure"},
                   "algebroid declaration");
    CoordsPtr coords = make_coords(string_list(j["base_coords"], "base_coords"));
    std::vector<std::string> frame = string_list(j["frame"], "frame");
    if (!j["rank"].is_number_unsigned() || j["rank"].get<std::size_t>() != frame.size()) {
      throw DomainError("rank must equal the number of frame names");
    }
    ExprMatrix anchor =
        expr_matrix(j["anchor"], coords, coords->dimension(), frame.size(), "anchor");
    auto structure = structure_table(j["structure"], coords, frame.size());
    auto algebra = std::make_shared<const FrameAlgebra>(coords, std::move(frame),
                                                        std::move(anchor), std::move(structure));
    return AlgebroidFile{std::nullopt, algebra, algebra};
  }

  reject_unknown_fields(j,
                        {"base_coords", "rank", "frame", "structure", "M_coords", "h", "eta",
                         "h_eta_inverse", "rho"},
                        "generalized algebroid declaration");
  require_fields(j, {"base_coords", "rank", "frame", "structure", "M_coords", "h", "eta", "rho"},
                 "generalized algebroid declaration");
  GeneralizedAlgebroidSpec spec{
      make_coords(string_list(j["M_coords"], "M_coords")),
      make_coords(string_list(j["base_coords"], "base_coords")),
      string_list(j["frame"], "frame"),
      ExprMatrix(make_coords({}), 0, 0),
      {},
      {},
      {},
      std::nullopt};
  if (!j["rank"].is_number_unsigned() || j["rank"].get<std::size_t>() != spec.frame_names.size()) {
    throw DomainError("rank must equal the number of frame names");
  }
  spec.rho = expr_matrix(j["rho"], spec.n_coords, spec.m_coords->dimension(),
                         spec.frame_names.size(), "rho");
  spec.structure = structure_table(j["structure"], spec.n_coords, spec.frame_names.size());
  spec.h = expr_list(j["h"], spec.m_coords, spec.n_coords->dimension(), "h");
  spec.eta = expr_list(j["eta"], spec.n_coords, spec.m_coords->dimension(), "eta");
  if (j.contains("h_eta_inverse")) {
    spec.h_eta_inverse =
        expr_list(j["h_eta_inverse"], spec.n_coords, spec.n_coords->dimension(), "h_eta_inverse");
  }
  validate_spec(spec);
  AlgebraPtr algebra = as_frame_algebra(spec);
  AlgebraPtr pullback = pullback_algebroid(spec);
  return AlgebroidFile{std::move(spec), std::move(algebra), std::move(pullback)};
}

AlgebroidFile load_algebroid_file(const std::string& path) {
  return parse_algebroid_json(load_json_file(path));
}

Connection parse_connection_json(const json& j, AlgebraPtr algebra) {
  reject_unknown_fields(j, {"gamma"}, "connection declaration");
  require_fields(j, {"gamma"}, "connection declaration");
  std::size_t p = algebra->rank();
  std::vector<ScalarExpr> flat(p * p * p, ScalarExpr::zero(algebra->coords()));
  std::set<std::array<std::size_t, 3>> seen;
  if (!j["gamma"].is_array()) throw DomainError("gamma must be an array of records");
  for (const auto& rec : j["gamma"]) {
    reject_unknown_fields(rec, {"a", "b", "c", "expr"}, "gamma record");
    require_fields(rec, {"a", "b", "c", "expr"}, "gamma record");
    std::size_t a = index_1based(rec["a"], p, "gamma a");
    std::size_t b = index_1based(rec["b"], p, "gamma b");
    std::size_t c = index_1based(rec["c"], p, "gamma c");
    if (!seen.insert({a, b, c}).second) throw DomainError("duplicate gamma record");
    if (!rec["expr"].is_string()) throw DomainError("gamma expr must be a string");
    flat[(a * p + b) * p + c] = parse_expr(rec["expr"].get<std::string>(), algebra->coords());
  }
  return Connection(std::move(algebra), std::move(flat));
}

Connection load_connection_file(const std::string& path, AlgebraPtr algebra) {
  return parse_connection_json(load_json_file(path), std::move(algebra));
}

IDS parse_ids_json(const json& j, AlgebraPtr algebra) {
  reject_unknown_fields(j, {"span", "algebroid"}, "IDS declaration");
  require_fields(j, {"span"}, "IDS declaration");
  if (j.contains("algebroid") && !j["algebroid"].is_string()) {
    throw DomainError("IDS algebroid reference must be a string");
  }
  const json& span_json = j["span"];
  if (!span_json.is_array() || span_json.empty() || !span_json[0].is_array() ||
      span_json[0].empty()) {
    throw DomainError("span must be a nonempty p x r array of expression strings");
  }
  std::size_t r = span_json[0].size();
  ExprMatrix span =
      expr_matrix(span_json, algebra->coords(), algebra->rank(), r, "span");
  return make_ids(std::move(algebra), std::move(span));
}

IDS load_ids_file(const std::string& path, AlgebraPtr algebra) {
  return parse_ids_json(load_json_file(path), std::move(algebra));
}

json algebra_to_json(const FrameAlgebra& algebra) {
  json j;
  j["base_coords"] = algebra.coords()->names();
  j["rank"] = algebra.rank();
  j["frame"] = algebra.frame_names();
  json anchor = json::array();
  for (std::size_t i = 0; i < algebra.dim(); ++i) {
    json row = json::array();
    for (std::size_t a = 0; a < algebra.rank(); ++a) row.push_back(algebra.anchor().at(i, a).str());
    anchor.push_back(std::move(row));
  }
  j["anchor"] = std::move(anchor);
  json structure = json::array();
  for (const auto& [key, expr] : algebra.structure_table()) {
    structure.push_back(json{{"gamma", key[0] + 1},
                             {"alpha", key[1] + 1},
                             {"beta", key[2] + 1},
                             {"expr", expr.str()}});
  }
  j["structure"] = std::move(structure);
  return j;
}

namespace {

// Splits a form literal at top-level '+'/'-' separators. A separator is only
// recognized after the closing '}' of a coframe marker, so coefficient
// expressions keep their own sums.
struct LiteralTerm {
  std::string text;
  bool negated;
};

std::vector<LiteralTerm> split_form_terms(std::string_view text) {
  std::vector<LiteralTerm> terms;
  int depth = 0;
  bool after_marker = false;
  bool negated = false;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '}') after_marker = true;
    if (depth == 0 && after_marker && (c == '+' || c == '-')) {
      terms.push_back({current, negated});
      current.clear();
      negated = (c == '-');
      after_marker = false;
      continue;
    }
    current += c;
  }
  terms.push_back({current, negated});
  return terms;
}

}  // namespace

Form parse_form_literal(std::string_view text, const AlgebraPtr& algebra) {
  if (text.find("e^{") == std::string_view::npos) {
    return Form::scalar(algebra, parse_expr(text, algebra->coords()));
  }
  Form result = Form::zero(algebra, 0);
  bool first = true;
  for (const auto& term : split_form_terms(text)) {
    std::size_t marker = term.text.find("e^{");
    if (marker == std::string::npos) {
      throw ParseError("form term is missing its coframe marker e^{...}", 0);
    }
    std::size_t close = term.text.find('}', marker);
    if (close == std::string::npos) throw ParseError("unterminated coframe marker", marker);
    std::string tail = term.text.substr(close + 1);
    if (tail.find_first_not_of(" \t\r\n") != std::string::npos) {
      throw ParseError("unexpected text after coframe marker", close + 1);
    }

    // indices
    Form::Key key;
    std::string indices = term.text.substr(marker + 3, close - marker - 3);
    std::stringstream ss(indices);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      std::size_t pos = piece.find_first_not_of(" \t");
      if (pos == std::string::npos) throw ParseError("empty coframe index", marker);
      std::size_t end = piece.find_last_not_of(" \t");
      std::string digits = piece.substr(pos, end - pos + 1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("coframe indices must be positive integers", marker);
      }
      unsigned long v = std::stoul(digits);
      if (v < 1 || v > algebra->rank()) {
        throw ParseError("coframe index out of range 1.." + std::to_string(algebra->rank()),
                         marker);
      }
      key.push_back(static_cast<std::size_t>(v - 1));
    }
    if (key.empty()) throw ParseError("coframe marker needs at least one index", marker);
    for (std::size_t i = 1; i < key.size(); ++i) {
      if (key[i - 1] >= key[i]) {
        throw ParseError("coframe indices must be strictly increasing", marker);
      }
    }

    // coefficient: everything before the marker, ending in '*' (or empty)
    std::string prefix = term.text.substr(0, marker);
    std::size_t last = prefix.find_last_not_of(" \t\r\n");
    ScalarExpr coeff = ScalarExpr::one(algebra->coords());
    if (last != std::string::npos) {
      if (prefix[last] != '*') {
        throw ParseError("expected '*' between the coefficient and the coframe marker", last);
      }
      coeff = parse_expr(prefix.substr(0, last), algebra->coords());
    }
    if (term.negated) coeff = -coeff;

    if (first) {
      result = Form::zero(algebra, key.size());
      first = false;
    } else if (key.size() != result.degree()) {
      throw ParseError("form terms have inconsistent degrees", marker);
    }
    result.add_component(key, coeff);
  }
  return result;
}

Section parse_section_literal(std::string_view text, const AlgebraPtr& algebra) {
  std::vector<std::string> pieces;
  int depth = 0;
  std::string current;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      pieces.push_back(current);
      current.clear();
      continue;
    }
    current += c;
  }
  pieces.push_back(current);
  if (pieces.size() != algebra->rank()) {
    throw DomainError("section literal needs exactly " + std::to_string(algebra->rank()) +
                      " comma-separated components");
  }
  std::vector<ScalarExpr> comps;
  comps.reserve(pieces.size());
  for (const auto& p : pieces) comps.push_back(parse_expr(p, algebra->coords()));
  return Section(algebra, std::move(comps));
}

void render_report_text(const CheckReport& report, std::ostream& out) {
  for (const auto& f : report.findings) {
    out << (f.pass ? "  [ok]   " : "  [FAIL] ") << f.check_id;
    if (!f.indices.empty()) {
      out << " (";
      for (std::size_t i = 0; i < f.indices.size(); ++i) {
        if (i) out << ",";
        out << f.indices[i];
      }
      out << ")";
    }
    if (!f.pass) out << "  residual: " << f.residual;
    out << "\n";
  }
}

json report_to_json(const CheckReport& report) {
  json findings = json::array();
  for (const auto& f : report.findings) {
    json item{{"check", f.check_id}, {"indices", f.indices}, {"pass", f.pass}};
    if (!f.pass) item["residual"] = f.residual;
    findings.push_back(std::move(item));
  }
  return json{{"name", report.name}, {"pass", report.pass()}, {"findings", std::move(findings)}};
}

}  // namespace lieax
