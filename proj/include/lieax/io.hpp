#ifndef LIEAX_IO_HPP
#define LIEAX_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "lieax/connection.hpp"
#include "lieax/integrability.hpp"
#include "lieax/report.hpp"

namespace lieax {

/// A loaded algebroid declaration. Ordinary files describe a Lie algebroid
/// directly; generalized files additionally carry the base maps and rho, and
/// are reduced through the effective anchor. `algebra` is the frame algebra
/// over the declared base; `connection_base` is where connections and
/// interior differential systems live (the pull-back algebroid for
/// generalized declarations, `algebra` itself otherwise).
struct AlgebroidFile {
  std::optional<GeneralizedAlgebroidSpec> generalized;
  AlgebraPtr algebra;
  AlgebraPtr connection_base;
};

AlgebroidFile parse_algebroid_json(const nlohmann::json& j);
AlgebroidFile load_algebroid_file(const std::string& path);

Connection parse_connection_json(const nlohmann::json& j, AlgebraPtr algebra);
Connection load_connection_file(const std::string& path, AlgebraPtr algebra);

IDS parse_ids_json(const nlohmann::json& j, AlgebraPtr algebra);
IDS load_ids_file(const std::string& path, AlgebraPtr algebra);

nlohmann::json algebra_to_json(const FrameAlgebra& algebra);

/// Form literal: '+'/'-'-joined terms "<expr> * e^{i1,i2,...}" with strictly
/// increasing 1-based indices (separators are only recognized after a
/// closing '}'); a bare expression denotes a degree-0 form.
Form parse_form_literal(std::string_view text, const AlgebraPtr& algebra);

/// Section literal: comma-separated component expressions, one per frame.
Section parse_section_literal(std::string_view text, const AlgebraPtr& algebra);

void render_report_text(const CheckReport& report, std::ostream& out);
nlohmann::json report_to_json(const CheckReport& report);

}  // namespace lieax

#endif
