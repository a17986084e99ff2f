#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "gfb/frames.hpp"
#include "gfb/laurent.hpp"
#include "gfb/modulation.hpp"
#include "gfb/polyphase.hpp"

namespace gfb::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kBankSchema = "gfb.bank/v1";
inline constexpr const char* kSignalSchema = "gfb.signal/v1";
inline constexpr const char* kReportSchema = "gfb.report/v1";
inline constexpr const char* kApplySchema = "gfb.apply/v1";

json parse_text(const std::string& text);   // SchemaError on malformed JSON
json load_file(const std::string& path);    // InvalidArgument on I/O failure
void write_file(const std::string& path, const json& j);
std::string dump(const json& j);            // canonical 2-space indent + newline

json complex_to_json(Complex c);            // [re, im]
Complex complex_from_json(const json& j);
json coords_to_json(const Coords& n);
Coords coords_from_json(const json& j, int dim);

json group_to_json(const Group& g);
Group group_from_json(const json& j);

// {"support": [[...]...], "values": [[re,im]...]}, canonical support order
json signal_to_json(const Signal& x);
Signal signal_from_json(const json& j, const Group& g);
json signal_document(const Signal& x);      // adds $schema and group
Signal signal_from_document(const json& j);

json lattice_to_json(const Lattice& m);     // construction recipe, not tables
Lattice lattice_from_json(const json& j, const Group& g, Transversal conv);

Transversal transversal_from_json(const json& doc);  // "transversal" field, default lex
json bank_to_json(const FilterBank& bank);
FilterBank bank_from_json(const json& j,
                          std::optional<Transversal> conv_override = std::nullopt);

// terms as [[exponents], [re, im]], deterministic exponent order
json laurent_to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const json& j, int dim);
json laurent_matrix_to_json(const LaurentMatrix& m);

json dual_point_to_json(const DualPoint& p);
json frame_report_to_json(const FrameReport& r);
json dual_report_to_json(const DualReport& r);

}  // namespace gfb::io
