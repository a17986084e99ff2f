#include "gfb/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "gfb/version.hpp"

namespace gfb::io {
namespace {

const json& require_field(const json& j, const char* name, const char* ctx) {
  if (!j.is_object())
    throw SchemaError(std::string(ctx) + ": expected an object");
  auto it = j.find(name);
  if (it == j.end())
    throw SchemaError(std::string(ctx) + ": missing field '" + name + "'");
  return *it;
}

std::int64_t require_int(const json& j, const char* ctx) {
  if (!j.is_number_integer())
    throw SchemaError(std::string(ctx) + ": expected an integer");
  return j.get<std::int64_t>();
}

double require_number(const json& j, const char* ctx) {
  if (!j.is_number())
    throw SchemaError(std::string(ctx) + ": expected a number");
  return j.get<double>();
}

std::string require_string(const json& j, const char* ctx) {
  if (!j.is_string())
    throw SchemaError(std::string(ctx) + ": expected a string");
  return j.get<std::string>();
}

const json& require_array(const json& j, const char* ctx) {
  if (!j.is_array())
    throw SchemaError(std::string(ctx) + ": expected an array");
  return j;
}

void check_schema_tag(const json& doc, const char* expect, const char* ctx) {
  auto it = doc.find("$schema");
  if (it == doc.end()) return;  // tolerated on input, always emitted
  if (!it->is_string() || it->get<std::string>() != expect)
    throw SchemaError(std::string(ctx) + ": $schema must be '" + expect + "'");
}

}  // namespace

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError("malformed JSON document");
  return j;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write file: " + path);
  out << dump(j);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw SchemaError("complex value must be a [re, im] pair");
  return {require_number(j[0], "complex re"), require_number(j[1], "complex im")};
}

json coords_to_json(const Coords& n) {
  json a = json::array();
  for (std::int64_t c : n) a.push_back(c);
  return a;
}

Coords coords_from_json(const json& j, int dim) {
  require_array(j, "group element");
  if (static_cast<int>(j.size()) != dim)
    throw SchemaError("group element has wrong dimension: expected " +
                      std::to_string(dim));
  Coords n;
  n.reserve(j.size());
  for (const json& c : j) n.push_back(require_int(c, "group element entry"));
  return n;
}

json group_to_json(const Group& g) {
  json j;
  if (g.is_finite()) {
    j["kind"] = "finite";
    j["orders"] = coords_to_json(g.orders());
  } else {
    j["kind"] = "integer";
    j["rank"] = g.dim();
  }
  return j;
}

Group group_from_json(const json& j) {
  const std::string kind = require_string(require_field(j, "kind", "group"), "group.kind");
  if (kind == "finite") {
    const json& arr = require_array(require_field(j, "orders", "group"), "group.orders");
    std::vector<std::int64_t> orders;
    for (const json& s : arr) {
      orders.push_back(require_int(s, "group order"));
      if (orders.back() < 1) throw SchemaError("group orders must be >= 1");
    }
    if (orders.empty()) throw SchemaError("group.orders must be non-empty");
    return Group::finite(std::move(orders));
  }
  if (kind == "integer") {
    const std::int64_t rank = require_int(require_field(j, "rank", "group"), "group.rank");
    if (rank < 1 || rank > 16) throw SchemaError("group.rank must be in [1, 16]");
    return Group::integers(static_cast<int>(rank));
  }
  throw SchemaError("group.kind must be 'finite' or 'integer'");
}

namespace {

void check_in_range(const Group& g, const Coords& n, const char* ctx) {
  if (!g.is_finite()) return;
  for (int j = 0; j < g.dim(); ++j)
    if (n[static_cast<std::size_t>(j)] < 0 ||
        n[static_cast<std::size_t>(j)] >= g.orders()[static_cast<std::size_t>(j)])
      throw SchemaError(std::string(ctx) + ": coordinate out of group range");
}

}  // namespace

json signal_to_json(const Signal& x) {
  json support = json::array();
  json values = json::array();
  x.for_each([&](const Coords& n, Complex v) {
    support.push_back(coords_to_json(n));
    values.push_back(complex_to_json(v));
  });
  json j;
  j["support"] = std::move(support);
  j["values"] = std::move(values);
  return j;
}

Signal signal_from_json(const json& j, const Group& g) {
  const json& support = require_array(require_field(j, "support", "signal"), "signal.support");
  const json& values = require_array(require_field(j, "values", "signal"), "signal.values");
  if (support.size() != values.size())
    throw SchemaError("signal: support and values lengths differ");
  Signal x(g);
  std::set<Coords> seen;
  for (std::size_t i = 0; i < support.size(); ++i) {
    Coords n = coords_from_json(support[i], g.dim());
    check_in_range(g, n, "signal.support");
    if (!seen.insert(n).second)
      throw SchemaError("signal: duplicate support coordinate");
    x.accumulate(n, complex_from_json(values[i]));
  }
  return x;
}

json signal_document(const Signal& x) {
  json j;
  j["$schema"] = kSignalSchema;
  j["group"] = group_to_json(x.group());
  json body = signal_to_json(x);
  j["support"] = std::move(body["support"]);
  j["values"] = std::move(body["values"]);
  return j;
}

Signal signal_from_document(const json& j) {
  check_schema_tag(j, kSignalSchema, "signal document");
  const Group g = group_from_json(require_field(j, "group", "signal document"));
  return signal_from_json(j, g);
}

json lattice_to_json(const Lattice& m) {
  json j;
  switch (m.kind()) {
    case Lattice::Kind::Generators: {
      j["kind"] = "generators";
      json gens = json::array();
      for (const Coords& g : m.generators()) gens.push_back(coords_to_json(g));
      j["generators"] = std::move(gens);
      break;
    }
    case Lattice::Kind::Matrix: {
      j["kind"] = "matrix";
      json rows = json::array();
      for (const Coords& r : m.matrix()) rows.push_back(coords_to_json(r));
      j["matrix"] = std::move(rows);
      break;
    }
    case Lattice::Kind::Quincunx:
      j["kind"] = "quincunx";
      j["p"] = m.quincunx_p();
      j["q"] = m.quincunx_q();
      break;
  }
  return j;
}

Lattice lattice_from_json(const json& j, const Group& g, Transversal conv) {
  const std::string kind =
      require_string(require_field(j, "kind", "lattice"), "lattice.kind");
  if (kind == "generators") {
    if (!g.is_finite())
      throw SchemaError("lattice kind 'generators' needs a finite group");
    const json& arr =
        require_array(require_field(j, "generators", "lattice"), "lattice.generators");
    std::vector<Coords> gens;
    for (const json& e : arr) {
      Coords n = coords_from_json(e, g.dim());
      check_in_range(g, n, "lattice.generators");
      gens.push_back(std::move(n));
    }
    return Lattice::from_generators(g, gens, conv);
  }
  if (kind == "matrix") {
    if (g.is_finite())
      throw SchemaError("lattice kind 'matrix' needs an integer group");
    const json& rows =
        require_array(require_field(j, "matrix", "lattice"), "lattice.matrix");
    if (static_cast<int>(rows.size()) != g.dim())
      throw SchemaError("lattice.matrix must be rank x rank");
    IntMat a;
    for (const json& r : rows) a.push_back(coords_from_json(r, g.dim()));
    return Lattice::from_matrix(a, conv);
  }
  if (kind == "quincunx") {
    const std::int64_t p = require_int(require_field(j, "p", "lattice"), "lattice.p");
    const std::int64_t q = require_int(require_field(j, "q", "lattice"), "lattice.q");
    if (p < 1 || q < 1) throw SchemaError("lattice quincunx needs p, q >= 1");
    if (!g.is_finite() || g.orders() != std::vector<std::int64_t>{2 * p, 2 * q})
      throw SchemaError("lattice quincunx(p,q) needs group Z_2p x Z_2q");
    return Lattice::quincunx(p, q, conv);
  }
  throw SchemaError("lattice.kind must be 'generators', 'matrix' or 'quincunx'");
}

Transversal transversal_from_json(const json& doc) {
  auto it = doc.find("transversal");
  if (it == doc.end()) return Transversal::Lex;
  const std::string s = require_string(*it, "transversal");
  if (s == "lex") return Transversal::Lex;
  if (s == "negative") return Transversal::Negative;
  throw SchemaError("transversal must be 'lex' or 'negative'");
}

json bank_to_json(const FilterBank& bank) {
  json j;
  j["$schema"] = kBankSchema;
  j["group"] = group_to_json(bank.group());
  j["lattice"] = lattice_to_json(bank.lattice());
  j["transversal"] =
      bank.lattice().convention() == Transversal::Negative ? "negative" : "lex";
  json analysis = json::array();
  for (const Signal& h : bank.analysis()) analysis.push_back(signal_to_json(h));
  j["analysis"] = std::move(analysis);
  if (bank.has_synthesis()) {
    json synthesis = json::array();
    for (const Signal& g : bank.synthesis()) synthesis.push_back(signal_to_json(g));
    j["synthesis"] = std::move(synthesis);
  }
  return j;
}

FilterBank bank_from_json(const json& j, std::optional<Transversal> conv_override) {
  check_schema_tag(j, kBankSchema, "bank document");
  const Group g = group_from_json(require_field(j, "group", "bank"));
  const Transversal conv =
      conv_override ? *conv_override : transversal_from_json(j);
  Lattice lat = lattice_from_json(require_field(j, "lattice", "bank"), g, conv);

  const json& analysis =
      require_array(require_field(j, "analysis", "bank"), "bank.analysis");
  if (analysis.empty()) throw SchemaError("bank.analysis must be non-empty");
  std::vector<Signal> hs;
  for (const json& e : analysis) hs.push_back(signal_from_json(e, g));

  std::vector<Signal> gs;
  if (auto it = j.find("synthesis"); it != j.end()) {
    const json& synthesis = require_array(*it, "bank.synthesis");
    if (synthesis.size() != analysis.size())
      throw SchemaError("bank.synthesis must match analysis channel count");
    for (const json& e : synthesis) gs.push_back(signal_from_json(e, g));
  }
  return FilterBank(std::move(lat), std::move(hs), std::move(gs));
}

json laurent_to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back(json::array({coords_to_json(e), complex_to_json(c)}));
  return terms;
}

LaurentPoly laurent_from_json(const json& j, int dim) {
  require_array(j, "laurent terms");
  LaurentPoly p(dim);
  for (const json& t : j) {
    if (!t.is_array() || t.size() != 2)
      throw SchemaError("laurent term must be [[exponents], [re, im]]");
    p.add_term(coords_from_json(t[0], dim), complex_from_json(t[1]));
  }
  return p;
}

json laurent_matrix_to_json(const LaurentMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(laurent_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["dim"] = m.dim();
  j["entries"] = std::move(rows);
  return j;
}

json dual_point_to_json(const DualPoint& p) {
  if (p.is_finite()) return coords_to_json(p.coords());
  json a = json::array();
  for (double t : p.theta()) a.push_back(t);
  return a;
}

json frame_report_to_json(const FrameReport& r) {
  json j;
  j["channels"] = r.channels;
  j["index"] = r.index;
  j["is_bessel"] = r.is_bessel;
  j["is_frame"] = r.is_frame;
  j["is_tight"] = r.is_tight;
  j["is_riesz"] = r.is_riesz;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  if (r.argmin) j["argmin"] = dual_point_to_json(*r.argmin);
  if (r.argmax) j["argmax"] = dual_point_to_json(*r.argmax);
  j["rank_min"] = r.rank_min;
  j["tight_deviation"] = r.tight_deviation;
  if (r.channels == static_cast<std::size_t>(r.index))
    j["min_abs_det"] = r.min_abs_det;
  j["method"] = r.method;
  return j;
}

json dual_report_to_json(const DualReport& r) {
  json j;
  j["holds"] = r.holds;
  j["residual"] = r.residual;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["method"] = r.method;
  return j;
}

}  // namespace gfb::io
