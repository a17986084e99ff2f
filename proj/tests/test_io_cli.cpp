#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "gfb/io.hpp"
#include "testutil.hpp"

using namespace gfb;
namespace fs = std::filesystem;
using gfb::io::json;
using doctest::Approx;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "gfb-cli-tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_doc(const std::string& name, const json& j) {
  const fs::path p = scratch() / name;
  io::write_file(p.string(), j);
  return p.string();
}

std::string write_text(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  FILE* f = std::fopen(p.string().c_str(), "w");
  REQUIRE(f);
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
  return p.string();
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(GFB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = std::move(out);
  return r;
}

bool same_filters(const std::vector<Signal>& a, const std::vector<Signal>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (distance(a[i], b[i]) > 1e-15) return false;
  return true;
}

}  // namespace

TEST_CASE("scalar and group serialization") {
  CHECK(io::dump(io::complex_to_json(Complex(1.5, -2))) == "[\n  1.5,\n  -2.0\n]\n");
  CHECK(io::complex_from_json(json::array({0.25, 3})) == Complex(0.25, 3));
  CHECK_THROWS_AS(io::complex_from_json(json::array({1})), SchemaError);

  const Group g = Group::finite({4, 6});
  CHECK(io::group_from_json(io::group_to_json(g)) == g);
  const Group z = Group::integers(3);
  CHECK(io::group_from_json(io::group_to_json(z)) == z);

  CHECK_THROWS_AS(io::group_from_json(json{{"kind", "ring"}}), SchemaError);
  CHECK_THROWS_AS(io::group_from_json(json{{"kind", "finite"}, {"orders", json::array()}}),
                  SchemaError);
  CHECK_THROWS_AS(io::group_from_json(json{{"kind", "finite"},
                                           {"orders", json::array({4, 0})}}),
                  SchemaError);
  CHECK_THROWS_AS(io::group_from_json(json{{"kind", "integer"}, {"rank", 0}}), SchemaError);
  CHECK_THROWS_AS(io::group_from_json(json{{"kind", "integer"}, {"rank", 17}}), SchemaError);
  CHECK_THROWS_AS(io::parse_text("{not json"), SchemaError);
}

TEST_CASE("signal serialization") {
  std::mt19937 rng(139);
  const Group g = Group::finite({4, 4});
  const Signal x = gfbtest::random_dense_signal(g, rng);
  CHECK(distance(io::signal_from_json(io::signal_to_json(x), g), x) == 0.0);
  CHECK(distance(io::signal_from_document(io::signal_document(x)), x) == 0.0);

  const Signal zi = gfbtest::random_sparse_signal(Group::integers(2), rng, 6, 9);
  CHECK(distance(io::signal_from_document(io::signal_document(zi)), zi) == 0.0);

  json bad = io::signal_to_json(x);
  bad["support"][0] = json::array({4, 0});  // out of range on Z_4 x Z_4
  CHECK_THROWS_AS(io::signal_from_json(bad, g), SchemaError);

  json dup = io::signal_to_json(Signal::delta(g, {1, 1}));
  dup["support"].push_back(dup["support"][0]);
  dup["values"].push_back(dup["values"][0]);
  CHECK_THROWS_AS(io::signal_from_json(dup, g), SchemaError);

  json mismatched = io::signal_to_json(x);
  mismatched["values"].erase(0);
  CHECK_THROWS_AS(io::signal_from_json(mismatched, g), SchemaError);
}

TEST_CASE("lattice serialization") {
  const Lattice gen = Lattice::from_generators(Group::finite({6, 4}), {{2, 0}, {0, 2}});
  const Lattice gen2 =
      io::lattice_from_json(io::lattice_to_json(gen), gen.group(), Transversal::Lex);
  CHECK(gen2.index() == gen.index());
  CHECK(gen2.transversal() == gen.transversal());

  const Lattice mat = Lattice::from_matrix({{1, 1}, {-1, 1}});
  const Lattice mat2 =
      io::lattice_from_json(io::lattice_to_json(mat), Group::integers(2), Transversal::Lex);
  CHECK(mat2.matrix() == mat.matrix());
  CHECK(mat2.transversal() == mat.transversal());

  const Lattice q = Lattice::quincunx(2, 2);
  const Lattice q2 = io::lattice_from_json(io::lattice_to_json(q), q.group(), Transversal::Lex);
  CHECK(q2.members() == q.members());

  CHECK_THROWS_AS(io::lattice_from_json(io::lattice_to_json(q), Group::finite({4, 6}),
                                        Transversal::Lex),
                  SchemaError);
  CHECK_THROWS_AS(io::lattice_from_json(io::lattice_to_json(mat), Group::finite({4}),
                                        Transversal::Lex),
                  SchemaError);
  CHECK_THROWS_AS(io::lattice_from_json(io::lattice_to_json(gen), Group::integers(2),
                                        Transversal::Lex),
                  SchemaError);
}

TEST_CASE("bank documents round trip and stay byte stable") {
  for (const auto& [name, bank] : gfbtest::fixture_banks()) {
    INFO(name);
    const json doc = io::bank_to_json(bank);
    const FilterBank back = io::bank_from_json(doc);
    CHECK(back.lattice().index() == bank.lattice().index());
    CHECK(back.lattice().transversal() == bank.lattice().transversal());
    CHECK(same_filters(back.analysis(), bank.analysis()));
    CHECK(same_filters(back.synthesis(), bank.synthesis()));
    CHECK(io::dump(io::bank_to_json(back)) == io::dump(doc));
  }
  const json idoc = io::bank_to_json(gfbtest::haar_integer_2d());
  const FilterBank iback = io::bank_from_json(idoc);
  CHECK(same_filters(iback.analysis(), gfbtest::haar_integer_2d().analysis()));
  CHECK(io::dump(io::bank_to_json(iback)) == io::dump(idoc));
}

TEST_CASE("transversal convention flows through documents") {
  json doc = io::bank_to_json(gfbtest::haar_z4());
  doc["transversal"] = "negative";
  const FilterBank neg = io::bank_from_json(doc);
  CHECK(neg.lattice().convention() == Transversal::Negative);
  CHECK(neg.lattice().transversal() == std::vector<Coords>{{0}, {3}});

  const FilterBank forced = io::bank_from_json(doc, Transversal::Lex);
  CHECK(forced.lattice().transversal() == std::vector<Coords>{{0}, {1}});

  doc["transversal"] = "sorted";
  CHECK_THROWS_AS(io::bank_from_json(doc), SchemaError);

  doc["transversal"] = "lex";
  doc["$schema"] = "gfb.bank/v0";
  CHECK_THROWS_AS(io::bank_from_json(doc), SchemaError);
  doc.erase("$schema");  // tag optional on input
  CHECK(io::bank_from_json(doc).channels() == 2);
}

TEST_CASE("laurent serialization") {
  LaurentPoly p(2);
  p.add_term({1, -2}, Complex(0.5, 1));
  p.add_term({0, 0}, Complex(-1, 0));
  const LaurentPoly q = io::laurent_from_json(io::laurent_to_json(p), 2);
  CHECK((p - q).max_abs_coeff() == 0.0);

  const PolyphaseMatrix em = analysis_matrix(gfbtest::haar_integer_1d());
  const json mj = io::laurent_matrix_to_json(em.laurent());
  CHECK(mj["rows"] == 2);
  CHECK(mj["cols"] == 2);
  CHECK(mj["dim"] == 1);
  const LaurentPoly e00 = io::laurent_from_json(mj["entries"][0][0], 1);
  CHECK((e00 - em.laurent().at(0, 0)).max_abs_coeff() == 0.0);
}

TEST_CASE("report serialization carries the right fields") {
  const json fr = io::frame_report_to_json(frame_bounds(gfbtest::haar_z4()));
  CHECK(fr["is_tight"] == true);
  CHECK(fr["method"] == "exact-enumeration");
  CHECK(fr.contains("min_abs_det"));  // K == L
  CHECK(fr.contains("argmin"));
  CHECK(fr["argmin"].is_array());

  const json k3 = io::frame_report_to_json(frame_bounds(gfbtest::k3_z4()));
  CHECK(!k3.contains("min_abs_det"));  // K != L
  CHECK(k3["lower"].get<double>() == Approx(1.0));
  CHECK(k3["upper"].get<double>() == Approx(2.0));

  const json ir = io::frame_report_to_json(frame_bounds(gfbtest::haar_integer_1d()));
  CHECK(ir["method"] == "torus-grid(64)");
  const json dr = io::dual_report_to_json(check_dual_frames(gfbtest::haar_z4()));
  CHECK(dr["holds"] == true);
}

TEST_CASE("cli verify-pr") {
  const std::string haar = write_doc("haar.json", io::bank_to_json(gfbtest::haar_z4()));
  const CliResult ok = run_cli("verify-pr '" + haar + "'");
  CHECK(ok.code == 0);
  const json rep = io::parse_text(ok.out);
  CHECK(rep["$schema"] == "gfb.report/v1");
  CHECK(rep["command"] == "verify-pr");
  CHECK(rep["perfect_reconstruction"]["holds"] == true);
  CHECK(rep["perfect_reconstruction"]["method"] == "exact-enumeration");

  // flipped sign on one synthesis filter: must fail with a counterexample
  const FilterBank base = gfbtest::haar_z4();
  std::vector<Signal> bad = base.synthesis();
  bad[1] = Complex(-1, 0) * bad[1];
  const std::string broken =
      write_doc("broken.json", io::bank_to_json(FilterBank(base.lattice(), base.analysis(), bad)));
  const CliResult fail = run_cli("verify-pr '" + broken + "'");
  CHECK(fail.code == 1);
  const json frep = io::parse_text(fail.out);
  CHECK(frep["perfect_reconstruction"]["holds"] == false);
  CHECK(frep["perfect_reconstruction"]["residual"].get<double>() > 0.5);
  CHECK(frep["perfect_reconstruction"]["counterexample"]["error_ratio"].get<double>() > 0.1);

  const std::string junk = write_text("junk.json", "{this is not json");
  CHECK(run_cli("verify-pr '" + junk + "'").code == 2);

  const std::string analysis_only = write_doc(
      "analysis_only.json",
      io::bank_to_json(FilterBank(gfbtest::z4_lat(), gfbtest::haar_z4().analysis())));
  CHECK(run_cli("verify-pr '" + analysis_only + "'").code == 2);

  CHECK(run_cli("verify-pr '" + std::string(scratch() / "missing.json") + "'").code == 2);

  // integer backend: exact laurent identity
  const std::string ihaar =
      write_doc("ihaar.json", io::bank_to_json(gfbtest::haar_integer_1d()));
  const CliResult iok = run_cli("verify-pr '" + ihaar + "'");
  CHECK(iok.code == 0);
  CHECK(io::parse_text(iok.out)["perfect_reconstruction"]["method"] == "laurent-identity");
}

TEST_CASE("cli analyze") {
  const std::string k3 = write_doc("k3.json", io::bank_to_json(gfbtest::k3_z4()));
  const CliResult r = run_cli("analyze '" + k3 + "'");
  CHECK(r.code == 0);
  const json rep = io::parse_text(r.out);
  CHECK(rep["bank"]["channels"] == 3);
  CHECK(rep["bank"]["index"] == 2);
  CHECK(rep["frame"]["lower"].get<double>() == Approx(1.0).epsilon(1e-10));
  CHECK(rep["frame"]["upper"].get<double>() == Approx(2.0).epsilon(1e-10));
  CHECK(rep["frame"]["is_tight"] == false);
  CHECK(!rep.contains("perfect_reconstruction"));  // analysis-only bank
  CHECK(rep["modulation"]["w_orthogonality_residual"].get<double>() < 1e-12);
  CHECK(rep["modulation"]["alias_identity_residual"].get<double>() < 1e-10);
  CHECK(rep["modulation"]["factorization_residual"].get<double>() < 1e-10);

  const std::string lazy = write_doc("lazy.json", io::bank_to_json(gfbtest::lazy_z4()));
  const json lrep = io::parse_text(run_cli("analyze '" + lazy + "'").out);
  CHECK(lrep["frame"]["is_tight"] == true);
  CHECK(lrep["frame"]["lower"].get<double>() == Approx(1.0));
  CHECK(lrep["frame"]["upper"].get<double>() == Approx(1.0));
  CHECK(lrep["perfect_reconstruction"]["holds"] == true);
  CHECK(lrep["dual_frames"]["holds"] == true);

  // the verdict "not a frame" is still a successful analysis
  const std::string thin = write_doc(
      "thin.json",
      io::bank_to_json(FilterBank(gfbtest::z4_lat(), {Signal::delta(Group::finite({4}), {0})})));
  const CliResult tr = run_cli("analyze '" + thin + "'");
  CHECK(tr.code == 0);
  CHECK(io::parse_text(tr.out)["frame"]["is_frame"] == false);

  const std::string ihaar =
      write_doc("ihaar2.json", io::bank_to_json(gfbtest::haar_integer_1d()));
  const json irep = io::parse_text(run_cli("analyze '" + ihaar + "'").out);
  CHECK(irep["bank"]["backend"] == "integer");
  CHECK(irep["frame"]["method"] == "torus-grid(64)");
  CHECK(irep["perfect_reconstruction"]["method"] == "laurent-identity");
  CHECK(irep["polyphase"]["analysis"]["rows"] == 2);
  CHECK(!irep.contains("modulation"));
  const json irep16 = io::parse_text(run_cli("analyze --grid 16 '" + ihaar + "'").out);
  CHECK(irep16["frame"]["method"] == "torus-grid(16)");

  // byte-stable output for a fixed document and tool version
  CHECK(run_cli("analyze '" + k3 + "'").out == r.out);
}

TEST_CASE("cli dual") {
  const std::string haar = write_doc(
      "haar_analysis.json",
      io::bank_to_json(FilterBank(gfbtest::z4_lat(), gfbtest::haar_z4().analysis())));
  const CliResult r = run_cli("dual '" + haar + "'");
  CHECK(r.code == 0);
  const FilterBank dual = io::bank_from_json(io::parse_text(r.out));
  REQUIRE(dual.has_synthesis());
  for (std::size_t k = 0; k < 2; ++k)
    CHECK(distance(dual.synthesis()[k], involution(gfbtest::haar_z4().analysis()[k])) < 1e-12);
  CHECK(check_perfect_reconstruction(dual));

  const Group g = Group::finite({4});
  const std::string thin = write_doc(
      "rank_deficient.json",
      io::bank_to_json(FilterBank(gfbtest::z4_lat(), {Signal::delta(g, {0}), Signal::delta(g, {0})})));
  CHECK(run_cli("dual '" + thin + "'").code == 1);

  // integer bank whose canonical dual is not FIR
  const Group z = Group::integers(1);
  const std::string iir = write_doc(
      "iir_dual.json",
      io::bank_to_json(FilterBank(Lattice::from_matrix({{1}}),
                                  {gfbtest::scaled_sum(z, {{{0}, 1.0}, {{-1}, 0.5}})})));
  CHECK(run_cli("dual '" + iir + "'").code == 1);
}

TEST_CASE("cli apply") {
  std::mt19937 rng(149);
  const FilterBank lazy = gfbtest::lazy_z4();
  const Signal x = gfbtest::random_dense_signal(lazy.group(), rng);
  const std::string bank = write_doc("lazy_apply.json", io::bank_to_json(lazy));
  const std::string sig = write_doc("input.json", io::signal_document(x));

  const CliResult r = run_cli("apply '" + bank + "' '" + sig + "'");
  CHECK(r.code == 0);
  const json rep = io::parse_text(r.out);
  CHECK(rep["$schema"] == "gfb.apply/v1");
  CHECK(rep["subbands"].size() == 2);
  const Signal y = io::signal_from_json(rep["output"], lazy.group());
  CHECK(distance(y, x) < 1e-10 * x.norm2());

  // subbands must match the library route
  const BankOutput direct = apply_filter_bank(x, lazy);
  for (std::size_t k = 0; k < 2; ++k)
    CHECK(distance(io::signal_from_json(rep["subbands"][k], lazy.group()),
                   direct.subbands[k]) < 1e-12);

  const Signal wrong = Signal::delta(Group::finite({8}), {0});
  const std::string bad_sig = write_doc("wrong_group.json", io::signal_document(wrong));
  CHECK(run_cli("apply '" + bank + "' '" + bad_sig + "'").code == 2);
}

TEST_CASE("cli flags and exit codes") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("verify-pr").code == 2);  // missing required argument

  const std::string haar = write_doc("haar_flags.json", io::bank_to_json(gfbtest::haar_z4()));
  const fs::path outp = scratch() / "report_out.json";
  std::error_code ec;
  fs::remove(outp, ec);
  const CliResult r = run_cli("verify-pr --out '" + outp.string() + "' '" + haar + "'");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(io::load_file(outp.string())["perfect_reconstruction"]["holds"] == true);

  // negative convention must not change the PR verdict
  CHECK(run_cli("verify-pr --transversal negative '" + haar + "'").code == 0);
  CHECK(run_cli("verify-pr --transversal sorted '" + haar + "'").code == 2);

  // loose tolerance turns the broken bank's failure into a pass
  const FilterBank base = gfbtest::haar_z4();
  std::vector<Signal> bad = base.synthesis();
  bad[1] = Complex(-1, 0) * bad[1];
  const std::string broken = write_doc(
      "broken_tol.json", io::bank_to_json(FilterBank(base.lattice(), base.analysis(), bad)));
  CHECK(run_cli("verify-pr '" + broken + "'").code == 1);
  CHECK(run_cli("verify-pr --tol 10 '" + broken + "'").code == 0);
}
