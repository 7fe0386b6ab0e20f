#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "t1m/cli.hpp"
#include "t1m/scene.hpp"

using namespace t1m;

static std::string scene_text(const std::string& name) {
  std::ifstream in(std::string(T1M_SCENE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_CASE("scene parsing") {
  SceneConfig cfg = parse_scene("[surface]\ntype = de-sitter\nr = 2 # radius\n\n[run]\nsamples=32\n");
  CHECK(cfg.get("surface", "type") == "de-sitter");
  CHECK(cfg.get_num("surface", "r", 0.0) == 2.0);
  CHECK(cfg.get_num("run", "samples", 0.0) == 32.0);
  CHECK(cfg.get("missing", "key", "dflt") == "dflt");

  CHECK_THROWS_AS(parse_scene("type = orphan\n"), Error);
  CHECK_THROWS_AS(parse_scene("[surface\ntype = x\n"), Error);
  CHECK_THROWS_AS(parse_scene("[surface]\njust a line\n"), Error);
}

TEST_CASE("chart building") {
  SceneConfig ds = parse_scene("[surface]\ntype = de-sitter\nr = 1\n");
  CHECK(build_chart(ds).name == "de-sitter");

  SceneConfig custom = parse_scene(
      "[surface]\ntype = custom\ng11 = 1+u^2\ng12 = 0\ng22 = -1\ndomain = -2:2,-2:2\n");
  SurfaceChart c = build_chart(custom);
  CHECK(c.metric_at({1.0, 0.0}).g11 == Catch::Approx(2.0));
  CHECK(c.signature == ChartSignature::Lorentzian);

  SceneConfig bad = parse_scene("[surface]\ntype = nosuch\n");
  CHECK_THROWS_AS(build_chart(bad), Error);
  SceneConfig degenerate = parse_scene(
      "[surface]\ntype = custom\ng11 = 1\ng12 = 0\ng22 = 1\nsignature = lorentzian\n");
  CHECK_THROWS_AS(build_chart(degenerate), Error);
}

TEST_CASE("curve building with target speed") {
  SceneConfig cfg = parse_scene(
      "[surface]\ntype = de-sitter\nr = 1\n[curve]\nu = t\nv = 0.4\nrange = 0:3\nspeed = 2\n");
  SurfaceChart chart = build_chart(cfg);
  BaseCurve base = build_base_curve(cfg, chart);
  Vec2 d = central4(base.curve, 0.5 * base.t1, 1e-4);
  double sp = std::sqrt(std::fabs(chart.inner(base.curve(0.5 * base.t1), d, d)));
  CHECK(sp == Catch::Approx(2.0).margin(1e-6));
}

TEST_CASE("scene lifts classify end to end") {
  SceneConfig cfg = parse_scene(scene_text("desitter_slant.scene"));
  BuiltScene scene = build_scene(cfg, 2.0);
  ClassifyOptions co;
  co.grid = 24;
  co.tol = 1e-5;
  SlantReport rep = classify(scene.lift, co);
  CHECK(rep.verdicts.tangent == TangentVerdict::Slant);
  CHECK(rep.verdicts.normal == NormalVerdict::NLegendre);
  CHECK(rep.verdicts.slant_c == Catch::Approx(2.5).margin(1e-5));
}

TEST_CASE("classify command reports are deterministic") {
  SceneConfig cfg = parse_scene(scene_text("desitter_nonslant.scene"));
  CliOverrides ov;
  ov.samples = 48;
  CommandResult a = run_classify(cfg, ov);
  CommandResult b = run_classify(cfg, ov);
  CHECK(a.output == b.output);
  CHECK(a.exit_code == 0);
  CHECK(a.output.find("\"schema\": 1") != std::string::npos);
  CHECK(a.output.find("paper-formula-deviation") != std::string::npos);
}

TEST_CASE("verify command on scenes") {
  CliOverrides ov;
  {
    SceneConfig cfg = parse_scene(scene_text("desitter_slant.scene"));
    ov.samples = 32;
    CommandResult res = run_verify("prop3", cfg, ov);
    CHECK(res.exit_code == 0);
    REQUIRE(res.report.checks.size() == 1);
    CHECK(res.report.checks[0].holds);
  }
  {
    SceneConfig cfg = parse_scene(scene_text("ads_slant.scene"));
    ov.samples = 32;
    CommandResult res = run_verify("prop5", cfg, ov);
    CHECK(res.exit_code == 0);
    CHECK(res.report.checks[0].oracle_verdict == "slant/n_slant");
  }
  {
    SceneConfig cfg = parse_scene(scene_text("thm8_flat.scene"));
    CommandResult res = run_verify("thm8", cfg, CliOverrides{});
    CHECK(res.exit_code == 0);
    CHECK(res.report.checks[0].residual == 0.0);
    REQUIRE(res.report.example11.has_value());
    CHECK(res.report.example11->flags_inconsistency);
  }
}

TEST_CASE("sweep command over the thm8 slope") {
  SceneConfig cfg = parse_scene(scene_text("thm8_flat.scene"));
  CliOverrides ov;
  ov.format = "csv";
  CommandResult res = run_sweep("a", "0.5:2.0:0.25", cfg, ov);
  CHECK(res.exit_code == 0);
  // 7 data rows plus a header
  int lines = 0;
  for (char c : res.output) lines += c == '\n';
  CHECK(lines == 8);
  CHECK(res.output.substr(0, 2) == "a,");
  for (const auto& check : res.report.checks) {
    CHECK(check.holds);
    CHECK(check.residual < 1e-9);
  }

  // rows come out in parameter order
  double prev = -1.0;
  std::istringstream in(res.output);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    double v = std::stod(line.substr(0, line.find(',')));
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("geodesic lift scenes exit with a numerical marker") {
  SceneConfig cfg = parse_scene(scene_text("flat_geodesic_lift.scene"));
  CliOverrides ov;
  ov.samples = 24;
  CommandResult res = run_classify(cfg, ov);
  CHECK(res.exit_code == 3);
  bool marker = false;
  for (const auto& row : res.report.slant->samples) marker |= row.marker == "GeodesicLift";
  CHECK(marker);
}

TEST_CASE("malformed expressions surface as parse failures") {
  SceneConfig cfg = parse_scene(scene_text("bad_expr.scene"));
  try {
    run_classify(cfg, CliOverrides{});
    FAIL("expected ParseFailure");
  } catch (const ParseFailure& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.position() == 5);
  }
}
