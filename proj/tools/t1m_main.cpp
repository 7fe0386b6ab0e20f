#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "t1m/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw t1m::Error(t1m::ErrorCode::ConfigError, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw t1m::Error(t1m::ErrorCode::ConfigError, "cannot write '" + out_path + "'");
  out << text;
}

int error_exit(const t1m::Error& e, const std::string& out_path) {
  bool config = e.code() == t1m::ErrorCode::ConfigError ||
                e.code() == t1m::ErrorCode::ParseError ||
                e.code() == t1m::ErrorCode::UnknownFunction;
  t1m::RunReport rep;
  rep.command = "error";
  rep.errors.push_back({t1m::error_code_name(e.code()), e.what()});
  try {
    emit(t1m::to_json(rep).dump(2) + "\n", out_path);
  } catch (...) {
  }
  std::cerr << e.what() << "\n";
  return config ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curves in unit tangent bundles of Lorentzian surfaces"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path, format = "json", xi;
  int samples = -1;
  double tol = -1.0;
  app.add_option("--config", config_path, "scene file")->required();
  app.add_option("--samples", samples, "sample count (default 512)");
  app.add_option("--tol", tol, "constancy tolerance (default 1e-6)");
  app.add_option("--xi-convention", xi, "paper-2xh | paper-half");
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  auto* classify_cmd = app.add_subcommand("classify", "classify a lifted curve");
  std::string verify_name;
  auto* verify_cmd = app.add_subcommand("verify", "run a named theorem check");
  verify_cmd->add_option("name", verify_name, "prop3|thm4|prop5|thm6-legendre|thm6-slant|thm8|thm12")
      ->required();
  std::string sweep_param, sweep_range;
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep a parameter, emit a table");
  sweep_cmd->add_option("param", sweep_param, "config key, e.g. a or fiber.L0")->required();
  sweep_cmd->add_option("range", sweep_range, "start:stop:step")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    t1m::SceneConfig cfg = t1m::parse_scene(read_file(config_path));
    t1m::CliOverrides ov;
    if (samples >= 0) ov.samples = samples;
    if (tol > 0) ov.tol = tol;
    if (!xi.empty()) ov.xi = xi;
    ov.format = format;

    t1m::CommandResult res;
    if (classify_cmd->parsed()) {
      res = t1m::run_classify(cfg, ov);
    } else if (verify_cmd->parsed()) {
      res = t1m::run_verify(verify_name, cfg, ov);
    } else {
      res = t1m::run_sweep(sweep_param, sweep_range, cfg, ov);
    }
    emit(res.output, out_path);
    return res.exit_code;
  } catch (const t1m::Error& e) {
    return error_exit(e, out_path);
  } catch (const std::exception& e) {
    std::cerr << "unexpected: " << e.what() << "\n";
    return 3;
  }
}
