// kbtool: runs fixture tasks and prints JSON or text reports.
//
// Exit status: 0 when every selected task ran (verdicts may be negative),
// 1 on fixture or execution errors, 2 on usage errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "kb/io/tasks.hpp"

namespace {

struct Common {
  std::string fixture;
  std::string out = "json";
  std::vector<std::string> task_ids;
  long max_degree = -1, depth = -1, window = -1, workers = 0;
  bool timing = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--fixture", c.fixture, "fixture file")->required()->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "report format")->check(CLI::IsMember({"json", "text"}));
  app->add_option("--task", c.task_ids, "run only these task ids");
  app->add_option("--max-degree", c.max_degree, "resolution budget for check-hepi")->check(CLI::NonNegativeNumber);
  app->add_option("--depth", c.depth, "lifting search depth")->check(CLI::NonNegativeNumber);
  app->add_option("--window", c.window, "shift half-width for windows and lifting")->check(CLI::NonNegativeNumber);
  app->add_option("--workers", c.workers, "worker threads (default: KB_WORKERS or 1)")->check(CLI::PositiveNumber);
  app->add_flag("--timing", c.timing, "attach wall-clock timing to each report");
}

kb::io::RunOptions options(const Common& c) {
  kb::io::RunOptions o;
  if (c.max_degree >= 0) o.max_degree = static_cast<std::size_t>(c.max_degree);
  if (c.depth >= 0) o.depth = static_cast<std::size_t>(c.depth);
  if (c.window >= 0) o.window = static_cast<int>(c.window);
  o.timing = c.timing;
  o.workers = c.workers > 0 ? static_cast<std::size_t>(c.workers) : kb::io::default_workers();
  return o;
}

void print(const std::vector<kb::io::Report>& reports, const std::string& format) {
  if (format == "text") std::cout << kb::io::reports_text(reports);
  else std::cout << kb::io::reports_json(reports).dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homological algebra tasks over finite-dimensional algebras"};
  app.require_subcommand(1);

  Common run_opts;
  auto* run = app.add_subcommand("run", "run every task in the fixture");
  add_common(run, run_opts);

  std::map<std::string, Common> per_kind;
  std::map<std::string, CLI::App*> kind_cmds;
  std::string certificate;
  for (const auto& kind : kb::io::task_kinds()) {
    auto* sub = app.add_subcommand(kind, "run the fixture's " + kind + " tasks");
    add_common(sub, per_kind[kind]);
    if (kind == "verify-certificate")
      sub->add_option("--certificate", certificate, "report file whose certificates are replayed")->check(CLI::ExistingFile);
    kind_cmds[kind] = sub;
  }

  std::string emit_path;
  auto* emit = app.add_subcommand("emit", "print the fixture in normalized explicit form");
  emit->add_option("--fixture", emit_path, "fixture file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (emit->parsed()) {
      std::cout << kb::io::encode_fixture(kb::io::load_fixture(emit_path)).dump(2) << "\n";
      return 0;
    }
    const Common* c = &run_opts;
    std::string kind;
    for (const auto& [k, sub] : kind_cmds)
      if (sub->parsed()) {
        c = &per_kind[k];
        kind = k;
      }
    auto fx = kb::io::load_fixture(c->fixture);
    if (kind == "verify-certificate" && !certificate.empty()) {
      std::ifstream in(certificate);
      kb::io::json reports;
      try {
        reports = kb::io::json::parse(in);
      } catch (const kb::io::json::parse_error& e) {
        throw kb::Error(certificate + ": " + e.what());
      }
      print(kb::io::replay_reports(fx, reports), c->out);
      return 0;
    }
    const std::set<std::string> ids(c->task_ids.begin(), c->task_ids.end());
    auto select = [&](const kb::io::json& t) {
      if (!kind.empty() && t.value("kind", "") != kind) return false;
      return ids.empty() || ids.count(t.value("id", "")) > 0;
    };
    print(kb::io::run_tasks(fx, options(*c), select), c->out);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "kbtool: " << e.what() << "\n";
    return 1;
  }
}
