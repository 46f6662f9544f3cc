#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "relct/bench.hpp"
#include "relct/gen.hpp"

namespace fs = std::filesystem;
using namespace relct;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relct: contingency-table strategies for relational Bayesian network learning"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "count and search under one strategy, writing a JSON report");
  std::string schema_path, data_dir, strategy = "hybrid", report_path, model_path, trace_path;
  RunOptions opts;
  double budget_s = kDefaultBudgetSeconds;
  Count max_ct_rows = 0;
  run->add_option("--schema", schema_path, "schema file")->required();
  run->add_option("--data", data_dir, "directory with one CSV per table")->required();
  run->add_option("--strategy", strategy, "precount, ondemand or hybrid");
  run->add_option("--ess", opts.params.ess, "BDeu equivalent sample size");
  run->add_option("--structure-prior", opts.params.structure_prior_log, "log structure prior per family");
  run->add_option("--max-parents", opts.search.max_parents, "maximum parents per node");
  run->add_option("--max-chain", opts.max_chain_length, "maximum relationship chain length");
  run->add_option("--restarts", opts.search.restarts, "random-restart hill climbs per lattice point");
  run->add_option("--seed", opts.search.seed, "search seed");
  run->add_option("--budget-s", budget_s, "wall-clock budget in seconds");
  run->add_option("--max-ct-rows", max_ct_rows, "cap on cached ct rows (0 = none)");
  run->add_option("--report", report_path, "report output path (default stdout)");
  run->add_option("--model", model_path, "write the learned model here");
  run->add_option("--trace", trace_path, "write the family request stream as JSON lines");
  run->add_option("--label", opts.database_label, "database label recorded in the report");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic database");
  std::string preset_name, config_path, out_dir;
  double scale = 0.1;
  std::uint64_t gen_seed = 0;
  gen->add_option("--preset", preset_name, "preset name");
  gen->add_option("--config", config_path, "JSON generator config");
  gen->add_option("--scale", scale, "preset scale in (0, 1]");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", out_dir, "output directory")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "align reports and check the qualitative orderings");
  std::vector<std::string> report_paths;
  cmp->add_option("reports", report_paths, "report files")->required()->expected(2, -1);

  // dump-ct
  auto* dump = app.add_subcommand("dump-ct", "write a family or lattice-point ct-table as CSV");
  std::string d_schema, d_data, d_strategy = "precount", d_family, d_point, d_out;
  std::size_t d_chain = kDefaultMaxChainLength;
  dump->add_option("--schema", d_schema, "schema file")->required();
  dump->add_option("--data", d_data, "data directory")->required();
  dump->add_option("--strategy", d_strategy, "precount, ondemand or hybrid");
  dump->add_option("--family", d_family, "family, e.g. \"Salary(P,S) <- RA(P,S)\"");
  dump->add_option("--point", d_point, "comma-separated relationship names");
  dump->add_option("--max-chain", d_chain, "maximum relationship chain length");
  dump->add_option("--out", d_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto t0 = std::chrono::steady_clock::now();
      Schema schema = load_schema(read_file(schema_path));
      opts.metadata_offset_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      Database db = load_database_dir(schema, data_dir);
      opts.strategy = parse_strategy(strategy);
      opts.budget_s = budget_s;
      if (max_ct_rows) opts.max_ct_rows = max_ct_rows;
      if (opts.database_label.empty()) opts.database_label = fs::path(data_dir).filename().string();
      opts.record_trace_entries = !trace_path.empty();
      RunOutput result = run_benchmark(db, opts);
      std::string json = report_json(result.report);
      if (report_path.empty())
        std::cout << json;
      else
        write_file(report_path, json);
      if (!model_path.empty()) write_file(model_path, format_model(db.schema(), result.model));
      if (!trace_path.empty()) {
        std::ofstream t(trace_path);
        result.trace.write_jsonl(t);
      }
      if (result.report.partial) {
        std::cerr << "partial run: " << result.report.partial_reason << '\n';
        return 3;
      }
    } else if (*gen) {
      if (preset_name.empty() == config_path.empty()) throw Error("gen needs exactly one of --preset or --config");
      GenConfig config = preset_name.empty() ? parse_gen_config(read_file(config_path))
                                             : preset(preset_name, scale, gen_seed);
      write_database_dir(generate(config), out_dir);
    } else if (*cmp) {
      std::vector<StrategyReport> reports;
      for (const auto& p : report_paths) reports.push_back(parse_report(read_file(p)));
      std::cout << compare(reports).table;
    } else if (*dump) {
      Schema schema = load_schema(read_file(d_schema));
      Database db = load_database_dir(schema, d_data);
      DumpTarget target;
      if (!d_family.empty()) target.family = d_family;
      target.point = split_commas(d_point);
      std::string csv = dump_ct(db, target, parse_strategy(d_strategy), d_chain);
      if (d_out.empty())
        std::cout << csv;
      else
        write_file(d_out, csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
