// proum: mine high-utility sequential patterns, check results against the
// brute-force oracle, generate synthetic data, and benchmark pruning.
//
// Exit codes: 0 success, 1 runtime failure or verification mismatch,
// 2 usage error.

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "proum/proum.hpp"

namespace {

using namespace proum;

struct InputOptions {
  std::string data;
  std::string profits;
};

void add_inputs(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--data", in.data, "q-sequence dataset file")->required();
  cmd->add_option("--profits", in.profits, "profit table file")->required();
}

QSequenceDatabase load(const InputOptions& in) {
  return load_database(read_file(in.data), read_file(in.profits));
}

int run_mine(const InputOptions& in, const std::string& min_util, bool no_puo, bool no_puk,
             bool parallel, std::size_t max_length, const std::string& out_path, bool stats) {
  const auto db = load(in);
  MinerConfig config;
  config.threshold = Threshold::parse(min_util);
  config.enable_puo = !no_puo;
  config.enable_puk = !no_puk;
  config.parallel_roots = parallel;
  if (max_length > 0) config.max_pattern_length = max_length;
  const auto result = mine(db, config);
  const auto text = write_results(result, stats);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return 0;
}

int run_verify(const InputOptions& in, const std::string& min_util, const OracleLimits& limits) {
  const auto db = load(in);
  MinerConfig config;
  config.threshold = Threshold::parse(min_util);
  const auto result = mine(db, config);
  const auto report = verify(result, db, config.threshold, limits);
  if (report.ok()) {
    std::cout << "MATCH\t" << result.husps.size() << " patterns\n";
    return 0;
  }
  std::cout << "MISMATCH\n" << report.describe();
  return 1;
}

int run_gen(const std::string& out_dir, const GenParams& params) {
  const auto db = generate(params);
  std::filesystem::create_directories(out_dir);
  const auto dir = std::filesystem::path(out_dir);
  write_file((dir / "dataset.txt").string(), serialize_dataset(db.sequences));
  write_file((dir / "profits.txt").string(), serialize_profits(db.profits));
  std::cout << "wrote " << db.sequences.size() << " sequences, u(D)=" << database_utility(db)
            << " to " << out_dir << '\n';
  return 0;
}

int run_bench(const InputOptions& in, const std::vector<std::string>& thresholds, int repeat) {
  if (repeat < 1) throw Error("--repeat must be at least 1");
  const auto db = load(in);
  struct Named {
    const char* name;
    bool puo;
    bool puk;
  };
  const Named configs[] = {{"full", true, true}, {"no-puk", true, false},
                           {"no-puo", false, true}, {"none", false, false}};
  std::cout << "threshold\tconfig\tnodes_visited\tprojections_built\tpuk_pruned_nodes\thusp_count"
               "\ttime_ms\n";
  int status = 0;
  for (const auto& text : thresholds) {
    MinerConfig config;
    config.threshold = Threshold::parse(text);
    std::optional<std::vector<PatternUtility>> reference;
    for (const auto& c : configs) {
      config.enable_puo = c.puo;
      config.enable_puk = c.puk;
      double total_ms = 0;
      MiningResult result;
      for (int r = 0; r < repeat; ++r) {
        result = mine(db, config);
        total_ms += std::chrono::duration<double, std::milli>(result.stats.elapsed).count();
      }
      if (!reference)
        reference = result.husps;
      else if (*reference != result.husps) {
        std::cerr << "error: " << c.name << " at " << text << " disagrees with full config\n";
        status = 1;
      }
      const auto& s = result.stats;
      std::cout << text << '\t' << c.name << '\t' << s.nodes_visited << '\t'
                << s.projections_built << '\t' << s.puk_pruned_nodes << '\t' << s.husp_count
                << '\t' << std::fixed << std::setprecision(3) << total_ms / repeat << '\n';
    }
  }
  return status;
}

int run_dump(const InputOptions& in, std::uint32_t sid) {
  const auto db = load(in);
  for (const auto& s : db.sequences) {
    if (s.sid != sid) continue;
    dump(std::cout, build_utility_array(s, db.profits));
    return 0;
  }
  throw Error("no sequence with sid " + std::to_string(sid));
}

}  // namespace

int main(int argc, char** argv) {
  const CLI::Validator threshold_text(
      [](std::string& text) {
        try {
          Threshold::parse(text);
          return std::string{};
        } catch (const std::exception& e) {
          return std::string(e.what());
        }
      },
      "THRESHOLD");

  CLI::App app{"High-utility sequential pattern mining with utility-array projection"};
  app.require_subcommand(1);

  InputOptions mine_in;
  std::string mine_util, mine_out;
  bool no_puo = false, no_puk = false, stats = false, parallel = false;
  std::size_t max_length = 0;
  auto* mine_cmd = app.add_subcommand("mine", "mine all high-utility sequential patterns");
  add_inputs(mine_cmd, mine_in);
  mine_cmd->add_option("--min-util", mine_util, "threshold as fraction (0.25), percent (25%) or ratio (1/4)")
      ->required()
      ->check(threshold_text);
  mine_cmd->add_flag("--no-puo", no_puo, "disable removal of low-SWU items");
  mine_cmd->add_flag("--no-puk", no_puk, "disable SEU subtree pruning");
  mine_cmd->add_flag("--parallel-roots", parallel, "search root items on worker threads");
  mine_cmd->add_option("--max-length", max_length, "abort if a pattern longer than this is explored");
  mine_cmd->add_option("--out", mine_out, "write results here instead of stdout");
  mine_cmd->add_flag("--stats", stats, "append search counters and wall time");

  InputOptions verify_in;
  std::string verify_util;
  OracleLimits limits;
  auto* verify_cmd = app.add_subcommand("verify", "compare miner output with the brute-force oracle");
  add_inputs(verify_cmd, verify_in);
  verify_cmd->add_option("--min-util", verify_util, "threshold")->required()->check(threshold_text);
  verify_cmd->add_option("--max-patterns", limits.max_patterns, "oracle pattern count cap")
      ->capture_default_str();
  verify_cmd->add_option("--max-length", limits.max_pattern_length, "oracle pattern length cap")
      ->capture_default_str();

  std::string out_dir;
  GenParams gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a synthetic dataset and profit table");
  gen_cmd->add_option("--out-dir", out_dir, "directory for dataset.txt and profits.txt")->required();
  gen_cmd->add_option("--sequences", gen.sequence_count)->required();
  gen_cmd->add_option("--items", gen.item_universe_size)->required();
  gen_cmd->add_option("--seed", gen.seed)->required();
  gen_cmd->add_option("--mean-elements", gen.mean_elements)->capture_default_str();
  gen_cmd->add_option("--mean-items", gen.mean_items_per_element, "mean items per element")
      ->capture_default_str();
  gen_cmd->add_option("--max-quantity", gen.max_quantity)->capture_default_str();
  gen_cmd->add_option("--profit-min", gen.profit_min)->capture_default_str();
  gen_cmd->add_option("--profit-max", gen.profit_max)->capture_default_str();

  InputOptions bench_in;
  std::vector<std::string> bench_thresholds;
  int repeat = 3;
  auto* bench_cmd = app.add_subcommand("bench", "compare pruning configurations (TSV)");
  add_inputs(bench_cmd, bench_in);
  bench_cmd->add_option("--min-util-list", bench_thresholds, "comma-separated thresholds")
      ->required()
      ->delimiter(',')
      ->check(threshold_text);
  bench_cmd->add_option("--repeat", repeat, "runs averaged per cell")->capture_default_str();

  InputOptions dump_in;
  std::uint32_t sid = 0;
  auto* dump_cmd = app.add_subcommand("dump-array", "print the utility-array of one sequence");
  add_inputs(dump_cmd, dump_in);
  dump_cmd->add_option("--sid", sid, "sequence id (1-based line number)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*mine_cmd)
      return run_mine(mine_in, mine_util, no_puo, no_puk, parallel, max_length, mine_out, stats);
    if (*verify_cmd) return run_verify(verify_in, verify_util, limits);
    if (*gen_cmd) return run_gen(out_dir, gen);
    if (*bench_cmd) return run_bench(bench_in, bench_thresholds, repeat);
    if (*dump_cmd) return run_dump(dump_in, sid);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
