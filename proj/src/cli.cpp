#include "nwidth/cli.hpp"

#include <chrono>
#include <ctime>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nwidth/io.hpp"
#include "nwidth/parallel.hpp"
#include "nwidth/verify.hpp"

namespace nwidth {

namespace {

std::string timestamp_line() {
  const std::time_t now = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return std::string("# generated ") + buf + "\n";
}

void emit(const RunConfig& config, const std::string& text) {
  if (config.out.empty())
    std::cout << text;
  else
    write_text_file(config.out, text);
}

std::vector<WidthKind> parse_kinds(const RunConfig& config) {
  std::vector<WidthKind> kinds;
  if (config.kinds.empty()) {
    kinds = {WidthKind::Gelfand, WidthKind::Kolmogorov, WidthKind::Bernstein,
             WidthKind::Hilbert, WidthKind::Approximation};
  } else {
    for (const std::string& name : config.kinds) kinds.push_back(width_from_name(name));
  }
  return kinds;
}

std::string instance_label(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const std::size_t dot = base.find_last_of('.');
  if (dot != std::string::npos) base = base.substr(0, dot);
  return base;
}

int run_compute(const RunConfig& config, bool pivot_table) {
  if (config.instance_paths.empty()) {
    std::cerr << "compute: no instance files given\n";
    return 2;
  }
  std::vector<std::pair<std::string, Instance>> instances;
  for (const std::string& path : config.instance_paths) {
    try {
      instances.emplace_back(instance_label(path), load_instance(path));
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }
  const std::vector<WidthKind> kinds = parse_kinds(config);
  const SearchConfig cfg = config.search();

  struct Task {
    std::size_t instance_index;
    WidthKind kind;
    int n;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (const WidthKind kind : kinds)
      for (int n = config.n_lo; n <= config.n_hi; ++n) tasks.push_back({i, kind, n});

  std::vector<WidthRow> rows(tasks.size());
  par::parallel_for(tasks.size(), [&](std::size_t t) {
    const Task& task = tasks[t];
    const auto& [label, inst] = instances[task.instance_index];
    WidthRow row;
    row.instance = label;
    row.kind = width_name(task.kind);
    row.n = task.n;
    const auto start = std::chrono::steady_clock::now();
    try {
      const InfoClass info = config.info == "std" ? standard_information(inst)
                                                  : InfoClass::all();
      const Bounds b = compute_width(inst, task.kind, task.n, info, cfg);
      row.lower = b.lower;
      row.upper = b.upper;
      row.exact = b.exact;
      row.certified = b.lower_certified && b.upper_certified;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    const auto stop = std::chrono::steady_clock::now();
    row.wall_ms =
        config.deterministic
            ? 0
            : std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    rows[t] = row;
  });

  std::ostringstream text;
  if (config.format == "json") {
    emit(config, width_rows_to_json(rows).dump(2) + "\n");
    return 0;
  }
  if (!config.deterministic) text << timestamp_line();
  if (!pivot_table) {
    text << width_rows_to_csv(rows);
  } else {
    // wide layout: one line per (instance, n) with lower/upper per kind
    text << "instance,n";
    for (const WidthKind kind : kinds)
      text << ',' << width_name(kind) << "_lower," << width_name(kind) << "_upper";
    text << '\n';
    for (std::size_t i = 0; i < instances.size(); ++i) {
      for (int n = config.n_lo; n <= config.n_hi; ++n) {
        text << instances[i].first << ',' << n;
        for (const WidthKind kind : kinds) {
          const WidthRow* found = nullptr;
          for (std::size_t t = 0; t < tasks.size(); ++t)
            if (tasks[t].instance_index == i && tasks[t].kind == kind && tasks[t].n == n)
              found = &rows[t];
          if (found != nullptr && found->error.empty())
            text << ',' << format_double(found->lower) << ',' << format_double(found->upper);
          else
            text << ",nan,nan";
        }
        text << '\n';
      }
    }
  }
  emit(config, text.str());
  return 0;
}

int run_witness(const RunConfig& config) {
  if (config.instance_paths.size() != 1) {
    std::cerr << "witness: exactly one instance file required\n";
    return 2;
  }
  Instance inst = load_instance(config.instance_paths[0]);
  const ChainVariant variant = chain_variant_from_name(config.variant);
  const int n = std::max(1, config.n_hi);
  const WitnessChain chain = build_chain(inst, n, variant, config.eps, config.search());
  const ChainCertificate cert = certify_chain(chain, inst);
  emit(config, chain_to_json(chain, cert).dump(2) + "\n");
  return cert.all_ok() ? 0 : 1;
}

int run_verify(const RunConfig& config) {
  const VerifyRun run = run_default_suite(config.search());
  std::string text;
  if (config.format == "json") {
    nlohmann::json j = {{"reports", reports_to_json(run.reports)},
                        {"all_certified_hold", run.all_certified_hold}};
    nlohmann::json mcj = nlohmann::json::array();
    for (const McResult& mc : run.mc) mcj.push_back(mc_to_json(mc));
    j["mc"] = mcj;
    if (!config.deterministic) j["generated"] = timestamp_line();
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream out;
    if (!config.deterministic) out << timestamp_line();
    out << reports_to_csv(run.reports);
    text = out.str();
  }
  emit(config, text);
  if (!run.all_certified_hold) {
    std::cerr << "verify: certified theorem check failed\n";
    return 1;
  }
  return 0;
}

int run_mc(const RunConfig& config) {
  const McResult mc =
      sphere_mc_lower_bound(std::max(1, config.n_hi), config.samples, config.seed);
  emit(config, mc_to_json(mc).dump(2) + "\n");
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    if (config.command == "compute") return run_compute(config, false);
    if (config.command == "table") return run_compute(config, true);
    if (config.command == "witness") return run_witness(config);
    if (config.command == "verify") return run_verify(config);
    if (config.command == "mc") return run_mc(config);
    std::cerr << "unknown command: " << config.command << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"certified bounds on widths and s-numbers of linear operators on convex bodies"};
  app.require_subcommand(1);
  RunConfig config;

  std::string n_range = "0..0";
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", config.seed, "random seed");
    cmd->add_option("--restarts", config.restarts, "search restarts");
    cmd->add_option("--max-iters", config.max_iters, "refinement iterations");
    cmd->add_option("--tol", config.tol, "numeric tolerance");
    cmd->add_option("--out", config.out, "output path (default stdout)");
    cmd->add_option("--format", config.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--deterministic", config.deterministic,
                  "suppress timestamps and wall-clock columns");
  };

  CLI::App* compute = app.add_subcommand("compute", "width bounds for instances");
  compute->add_option("--instance", config.instance_paths, "instance JSON file(s)")
      ->required();
  compute->add_option("--kind", config.kinds,
                      "gelfand|kolmogorov|bernstein|hilbert|approximation");
  compute->add_option("--n", n_range, "index or range lo..hi");
  compute->add_option("--info", config.info, "all | std")
      ->check(CLI::IsMember({"all", "std"}));
  add_common(compute);

  CLI::App* table = app.add_subcommand("table", "width-vs-n table for plotting");
  table->add_option("--instance", config.instance_paths, "instance JSON file(s)")
      ->required();
  table->add_option("--kind", config.kinds, "width kinds (default all)");
  table->add_option("--n", n_range, "index or range lo..hi");
  add_common(table);

  CLI::App* witness = app.add_subcommand("witness", "build and certify a greedy chain");
  witness->add_option("--instance", config.instance_paths, "instance JSON file")
      ->required();
  witness->add_option("--n", n_range, "chain length");
  witness->add_option("--variant", config.variant,
                      "general|symmetric|hilbert-target|hilbert-source-ball");
  witness->add_option("--eps", config.eps, "certificate slack");
  add_common(witness);

  CLI::App* verify = app.add_subcommand("verify", "run the inequality suite");
  verify->add_option("--suite", config.suite, "suite name (default)");
  add_common(verify);

  CLI::App* mc = app.add_subcommand("mc", "sphere Monte Carlo lower-bound experiment");
  mc->add_option("--n", n_range, "number of measurements");
  mc->add_option("--samples", config.samples, "sample count");
  add_common(mc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  // n range "k" or "lo..hi"
  const std::size_t dots = n_range.find("..");
  try {
    if (dots == std::string::npos) {
      config.n_lo = config.n_hi = std::stoi(n_range);
    } else {
      config.n_lo = std::stoi(n_range.substr(0, dots));
      config.n_hi = std::stoi(n_range.substr(dots + 2));
    }
  } catch (const std::exception&) {
    std::cerr << "invalid --n range: " << n_range << "\n";
    return 2;
  }
  if (config.n_lo < 0 || config.n_hi < config.n_lo) {
    std::cerr << "invalid --n range: " << n_range << "\n";
    return 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  return run(config);
}

}  // namespace nwidth
