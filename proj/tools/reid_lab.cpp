#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "reid/cli.hpp"
#include "reid/errors.hpp"

namespace {

int default_jobs() {
  if (const char* env = std::getenv("REID_LAB_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motion re-identification laboratory"};
  app.require_subcommand(1);

  // synthgen
  int users = 8, sessions = 12;
  double duration = 60.0, gen_fps = 30.0;
  std::uint64_t seed = 42;
  std::string out_dir = "out";
  auto* synth = app.add_subcommand("synthgen", "Generate synthetic telemetry");
  synth->add_option("--users", users);
  synth->add_option("--sessions", sessions);
  synth->add_option("--duration", duration, "seconds per session");
  synth->add_option("--fps", gen_fps);
  synth->add_option("--seed", seed);
  synth->add_option("--out", out_dir)->required();

  // ingest
  std::string dir, manifest_out;
  reid::SplitConfig split{8, 2, 2};
  auto* ingest = app.add_subcommand("ingest", "Build a dataset manifest");
  ingest->add_option("--dir", dir)->required();
  ingest->add_option("--train", split.n_train)->required();
  ingest->add_option("--val", split.n_val)->required();
  ingest->add_option("--test", split.n_test)->required();
  ingest->add_option("--out", manifest_out)->required();

  // featurize
  std::string manifest, dims = "all";
  double feat_fps = 30.0;
  auto* feat = app.add_subcommand("featurize", "Write feature window caches");
  feat->add_option("--manifest", manifest)->required();
  feat->add_option("--fps", feat_fps);
  feat->add_option("--dims", dims);
  feat->add_option("--out", out_dir)->required();

  // train
  reid::TrainConfig tcfg;
  std::string hidden = "32,16", precision = "wide";
  auto* tr = app.add_subcommand("train", "Train the funnel classifier");
  tr->add_option("--manifest", manifest)->required();
  tr->add_option("--epochs", tcfg.epochs);
  tr->add_option("--batch", tcfg.batch_size);
  tr->add_option("--lr", tcfg.learning_rate);
  tr->add_option("--hidden", hidden, "comma separated, non-increasing");
  tr->add_option("--patience", tcfg.patience);
  tr->add_option("--seed", tcfg.seed);
  tr->add_option("--precision", precision, "wide|narrow");
  tr->add_option("--out", out_dir)->required();

  // evaluate
  std::string checkpoint;
  auto* ev = app.add_subcommand("evaluate", "Evaluate a checkpoint on the test split");
  ev->add_option("--checkpoint", checkpoint)->required();
  ev->add_option("--manifest", manifest)->required();
  ev->add_option("--dims", dims);
  ev->add_option("--out", out_dir)->required();

  // sweep
  std::string config_path;
  int jobs = default_jobs();
  auto* sw = app.add_subcommand("sweep", "Run a degradation sweep from a config file");
  sw->add_option("--config", config_path)->required();
  sw->add_option("--jobs", jobs);
  sw->add_option("--out", out_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (synth->parsed())
      return reid::cmd_synthgen(users, sessions, duration, gen_fps, seed, out_dir);
    if (ingest->parsed()) return reid::cmd_ingest(dir, split, manifest_out);
    if (feat->parsed()) return reid::cmd_featurize(manifest, out_dir, feat_fps, dims);
    if (tr->parsed()) {
      tcfg.hidden = reid::parse_hidden_sizes(hidden);
      if (precision == "wide") tcfg.wide = true;
      else if (precision == "narrow") tcfg.wide = false;
      else throw reid::UsageError("precision must be wide or narrow");
      return reid::cmd_train(manifest, out_dir, tcfg);
    }
    if (ev->parsed()) return reid::cmd_evaluate(checkpoint, manifest, out_dir, dims);
    if (sw->parsed()) return reid::cmd_sweep(config_path, out_dir, jobs);
  } catch (const reid::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const reid::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const reid::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
