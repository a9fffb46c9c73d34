#pragma once

/// Command implementations behind the reid_lab executable. Each command is a
/// plain function so tests can drive them in-process.
///
/// Sweep config file: flat key=value lines, '#' comments, repeated keys for
/// degradation grids:
///   data_dir=PATH            directory of .rec files
///   train=8 val=2 test=2     chronological split sizes per user
///   epochs=30 batch=16 lr=0.001 hidden=32,16 patience=10 seed=42
///   precision=wide|narrow    64-bit (default) or 32-bit training
///   window_seconds=30
///   noise=0.5                gaussian noise sigma, repeatable
///   fps=15                   subsampling target, repeatable
///   quantize=0.01            rounding step, repeatable
///   dims=hands_only          dimension preset, repeatable

#include <cstdint>
#include <string>
#include <vector>

#include "reid/degrade.hpp"
#include "reid/ingest.hpp"
#include "reid/model.hpp"

namespace reid {

struct RunConfig {
  std::string data_dir;
  SplitConfig split{8, 2, 2};
  TrainConfig train;
  std::vector<DegradationSpec> conditions;
};

RunConfig parse_run_config(const std::string& path);

/// FNV-1a hash of a file's bytes, for run manifests.
std::uint64_t hash_file(const std::string& path);

int cmd_synthgen(int users, int sessions, double duration_s, double fps,
                 std::uint64_t seed, const std::string& out_dir);
int cmd_ingest(const std::string& dir, const SplitConfig& split,
               const std::string& out_manifest);
int cmd_featurize(const std::string& manifest, const std::string& out_dir, double fps,
                  const std::string& dims_preset);
int cmd_train(const std::string& manifest, const std::string& out_dir,
              const TrainConfig& cfg);
int cmd_evaluate(const std::string& checkpoint, const std::string& manifest,
                 const std::string& out_dir, const std::string& dims_preset);
int cmd_sweep(const std::string& config_path, const std::string& out_dir, int jobs);

/// Parse "32,16" style hidden-size lists.
std::vector<int> parse_hidden_sizes(const std::string& s);

}  // namespace reid
