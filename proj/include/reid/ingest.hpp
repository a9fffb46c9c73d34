#pragma once

/// Recording file format, validation, chronological splits.
///
/// File format (one file per session, UTF-8, line-delimited JSON):
///   line 1: {"user": str, "session": str, "start": int epoch s, "fps": real}
///   lines 2..n: {"t": s, "head": {"p":[x,y,z], "q":[w,x,y,z]}, "left": {...}, "right": {...}}
/// Positions in meters, quaternions unit scalar-first, reals printed with up
/// to 9 significant digits.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "reid/recording.hpp"

namespace reid {

struct SplitConfig {
  int n_train = 0, n_val = 0, n_test = 0;
  int min_recordings() const { return n_train + n_val + n_test; }
};

/// Per-user chronological split. Indices refer to the recordings vector
/// handed to build_dataset.
struct UserSplit {
  std::vector<int> train, val, test;
};

struct Dataset {
  std::vector<Recording> recordings;
  std::vector<std::string> user_ids;            // index = label
  std::map<std::string, UserSplit> splits;      // keyed by user_id
  int dropped_users = 0;                        // users with too few recordings
};

/// Parse one recording from a stream of text lines. Validates monotone
/// timestamps and quaternion norms (re-normalized within 1e-3 of unit,
/// rejected otherwise). Consecutive quaternions are hemisphere-aligned and the
/// first frame is canonicalized to w >= 0.
Recording parse_recording(std::istream& in);
Recording load_recording(const std::string& path);

/// Serialize in the format above. parse(serialize(r)) round-trips bit-exactly
/// at the 9-significant-digit decimal representation.
void serialize_recording(const Recording& rec, std::ostream& out);
void save_recording(const Recording& rec, const std::string& path);

/// Sort each user's recordings chronologically (ties broken by session_id) and
/// take the earliest n_train for training, the next n_val, the next n_test.
/// Users with fewer than n_train+n_val+n_test recordings are dropped.
/// Throws DataError when no user is eligible.
Dataset build_dataset(std::vector<Recording> recordings, const SplitConfig& cfg);

/// Manifest: line-oriented "split<TAB>user<TAB>session<TAB>path".
struct ManifestEntry {
  std::string split, user_id, session_id, path;
};

void write_manifest(const Dataset& ds, const std::vector<std::string>& paths,
                    std::ostream& out);
std::vector<ManifestEntry> read_manifest(const std::string& path);

/// Rebuild a Dataset by loading every file referenced by a manifest.
Dataset load_manifest_dataset(const std::string& manifest_path);

}  // namespace reid
