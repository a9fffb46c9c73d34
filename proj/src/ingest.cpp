#include "reid/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "reid/errors.hpp"

namespace reid {

using nlohmann::json;

namespace {

Vec3 parse_vec3(const json& j, int line_no) {
  if (!j.is_array() || j.size() != 3)
    throw DataError("line " + std::to_string(line_no) + ": position must be [x,y,z]");
  Vec3 v(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
  if (!v.allFinite())
    throw DataError("line " + std::to_string(line_no) + ": non-finite position");
  return v;
}

UnitQuat parse_quat(const json& j, int line_no) {
  if (!j.is_array() || j.size() != 4)
    throw DataError("line " + std::to_string(line_no) + ": quaternion must be [w,x,y,z]");
  const double w = j[0].get<double>(), x = j[1].get<double>(),
               y = j[2].get<double>(), z = j[3].get<double>();
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-3)
    throw DataError("line " + std::to_string(line_no) +
                    ": quaternion norm outside [1-1e-3, 1+1e-3]");
  return quat_normalize(w, x, y, z);
}

Pose parse_pose(const json& j, const char* key, int line_no) {
  if (!j.contains(key))
    throw DataError("line " + std::to_string(line_no) + ": missing \"" + key + "\"");
  const json& o = j.at(key);
  return {parse_vec3(o.at("p"), line_no), parse_quat(o.at("q"), line_no)};
}

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_pose(std::ostream& out, const char* key, const Pose& pose) {
  out << '"' << key << "\":{\"p\":[" << fmt_real(pose.p.x()) << ','
      << fmt_real(pose.p.y()) << ',' << fmt_real(pose.p.z()) << "],\"q\":["
      << fmt_real(pose.q.w) << ',' << fmt_real(pose.q.x) << ','
      << fmt_real(pose.q.y) << ',' << fmt_real(pose.q.z) << "]}";
}

}  // namespace

Recording parse_recording(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.empty())
    throw DataError("line 1: missing header");

  Recording rec;
  try {
    json h = json::parse(line);
    rec.user_id = h.at("user").get<std::string>();
    rec.session_id = h.at("session").get<std::string>();
    rec.start_time = h.at("start").get<std::int64_t>();
    rec.nominal_fps = h.at("fps").get<double>();
  } catch (const json::exception& e) {
    throw DataError(std::string("line 1: bad header: ") + e.what());
  }

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": parse error: " + e.what());
    }
    PoseFrame f;
    try {
      f.t = j.at("t").get<double>();
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": missing t: " + e.what());
    }
    if (!std::isfinite(f.t) || f.t < 0.0)
      throw DataError("line " + std::to_string(line_no) + ": invalid timestamp");
    if (!rec.frames.empty() && f.t <= rec.frames.back().t)
      throw DataError("line " + std::to_string(line_no) +
                      ": timestamps not strictly increasing");
    f.head = parse_pose(j, "head", line_no);
    f.left = parse_pose(j, "left", line_no);
    f.right = parse_pose(j, "right", line_no);
    rec.frames.push_back(f);
  }
  if (rec.frames.size() < 2) throw DataError("recording has fewer than 2 frames");

  // Double-cover canonicalization: first frame w >= 0, then align each frame
  // to its predecessor per tracked object.
  for (int obj = 0; obj < 3; ++obj) {
    UnitQuat& first = rec.frames[0].object(obj).q;
    if (first.w < 0.0) first = first.negated();
    for (std::size_t i = 1; i < rec.frames.size(); ++i) {
      UnitQuat& q = rec.frames[i].object(obj).q;
      q = hemisphere_align(rec.frames[i - 1].object(obj).q, q);
    }
  }
  return rec;
}

Recording load_recording(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open recording file: " + path);
  try {
    return parse_recording(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void serialize_recording(const Recording& rec, std::ostream& out) {
  out << "{\"user\":" << json(rec.user_id) << ",\"session\":" << json(rec.session_id)
      << ",\"start\":" << rec.start_time << ",\"fps\":" << fmt_real(rec.nominal_fps)
      << "}\n";
  for (const PoseFrame& f : rec.frames) {
    out << "{\"t\":" << fmt_real(f.t) << ',';
    write_pose(out, "head", f.head);
    out << ',';
    write_pose(out, "left", f.left);
    out << ',';
    write_pose(out, "right", f.right);
    out << "}\n";
  }
}

void save_recording(const Recording& rec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write recording file: " + path);
  serialize_recording(rec, out);
}

Dataset build_dataset(std::vector<Recording> recordings, const SplitConfig& cfg) {
  if (cfg.n_train <= 0 || cfg.n_val <= 0 || cfg.n_test <= 0)
    throw UsageError("split sizes must be positive");

  Dataset ds;
  ds.recordings = std::move(recordings);

  std::map<std::string, std::vector<int>> by_user;
  for (std::size_t i = 0; i < ds.recordings.size(); ++i)
    by_user[ds.recordings[i].user_id].push_back(static_cast<int>(i));

  for (auto& [user, idx] : by_user) {
    if (static_cast<int>(idx.size()) < cfg.min_recordings()) {
      ++ds.dropped_users;
      continue;
    }
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      const Recording& ra = ds.recordings[a];
      const Recording& rb = ds.recordings[b];
      if (ra.start_time != rb.start_time) return ra.start_time < rb.start_time;
      return ra.session_id < rb.session_id;
    });
    UserSplit s;
    auto it = idx.begin();
    s.train.assign(it, it + cfg.n_train);
    it += cfg.n_train;
    s.val.assign(it, it + cfg.n_val);
    it += cfg.n_val;
    s.test.assign(it, it + cfg.n_test);
    ds.splits[user] = std::move(s);
    ds.user_ids.push_back(user);
  }
  if (ds.splits.empty())
    throw DataError("no user has enough recordings for the requested split");
  return ds;
}

void write_manifest(const Dataset& ds, const std::vector<std::string>& paths,
                    std::ostream& out) {
  auto emit = [&](const char* name, const std::vector<int>& idx) {
    for (int i : idx) {
      const Recording& r = ds.recordings[i];
      out << name << '\t' << r.user_id << '\t' << r.session_id << '\t' << paths[i]
          << '\n';
    }
  };
  for (const std::string& user : ds.user_ids) {
    const UserSplit& s = ds.splits.at(user);
    emit("train", s.train);
    emit("val", s.val);
    emit("test", s.test);
  }
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path);
  std::vector<ManifestEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    ManifestEntry e;
    if (!std::getline(ss, e.split, '\t') || !std::getline(ss, e.user_id, '\t') ||
        !std::getline(ss, e.session_id, '\t') || !std::getline(ss, e.path))
      throw DataError(path + ": line " + std::to_string(line_no) + ": bad manifest entry");
    if (e.split != "train" && e.split != "val" && e.split != "test")
      throw DataError(path + ": line " + std::to_string(line_no) + ": unknown split " +
                      e.split);
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw DataError(path + ": empty manifest");
  return entries;
}

Dataset load_manifest_dataset(const std::string& manifest_path) {
  Dataset ds;
  std::map<std::string, UserSplit> splits;
  for (const ManifestEntry& e : read_manifest(manifest_path)) {
    Recording rec = load_recording(e.path);
    if (rec.user_id != e.user_id || rec.session_id != e.session_id)
      throw DataError(e.path + ": user/session mismatch with manifest");
    const int idx = static_cast<int>(ds.recordings.size());
    ds.recordings.push_back(std::move(rec));
    UserSplit& s = splits[e.user_id];
    (e.split == "train" ? s.train : e.split == "val" ? s.val : s.test).push_back(idx);
  }
  for (auto& [user, split] : splits) {
    if (split.train.empty() || split.test.empty())
      throw DataError("manifest user " + user + " is missing train or test entries");
    ds.user_ids.push_back(user);
    ds.splits[user] = std::move(split);
  }
  return ds;
}

}  // namespace reid
