#include <cstdint>
#include <cstring>
#include <fstream>

#include "reid/model.hpp"

namespace reid {

namespace {

constexpr char kMagic[4] = {'R', 'F', 'M', '1'};

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

template <typename Scalar>
void save_model(const FunnelModel<Scalar>& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint: " + path);
  out.write(kMagic, 4);
  put<std::uint32_t>(out, sizeof(Scalar));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(m.shape.input_width));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(m.shape.input_frames));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(m.shape.num_users));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(m.shape.hidden.size()));
  for (int h : m.shape.hidden) put<std::uint32_t>(out, static_cast<std::uint32_t>(h));
  out.write(reinterpret_cast<const char*>(m.norm_mean.data()),
            static_cast<std::streamsize>(sizeof(double) * m.norm_mean.size()));
  out.write(reinterpret_cast<const char*>(m.norm_std.data()),
            static_cast<std::streamsize>(sizeof(double) * m.norm_std.size()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(m.zero_variance_channels.size()));
  for (int c : m.zero_variance_channels) put<std::uint32_t>(out, static_cast<std::uint32_t>(c));
  out.write(reinterpret_cast<const char*>(m.params.data()),
            static_cast<std::streamsize>(sizeof(Scalar) * m.params.size()));
  if (!out) throw DataError("write failure on checkpoint: " + path);
}

template <typename Scalar>
FunnelModel<Scalar> load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw DataError("bad checkpoint header: " + path);
  if (get<std::uint32_t>(in) != sizeof(Scalar))
    throw DataError("checkpoint precision mismatch: " + path);

  FunnelModel<Scalar> m;
  m.shape.input_width = static_cast<int>(get<std::uint32_t>(in));
  m.shape.input_frames = static_cast<int>(get<std::uint32_t>(in));
  m.shape.num_users = static_cast<int>(get<std::uint32_t>(in));
  const std::uint32_t n_layers = get<std::uint32_t>(in);
  for (std::uint32_t i = 0; i < n_layers; ++i)
    m.shape.hidden.push_back(static_cast<int>(get<std::uint32_t>(in)));
  m.shape.validate();
  m.norm_mean.resize(m.shape.input_width);
  m.norm_std.resize(m.shape.input_width);
  in.read(reinterpret_cast<char*>(m.norm_mean.data()),
          static_cast<std::streamsize>(sizeof(double) * m.norm_mean.size()));
  in.read(reinterpret_cast<char*>(m.norm_std.data()),
          static_cast<std::streamsize>(sizeof(double) * m.norm_std.size()));
  const std::uint32_t n_zero = get<std::uint32_t>(in);
  for (std::uint32_t i = 0; i < n_zero; ++i)
    m.zero_variance_channels.push_back(static_cast<int>(get<std::uint32_t>(in)));
  m.params.resize(m.shape.param_count());
  in.read(reinterpret_cast<char*>(m.params.data()),
          static_cast<std::streamsize>(sizeof(Scalar) * m.params.size()));
  if (!in) throw DataError("truncated checkpoint: " + path);
  return m;
}

int checkpoint_precision(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw DataError("bad checkpoint header: " + path);
  return static_cast<int>(get<std::uint32_t>(in));
}

template void save_model<double>(const FunnelModel<double>&, const std::string&);
template void save_model<float>(const FunnelModel<float>&, const std::string&);
template FunnelModel<double> load_model<double>(const std::string&);
template FunnelModel<float> load_model<float>(const std::string&);

}  // namespace reid
