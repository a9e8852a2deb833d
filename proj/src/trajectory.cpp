#include "nozzle/trajectory.hpp"

#include <bit>
#include <cstdint>
#include <fstream>

#include "nozzle/errors.hpp"

namespace nozzle {

namespace {

static_assert(std::endian::native == std::endian::little, "trajectory IO assumes little endian");

constexpr const char* kMagic = "NOZZLETRAJ 1\n";

template <class T>
void put(std::ostream& os, T value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

void put_doubles(std::ostream& os, const std::vector<double>& v) {
  os.write(reinterpret_cast<const char*>(v.data()),
           static_cast<std::streamsize>(v.size() * sizeof(double)));
}

template <class T>
T get(std::istream& is, const std::string& path) {
  T value{};
  if (!is.read(reinterpret_cast<char*>(&value), sizeof(T)))
    throw IoError(path + ": truncated trajectory file");
  return value;
}

std::vector<double> get_doubles(std::istream& is, std::size_t n, const std::string& path) {
  std::vector<double> v(n);
  if (!is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double))))
    throw IoError(path + ": truncated trajectory file");
  return v;
}

}  // namespace

void Trajectory::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << kMagic;
  put<std::uint64_t>(os, config_text.size());
  os.write(config_text.data(), static_cast<std::streamsize>(config_text.size()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(problem));
  put<std::uint64_t>(os, n);
  put(os, dx);
  put(os, x_interest);
  put(os, x_max);
  put<std::uint64_t>(os, stride);
  put<std::uint64_t>(os, snapshots.size());
  for (const auto& s : snapshots) {
    if (s.z.size() != n || s.w.size() != n) throw InternalError("snapshot size mismatch");
    put(os, s.t);
    put(os, s.z_b);
    put(os, s.w_b);
    put_doubles(os, s.z);
    put_doubles(os, s.w);
  }
  if (!os) throw IoError("write to " + path + " failed");
}

Trajectory Trajectory::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  std::string magic(std::char_traits<char>::length(kMagic), '\0');
  if (!is.read(magic.data(), static_cast<std::streamsize>(magic.size())) || magic != kMagic)
    throw IoError(path + ": not a trajectory file");
  Trajectory t;
  const auto text_size = get<std::uint64_t>(is, path);
  if (text_size > (1u << 26)) throw IoError(path + ": corrupt header");
  t.config_text.resize(text_size);
  if (!is.read(t.config_text.data(), static_cast<std::streamsize>(text_size)))
    throw IoError(path + ": truncated trajectory file");
  const auto problem = get<std::uint32_t>(is, path);
  if (problem > 2) throw IoError(path + ": corrupt header");
  t.problem = static_cast<Problem>(problem);
  t.n = get<std::uint64_t>(is, path);
  t.dx = get<double>(is, path);
  t.x_interest = get<double>(is, path);
  t.x_max = get<double>(is, path);
  t.stride = get<std::uint64_t>(is, path);
  const auto count = get<std::uint64_t>(is, path);
  if (t.n == 0 || t.n > (1u << 26) || count > (1u << 26)) throw IoError(path + ": corrupt header");
  t.snapshots.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    Snapshot s;
    s.t = get<double>(is, path);
    s.z_b = get<double>(is, path);
    s.w_b = get<double>(is, path);
    s.z = get_doubles(is, t.n, path);
    s.w = get_doubles(is, t.n, path);
    t.snapshots.push_back(std::move(s));
  }
  return t;
}

}  // namespace nozzle
