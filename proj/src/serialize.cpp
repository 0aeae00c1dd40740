#include "steadymps/serialize.hpp"

#include <cstdint>
#include <fstream>
#include <vector>

namespace steadymps {

namespace {

constexpr std::uint32_t kMpsMagic = 0x53504d53;  // "SMPS"
constexpr std::uint32_t kMpoMagic = 0x4f504d53;  // "SMPO"
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_i64(std::ostream& os, std::int64_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!is) throw SerializationError("unexpected end of stream");
  return v;
}

std::int64_t read_i64(std::istream& is) {
  std::int64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!is) throw SerializationError("unexpected end of stream");
  return v;
}

void write_tensor(std::ostream& os, const Tensor& t) {
  write_i64(os, t.rank());
  for (long k = 0; k < t.rank(); ++k) write_i64(os, t.dim(k));
  os.write(reinterpret_cast<const char*>(t.data()),
           static_cast<std::streamsize>(sizeof(Complex)) * t.size());
}

Tensor read_tensor(std::istream& is) {
  const long rank = read_i64(is);
  if (rank < 0 || rank > 16) throw SerializationError("corrupt tensor rank");
  std::vector<long> dims;
  for (long k = 0; k < rank; ++k) dims.push_back(read_i64(is));
  Tensor t(dims);
  is.read(reinterpret_cast<char*>(t.data()),
          static_cast<std::streamsize>(sizeof(Complex)) * t.size());
  if (!is) throw SerializationError("unexpected end of stream");
  return t;
}

void check_header(std::istream& is, std::uint32_t magic) {
  if (read_u32(is) != magic) throw SerializationError("bad magic");
  const std::uint32_t version = read_u32(is);
  if (version != kVersion)
    throw SerializationError("unsupported container version " +
                             std::to_string(version));
}

}  // namespace

void save_mps(std::ostream& os, const Mps& psi) {
  write_u32(os, kMpsMagic);
  write_u32(os, kVersion);
  write_i64(os, psi.n_sites());
  write_i64(os, psi.local_dim());
  write_i64(os, psi.gauge_center() ? *psi.gauge_center() : -1);
  for (long i = 0; i < psi.n_sites(); ++i) write_tensor(os, psi.site(i));
}

Mps load_mps(std::istream& is) {
  check_header(is, kMpsMagic);
  const long n = read_i64(is);
  const long local_dim = read_i64(is);
  const long gauge = read_i64(is);
  std::vector<Tensor> ts;
  for (long i = 0; i < n; ++i) ts.push_back(read_tensor(is));
  return Mps(local_dim, std::move(ts),
             gauge >= 0 ? std::optional<long>(gauge) : std::nullopt);
}

void save_mps(const std::string& path, const Mps& psi) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SerializationError("cannot open " + path + " for writing");
  save_mps(os, psi);
}

Mps load_mps(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SerializationError("cannot open " + path);
  return load_mps(is);
}

void save_mpo(std::ostream& os, const Mpo& o) {
  write_u32(os, kMpoMagic);
  write_u32(os, kVersion);
  write_i64(os, o.n_sites());
  write_i64(os, o.local_dim());
  for (long i = 0; i < o.n_sites(); ++i) write_tensor(os, o.site(i));
}

Mpo load_mpo(std::istream& is) {
  check_header(is, kMpoMagic);
  const long n = read_i64(is);
  const long local_dim = read_i64(is);
  std::vector<Tensor> ts;
  for (long i = 0; i < n; ++i) ts.push_back(read_tensor(is));
  return Mpo(local_dim, std::move(ts));
}

void save_mpo(const std::string& path, const Mpo& o) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SerializationError("cannot open " + path + " for writing");
  save_mpo(os, o);
}

Mpo load_mpo(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SerializationError("cannot open " + path);
  return load_mpo(is);
}

}  // namespace steadymps
