#include <array>
#include <cstring>
#include <fstream>

#include "pvlab/errors.hpp"
#include "pvlab/numtheory.hpp"

namespace pvlab {

namespace {

constexpr std::array<char, 4> kMagic{'P', 'V', 'L', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::ostream& out, T v) {
  std::array<char, sizeof(T)> buf{};
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf.data(), buf.size());
}

template <typename T>
bool get_le(std::istream& in, T& v) {
  std::array<unsigned char, sizeof(T)> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size())) return false;
  v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
  return true;
}

}  // namespace

void save_prime_cache(const PrimeTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open prime cache for writing: " + path.string());
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kVersion);
  put_le<std::uint64_t>(out, table.n_max());
  std::uint64_t prev = 0;
  for (const auto p : table.primes()) {
    put_le<std::uint64_t>(out, p - prev);
    prev = p;
  }
  if (!out) throw IoError("failed writing prime cache: " + path.string());
}

PrimeTable load_prime_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open prime cache: " + path.string());
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw IoError("bad prime cache magic in " + path.string());
  std::uint32_t version = 0;
  std::uint64_t n_max = 0;
  if (!get_le(in, version) || !get_le(in, n_max)) throw IoError("truncated prime cache header in " + path.string());
  if (version != kVersion) throw IoError("unsupported prime cache version " + std::to_string(version));
  std::vector<std::uint64_t> primes;
  std::uint64_t delta = 0, acc = 0;
  while (get_le(in, delta)) {
    acc += delta;
    primes.push_back(acc);
  }
  if (!in.eof() || in.gcount() != 0) throw IoError("trailing bytes in prime cache " + path.string());
  try {
    return PrimeTable::from_primes(n_max, std::move(primes));
  } catch (const DomainError& e) {
    throw IoError(std::string("corrupt prime cache: ") + e.what());
  }
}

}  // namespace pvlab
