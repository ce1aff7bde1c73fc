#include "fqkd/random.hpp"

#include <algorithm>

#include "fqkd/error.hpp"

namespace fqkd {
namespace {

constexpr std::uint32_t kMultiplier0 = 0xD2511F53u;
constexpr std::uint32_t kMultiplier1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
constexpr int kRounds = 10;

// Counter word 3 tag separating sweep seed derivation from round streams.
constexpr std::uint32_t kDeriveTag = 0x5EED5EEDu;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline Philox4x32::Key split_key(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

inline std::uint64_t join(std::uint32_t lo, std::uint32_t hi) {
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < kRounds; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMultiplier0, ctr[0], hi0, lo0);
    mulhilo(kMultiplier1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t pos = position_++;
  if (pos & 1u) {
    return spare_;
  }
  const std::uint64_t block_index = pos >> 1;
  const Philox4x32::Counter ctr{
      static_cast<std::uint32_t>(block_index), static_cast<std::uint32_t>(block_index >> 32),
      static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
  const auto out = Philox4x32::block(ctr, split_key(seed_));
  spare_ = join(out[2], out[3]);
  return join(out[0], out[1]);
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t RandomStream::uniform_index(std::size_t n) {
  if (n == 0) {
    throw ContractViolation("uniform_index: n must be positive");
  }
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  std::uint64_t x = next_u64();
  while (x > limit) {
    x = next_u64();
  }
  return static_cast<std::size_t>(x % bound);
}

bool RandomStream::bernoulli(double p) {
  return uniform() < std::clamp(p, 0.0, 1.0);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(index),
                                static_cast<std::uint32_t>(index >> 32), 0u, kDeriveTag};
  const auto out = Philox4x32::block(ctr, split_key(base_seed));
  return join(out[0], out[1]);
}

}  // namespace fqkd
