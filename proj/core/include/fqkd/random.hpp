#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace fqkd {

/// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
///
/// Maps a 128-bit counter and a 64-bit key to 128 pseudorandom bits with no
/// hidden state, so any (key, counter) position can be evaluated directly.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter counter, Key key);
};

/// A random stream addressed by (master seed, stream id, draw index).
///
/// Every protocol round owns the stream whose id is its round index, so the
/// values a round sees never depend on which worker processed it or in which
/// order rounds were scheduled.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  /// True with probability p (p clamped to [0, 1]).
  bool bernoulli(double p);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  /// Number of 64-bit words drawn so far.
  std::uint64_t position() const { return position_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t position_ = 0;
  std::uint64_t spare_ = 0;
};

/// Derive an independent child seed from (base seed, index). Used for the
/// per-value seeds of a parameter sweep.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index);

}  // namespace fqkd
