#pragma once

#include <array>
#include <cstdint>

namespace torus_jscc {

/// Philox4x64-10 counter-based generator (Salmon et al., SC'11).
///
/// Output for a given (counter, key) is fixed by the algorithm, so streams
/// are reproducible across platforms and compilers.
struct Philox4x64 {
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static Counter block(Counter ctr, Key key) {
    ctr = round(ctr, key);
    for (int r = 1; r < 10; ++r) {
      key[0] += 0x9E3779B97F4A7C15ULL;
      key[1] += 0xBB67AE8584CAA73BULL;
      ctr = round(ctr, key);
    }
    return ctr;
  }

 private:
  static Counter round(const Counter& c, const Key& k) {
    const unsigned __int128 p0 = static_cast<unsigned __int128>(0xD2E7470EE14C6C93ULL) * c[0];
    const unsigned __int128 p1 = static_cast<unsigned __int128>(0xCA5A826395121157ULL) * c[2];
    const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
    const auto lo0 = static_cast<std::uint64_t>(p0);
    const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
    const auto lo1 = static_cast<std::uint64_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Sequential stream over Philox blocks with counter 0, 1, 2, ... under a
/// fixed key.
class PhiloxStream {
 public:
  using result_type = std::uint64_t;

  PhiloxStream(std::uint64_t key0, std::uint64_t key1) : key_{key0, key1} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    if (pos_ == 4) {
      buf_ = Philox4x64::block(ctr_, key_);
      for (auto& w : ctr_)
        if (++w != 0) break;
      pos_ = 0;
    }
    return buf_[pos_++];
  }

 private:
  Philox4x64::Key key_;
  Philox4x64::Counter ctr_{0, 0, 0, 0};
  Philox4x64::Counter buf_{};
  int pos_ = 4;
};

}  // namespace torus_jscc
