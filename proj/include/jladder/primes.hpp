#pragma once

// Prime counting for the ordinates used by the ladder experiments.
//
// PrimeCounter holds one bit per odd number up to its limit (bit j of the
// table stands for 2j + 1) and a running popcount per 64-bit word, so
// pi(x) costs one table lookup and one popcount.
//
// Cache file layout (little endian):
//   bytes  0..3   magic "JLPC"
//   bytes  4..7   format version (uint32, currently 1)
//   bytes  8..15  limit (uint64)
//   then ceil((limit / 2 + 1) / 64) uint64 words of the odd-number bit array

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/zeta.hpp>

#include "detail/binary_io.hpp"
#include "errors.hpp"

namespace jladder {

class PrimeCounter {
 public:
  static constexpr std::uint64_t kDefaultLimit = 100'000'000;
  static constexpr std::uint32_t kFormatVersion = 1;

  /// Segmented sieve of Eratosthenes over the odd numbers up to limit.
  explicit PrimeCounter(std::uint64_t limit = kDefaultLimit) : limit_(limit) {
    if (limit < 2) throw DomainError("PrimeCounter: limit must be >= 2");
    const std::uint64_t odd_count = limit / 2 + 1;  // indices 0..limit/2
    words_.assign((odd_count + 63) / 64, ~std::uint64_t{0});
    clear_bit(0);  // 1 is not prime

    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    std::vector<std::uint64_t> base;
    {
      std::vector<bool> small(root + 1, true);
      for (std::uint64_t p = 3; p <= root; p += 2) {
        if (!small[p]) continue;
        base.push_back(p);
        for (std::uint64_t m = p * p; m <= root; m += 2 * p) small[m] = false;
      }
    }
    constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;  // odd numbers per segment
    std::vector<std::uint64_t> next(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) next[i] = base[i] * base[i];
    for (std::uint64_t lo = 0; lo < odd_count; lo += kSegment) {
      const std::uint64_t hi = std::min(odd_count, lo + kSegment);
      const std::uint64_t hi_value = 2 * hi + 1;  // first number past the segment
      for (std::size_t i = 0; i < base.size(); ++i) {
        const std::uint64_t p = base[i];
        std::uint64_t m = next[i];
        for (; m < hi_value; m += 2 * p) clear_bit(m / 2);
        next[i] = m;
      }
    }
    // bits beyond the limit
    for (std::uint64_t j = odd_count; j < words_.size() * 64; ++j) clear_bit(j);
    build_prefix();
  }

  [[nodiscard]] std::uint64_t limit() const { return limit_; }

  /// Number of primes <= x; 0 <= x <= limit.
  [[nodiscard]] std::uint64_t count(double x) const {
    if (!(x >= 0.0)) throw RangeError("pi_exact: argument must be >= 0");
    if (x > static_cast<double>(limit_)) {
      throw RangeError("pi_exact: argument " + std::to_string(x) + " above sieve limit " + std::to_string(limit_));
    }
    const auto n = static_cast<std::uint64_t>(std::floor(x));
    if (n < 2) return 0;
    const std::uint64_t j = (n - 1) / 2;  // largest odd <= n is 2j + 1
    const std::uint64_t w = j / 64;
    const unsigned bit = j % 64;
    const std::uint64_t mask = bit == 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (bit + 1)) - 1);
    return 1 + prefix_[w] + static_cast<std::uint64_t>(std::popcount(words_[w] & mask));
  }

  /// True when n <= limit is prime.
  [[nodiscard]] bool is_prime(std::uint64_t n) const {
    if (n > limit_) throw RangeError("is_prime: argument above sieve limit");
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    const std::uint64_t j = n / 2;
    return (words_[j / 64] >> (j % 64)) & 1U;
  }

  void save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("PrimeCounter::save: cannot open " + path.string());
    out.write("JLPC", 4);
    detail::write_le(out, kFormatVersion);
    detail::write_le(out, limit_);
    for (const auto w : words_) detail::write_le(out, w);
    if (!out) throw FormatError("PrimeCounter::save: write failed for " + path.string());
  }

  static PrimeCounter load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("PrimeCounter::load: cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "JLPC", 4) != 0) throw FormatError("PrimeCounter::load: bad magic");
    const auto version = detail::read_le<std::uint32_t>(in);
    if (version != kFormatVersion) throw FormatError("PrimeCounter::load: unsupported version");
    const auto limit = detail::read_le<std::uint64_t>(in);
    if (limit < 2) throw FormatError("PrimeCounter::load: bad limit");
    PrimeCounter pc{Empty{}};
    pc.limit_ = limit;
    pc.words_.resize((limit / 2 + 1 + 63) / 64);
    for (auto& w : pc.words_) w = detail::read_le<std::uint64_t>(in);
    if (!in) throw FormatError("PrimeCounter::load: truncated file");
    pc.build_prefix();
    return pc;
  }

  /// Loads `<dir>/primes_<limit>.bin` when present and valid, otherwise sieves
  /// and writes it.
  static PrimeCounter load_or_build(const std::filesystem::path& dir, std::uint64_t limit = kDefaultLimit) {
    const auto path = dir / ("primes_" + std::to_string(limit) + ".bin");
    if (std::filesystem::exists(path)) {
      try {
        auto pc = load(path);
        if (pc.limit() == limit) return pc;
      } catch (const FormatError&) {
      }
    }
    PrimeCounter pc(limit);
    std::filesystem::create_directories(dir);
    const auto tmp = detail::temp_sibling(path);
    pc.save(tmp);
    std::filesystem::rename(tmp, path);
    return pc;
  }

 private:
  struct Empty {};
  explicit PrimeCounter(Empty) {}

  void clear_bit(std::uint64_t j) { words_[j / 64] &= ~(std::uint64_t{1} << (j % 64)); }

  void build_prefix() {
    prefix_.resize(words_.size());
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      prefix_[w] = acc;
      acc += static_cast<std::uint64_t>(std::popcount(words_[w]));
    }
  }

  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> prefix_;
};

/// Exact pi(x) from a sieve table.
inline std::uint64_t pi_exact(double x, const PrimeCounter& counter) { return counter.count(x); }

/// Riemann's R(x) = 1 + sum_k (ln x)^k / (k k! zeta(k+1)), an li-based
/// estimate of pi(x) for arguments beyond a sieve limit. R(2) = 1.5410...
inline double pi_approx(double x) {
  if (!(x >= 2.0)) throw DomainError("pi_approx: argument must be >= 2");
  const double lx = std::log(x);
  double term = 1.0;  // (ln x)^k / k!
  double sum = 1.0;
  for (int k = 1; k < 400; ++k) {
    term *= lx / k;
    const double add = term / (k * boost::math::zeta(static_cast<double>(k + 1)));
    sum += add;
    if (k > lx && add < 1e-17 * sum) break;
  }
  return sum;
}

}  // namespace jladder
