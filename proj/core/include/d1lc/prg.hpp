#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace d1lc {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Indexed supplier of bits. bits(i, count) returns bits i..i+count-1 packed
/// with bit i in the lowest position; count <= 64.
class BitSource {
 public:
  virtual ~BitSource() = default;
  virtual std::uint64_t bits(std::uint64_t index, unsigned count) const = 0;
  virtual std::uint64_t length() const = 0;
};

/// Counter-based stream of uniform bits keyed by (entropy seed, stream id).
class EntropySource final : public BitSource {
 public:
  EntropySource(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t bits(std::uint64_t index, unsigned count) const override;
  std::uint64_t length() const override { return ~std::uint64_t{0}; }

 private:
  std::uint64_t word(std::uint64_t w) const noexcept;
  std::uint64_t key_;
};

/// Arithmetic in GF(2^m) for 1 <= m <= 32, modulo the smallest irreducible
/// polynomial of degree m.
class BinaryField {
 public:
  explicit BinaryField(unsigned m);
  unsigned bits() const noexcept { return m_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const noexcept;

  static bool irreducible(std::uint64_t poly);

 private:
  unsigned m_;
  std::uint64_t modulus_;
  // log/exp tables over a primitive element, built for m <= 16.
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
};

enum class SourceKind { SeededGenerator, TrueRandomOracle };

/// Family of bit strings of length output_bits() indexed by seeds in
/// [0, 2^seed_bits()).
class RandomnessSource {
 public:
  virtual ~RandomnessSource() = default;
  virtual SourceKind kind() const noexcept = 0;
  virtual unsigned seed_bits() const noexcept = 0;
  virtual std::uint64_t output_bits() const noexcept = 0;
  virtual std::uint64_t bits(std::uint64_t seed, std::uint64_t index, unsigned count) const = 0;
  /// Bit string for one seed, with per-seed setup done once.
  virtual std::unique_ptr<BitSource> bind(std::uint64_t seed) const = 0;
};

/// Output bit i is bit (i mod m) of P_s(i div m), P_s a polynomial of degree
/// k-1 over GF(2^m). With seed_bits == k*m the seed is the coefficient vector
/// and blocks are exactly k-wise independent; shorter seeds are stretched into
/// coefficients with splitmix64.
class SeededGenerator final : public RandomnessSource {
 public:
  SeededGenerator(unsigned k, std::uint64_t output_bits, unsigned max_seed_bits);
  SourceKind kind() const noexcept override { return SourceKind::SeededGenerator; }
  unsigned seed_bits() const noexcept override { return seed_bits_; }
  std::uint64_t output_bits() const noexcept override { return t_; }
  std::uint64_t bits(std::uint64_t seed, std::uint64_t index, unsigned count) const override;
  std::unique_ptr<BitSource> bind(std::uint64_t seed) const override;

  unsigned independence() const noexcept { return k_; }
  unsigned field_bits() const noexcept { return field_.bits(); }
  bool exact() const noexcept { return seed_bits_ == k_ * field_.bits(); }
  std::vector<std::uint64_t> coefficients(std::uint64_t seed) const;
  std::uint64_t block(const std::vector<std::uint64_t>& coeffs, std::uint64_t index) const noexcept;

 private:
  unsigned k_;
  std::uint64_t t_;
  BinaryField field_;
  unsigned seed_bits_;
};

/// Frozen table of 2^d * t uniform bits drawn once from an entropy seed.
class TrueRandomOracle final : public RandomnessSource {
 public:
  TrueRandomOracle(unsigned seed_bits, std::uint64_t output_bits, std::uint64_t entropy_seed);
  SourceKind kind() const noexcept override { return SourceKind::TrueRandomOracle; }
  unsigned seed_bits() const noexcept override { return d_; }
  std::uint64_t output_bits() const noexcept override { return t_; }
  std::uint64_t bits(std::uint64_t seed, std::uint64_t index, unsigned count) const override;
  std::unique_ptr<BitSource> bind(std::uint64_t seed) const override;
  std::uint64_t table_bits() const noexcept { return (std::uint64_t{1} << d_) * t_; }

 private:
  unsigned d_;
  std::uint64_t t_;
  std::uint64_t row_words_;
  std::vector<std::uint64_t> table_;
};

struct SourceParams {
  SourceKind kind = SourceKind::SeededGenerator;
  std::uint64_t output_bits = 0;
  unsigned max_seed_bits = 8;
  unsigned k = 8;
  std::uint64_t entropy_seed = 0;
};

std::unique_ptr<RandomnessSource> build_source(const SourceParams& params);

}  // namespace d1lc
