#include "d1lc/prg.hpp"

#include "d1lc/error.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace d1lc {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::uint64_t low_mask(unsigned count) noexcept {
  return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
}

template <class WordFn>
std::uint64_t extract(WordFn&& word, std::uint64_t index, unsigned count) {
  if (count == 0) return 0;
  const std::uint64_t w = index >> 6;
  const unsigned off = static_cast<unsigned>(index & 63);
  std::uint64_t v = word(w) >> off;
  if (off + count > 64) v |= word(w + 1) << (64 - off);
  return v & low_mask(count);
}

int degree_of(std::uint64_t p) noexcept { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) noexcept {
  const int db = degree_of(b);
  for (int da = degree_of(a); da >= db; da = degree_of(a)) a ^= b << (da - db);
  return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f) noexcept {
  const int m = degree_of(f);
  const std::uint64_t top = std::uint64_t{1} << m;
  std::uint64_t r = 0;
  a = poly_mod(a, f);
  while (b != 0) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= f;
  }
  return r;
}

}  // namespace

EntropySource::EntropySource(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed ^ splitmix64(stream + 0x5EED))) {}

std::uint64_t EntropySource::word(std::uint64_t w) const noexcept { return splitmix64(key_ + w * 0xD1B54A32D192ED03ULL); }

std::uint64_t EntropySource::bits(std::uint64_t index, unsigned count) const {
  return extract([this](std::uint64_t w) { return word(w); }, index, count);
}

bool BinaryField::irreducible(std::uint64_t poly) {
  const int m = degree_of(poly);
  if (m < 1) return false;
  // Ben-Or: no irreducible factor of degree i <= m/2.
  std::uint64_t h = 2;  // the polynomial x
  for (int i = 1; i <= m / 2; ++i) {
    h = poly_mulmod(h, h, poly);
    if (poly_gcd(h ^ 2, poly) != 1) return false;
  }
  return true;
}

BinaryField::BinaryField(unsigned m) : m_(m), modulus_(0) {
  if (m < 1 || m > 32) throw Error(Errc::BadParameters, "field size must be in [1,32], got " + std::to_string(m));
  const std::uint64_t top = std::uint64_t{1} << m;
  for (std::uint64_t c = 0; c < top; ++c) {
    if (irreducible(top | c)) {
      modulus_ = top | c;
      break;
    }
  }
  if (m > 16) return;
  const std::uint64_t order = top - 1;
  std::vector<std::uint64_t> primes;
  std::uint64_t rest = order;
  for (std::uint64_t q = 2; q * q <= rest; ++q) {
    if (rest % q == 0) {
      primes.push_back(q);
      while (rest % q == 0) rest /= q;
    }
  }
  if (rest > 1) primes.push_back(rest);
  auto power = [this](std::uint64_t g, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e != 0) {
      if (e & 1) r = mul_slow(r, g);
      g = mul_slow(g, g);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t gen = 1;
  for (std::uint64_t g = (m == 1 ? 1 : 2); g < top; ++g) {
    bool primitive = true;
    for (std::uint64_t q : primes) primitive = primitive && power(g, order / q) != 1;
    if (primitive) {
      gen = g;
      break;
    }
  }
  exp_.resize(2 * order);
  log_.assign(top, 0);
  std::uint64_t x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = exp_[i + order] = static_cast<std::uint32_t>(x);
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_slow(x, gen);
  }
}

std::uint64_t BinaryField::mul_slow(std::uint64_t a, std::uint64_t b) const noexcept {
  return poly_mulmod(a, b, modulus_);
}

std::uint64_t BinaryField::mul(std::uint64_t a, std::uint64_t b) const noexcept {
  if (a == 0 || b == 0) return 0;
  if (exp_.empty()) return mul_slow(a, b);
  return exp_[log_[a] + log_[b]];
}

SeededGenerator::SeededGenerator(unsigned k, std::uint64_t output_bits, unsigned max_seed_bits)
    : k_(k), t_(output_bits), field_([output_bits] {
        for (unsigned m = 1; m <= 32; ++m) {
          if (static_cast<std::uint64_t>(m) << m >= output_bits) return BinaryField(m);
        }
        throw Error(Errc::BadParameters, "output length " + std::to_string(output_bits) + " too large");
      }()),
      seed_bits_(0) {
  if (k < 1) throw Error(Errc::BadParameters, "independence k must be at least 1");
  if (output_bits < 1) throw Error(Errc::BadParameters, "output length must be positive");
  if (max_seed_bits > 32) throw Error(Errc::SeedSpaceTooLarge, "seed length above 32 bits cannot be enumerated");
  seed_bits_ = std::min<unsigned>(max_seed_bits, k * field_.bits());
  if (seed_bits_ >= t_) seed_bits_ = static_cast<unsigned>(t_ - 1);
}

std::vector<std::uint64_t> SeededGenerator::coefficients(std::uint64_t seed) const {
  const unsigned m = field_.bits();
  const std::uint64_t mask = low_mask(m);
  std::vector<std::uint64_t> c(k_);
  if (exact()) {
    for (unsigned j = 0; j < k_; ++j) c[j] = (seed >> (j * m)) & mask;
  } else {
    const std::uint64_t base = splitmix64(seed);
    for (unsigned j = 0; j < k_; ++j) c[j] = splitmix64(base + j) & mask;
  }
  return c;
}

std::uint64_t SeededGenerator::block(const std::vector<std::uint64_t>& coeffs, std::uint64_t index) const noexcept {
  std::uint64_t acc = 0;
  for (std::size_t j = coeffs.size(); j-- > 0;) acc = field_.mul(acc, index) ^ coeffs[j];
  return acc;
}

namespace {

class BoundGenerator final : public BitSource {
 public:
  BoundGenerator(const SeededGenerator& gen, std::uint64_t seed)
      : gen_(gen), coeffs_(gen.coefficients(seed)), m_(gen.field_bits()) {}

  std::uint64_t bits(std::uint64_t index, unsigned count) const override {
    if (index + count > gen_.output_bits()) {
      throw Error(Errc::OutputLengthExceeded, "read past generator output at bit " + std::to_string(index + count));
    }
    std::uint64_t out = 0;
    unsigned pos = 0;
    while (pos < count) {
      const std::uint64_t b = index / m_;
      const unsigned off = static_cast<unsigned>(index % m_);
      const unsigned take = std::min(m_ - off, count - pos);
      if (b != cached_block_) {
        cached_block_ = b;
        cached_value_ = gen_.block(coeffs_, b);
      }
      out |= ((cached_value_ >> off) & low_mask(take)) << pos;
      pos += take;
      index += take;
    }
    return out;
  }
  std::uint64_t length() const override { return gen_.output_bits(); }

 private:
  const SeededGenerator& gen_;
  std::vector<std::uint64_t> coeffs_;
  unsigned m_;
  mutable std::uint64_t cached_block_ = ~std::uint64_t{0};
  mutable std::uint64_t cached_value_ = 0;
};

class BoundOracle final : public BitSource {
 public:
  BoundOracle(const TrueRandomOracle& oracle, std::uint64_t seed) : oracle_(oracle), seed_(seed) {}
  std::uint64_t bits(std::uint64_t index, unsigned count) const override { return oracle_.bits(seed_, index, count); }
  std::uint64_t length() const override { return oracle_.output_bits(); }

 private:
  const TrueRandomOracle& oracle_;
  std::uint64_t seed_;
};

}  // namespace

std::uint64_t SeededGenerator::bits(std::uint64_t seed, std::uint64_t index, unsigned count) const {
  return BoundGenerator(*this, seed).bits(index, count);
}

std::unique_ptr<BitSource> SeededGenerator::bind(std::uint64_t seed) const {
  return std::make_unique<BoundGenerator>(*this, seed);
}

TrueRandomOracle::TrueRandomOracle(unsigned seed_bits, std::uint64_t output_bits, std::uint64_t entropy_seed)
    : d_(seed_bits), t_(output_bits), row_words_((output_bits + 63) / 64) {
  if (output_bits < 1) throw Error(Errc::BadParameters, "output length must be positive");
  if (seed_bits > 24 || (row_words_ << seed_bits) > (std::uint64_t{1} << 26)) {
    throw Error(Errc::BadParameters, "oracle table of 2^" + std::to_string(seed_bits) + " x " +
                                         std::to_string(output_bits) + " bits is too large");
  }
  EntropySource entropy(entropy_seed, 0x0AC1E);
  table_.resize(row_words_ << seed_bits);
  for (std::size_t i = 0; i < table_.size(); ++i) table_[i] = entropy.bits(64 * i, 64);
}

std::uint64_t TrueRandomOracle::bits(std::uint64_t seed, std::uint64_t index, unsigned count) const {
  if (seed >> d_) throw Error(Errc::BadParameters, "seed out of range");
  if (index + count > t_) {
    throw Error(Errc::OutputLengthExceeded, "read past oracle row at bit " + std::to_string(index + count));
  }
  const std::uint64_t* row = table_.data() + seed * row_words_;
  return extract([row](std::uint64_t w) { return row[w]; }, index, count);
}

std::unique_ptr<BitSource> TrueRandomOracle::bind(std::uint64_t seed) const {
  return std::make_unique<BoundOracle>(*this, seed);
}

std::unique_ptr<RandomnessSource> build_source(const SourceParams& params) {
  if (params.kind == SourceKind::TrueRandomOracle) {
    return std::make_unique<TrueRandomOracle>(params.max_seed_bits, params.output_bits, params.entropy_seed);
  }
  return std::make_unique<SeededGenerator>(params.k, params.output_bits, params.max_seed_bits);
}

}  // namespace d1lc
