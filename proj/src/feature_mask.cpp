#include "kfs/feature_mask.hpp"

#include <bit>
#include <stdexcept>

#include "kfs/error.hpp"

namespace kfs {

namespace {

std::size_t word_count(std::size_t n_bits) { return (n_bits + 63) / 64; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

FeatureMask::FeatureMask(std::size_t n_bits)
    : n_bits_(n_bits), words_(word_count(n_bits), 0) {}

FeatureMask FeatureMask::from_bits(std::string_view bits) {
  FeatureMask m(bits.size());
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1') {
      m.set(j);
    } else if (bits[j] != '0') {
      throw Error("invalid bit string '" + std::string(bits) + "'");
    }
  }
  return m;
}

FeatureMask FeatureMask::from_hex(std::string_view hex, std::size_t n_bits) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  FeatureMask m(n_bits);
  const std::size_t digits = hex.size();
  for (std::size_t d = 0; d < digits; ++d) {
    const int v = hex_value(hex[digits - 1 - d]);
    if (v < 0) throw Error("invalid hex mask '" + std::string(hex) + "'");
    for (int b = 0; b < 4; ++b) {
      if (!((v >> b) & 1)) continue;
      const std::size_t j = d * 4 + static_cast<std::size_t>(b);
      if (j >= n_bits) {
        throw Error("hex mask '" + std::string(hex) + "' sets bit " +
                    std::to_string(j) + " beyond " + std::to_string(n_bits) +
                    " features");
      }
      m.set(j);
    }
  }
  return m;
}

FeatureMask FeatureMask::from_indices(std::size_t n_bits,
                                      const std::vector<std::size_t>& indices) {
  FeatureMask m(n_bits);
  for (std::size_t j : indices) {
    if (j >= n_bits) throw Error("feature index out of range");
    m.set(j);
  }
  return m;
}

FeatureMask FeatureMask::from_integer(std::uint64_t value, std::size_t n_bits) {
  if (n_bits > 64) throw Error("from_integer supports at most 64 bits");
  FeatureMask m(n_bits);
  if (n_bits > 0) {
    const std::uint64_t keep =
        n_bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_bits) - 1;
    m.words_[0] = value & keep;
  }
  return m;
}

void FeatureMask::set(std::size_t i, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= bit;
  } else {
    words_[i / 64] &= ~bit;
  }
}

std::size_t FeatureMask::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool FeatureMask::none() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::vector<std::size_t> FeatureMask::selected() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t i = 0; i < n_bits_; ++i) {
    if (test(i)) out.push_back(i);
  }
  return out;
}

std::string FeatureMask::to_bits() const {
  std::string s(n_bits_, '0');
  for (std::size_t i = 0; i < n_bits_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

std::string FeatureMask::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (n_bits_ + 3) / 4;
  std::string s(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      const std::size_t j = d * 4 + static_cast<std::size_t>(b);
      if (j < n_bits_ && test(j)) v |= 1 << b;
    }
    s[digits - 1 - d] = kDigits[v];
  }
  return s;
}

FeatureMask FeatureMask::operator^(const FeatureMask& other) const {
  if (other.n_bits_ != n_bits_) throw Error("mask length mismatch");
  FeatureMask out(n_bits_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    out.words_[w] = words_[w] ^ other.words_[w];
  }
  return out;
}

FeatureMask FeatureMask::operator&(const FeatureMask& other) const {
  if (other.n_bits_ != n_bits_) throw Error("mask length mismatch");
  FeatureMask out(n_bits_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    out.words_[w] = words_[w] & other.words_[w];
  }
  return out;
}

std::size_t FeatureMask::hash() const {
  // FNV-1a over the words, seeded with the length.
  std::uint64_t h = 1469598103934665603ull ^ n_bits_;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace kfs
