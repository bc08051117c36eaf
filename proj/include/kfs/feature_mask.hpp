#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace kfs {

// Fixed-length bit vector selecting a feature subset. Bit i set means
// feature i is selected.
//
// Text forms:
//   bit string  "10110"   character j is bit j (feature 0 first)
//   hex         "0d"      bit j is bit (j % 4) of hex digit (j / 4) counted
//                         from the right, i.e. the mask read as an unsigned
//                         integer with feature 0 as the least significant bit.
//                         Always ceil(N/4) digits, lowercase.
class FeatureMask {
 public:
  FeatureMask() = default;
  explicit FeatureMask(std::size_t n_bits);

  static FeatureMask from_bits(std::string_view bits);
  static FeatureMask from_hex(std::string_view hex, std::size_t n_bits);
  static FeatureMask from_indices(std::size_t n_bits,
                                  const std::vector<std::size_t>& indices);
  // Low n_bits of value; n_bits <= 64.
  static FeatureMask from_integer(std::uint64_t value, std::size_t n_bits);

  std::size_t size() const { return n_bits_; }
  bool test(std::size_t i) const {
    return (words_[i / 64] >> (i % 64)) & 1u;
  }
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  std::size_t count() const;
  bool none() const;
  bool any() const { return !none(); }

  std::vector<std::size_t> selected() const;

  std::string to_bits() const;
  std::string to_hex() const;

  FeatureMask operator^(const FeatureMask& other) const;
  FeatureMask operator&(const FeatureMask& other) const;

  bool operator==(const FeatureMask& other) const = default;

  std::size_t hash() const;

 private:
  std::size_t n_bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace kfs

template <>
struct std::hash<kfs::FeatureMask> {
  std::size_t operator()(const kfs::FeatureMask& m) const noexcept {
    return m.hash();
  }
};
