#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace planar {

/// Fixed-length bit vector packed into 64-bit words. Bits past `size()` in the
/// last word are always zero so word-wise comparisons and popcounts are exact.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  std::size_t num_words() const { return words_.size(); }
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Parity of |this AND other|.
  bool dot(const BitVec& other) const {
    check_same(other);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
  }

  BitVec& operator^=(const BitVec& other) {
    check_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }
  BitVec& operator&=(const BitVec& other) {
    check_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec& a, const BitVec& b) = default;

  template <class Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        fn(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    for_each_set([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
  }

  static BitVec from_indices(std::size_t n, const std::vector<int>& idx) {
    BitVec v(n);
    for (int i : idx) {
      if (i < 0 || static_cast<std::size_t>(i) >= n) throw std::out_of_range("BitVec index out of range");
      v.flip(static_cast<std::size_t>(i));
    }
    return v;
  }

  /// Little-endian hex: character k encodes bits 4k..4k+3, lowest bit first.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out((size_ + 3) / 4, '0');
    for (std::size_t k = 0; k < out.size(); ++k) {
      unsigned nib = 0;
      for (std::size_t b = 0; b < 4; ++b) {
        const std::size_t i = 4 * k + b;
        if (i < size_ && get(i)) nib |= 1u << b;
      }
      out[k] = kDigits[nib];
    }
    return out;
  }

  static BitVec from_hex(std::size_t n, std::string_view hex) {
    if (hex.size() != (n + 3) / 4) throw std::invalid_argument("hex length does not match bit count");
    BitVec v(n);
    for (std::size_t k = 0; k < hex.size(); ++k) {
      const char c = hex[k];
      unsigned nib;
      if (c >= '0' && c <= '9') {
        nib = static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        nib = static_cast<unsigned>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        nib = static_cast<unsigned>(c - 'A' + 10);
      } else {
        throw std::invalid_argument("invalid hex digit");
      }
      for (std::size_t b = 0; b < 4; ++b) {
        if (!((nib >> b) & 1u)) continue;
        const std::size_t i = 4 * k + b;
        if (i >= n) throw std::invalid_argument("hex sets bits beyond length");
        v.set(i);
      }
    }
    return v;
  }

 private:
  void check_same(const BitVec& other) const {
    if (other.size_ != size_) throw std::invalid_argument("BitVec length mismatch");
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace planar
