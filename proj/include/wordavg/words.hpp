#pragma once

// Words over the integer Fourier alphabet: enumeration, shuffles and
// deconcatenations.

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wordavg/scalar.hpp"

namespace wordavg {

using Letter = int;

/// Default truncation length used across the experiments.
inline constexpr std::size_t kDefaultMaxLength = 7;

/// A finite string of letters stored inline. Letters are limited to
/// [-127, 127] and length to kCapacity; letter sums produced by the
/// coefficient recursions stay far inside both limits at the supported lengths.
class Word {
 public:
  static constexpr std::size_t kCapacity = 15;
  static constexpr Letter kMaxAbsLetter = 127;

  Word() = default;
  Word(std::initializer_list<Letter> letters);
  explicit Word(std::span<const Letter> letters);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_[0]; }
  Letter back() const { return letters_[size_ - 1]; }

  /// First n letters.
  Word prefix(std::size_t n) const;
  /// Letters from position i to the end.
  Word suffix_from(std::size_t i) const;
  Word appended(Letter k) const;
  Word prepended(Letter k) const;
  Word concat(const Word& other) const;
  /// Every letter k replaced by -k.
  Word negated() const;
  /// Number of leading zero letters.
  std::size_t leading_zeros() const;
  std::vector<Letter> letters() const;

  /// Dotted text form, e.g. "0.1.-3"; the empty word is "".
  std::string to_string() const;
  static Word parse(std::string_view text);

  friend bool operator==(const Word& a, const Word& b) {
    return a.size_ == b.size_ && a.letters_ == b.letters_;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  /// Shorter words first, then lexicographic on letters.
  friend bool operator<(const Word& a, const Word& b);

  std::size_t hash() const;

 private:
  static std::int8_t checked(Letter k);

  std::uint8_t size_ = 0;
  std::array<std::int8_t, kCapacity> letters_{};
};

struct WordHash {
  std::size_t operator()(const Word& w) const { return w.hash(); }
};

/// Streams the |letters|^n words of length n in lexicographic order (letters are
/// sorted first). Ranges [begin_rank, end_rank) allow disjoint chunks to be
/// consumed independently.
class WordEnumerator {
 public:
  WordEnumerator(std::vector<Letter> letters, std::size_t n);
  WordEnumerator(std::vector<Letter> letters, std::size_t n, std::uint64_t begin_rank,
                 std::uint64_t end_rank);

  /// Total number of words of this length.
  std::uint64_t total() const { return total_; }
  /// Next word, or false when the range is exhausted.
  bool next(Word& out);

 private:
  std::vector<Letter> letters_;
  std::size_t n_;
  std::uint64_t total_;
  std::uint64_t rank_;
  std::uint64_t end_;
};

std::vector<Word> words_of_length(const std::vector<Letter>& letters, std::size_t n);

/// All order-preserving interleavings, as a multiset (repeats kept).
std::vector<Word> shuffle(const Word& u, const Word& v);

/// All (prefix, suffix) splittings with prefix length 0..|w|.
std::vector<std::pair<Word, Word>> deconcatenations(const Word& w);

/// Dense ranking of all words of length <= max_length over a fixed alphabet:
/// shorter words first, lexicographic within a length.
class WordIndex {
 public:
  WordIndex(std::vector<Letter> alphabet, std::size_t max_length);

  const std::vector<Letter>& alphabet() const { return alphabet_; }
  std::size_t max_length() const { return max_length_; }
  std::size_t radix() const { return alphabet_.size(); }
  std::uint64_t size() const { return offsets_.back(); }
  /// Rank of the first word of length n.
  std::uint64_t offset(std::size_t n) const { return offsets_[n]; }
  std::uint64_t count(std::size_t n) const { return powers_[n]; }
  std::uint64_t power(std::size_t n) const { return powers_[n]; }

  bool contains(const Word& w) const;
  std::uint64_t rank(const Word& w) const;
  Word word(std::uint64_t rank) const;
  /// Rank of the word of length n whose base-radix digit value is `digits`.
  std::uint64_t rank_of_digits(std::size_t n, std::uint64_t digits) const {
    return offsets_[n] + digits;
  }
  int digit(Letter k) const;

 private:
  std::vector<Letter> alphabet_;
  std::size_t max_length_;
  std::vector<std::uint64_t> powers_;
  std::vector<std::uint64_t> offsets_;
  int min_letter_ = 0;
  std::vector<int> digit_of_;
};

}  // namespace wordavg

template <>
struct std::hash<wordavg::Word> {
  std::size_t operator()(const wordavg::Word& w) const { return w.hash(); }
};
