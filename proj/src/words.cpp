#include "wordavg/words.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>

namespace wordavg {

std::int8_t Word::checked(Letter k) {
  if (k > kMaxAbsLetter || k < -kMaxAbsLetter) {
    throw ValidationError("letter out of range: " + std::to_string(k));
  }
  return static_cast<std::int8_t>(k);
}

Word::Word(std::initializer_list<Letter> letters)
    : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

Word::Word(std::span<const Letter> letters) {
  if (letters.size() > kCapacity) throw ValidationError("word longer than capacity");
  size_ = static_cast<std::uint8_t>(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) letters_[i] = checked(letters[i]);
}

Word Word::prefix(std::size_t n) const {
  Word w;
  w.size_ = static_cast<std::uint8_t>(std::min<std::size_t>(n, size_));
  std::copy_n(letters_.begin(), w.size_, w.letters_.begin());
  return w;
}

Word Word::suffix_from(std::size_t i) const {
  Word w;
  if (i >= size_) return w;
  w.size_ = static_cast<std::uint8_t>(size_ - i);
  std::copy_n(letters_.begin() + static_cast<std::ptrdiff_t>(i), w.size_, w.letters_.begin());
  return w;
}

Word Word::appended(Letter k) const {
  if (size_ == kCapacity) throw ValidationError("word longer than capacity");
  Word w = *this;
  w.letters_[w.size_++] = checked(k);
  return w;
}

Word Word::prepended(Letter k) const {
  if (size_ == kCapacity) throw ValidationError("word longer than capacity");
  Word w;
  w.size_ = static_cast<std::uint8_t>(size_ + 1);
  w.letters_[0] = checked(k);
  std::copy_n(letters_.begin(), size_, w.letters_.begin() + 1);
  return w;
}

Word Word::concat(const Word& other) const {
  if (size_ + other.size_ > kCapacity) throw ValidationError("word longer than capacity");
  Word w = *this;
  std::copy_n(other.letters_.begin(), other.size_, w.letters_.begin() + size_);
  w.size_ = static_cast<std::uint8_t>(size_ + other.size_);
  return w;
}

Word Word::negated() const {
  Word w = *this;
  for (std::size_t i = 0; i < size_; ++i) w.letters_[i] = static_cast<std::int8_t>(-letters_[i]);
  return w;
}

std::size_t Word::leading_zeros() const {
  std::size_t r = 0;
  while (r < size_ && letters_[r] == 0) ++r;
  return r;
}

std::vector<Letter> Word::letters() const {
  return std::vector<Letter>(letters_.begin(), letters_.begin() + size_);
}

std::string Word::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < size_; ++i) {
    if (i > 0) out += '.';
    out += std::to_string(letters_[i]);
  }
  return out;
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  if (text.empty()) return Word();
  std::size_t pos = 0;
  while (true) {
    const std::size_t dot = text.find('.', pos);
    const std::string_view piece = text.substr(pos, dot == std::string_view::npos ? text.npos : dot - pos);
    Letter k = 0;
    const char* first = piece.data();
    const char* last = piece.data() + piece.size();
    if (!piece.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (piece.empty() || ec != std::errc() || ptr != last) {
      throw ValidationError("malformed word: \"" + std::string(text) + "\"");
    }
    letters.push_back(k);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return Word(std::span<const Letter>(letters));
}

bool operator<(const Word& a, const Word& b) {
  if (a.size_ != b.size_) return a.size_ < b.size_;
  return std::lexicographical_compare(a.letters_.begin(), a.letters_.begin() + a.size_,
                                      b.letters_.begin(), b.letters_.begin() + b.size_);
}

std::size_t Word::hash() const {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::memcpy(&lo, letters_.data(), 8);
  std::memcpy(&hi, letters_.data() + 8, 7);
  hi = (hi << 8) | size_;
  // splitmix-style finalizer over both halves
  std::uint64_t h = lo * 0x9e3779b97f4a7c15ull ^ (hi + 0x632be59bd9b4e019ull + (lo << 6) + (lo >> 2));
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

WordEnumerator::WordEnumerator(std::vector<Letter> letters, std::size_t n)
    : WordEnumerator(std::move(letters), n, 0, ~std::uint64_t{0}) {}

WordEnumerator::WordEnumerator(std::vector<Letter> letters, std::size_t n, std::uint64_t begin_rank,
                               std::uint64_t end_rank)
    : letters_(std::move(letters)), n_(n), total_(1), rank_(begin_rank) {
  std::sort(letters_.begin(), letters_.end());
  letters_.erase(std::unique(letters_.begin(), letters_.end()), letters_.end());
  if (n_ > Word::kCapacity) throw ValidationError("word length exceeds capacity");
  for (std::size_t i = 0; i < n_; ++i) total_ *= letters_.size();
  end_ = std::min(end_rank, total_);
}

bool WordEnumerator::next(Word& out) {
  if (rank_ >= end_) return false;
  std::array<Letter, Word::kCapacity> buf{};
  std::uint64_t r = rank_++;
  const std::uint64_t radix = letters_.size();
  for (std::size_t i = n_; i-- > 0;) {
    buf[i] = letters_[r % radix];
    r /= radix;
  }
  out = Word(std::span<const Letter>(buf.data(), n_));
  return true;
}

std::vector<Word> words_of_length(const std::vector<Letter>& letters, std::size_t n) {
  WordEnumerator it(letters, n);
  std::vector<Word> out;
  out.reserve(it.total());
  Word w;
  while (it.next(w)) out.push_back(w);
  return out;
}

namespace {

void shuffle_into(const Word& u, std::size_t i, const Word& v, std::size_t j, Word& acc,
                  std::vector<Word>& out) {
  if (i == u.size() && j == v.size()) {
    out.push_back(acc);
    return;
  }
  if (i < u.size()) {
    Word next = acc.appended(u[i]);
    shuffle_into(u, i + 1, v, j, next, out);
  }
  if (j < v.size()) {
    Word next = acc.appended(v[j]);
    shuffle_into(u, i, v, j + 1, next, out);
  }
}

}  // namespace

std::vector<Word> shuffle(const Word& u, const Word& v) {
  if (u.size() + v.size() > Word::kCapacity) throw ValidationError("shuffle exceeds word capacity");
  std::vector<Word> out;
  Word acc;
  shuffle_into(u, 0, v, 0, acc, out);
  return out;
}

std::vector<std::pair<Word, Word>> deconcatenations(const Word& w) {
  std::vector<std::pair<Word, Word>> out;
  out.reserve(w.size() + 1);
  for (std::size_t i = 0; i <= w.size(); ++i) out.emplace_back(w.prefix(i), w.suffix_from(i));
  return out;
}

WordIndex::WordIndex(std::vector<Letter> alphabet, std::size_t max_length)
    : alphabet_(std::move(alphabet)), max_length_(max_length) {
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
  if (alphabet_.empty()) throw ValidationError("WordIndex: empty alphabet");
  if (max_length_ > Word::kCapacity) throw ValidationError("WordIndex: length exceeds capacity");
  powers_.assign(max_length_ + 1, 1);
  offsets_.assign(max_length_ + 2, 0);
  for (std::size_t n = 1; n <= max_length_; ++n) powers_[n] = powers_[n - 1] * alphabet_.size();
  for (std::size_t n = 0; n <= max_length_; ++n) offsets_[n + 1] = offsets_[n] + powers_[n];
  min_letter_ = alphabet_.front();
  digit_of_.assign(static_cast<std::size_t>(alphabet_.back() - min_letter_ + 1), -1);
  for (std::size_t d = 0; d < alphabet_.size(); ++d) {
    digit_of_[static_cast<std::size_t>(alphabet_[d] - min_letter_)] = static_cast<int>(d);
  }
}

int WordIndex::digit(Letter k) const {
  const long idx = static_cast<long>(k) - min_letter_;
  if (idx < 0 || idx >= static_cast<long>(digit_of_.size())) return -1;
  return digit_of_[static_cast<std::size_t>(idx)];
}

bool WordIndex::contains(const Word& w) const {
  if (w.size() > max_length_) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (digit(w[i]) < 0) return false;
  }
  return true;
}

std::uint64_t WordIndex::rank(const Word& w) const {
  if (w.size() > max_length_) throw ValidationError("word longer than index truncation: " + w.to_string());
  std::uint64_t digits = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int d = digit(w[i]);
    if (d < 0) throw ValidationError("letter outside alphabet in word " + w.to_string());
    digits = digits * alphabet_.size() + static_cast<std::uint64_t>(d);
  }
  return offsets_[w.size()] + digits;
}

Word WordIndex::word(std::uint64_t rank) const {
  if (rank >= size()) throw ValidationError("WordIndex: rank out of range");
  std::size_t n = 0;
  while (offsets_[n + 1] <= rank) ++n;
  std::uint64_t digits = rank - offsets_[n];
  std::array<Letter, Word::kCapacity> buf{};
  for (std::size_t i = n; i-- > 0;) {
    buf[i] = alphabet_[digits % alphabet_.size()];
    digits /= alphabet_.size();
  }
  return Word(std::span<const Letter>(buf.data(), n));
}

}  // namespace wordavg
