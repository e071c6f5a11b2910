#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "koszulkit/error.hpp"

namespace koszulkit {

/// Words pack one letter per nibble, first letter in the most significant
/// position, so that integer order on equal-length words is the
/// lexicographic order induced by the alphabet order.
inline constexpr std::size_t kMaxWordLength = 16;
inline constexpr std::size_t kMaxAlphabetSize = 16;

/// Ordered set of generator names. The position of a name in the list is its
/// rank in the total order on generators.
class Alphabet {
public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() > kMaxAlphabetSize)
      throw InputError("alphabet has " + std::to_string(symbols_.size()) +
                       " generators; at most " + std::to_string(kMaxAlphabetSize) +
                       " are supported");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].empty()) throw InputError("empty generator name");
      for (std::size_t j = 0; j < i; ++j)
        if (symbols_[i] == symbols_[j])
          throw InputError("duplicate generator name '" + symbols_[i] + "'");
    }
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& name(std::size_t letter) const { return symbols_.at(letter); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i] == name) return i;
    return std::nullopt;
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
  std::vector<std::string> symbols_;
};

/// A word over an alphabet, stored as a packed sequence of letter indices.
class Word {
public:
  constexpr Word() = default;

  Word(std::initializer_list<unsigned> letters) {
    for (unsigned l : letters) push_back(l);
  }

  explicit Word(const std::vector<unsigned>& letters) {
    for (unsigned l : letters) push_back(l);
  }

  static constexpr Word from_packed(std::uint64_t packed, std::size_t length) {
    Word w;
    w.packed_ = packed;
    w.length_ = static_cast<std::uint8_t>(length);
    return w;
  }

  constexpr std::size_t length() const noexcept { return length_; }
  constexpr bool empty() const noexcept { return length_ == 0; }
  constexpr std::uint64_t packed() const noexcept { return packed_; }

  constexpr unsigned operator[](std::size_t i) const noexcept {
    return static_cast<unsigned>((packed_ >> (4 * (length_ - 1 - i))) & 0xF);
  }

  void push_back(unsigned letter) {
    if (letter >= kMaxAlphabetSize) throw InputError("letter index out of range");
    if (length_ >= kMaxWordLength)
      throw InputError("words longer than " + std::to_string(kMaxWordLength) +
                       " letters are not supported");
    packed_ = (packed_ << 4) | letter;
    ++length_;
  }

  std::vector<unsigned> letters() const {
    std::vector<unsigned> out(length_);
    for (std::size_t i = 0; i < length_; ++i) out[i] = (*this)[i];
    return out;
  }

  /// Letters [pos, pos + count).
  constexpr Word subword(std::size_t pos, std::size_t count) const noexcept {
    if (count == 0) return Word{};
    const std::size_t shift = 4 * (length_ - pos - count);
    const std::uint64_t mask = count == 16 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (4 * count)) - 1);
    return from_packed((packed_ >> shift) & mask, count);
  }

  constexpr Word prefix(std::size_t k) const noexcept { return subword(0, k); }
  constexpr Word suffix(std::size_t k) const noexcept { return subword(length_ - k, k); }

  friend constexpr bool operator==(const Word&, const Word&) = default;

private:
  std::uint64_t packed_ = 0;
  std::uint8_t length_ = 0;
};

inline Word concat(const Word& a, const Word& b) {
  if (a.length() + b.length() > kMaxWordLength)
    throw InputError("words longer than " + std::to_string(kMaxWordLength) +
                     " letters are not supported");
  if (b.empty()) return a;
  return Word::from_packed((a.packed() << (4 * b.length())) | b.packed(),
                           a.length() + b.length());
}

inline Word concat(const Word& a, const Word& b, const Word& c) { return concat(concat(a, b), c); }

/// Splits w into its prefix of length k and the remaining suffix.
inline std::pair<Word, Word> split(const Word& w, std::size_t k) {
  if (k > w.length()) throw PreconditionError("split position beyond word length");
  return {w.prefix(k), w.suffix(w.length() - k)};
}

/// Lexicographic comparison of two words of the same length. Words of
/// different lengths are not comparable.
inline std::strong_ordering compare_words(const Word& a, const Word& b) {
  if (a.length() != b.length()) throw PreconditionError("incomparable lengths");
  return a.packed() <=> b.packed();
}

/// Number of words of length m over d letters.
inline std::size_t word_count(std::size_t alphabet_size, std::size_t m) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < m; ++i) n *= alphabet_size;
  return n;
}

/// Visits every word of length m in descending order.
template <class F>
void for_each_word_descending(std::size_t alphabet_size, std::size_t m, F&& f) {
  if (alphabet_size == 0) {
    if (m == 0) f(Word{});
    return;
  }
  std::vector<unsigned> letters(m, static_cast<unsigned>(alphabet_size - 1));
  for (;;) {
    f(Word(letters));
    std::size_t i = m;
    while (i > 0 && letters[i - 1] == 0) --i;
    if (i == 0) return;
    --letters[i - 1];
    for (std::size_t j = i; j < m; ++j) letters[j] = static_cast<unsigned>(alphabet_size - 1);
  }
}

inline std::vector<Word> all_words_descending(std::size_t alphabet_size, std::size_t m) {
  std::vector<Word> out;
  out.reserve(word_count(alphabet_size, m));
  for_each_word_descending(alphabet_size, m, [&](const Word& w) { out.push_back(w); });
  return out;
}

/// Generator names joined by '*'; the empty word prints as "1".
inline std::string format_word(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i) s += '*';
    s += alphabet.name(w[i]);
  }
  return s;
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    return std::hash<std::uint64_t>{}(w.packed() * 0x9E3779B97F4A7C15ull ^ w.length());
  }
};

}  // namespace koszulkit
