#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace u3 {

// Generator index, one of 1, 2, 3.
using Generator = int;

inline void require_generator(Generator g) {
  if (g < 1 || g > 3) throw std::invalid_argument("generator index must be 1, 2 or 3");
}

/// Element of the rank-3 universal Coxeter group, stored as its unique
/// reduced word (no two adjacent letters equal). The group is a free
/// product of three involutions, so the reduced word is a normal form and
/// equality is plain sequence equality.
class ReducedWord {
 public:
  ReducedWord() = default;

  ReducedWord(std::initializer_list<Generator> letters)
      : ReducedWord(std::span<const Generator>(letters.begin(), letters.size())) {}

  explicit ReducedWord(std::span<const Generator> letters) {
    for (Generator g : letters) push(g);
  }

  /// Cancels adjacent equal pairs until none remain.
  static ReducedWord reduce(std::span<const Generator> letters) {
    return ReducedWord(letters);
  }

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Generator letter(std::size_t i) const { return letters_[i]; }
  Generator last() const { return letters_.back(); }
  const std::vector<std::uint8_t>& raw() const { return letters_; }

  std::vector<Generator> letters() const {
    return std::vector<Generator>(letters_.begin(), letters_.end());
  }

  /// Right multiplication by a generator, with cancellation.
  ReducedWord times(Generator g) const {
    ReducedWord w = *this;
    w.push(g);
    return w;
  }

  ReducedWord operator*(const ReducedWord& other) const {
    ReducedWord w = *this;
    for (std::uint8_t g : other.letters_) w.push(g);
    return w;
  }

  /// Generators are involutions, so the inverse is the reversed word.
  ReducedWord inverse() const {
    ReducedWord w;
    w.letters_.assign(letters_.rbegin(), letters_.rend());
    return w;
  }

  /// Word with the last letter removed. Precondition: nonempty.
  ReducedWord parent() const {
    ReducedWord w = *this;
    w.letters_.pop_back();
    return w;
  }

  ReducedWord prefix(std::size_t n) const {
    ReducedWord w;
    w.letters_.assign(letters_.begin(), letters_.begin() + n);
    return w;
  }

  bool operator==(const ReducedWord& o) const = default;
  auto operator<=>(const ReducedWord& o) const = default;

  std::string str() const {
    if (letters_.empty()) return "e";
    std::string s;
    for (std::uint8_t g : letters_) {
      if (!s.empty()) s += ' ';
      s += 's';
      s += char('0' + g);
    }
    return s;
  }

  /// Parses a compact digit string like "121" or "1 2 1" or "1,2,1".
  static ReducedWord parse(const std::string& text) {
    ReducedWord w;
    for (char c : text) {
      if (c == ' ' || c == ',' || c == 's') continue;
      if (c < '1' || c > '3') throw std::invalid_argument("bad generator letter in word: " + text);
      w.push(c - '0');
    }
    return w;
  }

 private:
  void push(Generator g) {
    require_generator(g);
    if (!letters_.empty() && letters_.back() == g)
      letters_.pop_back();
    else
      letters_.push_back(static_cast<std::uint8_t>(g));
  }

  std::vector<std::uint8_t> letters_;
};

}  // namespace u3
