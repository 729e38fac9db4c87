#pragma once

#include "jigsaw/matrix.hpp"

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace jigsaw {

/// A word in involutive generators, stored as generator indices. Letter i
/// stands for generator i; the word l_0 l_1 ... l_k evaluates to the matrix
/// product g_{l_0} g_{l_1} ... g_{l_k}, so the last letter acts first.
class Word {
public:
    using Letter = std::uint16_t;

    Word() = default;
    Word(std::initializer_list<Letter> letters);
    explicit Word(std::vector<Letter> letters);

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    std::span<const Letter> letters() const { return letters_; }

    /// Appends a letter, cancelling it against an equal last letter.
    void push_back(Letter l);
    /// Concatenation followed by free reduction.
    Word& operator*=(const Word& o);
    friend Word operator*(Word a, const Word& b) { return a *= b; }

    /// Inverse word; for involutions this is the reversal.
    Word inverse() const;
    Word power(long k) const;

    bool is_reduced() const;

    friend bool operator==(const Word&, const Word&) = default;
    /// Shorter words first, then lexicographic.
    friend bool shortlex_less(const Word& x, const Word& y);

    /// Letters separated by '.', e.g. "2.1.0"; the empty word is "".
    std::string to_string() const;
    /// Letters as a, b, c, ... (only meaningful for up to 26 generators).
    std::string to_alpha() const;
    static Word parse(std::string_view text);
    static Word parse_alpha(std::string_view text);

private:
    std::vector<Letter> letters_;
};

bool shortlex_less(const Word& x, const Word& y);

/// Product of the generators named by the word.
ProjectiveMatrix evaluate(const Word& w, std::span<const ProjectiveMatrix> generators);

}  // namespace jigsaw
