#include "jigsaw/word.hpp"

#include "jigsaw/errors.hpp"

#include <algorithm>

namespace jigsaw {

Word::Word(std::initializer_list<Letter> letters)
{
    for (Letter l : letters) push_back(l);
}

Word::Word(std::vector<Letter> letters)
{
    letters_.reserve(letters.size());
    for (Letter l : letters) push_back(l);
}

void Word::push_back(Letter l)
{
    if (!letters_.empty() && letters_.back() == l) {
        letters_.pop_back();
    } else {
        letters_.push_back(l);
    }
}

Word& Word::operator*=(const Word& o)
{
    for (Letter l : o.letters_) push_back(l);
    return *this;
}

Word Word::inverse() const
{
    Word w;
    w.letters_.assign(letters_.rbegin(), letters_.rend());
    return w;
}

Word Word::power(long k) const
{
    const Word base = k < 0 ? inverse() : *this;
    Word out;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) out *= base;
    return out;
}

bool Word::is_reduced() const
{
    return std::adjacent_find(letters_.begin(), letters_.end()) == letters_.end();
}

bool shortlex_less(const Word& x, const Word& y)
{
    if (x.size() != y.size()) return x.size() < y.size();
    return std::lexicographical_compare(x.letters_.begin(), x.letters_.end(),
                                        y.letters_.begin(), y.letters_.end());
}

std::string Word::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) s.push_back('.');
        s += std::to_string(letters_[i]);
    }
    return s;
}

std::string Word::to_alpha() const
{
    std::string s;
    for (Letter l : letters_) s.push_back(static_cast<char>('a' + l));
    return s;
}

Word Word::parse(std::string_view text)
{
    Word w;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = text.find('.', i);
        if (j == std::string_view::npos) j = text.size();
        const auto tok = text.substr(i, j - i);
        if (tok.empty()) throw ParseError("empty letter in word '" + std::string(text) + "'");
        unsigned v = 0;
        for (char ch : tok) {
            if (ch < '0' || ch > '9') throw ParseError("bad letter in word '" + std::string(text) + "'");
            v = v * 10 + static_cast<unsigned>(ch - '0');
            if (v > 0xFFFF) throw ParseError("letter out of range");
        }
        w.letters_.push_back(static_cast<Letter>(v));
        i = j + 1;
    }
    return w;
}

Word Word::parse_alpha(std::string_view text)
{
    Word w;
    for (char ch : text) {
        if (ch < 'a' || ch > 'z') throw ParseError("bad letter in word '" + std::string(text) + "'");
        w.letters_.push_back(static_cast<Letter>(ch - 'a'));
    }
    return w;
}

ProjectiveMatrix evaluate(const Word& w, std::span<const ProjectiveMatrix> generators)
{
    // Unnormalized running product; normalized once at the end.
    Integer a = 1, b = 0, c = 0, d = 1;
    Integer t0, t1;
    for (Word::Letter l : w.letters()) {
        if (l >= generators.size()) throw InvalidArgument("word letter out of range");
        const ProjectiveMatrix& g = generators[l];
        t0 = a * g.a() + b * g.c();
        t1 = a * g.b() + b * g.d();
        a = t0;
        b = t1;
        t0 = c * g.a() + d * g.c();
        t1 = c * g.b() + d * g.d();
        c = t0;
        d = t1;
    }
    return ProjectiveMatrix::normalize(a, b, c, d);
}

}  // namespace jigsaw
