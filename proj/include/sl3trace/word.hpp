#pragma once

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sl3trace/errors.hpp"

namespace sl3trace {

// One syllable of a free-group word: generator index (1-based) raised to a
// nonzero integer exponent.
struct Letter {
    int gen;
    int exp;

    friend bool operator==(const Letter&, const Letter&) = default;
};

// Reduced word in the free group on generators g1, g2, ... Adjacent letters
// never share a generator and no exponent is zero. Construction reduces.
class GroupWord {
public:
    GroupWord() = default;

    explicit GroupWord(std::vector<Letter> letters) { append_reduced(std::move(letters)); }

    GroupWord(std::initializer_list<Letter> letters)
        : GroupWord(std::vector<Letter>(letters)) {}

    // Word syntax: whitespace-separated signed integers; the sign is the
    // exponent sign, the magnitude is the generator index, higher powers are
    // written as repeated letters ("1 1 -2" means g1 g1 g2^-1).
    static GroupWord parse(const std::string& text) {
        std::istringstream in(text);
        std::vector<Letter> letters;
        std::string token;
        int position = 0;
        while (in >> token) {
            ++position;
            const long value = checked_token(token, position);
            letters.push_back(Letter{static_cast<int>(std::labs(value)), value > 0 ? 1 : -1});
        }
        return GroupWord(std::move(letters));
    }

    const std::vector<Letter>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }

    // Total number of unit letters (sum of |exponent|).
    int length() const {
        int n = 0;
        for (const Letter& l : letters_) n += std::abs(l.exp);
        return n;
    }

    int max_generator() const {
        int m = 0;
        for (const Letter& l : letters_) m = std::max(m, l.gen);
        return m;
    }

    bool mentions(int gen) const {
        return std::any_of(letters_.begin(), letters_.end(),
                           [gen](const Letter& l) { return l.gen == gen; });
    }

    GroupWord inverse() const {
        std::vector<Letter> rev;
        rev.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            rev.push_back(Letter{it->gen, -it->exp});
        return GroupWord(std::move(rev));
    }

    friend GroupWord operator*(const GroupWord& a, const GroupWord& b) {
        std::vector<Letter> cat = a.letters_;
        cat.insert(cat.end(), b.letters_.begin(), b.letters_.end());
        return GroupWord(std::move(cat));
    }

    // Expansion into unit letters, exponent +1 or -1 each.
    std::vector<Letter> units() const {
        std::vector<Letter> u;
        u.reserve(static_cast<std::size_t>(length()));
        for (const Letter& l : letters_) {
            const int step = l.exp > 0 ? 1 : -1;
            for (int t = 0; t != l.exp; t += step) u.push_back(Letter{l.gen, step});
        }
        return u;
    }

    // Canonical representative of the cyclic equivalence class: cyclically
    // reduce, then take the lexicographically least rotation of the unit
    // letter sequence (generator ascending, positive exponent before
    // negative). Two words with equal cyclic normal form have equal traces
    // on every tuple.
    GroupWord cyclic_normal_form() const {
        std::vector<Letter> u = units();
        std::size_t lo = 0, hi = u.size();
        while (hi - lo >= 2 && u[lo].gen == u[hi - 1].gen && u[lo].exp == -u[hi - 1].exp) {
            ++lo;
            --hi;
        }
        std::vector<Letter> core(u.begin() + static_cast<std::ptrdiff_t>(lo),
                                 u.begin() + static_cast<std::ptrdiff_t>(hi));
        if (core.size() >= 2) {
            std::size_t best = 0;
            for (std::size_t start = 1; start < core.size(); ++start)
                if (rotation_less(core, start, best)) best = start;
            std::rotate(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(best), core.end());
        }
        return GroupWord(std::move(core));
    }

    // Token form, one unit letter per token (round-trips through parse).
    std::string to_string() const {
        std::string out;
        for (const Letter& l : units()) {
            if (!out.empty()) out += ' ';
            out += std::to_string(l.exp > 0 ? l.gen : -l.gen);
        }
        return out;
    }

    // Human form, e.g. "tr" arguments print as "X1 X2^-1 X1^2".
    std::string display() const {
        if (letters_.empty()) return "1";
        std::string out;
        for (const Letter& l : letters_) {
            if (!out.empty()) out += ' ';
            out += "X" + std::to_string(l.gen);
            if (l.exp != 1) out += "^" + std::to_string(l.exp);
        }
        return out;
    }

    friend bool operator==(const GroupWord&, const GroupWord&) = default;

    // Total order on unit sequences; used to sort cyclic classes.
    friend bool operator<(const GroupWord& a, const GroupWord& b) {
        const std::vector<Letter> ua = a.units(), ub = b.units();
        return std::lexicographical_compare(ua.begin(), ua.end(), ub.begin(), ub.end(),
                                            letter_less);
    }

private:
    static bool letter_less(const Letter& x, const Letter& y) {
        if (x.gen != y.gen) return x.gen < y.gen;
        return x.exp > y.exp; // +1 sorts before -1
    }

    static bool rotation_less(const std::vector<Letter>& v, std::size_t a, std::size_t b) {
        const std::size_t n = v.size();
        for (std::size_t t = 0; t < n; ++t) {
            const Letter& x = v[(a + t) % n];
            const Letter& y = v[(b + t) % n];
            if (letter_less(x, y)) return true;
            if (letter_less(y, x)) return false;
        }
        return false;
    }

    static long checked_token(const std::string& token, int position) {
        std::size_t consumed = 0;
        long value = 0;
        bool ok = true;
        try {
            value = std::stol(token, &consumed);
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok || consumed != token.size() || value == 0)
            throw ParseError("bad word token '" + token + "' at position " +
                             std::to_string(position));
        return value;
    }

    void append_reduced(std::vector<Letter> incoming) {
        for (const Letter& l : incoming) {
            if (l.gen < 1) throw ParseError("generator index must be positive");
            if (l.exp == 0) continue;
            if (!letters_.empty() && letters_.back().gen == l.gen) {
                letters_.back().exp += l.exp;
                if (letters_.back().exp == 0) letters_.pop_back();
            } else {
                letters_.push_back(l);
            }
        }
    }

    std::vector<Letter> letters_;
};

} // namespace sl3trace
