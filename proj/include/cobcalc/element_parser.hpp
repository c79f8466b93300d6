#pragma once

// Builtin element grammar for the command line:
//   sum     := ['-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := integer | 'P'n | 'H(' n ',' d ')' | 'z'[j] ['^' k] | 't' ['^' ['-'] k]
// Whitespace is ignored. L-classes are lifted into the target ring.

#include "cobcalc/fgl.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace cobcalc {

class ElementParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

class ElementParser {
public:
    ElementParser(std::string text, RingPtr ring) : ring_(std::move(ring))
    {
        for (char c : text) {
            if (!std::isspace(static_cast<unsigned char>(c))) {
                s_ += c;
            }
        }
    }

    Series parse()
    {
        if (s_.empty()) {
            fail("empty element");
        }
        Series out(ring_);
        bool negate = accept('-');
        out = term();
        if (negate) {
            out = -out;
        }
        while (pos_ < s_.size()) {
            if (accept('+')) {
                out += term();
            } else if (accept('-')) {
                out -= term();
            } else {
                fail("unexpected '" + std::string(1, s_[pos_]) + "'");
            }
        }
        return out;
    }

private:
    Series term()
    {
        Series out = factor();
        while (accept('*')) {
            out *= factor();
        }
        return out;
    }

    Series factor()
    {
        if (pos_ >= s_.size()) {
            fail("expected a factor");
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Series::constant(ring_, Scalar(Integer(digits())));
        }
        const int W = ring_->trunc_minus();
        if (c == 'P') {
            ++pos_;
            int n = number();
            guard(W, n);
            return rebase(pn_class(W, n).ambient, ring_);
        }
        if (c == 'H') {
            ++pos_;
            expect('(');
            int n = number();
            expect(',');
            int d = number();
            expect(')');
            if (n < 2 || d < 1) {
                fail("H(n,d) needs n >= 2 and d >= 1");
            }
            guard(W, n - 1);
            return rebase(hypersurface_class(W, n, d).ambient, ring_);
        }
        if (c == 'z') {
            ++pos_;
            std::string name = "z";
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                name += digits();
            }
            if (!ring_->find(name)) {
                fail("no variable " + name + " in this context");
            }
            int k = 1;
            if (accept('^')) {
                k = number();
            }
            return Series::variable(ring_, name, k);
        }
        if (c == 't') {
            ++pos_;
            if (!ring_->find("t")) {
                fail("no variable t in this context");
            }
            int k = 1;
            if (accept('^')) {
                k = accept('-') ? -number() : number();
            }
            return Series::variable(ring_, "t", k);
        }
        fail("unknown factor starting at '" + s_.substr(pos_) + "'");
    }

    void guard(int W, int dim)
    {
        if (dim > W) {
            fail("class of dimension " + std::to_string(dim) + " exceeds b-weight " + std::to_string(W));
        }
    }

    std::string digits()
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a number");
        }
        return s_.substr(start, pos_ - start);
    }

    int number()
    {
        std::string d = digits();
        if (d.size() > 4) {
            fail("number too large: " + d);
        }
        return std::stoi(d);
    }

    bool accept(char c)
    {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ElementParseError("element: " + msg + " (at offset " + std::to_string(pos_) + ")");
    }

    std::string s_;
    std::size_t pos_ = 0;
    RingPtr ring_;
};

} // namespace detail

inline Series parse_element(const std::string& text, const RingPtr& ring)
{
    return detail::ElementParser(text, ring).parse();
}

} // namespace cobcalc
