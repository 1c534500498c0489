#include "braidhom/wordalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace braidhom {

namespace {

void expandInto(const FreeLetter& l, FreeWord& out);

void expandWordInto(const FreeWord& w, FreeWord& out) {
    for (const FreeLetter& l : w) expandInto(l, out);
}

void expandInverseInto(const FreeWord& w, FreeWord& out) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        FreeLetter inv = *it;
        inv.sign = -inv.sign;
        expandInto(inv, out);
    }
}

void expandInto(const FreeLetter& l, FreeWord& out) {
    if (!l.commutator) {
        out.push_back(l);
        return;
    }
    const FreeWord& a = l.sign > 0 ? l.lhs : l.rhs;
    const FreeWord& b = l.sign > 0 ? l.rhs : l.lhs;
    expandWordInto(a, out);
    expandWordInto(b, out);
    expandInverseInto(a, out);
    expandInverseInto(b, out);
}

}  // namespace

FreeWord inverse(const FreeWord& w) {
    FreeWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        FreeLetter l = *it;
        l.sign = -l.sign;
        out.push_back(std::move(l));
    }
    return out;
}

FreeWord reduce(const FreeWord& w) {
    FreeWord flat;
    expandWordInto(w, flat);
    FreeWord out;
    for (const FreeLetter& l : flat) {
        if (!out.empty() && !out.back().commutator && out.back().generator == l.generator &&
            out.back().sign == -l.sign) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

bool freelyEqual(const FreeWord& a, const FreeWord& b) {
    FreeWord ab = a;
    FreeWord binv = inverse(b);
    ab.insert(ab.end(), binv.begin(), binv.end());
    return reduce(ab).empty();
}

std::vector<std::pair<int, long long>> abelianization(const FreeWord& w) {
    std::map<int, long long> counts;
    FreeWord flat;
    expandWordInto(w, flat);
    for (const FreeLetter& l : flat) counts[l.generator] += l.sign;
    std::vector<std::pair<int, long long>> out;
    for (const auto& [gen, c] : counts) {
        if (c != 0) out.emplace_back(gen, c);
    }
    return out;
}

namespace {

bool isSLetter(const FreeLetter& l, const std::set<int>& S) {
    return !l.commutator && S.count(l.generator) > 0;
}

int countSLetters(const FreeWord& w, const std::set<int>& S) {
    int n = 0;
    for (const FreeLetter& l : w) {
        if (isSLetter(l, S)) ++n;
    }
    return n;
}

}  // namespace

bool isSConnected(const FreeWord& w, const std::set<int>& S) {
    int first = -1, last = -1;
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
        if (isSLetter(w[i], S)) {
            if (first < 0) first = i;
            last = i;
        }
    }
    if (first < 0) return true;
    for (int i = first; i <= last; ++i) {
        if (!isSLetter(w[i], S)) return false;
    }
    return true;
}

FreeWord makeSConnected(const FreeWord& w, const std::set<int>& S) {
    if (countSLetters(w, S) <= 1) return w;

    int m = 0;
    while (!isSLetter(w[m], S)) ++m;

    FreeWord tail(w.begin() + m + 1, w.end());
    FreeWord tailStar = makeSConnected(tail, S);

    int u = 0;
    while (!isSLetter(tailStar[u], S)) ++u;

    // a * B == [a, B] * B * a moves the leading S-letter next to the block.
    FreeWord out(w.begin(), w.begin() + m);
    FreeWord block(tailStar.begin(), tailStar.begin() + u);
    if (!block.empty()) {
        out.push_back(FreeLetter::comm(FreeWord{w[m]}, block));
        out.insert(out.end(), block.begin(), block.end());
    }
    out.push_back(w[m]);
    out.insert(out.end(), tailStar.begin() + u, tailStar.end());
    return out;
}

namespace {

std::string formatLetter(const FreeLetter& l, const std::vector<std::string>& names) {
    if (!l.commutator) {
        std::string s = l.generator >= 0 && l.generator < static_cast<int>(names.size())
                            ? names[l.generator]
                            : "g" + std::to_string(l.generator);
        if (l.sign < 0) s += "'";
        return s;
    }
    std::string s = "[" + formatWord(l.lhs, names) + "," + formatWord(l.rhs, names) + "]";
    if (l.sign < 0) s += "'";
    return s;
}

}  // namespace

std::string formatWord(const FreeWord& w, const std::vector<std::string>& names) {
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << " ";
        os << formatLetter(w[i], names);
    }
    return os.str();
}

namespace {

int internName(const std::string& name, std::vector<std::string>& names) {
    for (int i = 0; i < static_cast<int>(names.size()); ++i) {
        if (names[i] == name) return i;
    }
    names.push_back(name);
    return static_cast<int>(names.size()) - 1;
}

// Splits on whitespace at bracket depth zero.
std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (depth == 0 && (c == ' ' || c == '\t' || c == '\n' || c == '\r')) {
            if (!cur.empty()) tokens.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

FreeLetter parseLetter(std::string tok, std::vector<std::string>& names) {
    int sign = 1;
    while (!tok.empty() && tok.back() == '\'') {
        sign = -sign;
        tok.pop_back();
    }
    if (tok.empty()) throw std::runtime_error("empty word letter");
    if (tok.front() == '[') {
        if (tok.back() != ']') throw std::runtime_error("unbalanced commutator brackets in '" + tok + "'");
        std::string inner = tok.substr(1, tok.size() - 2);
        int depth = 0;
        size_t split = std::string::npos;
        for (size_t i = 0; i < inner.size(); ++i) {
            if (inner[i] == '[') ++depth;
            if (inner[i] == ']') --depth;
            if (inner[i] == ',' && depth == 0) {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) throw std::runtime_error("commutator needs two arguments: '" + tok + "'");
        FreeLetter l = FreeLetter::comm(parseWord(inner.substr(0, split), names),
                                        parseWord(inner.substr(split + 1), names));
        l.sign = sign;
        return l;
    }
    return FreeLetter::atom(internName(tok, names), sign);
}

}  // namespace

FreeWord parseWord(const std::string& text, std::vector<std::string>& names) {
    FreeWord w;
    for (const std::string& tok : tokenize(text)) w.push_back(parseLetter(tok, names));
    return w;
}

}  // namespace braidhom
