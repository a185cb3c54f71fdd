#include "irelab/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "irelab/common.hpp"

namespace irelab::groups {

GroupSpec GroupSpec::free_abelian(int d) {
    if (d < 1) throw ConfigError("free abelian rank must be >= 1");
    return GroupSpec{Family::FreeAbelian, d};
}

GroupSpec GroupSpec::free_group(int k) {
    if (k < 1) throw ConfigError("free group rank must be >= 1");
    return GroupSpec{Family::Free, k};
}

GroupSpec GroupSpec::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos || colon + 1 >= text.size())
        throw ConfigError("bad group spec '" + text + "', expected z:<d> or f:<k>");
    std::string head = text.substr(0, colon);
    char* end = nullptr;
    long rank = std::strtol(text.c_str() + colon + 1, &end, 10);
    if (!end || *end != '\0' || rank < 1 || rank > 1'000'000)
        throw ConfigError("bad group rank in '" + text + "'");
    if (head == "z") return free_abelian(static_cast<int>(rank));
    if (head == "f") return free_group(static_cast<int>(rank));
    throw ConfigError("unknown group family '" + head + "' (use z or f)");
}

std::string GroupSpec::str() const {
    return (family == Family::FreeAbelian ? "z:" : "f:") + std::to_string(rank);
}

Element::Element(GroupSpec spec, std::vector<std::int64_t> data)
    : spec_(spec), data_(std::move(data)) {
    if (spec_.family == Family::FreeAbelian) {
        if (static_cast<int>(data_.size()) != spec_.rank)
            throw ConfigError("coordinate vector length does not match group rank");
    } else {
        for (std::size_t i = 0; i < data_.size(); ++i) {
            std::int64_t l = data_[i];
            if (l == 0 || l > spec_.rank || l < -spec_.rank)
                throw ConfigError("free-group letter out of range");
            if (i > 0 && data_[i - 1] == -l)
                throw ConfigError("word is not reduced");
        }
    }
}

Element Element::identity(const GroupSpec& spec) {
    if (spec.family == Family::FreeAbelian)
        return Element(spec, std::vector<std::int64_t>(spec.rank, 0));
    return Element(spec, {});
}

bool Element::is_identity() const {
    if (spec_.family == Family::Free) return data_.empty();
    return std::all_of(data_.begin(), data_.end(), [](std::int64_t c) { return c == 0; });
}

std::uint64_t Element::digest() const {
    std::vector<std::uint64_t> words;
    words.reserve(data_.size() + 1);
    words.push_back((static_cast<std::uint64_t>(spec_.family) << 32) |
                    static_cast<std::uint32_t>(spec_.rank));
    for (std::int64_t v : data_) words.push_back(static_cast<std::uint64_t>(v));
    return rng::digest(words);
}

bool Element::operator<(const Element& other) const {
    if (spec_.family != other.spec_.family) return spec_.family < other.spec_.family;
    if (spec_.rank != other.spec_.rank) return spec_.rank < other.spec_.rank;
    if (spec_.family == Family::Free && data_.size() != other.data_.size())
        return data_.size() < other.data_.size();
    return data_ < other.data_;
}

std::string Element::str() const {
    if (spec_.family == Family::FreeAbelian) {
        std::ostringstream os;
        os << '(';
        for (int i = 0; i < spec_.rank; ++i) {
            if (i) os << ',';
            os << data_[i];
        }
        os << ')';
        return os.str();
    }
    if (data_.empty()) return "e";
    std::string s;
    for (std::int64_t l : data_) {
        char base = l > 0 ? 'a' : 'A';
        s.push_back(static_cast<char>(base + (std::abs(l) - 1)));
    }
    return s;
}

Element Element::parse(const GroupSpec& spec, const std::string& text) {
    if (spec.family == Family::FreeAbelian) {
        std::string body = text;
        if (!body.empty() && body.front() == '(') {
            if (body.back() != ')') throw ConfigError("unbalanced parens in element '" + text + "'");
            body = body.substr(1, body.size() - 2);
        }
        for (char& c : body)
            if (c == ',') c = ' ';
        std::istringstream is(body);
        std::vector<std::int64_t> coords;
        std::int64_t v;
        while (is >> v) coords.push_back(v);
        if (!is.eof()) throw ConfigError("bad coordinate in element '" + text + "'");
        if (static_cast<int>(coords.size()) != spec.rank)
            throw ConfigError("element '" + text + "' has wrong number of coordinates for " + spec.str());
        return Element(spec, std::move(coords));
    }
    if (spec.rank > 26) throw ConfigError("string form of free-group elements requires rank <= 26");
    if (text == "e" || text.empty()) return identity(spec);
    std::vector<std::int64_t> letters;
    for (char c : text) {
        std::int64_t l;
        if (c >= 'a' && c < 'a' + spec.rank) l = (c - 'a') + 1;
        else if (c >= 'A' && c < 'A' + spec.rank) l = -((c - 'A') + 1);
        else throw ConfigError(std::string("bad letter '") + c + "' in word '" + text + "'");
        if (!letters.empty() && letters.back() == -l) letters.pop_back();  // reduce as we go
        else letters.push_back(l);
    }
    return Element(spec, std::move(letters));
}

namespace {
void check_same_spec(const Element& g, const Element& h) {
    if (!(g.spec() == h.spec()))
        throw ConfigError("mismatched group specs: " + g.spec().str() + " vs " + h.spec().str());
}
}  // namespace

Element multiply(const Element& g, const Element& h) {
    check_same_spec(g, h);
    const GroupSpec& spec = g.spec();
    if (spec.family == Family::FreeAbelian) {
        std::vector<std::int64_t> out(spec.rank);
        for (int i = 0; i < spec.rank; ++i) out[i] = g.data()[i] + h.data()[i];
        return Element(spec, std::move(out));
    }
    std::vector<std::int64_t> word(g.data().begin(), g.data().end());
    for (std::int64_t l : h.data()) {
        if (!word.empty() && word.back() == -l) word.pop_back();
        else word.push_back(l);
    }
    return Element(spec, std::move(word));
}

Element inverse(const Element& g) {
    const GroupSpec& spec = g.spec();
    if (spec.family == Family::FreeAbelian) {
        std::vector<std::int64_t> out(spec.rank);
        for (int i = 0; i < spec.rank; ++i) out[i] = -g.data()[i];
        return Element(spec, std::move(out));
    }
    std::vector<std::int64_t> word(g.data().rbegin(), g.data().rend());
    for (std::int64_t& l : word) l = -l;
    return Element(spec, std::move(word));
}

std::int64_t norm(const Element& g) {
    if (g.spec().family == Family::FreeAbelian) {
        std::int64_t s = 0;
        for (std::int64_t c : g.data()) s += std::abs(c);
        return s;
    }
    return static_cast<std::int64_t>(g.data().size());
}

std::int64_t word_distance(const Element& g, const Element& h) {
    check_same_spec(g, h);
    const GroupSpec& spec = g.spec();
    if (spec.family == Family::FreeAbelian) {
        std::int64_t s = 0;
        for (int i = 0; i < spec.rank; ++i) s += std::abs(h.data()[i] - g.data()[i]);
        return s;
    }
    // |g^{-1} h| = |g| + |h| - 2 * (longest common prefix).
    std::size_t lcp = 0;
    while (lcp < g.data().size() && lcp < h.data().size() && g.data()[lcp] == h.data()[lcp]) ++lcp;
    return static_cast<std::int64_t>(g.data().size() + h.data().size() - 2 * lcp);
}

std::vector<Element> generators(const GroupSpec& spec) {
    std::vector<Element> gens;
    gens.reserve(spec.generator_count());
    for (int i = 0; i < spec.rank; ++i) {
        for (int s : {+1, -1}) {
            if (spec.family == Family::FreeAbelian) {
                std::vector<std::int64_t> v(spec.rank, 0);
                v[i] = s;
                gens.emplace_back(spec, std::move(v));
            } else {
                gens.emplace_back(spec, std::vector<std::int64_t>{s * (i + 1)});
            }
        }
    }
    return gens;
}

std::vector<Element> set_product(const std::vector<Element>& a, const std::vector<Element>& b) {
    std::vector<Element> out;
    out.reserve(a.size() * b.size());
    for (const Element& x : a)
        for (const Element& y : b) out.push_back(multiply(x, y));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Element> set_inverse(const std::vector<Element>& a) {
    std::vector<Element> out;
    out.reserve(a.size());
    for (const Element& x : a) out.push_back(inverse(x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace irelab::groups
