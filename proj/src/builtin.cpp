#include "coarse_ends/builtin.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "coarse_ends/errors.hpp"

namespace coarse_ends {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return a - floor_div(a, m) * m; }

std::string abelian_name(const std::vector<std::int64_t>& moduli) {
    if (!moduli.empty() &&
        std::all_of(moduli.begin(), moduli.end(), [](std::int64_t m) { return m == 0; }))
        return moduli.size() == 1 ? "Z" : "Z^" + std::to_string(moduli.size());
    std::string out;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (i) out += 'x';
        out += moduli[i] == 0 ? "Z" : "Z/" + std::to_string(moduli[i]);
    }
    return out.empty() ? "1" : out;
}

class AbelianLaw final : public GroupLaw {
public:
    explicit AbelianLaw(std::vector<std::int64_t> moduli) : m_(std::move(moduli)) {}
    std::string name() const override { return abelian_name(m_); }
    Element identity() const override { return Element(m_.size(), 0); }
    Element multiply(const Element& a, const Element& b) const override {
        Element c(m_.size());
        for (std::size_t i = 0; i < m_.size(); ++i)
            c[i] = m_[i] ? floor_mod(a[i] + b[i], m_[i]) : a[i] + b[i];
        return c;
    }
    Element inverse(const Element& a) const override {
        Element c(m_.size());
        for (std::size_t i = 0; i < m_.size(); ++i) c[i] = m_[i] ? floor_mod(-a[i], m_[i]) : -a[i];
        return c;
    }
    bool is_valid(const Element& a) const override {
        if (a.size() != m_.size()) return false;
        for (std::size_t i = 0; i < m_.size(); ++i)
            if (m_[i] && (a[i] < 0 || a[i] >= m_[i])) return false;
        return true;
    }
    bool is_finite() const override {
        return std::none_of(m_.begin(), m_.end(), [](std::int64_t m) { return m == 0; });
    }

private:
    std::vector<std::int64_t> m_;
};

// Letters are +-1..+-rank; a word is reduced when no letter meets its inverse.
class FreeLaw final : public GroupLaw {
public:
    explicit FreeLaw(int rank) : rank_(rank) {}
    std::string name() const override { return "F" + std::to_string(rank_); }
    Element identity() const override { return {}; }
    Element multiply(const Element& a, const Element& b) const override {
        Element c = a;
        for (std::int64_t l : b) {
            if (!c.empty() && c.back() == -l)
                c.pop_back();
            else
                c.push_back(l);
        }
        return c;
    }
    Element inverse(const Element& a) const override {
        Element c(a.rbegin(), a.rend());
        for (auto& l : c) l = -l;
        return c;
    }
    bool is_valid(const Element& a) const override {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0 || a[i] > rank_ || a[i] < -rank_) return false;
            if (i && a[i] == -a[i - 1]) return false;
        }
        return true;
    }
    std::string format(const Element& a) const override {
        if (a.empty()) return "e";
        std::string s;
        for (std::int64_t l : a) {
            char c = static_cast<char>('a' + (std::abs(l) - 1));
            s += l > 0 ? c : static_cast<char>(std::toupper(c));
        }
        return s;
    }
    Element parse(const std::string& text) const override {
        if (text == "e") return {};
        Element w;
        for (char c : text) {
            if (!std::isalpha(static_cast<unsigned char>(c)))
                throw MalformedElement("bad letter in '" + text + "'");
            std::int64_t l = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
            w.push_back(std::isupper(static_cast<unsigned char>(c)) ? -l : l);
        }
        if (!is_valid(w)) throw MalformedElement("not a reduced word over F" + std::to_string(rank_) + ": " + text);
        return w;
    }

private:
    int rank_;
};

// Flattened syllables (factor, exponent), adjacent factors distinct and
// 0 < exponent < order.
class FreeProductLaw final : public GroupLaw {
public:
    explicit FreeProductLaw(std::vector<std::int64_t> orders) : o_(std::move(orders)) {}
    std::string name() const override {
        if (o_ == std::vector<std::int64_t>{2, 2}) return "D_inf";
        std::string s;
        for (std::size_t i = 0; i < o_.size(); ++i) {
            if (i) s += '*';
            s += "Z/" + std::to_string(o_[i]);
        }
        return s;
    }
    Element identity() const override { return {}; }
    Element multiply(const Element& a, const Element& b) const override {
        Element c = a;
        for (std::size_t i = 0; i + 1 < b.size(); i += 2) {
            std::int64_t f = b[i], e = b[i + 1];
            if (!c.empty() && c[c.size() - 2] == f) {
                std::int64_t s = (c.back() + e) % o_[f];
                if (s == 0) {
                    c.pop_back();
                    c.pop_back();
                } else {
                    c.back() = s;
                }
            } else {
                c.push_back(f);
                c.push_back(e);
            }
        }
        return c;
    }
    Element inverse(const Element& a) const override {
        Element c;
        c.reserve(a.size());
        for (std::size_t i = a.size(); i >= 2; i -= 2) {
            c.push_back(a[i - 2]);
            c.push_back(o_[a[i - 2]] - a[i - 1]);
        }
        return c;
    }
    bool is_valid(const Element& a) const override {
        if (a.size() % 2) return false;
        for (std::size_t i = 0; i < a.size(); i += 2) {
            std::int64_t f = a[i], e = a[i + 1];
            if (f < 0 || f >= static_cast<std::int64_t>(o_.size())) return false;
            if (e <= 0 || e >= o_[f]) return false;
            if (i && a[i - 2] == f) return false;
        }
        return true;
    }
    std::string format(const Element& a) const override {
        if (a.empty()) return "e";
        std::string s;
        for (std::size_t i = 0; i < a.size(); i += 2) {
            s += static_cast<char>('a' + a[i]);
            if (a[i + 1] != 1) s += "^" + std::to_string(a[i + 1]);
        }
        return s;
    }
    Element parse(const std::string& text) const override {
        if (text == "e") return {};
        Element w;
        std::size_t i = 0;
        while (i < text.size()) {
            char c = text[i++];
            if (c < 'a' || c >= static_cast<char>('a' + o_.size()))
                throw MalformedElement("bad factor letter in '" + text + "'");
            std::int64_t e = 1;
            if (i < text.size() && text[i] == '^') {
                std::size_t j = ++i;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                if (j == i) throw MalformedElement("missing exponent in '" + text + "'");
                e = std::stoll(text.substr(i, j - i));
                i = j;
            }
            w.push_back(c - 'a');
            w.push_back(e);
        }
        if (!is_valid(w)) throw MalformedElement("not an alternating normal form: " + text);
        return w;
    }
    bool is_finite() const override { return o_.size() <= 1; }

private:
    std::vector<std::int64_t> o_;
};

// Sorted support of a finitely supported 0/1 sequence.
class RestrictedSumLaw final : public GroupLaw {
public:
    std::string name() const override { return "sum_Z2"; }
    Element identity() const override { return {}; }
    Element multiply(const Element& a, const Element& b) const override {
        Element c;
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
        return c;
    }
    Element inverse(const Element& a) const override { return a; }
    bool is_valid(const Element& a) const override {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < 0 || a[i] > 62) return false;
            if (i && a[i] <= a[i - 1]) return false;
        }
        return true;
    }
};

// Element [k, c_2, ..., c_m] stands for k + sum c_i / i! with 0 <= c_i < i
// and no trailing zero digit.
class RationalChainLaw final : public GroupLaw {
public:
    std::string name() const override { return "Q-like"; }
    Element identity() const override { return {0}; }
    Element multiply(const Element& a, const Element& b) const override {
        Element c(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
        normalize(c);
        return c;
    }
    Element inverse(const Element& a) const override {
        Element c = a;
        for (auto& v : c) v = -v;
        normalize(c);
        return c;
    }
    bool is_valid(const Element& a) const override {
        if (a.empty()) return false;
        for (std::size_t i = 1; i < a.size(); ++i) {
            std::int64_t base = static_cast<std::int64_t>(i) + 1;
            if (a[i] < 0 || a[i] >= base) return false;
        }
        return a.size() == 1 || a.back() != 0;
    }
    static void normalize(Element& c) {
        for (std::size_t i = c.size() - 1; i >= 1; --i) {
            std::int64_t base = static_cast<std::int64_t>(i) + 1;
            std::int64_t q = floor_div(c[i], base);
            c[i] -= q * base;
            c[i - 1] += q;
        }
        while (c.size() > 1 && c.back() == 0) c.pop_back();
    }
};

}  // namespace

Group abelian(std::vector<std::int64_t> moduli) {
    for (auto m : moduli)
        if (m < 0 || m == 1) throw Error("abelian factor modulus must be 0 or >= 2");
    auto law = std::make_shared<AbelianLaw>(moduli);
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        Element e(moduli.size(), 0);
        e[i] = 1;
        gens.push_back({e, 1, "e" + std::to_string(i + 1)});
    }
    return Group(law, symmetric_closure(*law, gens));
}

Group integers() { return abelian({0}); }
Group lattice(int rank) {
    if (rank < 1) throw Error("lattice rank must be >= 1");
    return abelian(std::vector<std::int64_t>(static_cast<std::size_t>(rank), 0));
}
Group cyclic(std::int64_t m) {
    if (m < 2) throw Error("cyclic order must be >= 2");
    return abelian({m});
}

Group free_group(int rank) {
    if (rank < 1 || rank > 26) throw Error("free group rank must be in 1..26");
    auto law = std::make_shared<FreeLaw>(rank);
    std::vector<Generator> gens;
    for (int i = 1; i <= rank; ++i)
        gens.push_back({{i}, 1, std::string(1, static_cast<char>('a' + i - 1))});
    return Group(law, symmetric_closure(*law, gens));
}

Group free_product_cyclic(std::vector<std::int64_t> orders) {
    if (orders.size() < 2) throw Error("free product needs at least two factors");
    for (auto o : orders)
        if (o < 2) throw Error("free product factors must have order >= 2");
    auto law = std::make_shared<FreeProductLaw>(orders);
    std::vector<Generator> gens;
    for (std::size_t f = 0; f < orders.size(); ++f)
        gens.push_back({{static_cast<std::int64_t>(f), 1}, 1, std::string(1, static_cast<char>('a' + f))});
    return Group(law, symmetric_closure(*law, gens));
}

Group infinite_dihedral() { return free_product_cyclic({2, 2}); }

Group restricted_sum_z2() {
    auto law = std::make_shared<RestrictedSumLaw>();
    GeneratorStream stream = [](Norm w) {
        std::vector<Generator> out;
        for (std::int64_t i = 0; i <= 62 && (std::int64_t{1} << i) <= w; ++i)
            out.push_back({{i}, std::int64_t{1} << i, "e" + std::to_string(i)});
        return out;
    };
    return Group(law, stream, "e_i with weight 2^i, i >= 0");
}

Group rational_chain(std::function<Norm(std::int64_t)> schedule) {
    bool linear = !schedule;
    if (linear) schedule = [](std::int64_t i) { return static_cast<Norm>(i); };
    auto law = std::make_shared<RationalChainLaw>();
    auto sched = schedule;
    GeneratorStream stream = [law, sched](Norm w) {
        std::vector<Generator> out;
        Norm prev = 0;
        for (std::int64_t i = 1; i <= 1000; ++i) {
            Norm n = sched(i);
            if (n <= prev) throw Error("weight schedule must be strictly increasing");
            prev = n;
            if (n > w) break;
            Element g(static_cast<std::size_t>(i), 0);
            g[static_cast<std::size_t>(i) - 1] = 1;
            if (i == 1) g = {1};
            out.push_back({g, n, "g" + std::to_string(i)});
            out.push_back({law->inverse(g), n, "g" + std::to_string(i) + "^-1"});
        }
        return out;
    };
    return Group(law, stream, linear ? "g_i = 1/i! with weight i" : "g_i = 1/i! with custom weights");
}

Group with_generators(const Group& base, std::vector<Generator> gens, std::string name) {
    for (const auto& g : gens) base.require_valid(g.element);
    Group g(base.law_ptr(), symmetric_closure(base.law(), std::move(gens)));
    g.set_name(std::move(name));
    return g;
}

std::vector<CatalogEntry> builtin_groups() {
    return {
        {"Z", "integers, generators +-1", integers, false, false},
        {"Z^2", "integer lattice, unit generators", [] { return lattice(2); }, false, false},
        {"Z^3", "integer lattice, unit generators", [] { return lattice(3); }, false, false},
        {"Z/5", "finite cyclic group of order 5", [] { return cyclic(5); }, true, false},
        {"Z/2xZ/2", "Klein four group", [] { return abelian({2, 2}); }, true, false},
        {"F2", "free group of rank 2, reduced words", [] { return free_group(2); }, false, true},
        {"D_inf", "infinite dihedral group Z/2*Z/2", infinite_dihedral, false, false},
        {"Z/2*Z/3", "free product of Z/2 and Z/3", [] { return free_product_cyclic({2, 3}); }, false, true},
        {"sum_Z2", "restricted direct sum of Z/2, weights 2^i", restricted_sum_z2, false, false},
        {"Q-like", "union of the chain (1/n!)Z, weights n", [] { return rational_chain(); }, false, false},
    };
}

namespace {

std::int64_t parse_int(const std::string& s, const std::string& spec) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error("cannot parse group spec '" + spec + "'");
    return std::stoll(s);
}

std::int64_t parse_factor(const std::string& f, const std::string& spec) {
    if (f == "Z") return 0;
    if (f.rfind("Z/", 0) == 0) return parse_int(f.substr(2), spec);
    throw Error("cannot parse group spec '" + spec + "'");
}

}  // namespace

Group make_group(const std::string& spec) {
    for (const auto& e : builtin_groups())
        if (e.name == spec) return e.make();
    if (spec == "Q" ) return rational_chain();
    if (spec == "Z2xZ2" || spec == "V4") return abelian({2, 2});
    if (spec.rfind("Z^", 0) == 0) return lattice(static_cast<int>(parse_int(spec.substr(2), spec)));
    if (spec.size() > 1 && spec[0] == 'F') return free_group(static_cast<int>(parse_int(spec.substr(1), spec)));
    if (spec.find('*') != std::string::npos) {
        std::vector<std::int64_t> orders;
        std::stringstream ss(spec);
        std::string part;
        while (std::getline(ss, part, '*')) {
            std::int64_t o = parse_factor(part, spec);
            if (o == 0) throw Error("free product factors must be finite cyclic: '" + spec + "'");
            orders.push_back(o);
        }
        return free_product_cyclic(orders);
    }
    std::vector<std::int64_t> moduli;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, 'x')) moduli.push_back(parse_factor(part, spec));
    if (moduli.empty()) throw Error("empty group spec");
    return abelian(moduli);
}

}  // namespace coarse_ends
