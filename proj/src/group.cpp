#include "coarse_ends/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "coarse_ends/errors.hpp"

namespace coarse_ends {

std::string GroupLaw::format(const Element& a) const {
    std::string out = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(a[i]);
    }
    return out + "]";
}

Element GroupLaw::parse(const std::string& text) const {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw MalformedElement("element must look like [a,b,...]: '" + text + "'");
    Element e;
    std::string body = s.substr(1, s.size() - 2);
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw MalformedElement("empty coordinate in '" + text + "'");
        try {
            std::size_t pos = 0;
            e.push_back(std::stoll(tok, &pos));
            if (pos != tok.size()) throw MalformedElement("bad coordinate '" + tok + "'");
        } catch (const std::logic_error&) {
            throw MalformedElement("bad coordinate '" + tok + "'");
        }
    }
    if (!is_valid(e)) throw MalformedElement("not a normal form for " + name() + ": " + text);
    return e;
}

std::vector<Generator> symmetric_closure(const GroupLaw& law, std::vector<Generator> gens) {
    std::vector<Generator> out;
    std::set<Element> seen;
    auto add = [&](const Generator& g) {
        if (seen.insert(g.element).second) out.push_back(g);
    };
    for (const auto& g : gens) {
        if (g.element == law.identity()) throw Error("identity cannot be a generator");
        add(g);
        Generator inv{law.inverse(g.element), g.weight, g.label.empty() ? "" : g.label + "^-1"};
        add(inv);
    }
    return out;
}

void validate_generators(const GroupLaw& law, const std::vector<Generator>& gens) {
    std::unordered_map<Element, Norm, ElementHash> weight;
    for (const auto& g : gens) {
        if (g.weight < 1) throw Error("generator weight must be >= 1");
        if (!law.is_valid(g.element)) throw MalformedElement("generator not in normal form");
        weight[g.element] = g.weight;
    }
    for (const auto& g : gens) {
        auto it = weight.find(law.inverse(g.element));
        if (it == weight.end() || it->second != g.weight)
            throw Error("generator list is not symmetric at " + law.format(g.element));
    }
}

Group::Group(std::shared_ptr<const GroupLaw> law, std::vector<Generator> generators)
    : law_(std::move(law)), gens_(std::move(generators)), name_(law_->name()) {
    validate_generators(*law_, gens_);
    if (gens_.empty() && !law_->is_finite())
        throw Error("an infinite group needs at least one generator");
}

Group::Group(std::shared_ptr<const GroupLaw> law, GeneratorStream stream, std::string stream_note)
    : law_(std::move(law)), stream_(std::move(stream)), name_(law_->name()),
      note_(std::move(stream_note)) {}

std::vector<Generator> Group::generators_up_to(Norm w) const {
    if (stream_) return stream_(w);
    std::vector<Generator> out;
    for (const auto& g : gens_)
        if (g.weight <= w) out.push_back(g);
    return out;
}

const std::vector<Generator>& Group::generators() const {
    if (stream_) throw Error(name_ + " has an infinite generator family");
    return gens_;
}

void Group::require_valid(const Element& a) const {
    if (!law_->is_valid(a)) throw MalformedElement("not a normal form for " + name_ + ": " + law_->format(a));
}

NormResult word_norm(const Element& g, const Group& group, Norm cap, std::size_t memory_cap) {
    group.require_valid(g);
    NormResult res;
    res.cap = cap;
    const Element id = group.identity();
    if (g == id) {
        res.value = 0;
        return res;
    }
    if (cap <= 0) return res;
    const auto gens = group.generators_up_to(cap);
    std::unordered_map<Element, Norm, ElementHash> best;
    std::vector<std::vector<Element>> buckets(static_cast<std::size_t>(cap) + 1);
    best[id] = 0;
    buckets[0].push_back(id);
    for (Norm d = 0; d <= cap; ++d) {
        for (std::size_t k = 0; k < buckets[d].size(); ++k) {
            Element e = buckets[d][k];
            if (best[e] != d) continue;
            if (e == g) {
                res.value = d;
                return res;
            }
            for (const auto& gen : gens) {
                Norm nd = d + gen.weight;
                if (nd > cap) continue;
                Element y = group.multiply(e, gen.element);
                auto it = best.find(y);
                if (it != best.end() && it->second <= nd) continue;
                best[y] = nd;
                buckets[nd].push_back(std::move(y));
                if (best.size() > memory_cap) throw BallTooLarge(d - 1, memory_cap);
            }
        }
        buckets[d].clear();
        buckets[d].shrink_to_fit();
    }
    return res;
}

}  // namespace coarse_ends
