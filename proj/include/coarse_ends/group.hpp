#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace coarse_ends {

// Group elements are kept in the normal form of their law, so two elements
// are equal iff their coordinate vectors are equal.
using Element = std::vector<std::int64_t>;
using Norm = std::int64_t;

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ e.size();
        for (std::int64_t v : e) {
            std::uint64_t x = static_cast<std::uint64_t>(v);
            x ^= x >> 33;
            x *= 0xff51afd7ed558ccdULL;
            x ^= x >> 33;
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

class GroupLaw {
public:
    virtual ~GroupLaw() = default;
    virtual std::string name() const = 0;
    virtual Element identity() const = 0;
    virtual Element multiply(const Element& a, const Element& b) const = 0;
    virtual Element inverse(const Element& a) const = 0;
    // True iff a is already in normal form for this law.
    virtual bool is_valid(const Element& a) const = 0;
    virtual std::string format(const Element& a) const;
    // Parses the output of format(); throws MalformedElement.
    virtual Element parse(const std::string& text) const;
    virtual bool is_finite() const { return false; }
};

struct Generator {
    Element element;
    Norm weight = 1;
    std::string label;
};

// Returns every generator of weight <= w, closed under inversion.
using GeneratorStream = std::function<std::vector<Generator>(Norm w)>;

class Group {
public:
    // Finite generating list. The list is validated to be symmetric with
    // positive weights.
    Group(std::shared_ptr<const GroupLaw> law, std::vector<Generator> generators);
    // Infinite family; only generators up to a given weight are ever listed.
    Group(std::shared_ptr<const GroupLaw> law, GeneratorStream stream, std::string stream_note);

    const GroupLaw& law() const { return *law_; }
    std::shared_ptr<const GroupLaw> law_ptr() const { return law_; }
    std::string name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    bool finitely_generated() const { return !stream_; }
    std::vector<Generator> generators_up_to(Norm w) const;
    const std::vector<Generator>& generators() const;  // throws for streams
    std::string generator_note() const { return note_; }

    Element identity() const { return law_->identity(); }
    Element multiply(const Element& a, const Element& b) const { return law_->multiply(a, b); }
    Element inverse(const Element& a) const { return law_->inverse(a); }
    void require_valid(const Element& a) const;
    // Hashable canonical key, serialised for reports.
    std::string canonical(const Element& a) const { return law_->format(a); }

private:
    std::shared_ptr<const GroupLaw> law_;
    std::vector<Generator> gens_;
    GeneratorStream stream_;
    std::string name_;
    std::string note_;
};

// Adds missing inverses (with the same weight) and drops duplicates.
std::vector<Generator> symmetric_closure(const GroupLaw& law, std::vector<Generator> gens);

// Throws Error when the list is not symmetric or a weight is < 1.
void validate_generators(const GroupLaw& law, const std::vector<Generator>& gens);

struct NormResult {
    std::optional<Norm> value;  // empty means every factorisation costs more than cap
    Norm cap = 0;
    bool exceeds() const { return !value.has_value(); }
};

inline constexpr std::size_t kDefaultMemoryCap = 1'500'000;

// Minimal total generator weight of g, by uniform-cost search from the
// identity. Throws MalformedElement for elements not in normal form.
NormResult word_norm(const Element& g, const Group& group, Norm cap,
                     std::size_t memory_cap = kDefaultMemoryCap);

}  // namespace coarse_ends
