#pragma once

#include <functional>
#include <string>
#include <vector>

#include "coarse_ends/group.hpp"

namespace coarse_ends {

// Product of cyclic factors; modulus 0 stands for an infinite cyclic factor.
Group abelian(std::vector<std::int64_t> moduli);
Group integers();
Group lattice(int rank);
Group cyclic(std::int64_t m);

// Reduced words over letters +-1..+-rank.
Group free_group(int rank);

// Free product of finite cyclic groups with alternating syllable normal form.
Group free_product_cyclic(std::vector<std::int64_t> orders);
Group infinite_dihedral();

// Restricted direct sum of countably many Z/2; generator e_i has weight 2^i.
Group restricted_sum_z2();

// Union of the chain (1/n!)Z. Generator g_i = 1/i! carries weight
// schedule(i); the default schedule is schedule(i) = i.
Group rational_chain(std::function<Norm(std::int64_t)> schedule = {});

// Same law, new generating list (symmetric closure applied).
Group with_generators(const Group& base, std::vector<Generator> gens, std::string name);

struct CatalogEntry {
    std::string name;
    std::string description;
    std::function<Group()> make;
    bool finite = false;
    bool exponential_growth = false;
};

std::vector<CatalogEntry> builtin_groups();

// Accepts catalog names plus the parametrised forms Z^n, Z/m, F<n>,
// Z/a*Z/b*..., and abelian products written like Z/2xZ/2 or ZxZ/3.
Group make_group(const std::string& spec);

}  // namespace coarse_ends
