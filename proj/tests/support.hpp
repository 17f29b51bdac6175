#ifndef TRAITLAB_TESTS_SUPPORT_HPP
#define TRAITLAB_TESTS_SUPPORT_HPP

// Test helpers: an independent reference simulator and seeded generators.

#include "traitlab/traitlab.hpp"

#include <map>
#include <random>
#include <set>
#include <string>

namespace support {

using namespace traitlab;

// Reference semantics written straight from the definitions, sharing no code
// with the library simulator.
struct RefOutcome {
    enum Kind { Output, Undefined, Exhausted } kind;
    std::string output;
    std::uint64_t steps = 0;
    std::uint64_t space = 0;
};

inline RefOutcome ref_run(const MachineDescription& m, const std::string& sigma, std::uint64_t fuel)
{
    std::map<long long, char> tape;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        tape[static_cast<long long>(i) + 1] = sigma[i];
    long long head = 0;
    State q = m.start();
    std::set<long long> visited{0};
    RefOutcome out{RefOutcome::Exhausted, {}, 0, 0};
    while (q != m.accept() && q != m.reject()) {
        if (out.steps == fuel) {
            out.space = visited.size();
            return out;
        }
        visited.insert(head);
        const char read = tape.count(head) ? tape[head] : '_';
        const auto& a = *m.table()[q * m.tape_alphabet().size() + m.tape_alphabet().find(read)];
        if (a.write == '_')
            tape.erase(head);
        else
            tape[head] = a.write;
        head += a.move == Move::Left ? -1 : 1;
        q = a.next;
        ++out.steps;
    }
    out.space = visited.size();
    std::string gamma;
    for (const auto& [cell, c] : tape) {
        if (m.input_alphabet().find(c) == std::string::npos) {
            out.kind = RefOutcome::Undefined;
            return out;
        }
        gamma.push_back(c);
    }
    out.kind = gamma.empty() ? RefOutcome::Undefined : RefOutcome::Output;
    out.output = gamma;
    return out;
}

/// A random canonical machine, built transition by transition (not via decode).
inline CanonicalForm random_canonical(std::mt19937_64& rng, std::size_t max_states = 5, std::size_t max_sigma = 3,
                                      std::size_t max_extra = 2)
{
    std::uniform_int_distribution<std::size_t> states(3, max_states), sigma(1, max_sigma), extras(0, max_extra);
    const std::size_t s = states(rng);
    const std::size_t k = sigma(rng);
    const std::size_t e = extras(rng);
    const std::string input(kInputUniverse.substr(0, k));
    const std::string gamma = input + "_" + std::string(kExtraUniverse.substr(0, e));
    MachineBuilder b(s, 0, static_cast<State>(s - 2), static_cast<State>(s - 1), input, gamma);
    std::uniform_int_distribution<std::size_t> next(0, s - 1), sym(0, gamma.size() - 1), dir(0, 1);
    for (State q = 0; q + 2 < s; ++q)
        for (char x : gamma)
            b.set(q, x, {static_cast<State>(next(rng)), gamma[sym(rng)], dir(rng) ? Move::Right : Move::Left});
    return CanonicalForm(b.build());
}

/// A random machine with arbitrary state roles and letters.
inline MachineDescription random_machine(std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> states(3, 6), sigma(1, 3), extras(0, 2);
    const std::size_t s = states(rng);
    std::string pool = "pqrstxyz";
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t k = sigma(rng);
    const std::size_t e = extras(rng);
    const std::string input = pool.substr(0, k);
    std::string gamma = input + pool.substr(k, e) + "_";
    std::shuffle(gamma.begin(), gamma.end(), rng);

    std::vector<State> roles(s);
    for (std::size_t i = 0; i < s; ++i)
        roles[i] = static_cast<State>(i);
    std::shuffle(roles.begin(), roles.end(), rng);
    const State start = roles[0], accept = roles[1], reject = roles[2];
    MachineBuilder b(s, start, accept, reject, input, gamma);
    std::uniform_int_distribution<std::size_t> next(0, s - 1), sym(0, gamma.size() - 1), dir(0, 1);
    for (State q = 0; q < s; ++q) {
        if (q == accept || q == reject)
            continue;
        for (char x : gamma)
            b.set(q, x, {static_cast<State>(next(rng)), gamma[sym(rng)], dir(rng) ? Move::Right : Move::Left});
    }
    return b.build();
}

inline std::string data_path(const std::string& name) { return std::string(TRAITLAB_DATA_DIR) + "/" + name; }

} // namespace support

#endif
