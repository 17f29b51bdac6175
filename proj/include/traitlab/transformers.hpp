#ifndef TRAITLAB_TRANSFORMERS_HPP
#define TRAITLAB_TRANSFORMERS_HPP

// Machine-to-machine constructions that keep the proper function intact:
// padding with unreachable states, a time delay via a leftward excursion, the
// leaky wrapper, and canonical renaming.

#include "traitlab/enumeration.hpp"
#include "traitlab/error.hpp"
#include "traitlab/machine.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace traitlab {

namespace detail {

// Copies m's table into a builder with `extra` more states and, optionally, a
// larger tape alphabet. New (state, symbol) slots of m's own non-halting
// states get a dead passthrough action; they are unreachable.
inline MachineBuilder extend(const MachineDescription& m, std::size_t extra, State start,
                             const std::string& tape_alphabet)
{
    MachineBuilder b(m.state_count() + extra, start, m.accept(), m.reject(), m.input_alphabet(), tape_alphabet);
    for (State q = 0; q < m.state_count(); ++q) {
        if (m.is_halting(q))
            continue;
        for (Symbol x : tape_alphabet)
            b.set(q, x, m.in_tape_alphabet(x) ? m.action(q, x) : Action{q, x, Move::Right});
    }
    return b;
}

} // namespace detail

/// Adds k states no transition reaches. Runs are unchanged step for step.
inline MachineDescription pad(const MachineDescription& m, std::size_t k)
{
    if (k < 1)
        throw DomainError("pad needs k >= 1");
    const auto s = static_cast<State>(m.state_count());
    auto b = detail::extend(m, k, m.start(), m.tape_alphabet());
    for (State p = s; p < s + k; ++p)
        b.set_passthrough(p, p, Move::Right);
    return b.build();
}

/// Prefixes m with a d-step excursion: d/2 moves left into the blank region,
/// d/2 moves back, then m's start state on the untouched initial tape.
inline MachineDescription delay_inject(const MachineDescription& m, std::size_t d)
{
    if (d < 2 || d % 2 != 0)
        throw DomainError("delay must be even and at least 2, got " + std::to_string(d));
    const auto s = static_cast<State>(m.state_count());
    auto b = detail::extend(m, d, s, m.tape_alphabet());
    const std::size_t half = d / 2;
    for (std::size_t i = 0; i < d; ++i) {
        const State q = s + static_cast<State>(i);
        const State next = i + 1 == d ? m.start() : q + 1;
        b.set_passthrough(q, next, i < half ? Move::Left : Move::Right);
    }
    return b.build();
}

/// Scans `cells` extra cells left of the start cell before running m. Space
/// grows strictly whenever m itself never reaches those cells.
inline MachineDescription space_inject(const MachineDescription& m, std::size_t cells)
{
    if (cells < 1)
        throw DomainError("space_inject needs at least one cell");
    return delay_inject(m, 2 * cells);
}

/// Moves right past the input, writes χ, erases it, returns to the start cell
/// and then runs m. Symbols of χ outside Γ are added to the tape alphabet.
inline MachineDescription leaky_wrap(const MachineDescription& m, std::string_view chi)
{
    if (chi.empty())
        throw DomainError("leaky_wrap needs a nonempty string");
    std::string gamma = m.tape_alphabet();
    for (Symbol c : chi) {
        if (c == kBlank)
            throw DomainError("the leaked string cannot contain the blank");
        if (detail::reserved_symbol(c))
            throw DomainError(std::string("reserved character '") + c + "' in the leaked string");
        if (gamma.find(c) == std::string::npos)
            gamma.push_back(c);
    }

    const std::size_t n = chi.size();
    const auto s = static_cast<State>(m.state_count());
    // Layout: START, SCAN, WRITE_1..WRITE_{n-1}, BACK, ERASE_1..ERASE_n, RETURN, ENTER.
    const State start = s;
    const State scan = s + 1;
    const State write0 = scan + 1;
    const State back = write0 + static_cast<State>(n - 1);
    const State erase0 = back + 1;
    const State ret = erase0 + static_cast<State>(n);
    const State enter = ret + 1;
    const std::size_t extra = enter + 1 - s;

    auto b = detail::extend(m, extra, start, gamma);
    b.set_passthrough(start, scan, Move::Right);
    for (Symbol x : gamma)
        b.set(scan, x, x == kBlank ? Action{n > 1 ? write0 : back, chi[0], Move::Right} : Action{scan, x, Move::Right});
    for (std::size_t i = 1; i < n; ++i) {
        const State q = write0 + static_cast<State>(i - 1);
        for (Symbol x : gamma)
            b.set(q, x, {i + 1 < n ? q + 1 : back, chi[i], Move::Right});
    }
    b.set_passthrough(back, erase0, Move::Left);
    for (std::size_t j = 0; j < n; ++j) {
        const State q = erase0 + static_cast<State>(j);
        for (Symbol x : gamma)
            b.set(q, x, {j + 1 < n ? q + 1 : ret, kBlank, Move::Left});
    }
    for (Symbol x : gamma)
        b.set(ret, x, x == kBlank ? Action{enter, kBlank, Move::Right} : Action{ret, x, Move::Left});
    b.set_passthrough(enter, m.start(), Move::Left);
    return b.build();
}

/// Canonical renaming of a machine plus the maps that produced it.
struct Canonicalization {
    CanonicalForm form;
    std::vector<State> state_map;     // original state -> canonical state
    std::map<Symbol, Symbol> letters; // original symbol -> canonical symbol
};

/// Renames states to q0 = 0, q_A = s-2, q_R = s-1 (other states keep their
/// relative order) and re-letters Σ and the extra tape symbols onto the
/// universe prefixes.
inline Canonicalization canonicalize_with_map(const MachineDescription& m)
{
    if (m.is_halting(m.start()))
        throw DomainError("canonical machines need a non-halting start state");
    const std::string& sigma = m.input_alphabet();
    std::string extras;
    for (Symbol x : m.tape_alphabet())
        if (x != kBlank && !m.in_input_alphabet(x))
            extras.push_back(x);
    if (sigma.size() > kInputUniverse.size())
        throw DomainError("input alphabet has " + std::to_string(sigma.size()) + " symbols; the universe holds "
                          + std::to_string(kInputUniverse.size()));
    if (extras.size() > kExtraUniverse.size())
        throw DomainError("tape alphabet has " + std::to_string(extras.size()) + " extra symbols; the universe holds "
                          + std::to_string(kExtraUniverse.size()));

    const std::size_t s = m.state_count();
    std::vector<State> state_map(s);
    State next = 1;
    for (State q = 0; q < s; ++q) {
        if (q == m.start())
            state_map[q] = 0;
        else if (q == m.accept())
            state_map[q] = static_cast<State>(s - 2);
        else if (q == m.reject())
            state_map[q] = static_cast<State>(s - 1);
        else
            state_map[q] = next++;
    }

    std::map<Symbol, Symbol> letters{{kBlank, kBlank}};
    for (std::size_t i = 0; i < sigma.size(); ++i)
        letters[sigma[i]] = kInputUniverse[i];
    for (std::size_t i = 0; i < extras.size(); ++i)
        letters[extras[i]] = kExtraUniverse[i];

    const Shape shape{s, sigma.size(), extras.size()};
    MachineBuilder b(s, 0, static_cast<State>(s - 2), static_cast<State>(s - 1), canonical_input_alphabet(shape),
                     canonical_tape_alphabet(shape));
    for (State q = 0; q < s; ++q) {
        if (m.is_halting(q))
            continue;
        for (Symbol x : m.tape_alphabet()) {
            const Action& a = m.action(q, x);
            b.set(state_map[q], letters.at(x), {state_map[a.next], letters.at(a.write), a.move});
        }
    }
    return {CanonicalForm(b.build()), std::move(state_map), std::move(letters)};
}

inline CanonicalForm canonicalize(const MachineDescription& m) { return canonicalize_with_map(m).form; }

/// Applies a symbol map to a string (used to move inputs across a re-lettering).
inline std::string reletter(std::string_view text, const std::map<Symbol, Symbol>& letters)
{
    std::string out;
    out.reserve(text.size());
    for (Symbol c : text)
        out.push_back(letters.at(c));
    return out;
}

/// η(canonicalize(m)), or nullopt when m cannot be canonicalized.
inline std::optional<Index> index_of(const MachineDescription& m)
{
    try {
        return encode(canonicalize(m));
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Receipts
// ---------------------------------------------------------------------------

enum class TransformKind { Pad, Delay, Space, Leak, Canonicalize };

inline const char* to_string(TransformKind k)
{
    switch (k) {
    case TransformKind::Pad: return "pad";
    case TransformKind::Delay: return "delay";
    case TransformKind::Space: return "space";
    case TransformKind::Leak: return "leak";
    case TransformKind::Canonicalize: return "canonicalize";
    }
    return "?";
}

/// Provenance record for one transformation.
struct TransformReceipt {
    std::optional<Index> input_index;
    std::optional<Index> output_index;
    TransformKind kind;
    std::string parameter;

    nlohmann::ordered_json to_json() const
    {
        nlohmann::ordered_json j;
        j["kind"] = to_string(kind);
        j["parameter"] = parameter;
        j["input_index"] = input_index ? nlohmann::ordered_json(input_index->str()) : nlohmann::ordered_json();
        j["output_index"] = output_index ? nlohmann::ordered_json(output_index->str()) : nlohmann::ordered_json();
        return j;
    }
};

inline TransformReceipt make_receipt(TransformKind kind, std::string parameter, const MachineDescription& in,
                                     const MachineDescription& out)
{
    return {index_of(in), index_of(out), kind, std::move(parameter)};
}

} // namespace traitlab

#endif
