#ifndef TRAITLAB_ENUMERATION_HPP
#define TRAITLAB_ENUMERATION_HPP

// A bijective indexing between canonical machines and the naturals, Cantor
// pairing, and bounded index-set queries.
//
// Layout of an index n: canonical machines are grouped by shape
// (s states, |Σ| input symbols, e extra tape symbols). Shapes are ordered by
//     shape_id = (s - 3) * 110 + (|Σ| - 1) * 11 + e
// and each shape owns a contiguous block of R^C indices, where
// R = 2 * s * |Γ| is the digit radix and C = (s - 2) * |Γ| the number of
// (non-halting state, symbol) slots. Within a block, n - offset is the
// transition table read as a little-endian mixed-radix numeral, slot
// (q, x) = q * |Γ| + rank(x) being digit q * |Γ| + rank(x), and a digit
// encoding (next, write, move) as ((next * |Γ|) + rank(write)) * 2 + move.

#include "traitlab/error.hpp"
#include "traitlab/machine.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace traitlab {

using Natural = boost::multiprecision::cpp_int;

inline constexpr std::string_view kInputUniverse = "abcdefghij";
inline constexpr std::string_view kExtraUniverse = "ABCDEFGHIJ";

// ---------------------------------------------------------------------------
// Pairing
// ---------------------------------------------------------------------------

/// Cantor pairing: (a + b)(a + b + 1) / 2 + b.
inline Natural pair(const Natural& a, const Natural& b)
{
    const Natural s = a + b;
    return s * (s + 1) / 2 + b;
}

inline std::pair<Natural, Natural> unpair(const Natural& z)
{
    if (z < 0)
        throw DomainError("unpair of a negative number");
    const Natural d = 8 * z + 1;
    Natural w = (boost::multiprecision::sqrt(d) - 1) / 2;
    const Natural t = w * (w + 1) / 2;
    const Natural b = z - t;
    return {w - b, b};
}

/// Rank of σ in the shortlex order of Σ* (bijective base-|Σ| numeration).
inline Natural string_rank(std::string_view sigma, std::string_view alphabet)
{
    Natural n = 0;
    for (char c : sigma) {
        const auto d = alphabet.find(c);
        if (d == std::string_view::npos)
            throw DomainError(std::string("symbol '") + c + "' is not in the alphabet");
        n = n * alphabet.size() + (d + 1);
    }
    return n;
}

inline std::string string_unrank(Natural n, std::string_view alphabet)
{
    std::string out;
    const std::size_t k = alphabet.size();
    while (n > 0) {
        n -= 1;
        out.push_back(alphabet[static_cast<std::size_t>(n % k)]);
        n /= k;
    }
    return {out.rbegin(), out.rend()};
}

// ---------------------------------------------------------------------------
// Index and canonical form
// ---------------------------------------------------------------------------

/// η(M) for a canonical machine M.
class Index {
public:
    Index() = default;
    explicit Index(Natural value) : value_(std::move(value))
    {
        if (value_ < 0)
            throw DomainError("indices are natural numbers");
    }
    explicit Index(std::uint64_t value) : value_(value) {}

    const Natural& value() const noexcept { return value_; }
    std::string str() const { return value_.str(); }

    static Index parse(std::string_view text)
    {
        if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos)
            throw DomainError("not a natural number: '" + std::string(text) + "'");
        // cpp_int reads a leading 0 as an octal prefix.
        const auto digits = text.find_first_not_of('0');
        return Index(digits == std::string_view::npos ? Natural(0) : Natural(std::string(text.substr(digits))));
    }

    friend bool operator==(const Index& a, const Index& b) { return a.value_ == b.value_; }
    friend bool operator<(const Index& a, const Index& b) { return a.value_ < b.value_; }

private:
    Natural value_ = 0;
};

struct Shape {
    std::size_t states = 3;        // s ≥ 3
    std::size_t input_symbols = 1; // |Σ| ∈ [1, 10]
    std::size_t extra_symbols = 0; // |Γ \ Σ| - 1 ∈ [0, 10]

    std::size_t tape_symbols() const noexcept { return input_symbols + 1 + extra_symbols; }
    std::size_t radix() const noexcept { return 2 * states * tape_symbols(); }
    std::size_t slots() const noexcept { return (states - 2) * tape_symbols(); }

    friend bool operator==(const Shape&, const Shape&) = default;
};

inline constexpr std::size_t kShapesPerStateCount = 10 * 11;

inline Natural shape_id(const Shape& s)
{
    return Natural(s.states - 3) * kShapesPerStateCount + (s.input_symbols - 1) * 11 + s.extra_symbols;
}

inline Shape shape_from_id(const Natural& id)
{
    const auto rest = static_cast<std::size_t>(id % kShapesPerStateCount);
    return {static_cast<std::size_t>(id / kShapesPerStateCount) + 3, rest / 11 + 1, rest % 11};
}

/// Number of canonical machines of shape `s`.
inline Natural table_count(const Shape& s)
{
    return boost::multiprecision::pow(Natural(s.radix()), static_cast<unsigned>(s.slots()));
}

inline std::string canonical_input_alphabet(const Shape& s)
{
    return std::string(kInputUniverse.substr(0, s.input_symbols));
}

inline std::string canonical_tape_alphabet(const Shape& s)
{
    return canonical_input_alphabet(s) + kBlank + std::string(kExtraUniverse.substr(0, s.extra_symbols));
}

/// Shape of `m` if it is in canonical layout, else nullopt.
inline std::optional<Shape> canonical_shape(const MachineDescription& m)
{
    const std::size_t s = m.state_count();
    if (m.start() != 0 || m.accept() != s - 2 || m.reject() != s - 1)
        return std::nullopt;
    const std::size_t in = m.input_alphabet().size();
    if (in < 1 || in > kInputUniverse.size() || m.tape_alphabet().size() < in + 1)
        return std::nullopt;
    const std::size_t extra = m.tape_alphabet().size() - in - 1;
    if (extra > kExtraUniverse.size())
        return std::nullopt;
    const Shape shape{s, in, extra};
    if (m.input_alphabet() != canonical_input_alphabet(shape) || m.tape_alphabet() != canonical_tape_alphabet(shape))
        return std::nullopt;
    return shape;
}

inline bool is_canonical(const MachineDescription& m) { return canonical_shape(m).has_value(); }

/// A machine known to be in canonical layout: q0 = 0, q_A = s-2, q_R = s-1,
/// Σ a prefix of "abcdefghij", Γ = Σ, '_', then a prefix of "ABCDEFGHIJ".
class CanonicalForm {
public:
    explicit CanonicalForm(MachineDescription m) : machine_(std::move(m))
    {
        const auto shape = canonical_shape(machine_);
        if (!shape)
            throw DomainError("machine is not in canonical form; canonicalize it first");
        shape_ = *shape;
    }

    const MachineDescription& machine() const noexcept { return machine_; }
    const Shape& shape() const noexcept { return shape_; }

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.machine_ == b.machine_; }

private:
    MachineDescription machine_;
    Shape shape_;
};

// ---------------------------------------------------------------------------
// η and its inverse
// ---------------------------------------------------------------------------

/// First index of the block owned by `s`.
inline Natural shape_offset(const Shape& s)
{
    Natural offset = 0;
    const Natural id = shape_id(s);
    for (Natural k = 0; k < id; ++k)
        offset += table_count(shape_from_id(k));
    return offset;
}

inline Index encode(const CanonicalForm& c)
{
    const Shape& shape = c.shape();
    const MachineDescription& m = c.machine();
    const std::size_t g = shape.tape_symbols();
    const std::size_t radix = shape.radix();

    Natural table = 0;
    for (std::size_t slot = shape.slots(); slot-- > 0;) {
        const auto q = static_cast<State>(slot / g);
        const Action& a = m.action(q, m.tape_alphabet()[slot % g]);
        const std::size_t digit = (a.next * g + static_cast<std::size_t>(m.rank(a.write))) * 2
                                + (a.move == Move::Right ? 1 : 0);
        table = table * radix + digit;
    }
    return Index(shape_offset(shape) + table);
}

inline CanonicalForm decode(const Index& index)
{
    Natural rest = index.value();
    Natural id = 0;
    Shape shape;
    for (;; ++id) {
        shape = shape_from_id(id);
        Natural count = table_count(shape);
        if (rest < count)
            break;
        rest -= count;
    }

    const std::size_t g = shape.tape_symbols();
    const std::string gamma = canonical_tape_alphabet(shape);
    MachineBuilder b(shape.states, 0, static_cast<State>(shape.states - 2), static_cast<State>(shape.states - 1),
                     canonical_input_alphabet(shape), gamma);
    const Natural radix = shape.radix();
    for (std::size_t slot = 0; slot < shape.slots(); ++slot) {
        const auto digit = static_cast<std::size_t>(rest % radix);
        rest /= radix;
        const Move move = digit % 2 ? Move::Right : Move::Left;
        const std::size_t cell = digit / 2;
        b.set(static_cast<State>(slot / g), gamma[slot % g],
              {static_cast<State>(cell / g), gamma[cell % g], move});
    }
    return CanonicalForm(b.build());
}

inline CanonicalForm decode(std::uint64_t index) { return decode(Index(index)); }

// ---------------------------------------------------------------------------
// Index sets
// ---------------------------------------------------------------------------

struct IndexSetQuery {
    MachineDescription reference;
    Natural max_index = 0;
    std::size_t max_len = 1;
    std::uint64_t fuel = 1;
};

struct IndexSetRow {
    Index index;
    Equivalence verdict;
};

/// Bounded approximation of Ind_η(φ_reference). Rows are in index order.
struct IndexSetResult {
    std::vector<IndexSetRow> rows;
    std::vector<Index> agree;
    std::vector<Index> inconclusive;
    std::size_t differ = 0;
};

namespace detail {

inline void classify_into(IndexSetResult& out, const Index& index, const MachineDescription& reference,
                          std::size_t max_len, std::uint64_t fuel)
{
    const CanonicalForm candidate = decode(index);
    Equivalence verdict{Equivalence::Kind::Differ, {}};
    if (candidate.machine().input_alphabet() == reference.input_alphabet())
        verdict = equiv_bounded(candidate.machine(), reference, max_len, fuel);
    switch (verdict.kind) {
    case Equivalence::Kind::Agree: out.agree.push_back(index); break;
    case Equivalence::Kind::Inconclusive: out.inconclusive.push_back(index); break;
    case Equivalence::Kind::Differ: ++out.differ; break;
    }
    out.rows.push_back({index, std::move(verdict)});
}

inline void check_bounds(std::size_t max_len, std::uint64_t fuel)
{
    if (max_len == 0 || fuel == 0)
        throw DomainError("bounds must be positive");
}

} // namespace detail

/// Partitions 0..max_index by bounded equivalence with the reference.
/// Machines over another input alphabet count as Differ (empty witness).
inline IndexSetResult index_set_bounded(const IndexSetQuery& q)
{
    detail::check_bounds(q.max_len, q.fuel);
    IndexSetResult out;
    for (Natural n = 0; n <= q.max_index; ++n)
        detail::classify_into(out, Index(n), q.reference, q.max_len, q.fuel);
    return out;
}

/// Same partition over an explicit candidate list (sorted and deduplicated).
inline IndexSetResult index_set_bounded(const MachineDescription& reference, std::vector<Index> candidates,
                                        std::size_t max_len, std::uint64_t fuel)
{
    detail::check_bounds(max_len, fuel);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    IndexSetResult out;
    for (const auto& index : candidates)
        detail::classify_into(out, index, reference, max_len, fuel);
    return out;
}

} // namespace traitlab

#endif
