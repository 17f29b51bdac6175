#ifndef TRAITLAB_TRAITS_HPP
#define TRAITLAB_TRAITS_HPP

// Traits (sets of machines) under bounded, three-valued evaluation: leaf
// definitions, ∪/∩/complement expressions, semanticity probing, the sem/syn
// partition, the finite-patch decider and the state-count reduction wiring.

#include "traitlab/containment.hpp"
#include "traitlab/enumeration.hpp"
#include "traitlab/error.hpp"
#include "traitlab/machine.hpp"
#include "traitlab/measures.hpp"
#include "traitlab/transformers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace traitlab {

enum class Verdict { In, Out, Unknown };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::In: return "In";
    case Verdict::Out: return "Out";
    case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

/// How a trait's membership is justified. Semantic-by-construction evaluators
/// look only at input-output behaviour.
enum class TraitKind { Syntactic, Semantic, Unknown };

inline const char* to_string(TraitKind k)
{
    switch (k) {
    case TraitKind::Syntactic: return "syntactic-by-construction";
    case TraitKind::Semantic: return "semantic-by-construction";
    case TraitKind::Unknown: return "unknown";
    }
    return "?";
}

struct Bounds {
    std::size_t max_len = 2;
    std::uint64_t fuel = 100;
};

struct TraitDef {
    std::string name;
    std::function<Verdict(const MachineDescription&, const Bounds&)> evaluator;
    TraitKind declared_kind = TraitKind::Unknown;
};

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

class TraitExpr {
public:
    TraitExpr(TraitDef leaf) : node_(std::make_shared<const Node>(Node{Op::Leaf, std::move(leaf), {}, {}})) {}

    friend TraitExpr operator|(const TraitExpr& a, const TraitExpr& b) { return {Op::Union, a.node_, b.node_}; }
    friend TraitExpr operator&(const TraitExpr& a, const TraitExpr& b) { return {Op::Intersection, a.node_, b.node_}; }
    friend TraitExpr operator!(const TraitExpr& a) { return {Op::Complement, a.node_, nullptr}; }

    /// Kleene strong three-valued logic over the leaves.
    Verdict evaluate(const MachineDescription& m, const Bounds& bounds) const { return evaluate(*node_, m, bounds); }

    /// Semantic traits are closed under ∪, ∩ and complement, so an expression
    /// is semantic-by-construction when all its leaves are.
    TraitKind declared_kind() const { return kind(*node_); }

    std::string to_string() const { return render(*node_); }

private:
    enum class Op { Leaf, Union, Intersection, Complement };
    struct Node {
        Op op;
        TraitDef leaf;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    TraitExpr(Op op, std::shared_ptr<const Node> a, std::shared_ptr<const Node> b)
        : node_(std::make_shared<const Node>(Node{op, {}, std::move(a), std::move(b)}))
    {
    }

    static Verdict evaluate(const Node& n, const MachineDescription& m, const Bounds& bounds)
    {
        switch (n.op) {
        case Op::Leaf: return n.leaf.evaluator(m, bounds);
        case Op::Complement: {
            const Verdict v = evaluate(*n.lhs, m, bounds);
            return v == Verdict::In ? Verdict::Out : v == Verdict::Out ? Verdict::In : Verdict::Unknown;
        }
        case Op::Union: {
            const Verdict a = evaluate(*n.lhs, m, bounds);
            if (a == Verdict::In)
                return a;
            const Verdict b = evaluate(*n.rhs, m, bounds);
            if (b == Verdict::In)
                return b;
            return a == Verdict::Out && b == Verdict::Out ? Verdict::Out : Verdict::Unknown;
        }
        case Op::Intersection: {
            const Verdict a = evaluate(*n.lhs, m, bounds);
            if (a == Verdict::Out)
                return a;
            const Verdict b = evaluate(*n.rhs, m, bounds);
            if (b == Verdict::Out)
                return b;
            return a == Verdict::In && b == Verdict::In ? Verdict::In : Verdict::Unknown;
        }
        }
        return Verdict::Unknown;
    }

    static TraitKind kind(const Node& n)
    {
        if (n.op == Op::Leaf)
            return n.leaf.declared_kind;
        const TraitKind a = kind(*n.lhs);
        const TraitKind b = n.rhs ? kind(*n.rhs) : a;
        if (a == TraitKind::Semantic && b == TraitKind::Semantic)
            return TraitKind::Semantic;
        if (a == TraitKind::Syntactic && b == TraitKind::Syntactic)
            return TraitKind::Syntactic;
        return TraitKind::Unknown;
    }

    static std::string render(const Node& n)
    {
        switch (n.op) {
        case Op::Leaf: return n.leaf.name;
        case Op::Complement: return "!" + render(*n.lhs);
        case Op::Union: return "(" + render(*n.lhs) + " | " + render(*n.rhs) + ")";
        case Op::Intersection: return "(" + render(*n.lhs) + " & " + render(*n.rhs) + ")";
        }
        return "?";
    }

    std::shared_ptr<const Node> node_;
};

inline Verdict eval_trait(const TraitExpr& t, const MachineDescription& m, const Bounds& bounds)
{
    if (bounds.max_len == 0 || bounds.fuel == 0)
        throw DomainError("bounds must be positive");
    return t.evaluate(m, bounds);
}

// ---------------------------------------------------------------------------
// Shipped leaves
// ---------------------------------------------------------------------------

/// {M | M has n states}.
inline TraitDef trait_states(std::size_t n)
{
    return {"states:" + std::to_string(n),
            [n](const MachineDescription& m, const Bounds&) {
                return m.state_count() == n ? Verdict::In : Verdict::Out;
            },
            TraitKind::Syntactic};
}

/// Some transition enters the reject state.
inline TraitDef trait_targets_reject()
{
    return {"targets-reject",
            [](const MachineDescription& m, const Bounds&) {
                for (const auto& a : m.table())
                    if (a && a->next == m.reject())
                        return Verdict::In;
                return Verdict::Out;
            },
            TraitKind::Syntactic};
}

/// Some transition writes the blank.
inline TraitDef trait_writes_blank()
{
    return {"writes-blank",
            [](const MachineDescription& m, const Bounds&) {
                for (const auto& a : m.table())
                    if (a && a->write == kBlank)
                        return Verdict::In;
                return Verdict::Out;
            },
            TraitKind::Syntactic};
}

namespace detail {

inline Verdict total_on_nonempty(const MachineDescription& m, const Bounds& b)
{
    bool unknown = false;
    for (const auto& sigma : inputs_up_to(m.input_alphabet(), b.max_len)) {
        if (sigma.empty())
            continue;
        const auto r = run(m, sigma, b.fuel);
        if (r.exhausted())
            unknown = true;
        else if (!r.defined())
            return Verdict::Out;
    }
    return unknown ? Verdict::Unknown : Verdict::In;
}

} // namespace detail

/// φ_M(σ)↓ for every nonempty σ within the evaluation bounds. The empty input
/// is excluded because a blank tape is φ↑ by convention.
inline TraitDef trait_total()
{
    return {"total-nonempty", detail::total_on_nonempty, TraitKind::Semantic};
}

/// trait_total() with its own fixed bounds.
inline TraitDef trait_total_bounded(std::size_t max_len, std::uint64_t fuel)
{
    if (max_len == 0 || fuel == 0)
        throw DomainError("bounds must be positive");
    const Bounds fixed{max_len, fuel};
    return {"total-nonempty(len<=" + std::to_string(max_len) + ",fuel=" + std::to_string(fuel) + ")",
            [fixed](const MachineDescription& m, const Bounds&) { return detail::total_on_nonempty(m, fixed); },
            TraitKind::Semantic};
}

/// φ_M(σ) = σ on every tested nonempty σ.
inline TraitDef trait_echoes_input()
{
    return {"echo",
            [](const MachineDescription& m, const Bounds& b) {
                bool unknown = false;
                for (const auto& sigma : inputs_up_to(m.input_alphabet(), b.max_len)) {
                    if (sigma.empty())
                        continue;
                    const auto r = run(m, sigma, b.fuel);
                    if (r.exhausted())
                        unknown = true;
                    else if (!r.output() || *r.output() != sigma)
                        return Verdict::Out;
                }
                return unknown ? Verdict::Unknown : Verdict::In;
            },
            TraitKind::Semantic};
}

/// Bounded T_Φ(ξ). A machine with Φ undefined on every tested input is
/// Unknown: its membership would be vacuous and cannot be certified.
inline TraitDef trait_phi_bounded(ResourceMeasure phi, BoundFunction xi)
{
    std::string name = (phi.name == "TIME" ? "time:" : phi.name == "SPACE" ? "space:" : phi.name + ":")
                     + xi.to_string();
    return {std::move(name),
            [phi = std::move(phi), xi = std::move(xi)](const MachineDescription& m, const Bounds& b) {
                const auto r = phi_bounded_membership(m, phi, xi, b.max_len, b.fuel);
                switch (r.kind) {
                case PhiMembership::Kind::Violates: return Verdict::Out;
                case PhiMembership::Kind::Inconclusive: return Verdict::Unknown;
                case PhiMembership::Kind::InBounds: return r.defined_inputs > 0 ? Verdict::In : Verdict::Unknown;
                }
                return Verdict::Unknown;
            },
            TraitKind::Unknown};
}

/// Containment over every input of length ≤ max_len.
inline TraitDef trait_contained(ContainmentPolicy policy)
{
    return {"contained",
            [policy = std::move(policy)](const MachineDescription& m, const Bounds& b) {
                const auto r = containment_check(m, policy, inputs_up_to(m.input_alphabet(), b.max_len), b.fuel);
                switch (r.verdict) {
                case ContainmentReport::Verdict::Contained: return Verdict::In;
                case ContainmentReport::Verdict::Violated: return Verdict::Out;
                case ContainmentReport::Verdict::Inconclusive: return Verdict::Unknown;
                }
                return Verdict::Unknown;
            },
            TraitKind::Unknown};
}

/// Parses a trait expression: leaves joined by '&', '|', prefix '!' and
/// parentheses, '&' binding tighter than '|'. Leaves: states:N, total, echo,
/// targets-reject, writes-blank, time:<bound>, space:<bound>, contained
/// (needs `policy`).
inline TraitExpr parse_trait_expr(std::string_view text, const std::optional<ContainmentPolicy>& policy = {})
{
    struct Parser {
        std::string_view text;
        const std::optional<ContainmentPolicy>& policy;
        std::size_t pos = 0;

        void skip()
        {
            while (pos < text.size() && text[pos] == ' ')
                ++pos;
        }

        TraitExpr expr()
        {
            TraitExpr lhs = term();
            for (skip(); pos < text.size() && text[pos] == '|'; skip()) {
                ++pos;
                lhs = lhs | term();
            }
            return lhs;
        }

        TraitExpr term()
        {
            TraitExpr lhs = factor();
            for (skip(); pos < text.size() && text[pos] == '&'; skip()) {
                ++pos;
                lhs = lhs & factor();
            }
            return lhs;
        }

        TraitExpr factor()
        {
            skip();
            if (pos >= text.size())
                throw ParseError(1, pos + 1, "unexpected end of trait expression");
            if (text[pos] == '!') {
                ++pos;
                return !factor();
            }
            if (text[pos] == '(') {
                ++pos;
                TraitExpr e = expr();
                skip();
                if (pos >= text.size() || text[pos] != ')')
                    throw ParseError(1, pos + 1, "expected ')' in trait expression");
                ++pos;
                return e;
            }
            return leaf();
        }

        TraitExpr leaf()
        {
            const std::size_t begin = pos;
            int depth = 0;
            while (pos < text.size()) {
                const char c = text[pos];
                if (depth == 0 && (c == ' ' || c == '&' || c == '|' || c == ')'))
                    break;
                depth += c == '(' ? 1 : c == ')' ? -1 : 0;
                ++pos;
            }
            const std::string_view word = text.substr(begin, pos - begin);
            const auto colon = word.find(':');
            const std::string_view head = word.substr(0, colon);
            const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : word.substr(colon + 1);
            if (head == "states") {
                if (arg.empty() || arg.find_first_not_of("0123456789") != std::string_view::npos || arg.size() > 9)
                    throw ParseError(1, begin + 1, "states needs a count, e.g. states:3");
                return trait_states(std::stoul(std::string(arg)));
            }
            if (!arg.empty() && (head == "time" || head == "space")) {
                auto xi = BoundFunction::parse(arg);
                return trait_phi_bounded(head == "time" ? time_measure() : space_measure(), std::move(xi));
            }
            if (colon == std::string_view::npos) {
                if (word == "total")
                    return trait_total();
                if (word == "echo")
                    return trait_echoes_input();
                if (word == "targets-reject")
                    return trait_targets_reject();
                if (word == "writes-blank")
                    return trait_writes_blank();
                if (word == "contained") {
                    if (!policy)
                        throw ParseError(1, begin + 1, "the 'contained' trait needs a policy");
                    return trait_contained(*policy);
                }
            }
            throw ParseError(1, begin + 1, "unknown trait '" + std::string(word) + "'");
        }
    };

    Parser p{text, policy};
    TraitExpr e = p.expr();
    p.skip();
    if (p.pos != text.size())
        throw ParseError(1, p.pos + 1, "trailing characters in trait expression");
    return e;
}

// ---------------------------------------------------------------------------
// Semanticity probing
// ---------------------------------------------------------------------------

struct ProbeOptions {
    bool pad = true;
    bool delay = true;
    /// Strings for leaky_wrap probes; none means no leak probes.
    std::vector<std::string> leak_strings;
};

struct ProbeVariant {
    TransformKind kind;
    std::string parameter;
    MachineDescription machine;
};

/// The first `count` variants of m, round r contributing pad(m, r),
/// delay_inject(m, 2r) and leaky_wrap(m, χ) for the enabled kinds. Every
/// variant computes φ_m.
inline std::vector<ProbeVariant> probe_variants(const MachineDescription& m, std::size_t count,
                                                const ProbeOptions& options)
{
    if (!options.pad && !options.delay && options.leak_strings.empty())
        throw DomainError("no probe kind enabled");
    std::vector<ProbeVariant> out;
    for (std::size_t r = 1; out.size() < count; ++r) {
        if (options.pad && out.size() < count)
            out.push_back({TransformKind::Pad, std::to_string(r), pad(m, r)});
        if (options.delay && out.size() < count)
            out.push_back({TransformKind::Delay, std::to_string(2 * r), delay_inject(m, 2 * r)});
        if (!options.leak_strings.empty() && out.size() < count) {
            const auto& chi = options.leak_strings[(r - 1) % options.leak_strings.size()];
            out.push_back({TransformKind::Leak, chi, leaky_wrap(m, chi)});
        }
    }
    return out;
}

struct ProbeResult {
    /// A variant in m's machine class that is Out while m is In.
    std::optional<ProbeVariant> witness;
    std::size_t probes_tried = 0;
};

/// Looks for a member of [m] outside t. Finding one shows t is syntactic;
/// finding none proves nothing.
inline ProbeResult probe_semanticity(const TraitExpr& t, const MachineDescription& m, std::size_t probes,
                                     const Bounds& bounds, const ProbeOptions& options = {})
{
    if (eval_trait(t, m, bounds) != Verdict::In)
        throw DomainError("probe_semanticity needs a member of the trait");
    ProbeResult result;
    for (auto& variant : probe_variants(m, probes, options)) {
        ++result.probes_tried;
        if (eval_trait(t, variant.machine, bounds) == Verdict::Out) {
            result.witness = std::move(variant);
            break;
        }
    }
    return result;
}

enum class Part { Semantic, Syntactic, Unknown };

inline const char* to_string(Part p)
{
    switch (p) {
    case Part::Semantic: return "sem";
    case Part::Syntactic: return "syn";
    case Part::Unknown: return "unknown";
    }
    return "?";
}

struct PartitionRow {
    Index index;
    Verdict verdict;
    std::optional<Part> part;                 // set for In rows only
    std::optional<TransformKind> witness_kind; // syn rows
};

struct SemSynPartition {
    Natural first = 0;
    Natural last = 0;
    std::size_t probes = 0;
    Bounds bounds;
    std::vector<PartitionRow> rows;
    std::vector<Index> sem_part;
    std::vector<Index> syn_part;
    std::vector<Index> unknown_part;
};

/// Splits the In-members of first..last into sem/syn/unknown. sem requires the
/// trait to be semantic-by-construction: probes can only refute semanticity.
inline SemSynPartition sem_syn_partition(const TraitExpr& t, const Natural& first, const Natural& last,
                                         std::size_t probes, const Bounds& bounds, const ProbeOptions& options = {})
{
    SemSynPartition out{first, last, probes, bounds, {}, {}, {}, {}};
    const bool semantic = t.declared_kind() == TraitKind::Semantic;
    for (Natural n = first; n <= last; ++n) {
        const Index index(n);
        const CanonicalForm c = decode(index);
        PartitionRow row{index, eval_trait(t, c.machine(), bounds), std::nullopt, std::nullopt};
        if (row.verdict == Verdict::In) {
            const auto probe = probe_semanticity(t, c.machine(), probes, bounds, options);
            if (probe.witness) {
                row.part = Part::Syntactic;
                row.witness_kind = probe.witness->kind;
                out.syn_part.push_back(index);
            } else if (semantic) {
                row.part = Part::Semantic;
                out.sem_part.push_back(index);
            } else {
                row.part = Part::Unknown;
                out.unknown_part.push_back(index);
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Finite patches
// ---------------------------------------------------------------------------

/// Given a decider for L1 ∪ L2, the finite set L2 and the finite set
/// L1 ∩ L2 (`overlap`), returns a decider for L1:
///     x ∈ L1  ⇔  x ∈ overlap ∨ (x ∈ L1 ∪ L2 ∧ x ∉ L2).
template <class T>
std::function<bool(const T&)> finite_patch_decider(std::function<bool(const T&)> union_decider, std::set<T> finite,
                                                   std::set<T> overlap)
{
    for (const auto& x : overlap)
        if (!finite.count(x))
            throw DomainError("the overlap must be a subset of the finite language");
    return [d = std::move(union_decider), finite = std::move(finite), overlap = std::move(overlap)](const T& x) {
        return overlap.count(x) > 0 || (d(x) && finite.count(x) == 0);
    };
}

// ---------------------------------------------------------------------------
// State-count reduction wiring
// ---------------------------------------------------------------------------

enum class HaltingStatus { Defined, Undefined, Unknown };

/// Certified classification of φ_m(σ): Defined / Undefined when the run halts
/// or provably diverges within fuel (repeated configuration, or an outward
/// run into blank tape through a cycle of states), Unknown otherwise.
inline HaltingStatus certify_halting(const MachineDescription& m, std::string_view sigma, std::uint64_t fuel)
{
    Execution e(m, sigma);
    std::unordered_set<std::string> seen;
    auto runaway = [&](Move outward) {
        std::set<State> chain;
        State q = e.state();
        while (!m.is_halting(q)) {
            if (!chain.insert(q).second)
                return true;
            const Action& a = m.action(q, kBlank);
            if (a.move != outward)
                return false;
            q = a.next;
        }
        return false;
    };
    while (!e.halted()) {
        const auto ext = e.extent();
        if ((!ext || e.head() > ext->second) && runaway(Move::Right))
            return HaltingStatus::Undefined;
        if ((!ext || e.head() < ext->first) && runaway(Move::Left))
            return HaltingStatus::Undefined;
        std::string key = std::to_string(e.state()) + '/' + std::to_string(e.head() - (ext ? ext->first : 0)) + '/'
                        + std::to_string(ext ? ext->first : 0) + '/' + e.render();
        if (!seen.insert(std::move(key)).second)
            return HaltingStatus::Undefined;
        if (e.steps() >= fuel)
            return HaltingStatus::Unknown;
        e.step();
    }
    return e.outcome().defined() ? HaltingStatus::Defined : HaltingStatus::Undefined;
}

/// S: index ↦ number of states of the machine it names.
inline std::size_t state_count_of(const Index& index) { return decode(index).machine().state_count(); }

/// Ground truth for φ_M(σ)↓ over indices 0..count-1 and |σ| ≤ max_len, keyed
/// by pair(index, rank(σ)).
class HaltingTable {
public:
    static HaltingTable build(std::uint64_t count, std::size_t max_len, std::uint64_t fuel)
    {
        HaltingTable t;
        for (std::uint64_t n = 0; n < count; ++n) {
            const Index index(n);
            const CanonicalForm c = decode(index);
            for (const auto& sigma : inputs_up_to(c.machine().input_alphabet(), max_len)) {
                const auto status = certify_halting(c.machine(), sigma, fuel);
                t.entries_.emplace(key(index, sigma, c.machine().input_alphabet()), status);
                t.inputs_.emplace_back(index, sigma);
            }
        }
        return t;
    }

    HaltingStatus status(const Index& index, std::string_view sigma) const
    {
        const auto it = entries_.find(key(index, sigma, decode(index).machine().input_alphabet()));
        return it == entries_.end() ? HaltingStatus::Unknown : it->second;
    }

    /// Every (index, σ) pair in the table, in build order.
    const std::vector<std::pair<Index, std::string>>& entries() const noexcept { return inputs_; }

private:
    static Natural key(const Index& index, std::string_view sigma, std::string_view alphabet)
    {
        return pair(index.value(), string_rank(sigma, alphabet));
    }

    std::map<Natural, HaltingStatus> entries_;
    std::vector<std::pair<Index, std::string>> inputs_;
};

/// H: (η(M), σ, n) ↦ 1 iff M has n states and φ_M(σ)↓.
using HaltingOracle = std::function<int(const Index&, std::string_view, std::size_t)>;
/// N: (η(M), σ) ↦ {0, 1}.
using HaltingDecider = std::function<int(const Index&, std::string_view)>;

/// Oracle backed by a certified table; uncertified entries answer 0.
inline HaltingOracle table_oracle(std::shared_ptr<const HaltingTable> table)
{
    return [table = std::move(table)](const Index& index, std::string_view sigma, std::size_t n) {
        return state_count_of(index) == n && table->status(index, sigma) == HaltingStatus::Defined ? 1 : 0;
    };
}

/// N(η(M), σ) = H(η(M), σ, S(η(M))).
inline HaltingDecider prop3_wiring(HaltingOracle oracle)
{
    return [h = std::move(oracle)](const Index& index, std::string_view sigma) {
        return h(index, sigma, state_count_of(index));
    };
}

} // namespace traitlab

#endif
