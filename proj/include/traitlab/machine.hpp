#ifndef TRAITLAB_MACHINE_HPP
#define TRAITLAB_MACHINE_HPP

// Two-way single-tape deterministic Turing machines: descriptions, the text
// format, configurations, stepping, fuel-bounded runs and bounded equivalence.

#include "traitlab/error.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace traitlab {

using State = std::uint32_t;
using Symbol = char;
using Cell = std::int64_t;

inline constexpr Symbol kBlank = '_';

enum class Move : std::uint8_t { Left = 0, Right = 1 };

inline char move_letter(Move m) { return m == Move::Left ? 'L' : 'R'; }

struct Action {
    State next = 0;
    Symbol write = kBlank;
    Move move = Move::Left;

    friend bool operator==(const Action&, const Action&) = default;
};

/// A complete DTM (Q, Σ, Γ, δ, q0, q_A, q_R). Immutable once constructed; the
/// constructor enforces every structural invariant.
class MachineDescription {
public:
    /// `table` is indexed by `state * |Γ| + rank(symbol)`; entries of halting
    /// states must be empty and all other entries present.
    MachineDescription(std::size_t state_count, State start, State accept, State reject,
                       std::string input_alphabet, std::string tape_alphabet,
                       std::vector<std::optional<Action>> table)
        : state_count_(state_count), start_(start), accept_(accept), reject_(reject),
          input_alphabet_(std::move(input_alphabet)), tape_alphabet_(std::move(tape_alphabet)),
          table_(std::move(table))
    {
        rank_.fill(-1);
        input_.fill(false);
        validate();
    }

    std::size_t state_count() const noexcept { return state_count_; }
    State start() const noexcept { return start_; }
    State accept() const noexcept { return accept_; }
    State reject() const noexcept { return reject_; }
    const std::string& input_alphabet() const noexcept { return input_alphabet_; }
    const std::string& tape_alphabet() const noexcept { return tape_alphabet_; }
    const std::vector<std::optional<Action>>& table() const noexcept { return table_; }

    bool is_halting(State q) const noexcept { return q == accept_ || q == reject_; }

    /// Position of `x` in Γ, or -1.
    int rank(Symbol x) const noexcept { return rank_[static_cast<unsigned char>(x)]; }
    bool in_tape_alphabet(Symbol x) const noexcept { return rank(x) >= 0; }
    bool in_input_alphabet(Symbol x) const noexcept { return input_[static_cast<unsigned char>(x)]; }

    std::size_t slot(State q, Symbol x) const noexcept
    {
        return static_cast<std::size_t>(q) * tape_alphabet_.size() + static_cast<std::size_t>(rank(x));
    }

    /// δ(q, x). Requires q non-halting and x ∈ Γ.
    const Action& action(State q, Symbol x) const
    {
        if (is_halting(q))
            throw DomainError("delta is undefined on halting state " + std::to_string(q));
        if (!in_tape_alphabet(x))
            throw DomainError(std::string("symbol '") + x + "' is not in the tape alphabet");
        return *table_[slot(q, x)];
    }

    // Unchecked variant for hot loops: q non-halting, x ∈ Γ.
    const Action& action_unchecked(State q, Symbol x) const noexcept { return *table_[slot(q, x)]; }

    friend bool operator==(const MachineDescription& a, const MachineDescription& b)
    {
        return a.state_count_ == b.state_count_ && a.start_ == b.start_ && a.accept_ == b.accept_
            && a.reject_ == b.reject_ && a.input_alphabet_ == b.input_alphabet_
            && a.tape_alphabet_ == b.tape_alphabet_ && a.table_ == b.table_;
    }

private:
    void validate()
    {
        if (state_count_ < 3)
            throw InvariantError("states", "a machine needs at least 3 states, got " + std::to_string(state_count_));
        for (auto [name, q] : {std::pair{"start", start_}, std::pair{"accept", accept_}, std::pair{"reject", reject_}})
            if (q >= state_count_)
                throw InvariantError(name, std::string(name) + " state " + std::to_string(q) + " is out of range");
        if (accept_ == reject_)
            throw InvariantError("accept", "accept and reject states must differ");

        for (std::size_t i = 0; i < tape_alphabet_.size(); ++i) {
            const auto c = static_cast<unsigned char>(tape_alphabet_[i]);
            if (rank_[c] >= 0)
                throw InvariantError("tape_alphabet", std::string("duplicate tape symbol '") + tape_alphabet_[i] + "'");
            rank_[c] = static_cast<int>(i);
        }
        if (rank(kBlank) < 0)
            throw InvariantError("tape_alphabet", "the tape alphabet must contain the blank '_'");
        if (input_alphabet_.empty())
            throw InvariantError("input_alphabet", "the input alphabet must be nonempty");
        for (Symbol x : input_alphabet_) {
            if (x == kBlank)
                throw InvariantError("input_alphabet", "the blank '_' cannot be an input symbol");
            if (rank(x) < 0)
                throw InvariantError("input_alphabet", std::string("input symbol '") + x + "' is not in the tape alphabet");
            auto& seen = input_[static_cast<unsigned char>(x)];
            if (seen)
                throw InvariantError("input_alphabet", std::string("duplicate input symbol '") + x + "'");
            seen = true;
        }

        if (table_.size() != state_count_ * tape_alphabet_.size())
            throw InvariantError("delta", "transition table has the wrong size");
        for (State q = 0; q < state_count_; ++q) {
            for (Symbol x : tape_alphabet_) {
                const auto& entry = table_[slot(q, x)];
                if (is_halting(q)) {
                    if (entry)
                        throw InvariantError("delta", "halting state " + std::to_string(q) + " has a transition");
                    continue;
                }
                if (!entry)
                    throw InvariantError("delta", "missing transition for (state " + std::to_string(q)
                                                      + ", symbol '" + x + "')");
                if (entry->next >= state_count_)
                    throw InvariantError("delta", "transition (" + std::to_string(q) + ", '" + x
                                                      + "') targets unknown state " + std::to_string(entry->next));
                if (rank(entry->write) < 0)
                    throw InvariantError("delta", "transition (" + std::to_string(q) + ", '" + x
                                                      + "') writes unknown symbol '" + entry->write + "'");
            }
        }
    }

    std::size_t state_count_;
    State start_;
    State accept_;
    State reject_;
    std::string input_alphabet_;
    std::string tape_alphabet_;
    std::vector<std::optional<Action>> table_;
    std::array<int, 256> rank_{};
    std::array<bool, 256> input_{};
};

/// Incremental construction of a MachineDescription; `build()` validates.
class MachineBuilder {
public:
    MachineBuilder(std::size_t state_count, State start, State accept, State reject,
                   std::string input_alphabet, std::string tape_alphabet)
        : state_count_(state_count), start_(start), accept_(accept), reject_(reject),
          input_alphabet_(std::move(input_alphabet)), tape_alphabet_(std::move(tape_alphabet)),
          table_(state_count_ * tape_alphabet_.size())
    {
    }

    MachineBuilder& set(State q, Symbol x, Action a)
    {
        const auto r = tape_alphabet_.find(x);
        if (q >= state_count_ || r == std::string::npos)
            throw DomainError(std::string("no table slot for (") + std::to_string(q) + ", '" + x + "')");
        table_[q * tape_alphabet_.size() + r] = a;
        return *this;
    }

    /// Same action shape for every symbol: writes back what it read.
    MachineBuilder& set_passthrough(State q, State next, Move move)
    {
        for (Symbol x : tape_alphabet_)
            set(q, x, {next, x, move});
        return *this;
    }

    const std::string& tape_alphabet() const noexcept { return tape_alphabet_; }

    MachineDescription build() const
    {
        return {state_count_, start_, accept_, reject_, input_alphabet_, tape_alphabet_, table_};
    }

private:
    std::size_t state_count_;
    State start_;
    State accept_;
    State reject_;
    std::string input_alphabet_;
    std::string tape_alphabet_;
    std::vector<std::optional<Action>> table_;
};

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

namespace detail {

inline bool reserved_symbol(char c) { return c == '#' || c == ':' || c == ' ' || c == '\t' || c == '\r'; }

struct Token {
    std::string text;
    std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        const std::size_t begin = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#'
               && line[i] != ':')
            ++i;
        if (i < line.size() && line[i] == ':')
            ++i; // keys keep their colon
        out.push_back({std::string(line.substr(begin, i - begin)), begin + 1});
    }
    return out;
}

inline std::size_t parse_count(const Token& t, std::size_t line, const char* what)
{
    if (t.text.empty() || t.text.size() > 9 || !std::all_of(t.text.begin(), t.text.end(), [](char c) {
            return c >= '0' && c <= '9';
        }))
        throw ParseError(line, t.column, std::string("expected a non-negative integer for ") + what + ", got '"
                                             + t.text + "'");
    return static_cast<std::size_t>(std::stoul(t.text));
}

inline Symbol parse_symbol(const Token& t, std::size_t line)
{
    if (t.text.size() != 1 || reserved_symbol(t.text[0]))
        throw ParseError(line, t.column, "expected a single-character symbol, got '" + t.text + "'");
    return t.text[0];
}

} // namespace detail

/// Parses the line-oriented machine format:
///
///     states: 3
///     start: 0   accept: 1   reject: 2
///     input_alphabet: ab
///     tape_alphabet: ab_
///     delta: 0 a -> 1 a R
///
/// `#` starts a comment. Errors carry the line and column of the problem.
inline MachineDescription parse_machine(std::string_view text)
{
    std::optional<std::size_t> states;
    std::optional<State> start, accept, reject;
    std::optional<std::string> sigma, gamma;
    std::map<std::string, std::size_t> key_line;

    struct DeltaLine {
        std::size_t line;
        std::size_t column;
        State from;
        Symbol read;
        Action action;
    };
    std::vector<DeltaLine> deltas;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        const auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const auto tokens = detail::tokenize(line);
        std::size_t i = 0;
        while (i < tokens.size()) {
            const auto& key = tokens[i];
            if (key.text.empty() || key.text.back() != ':')
                throw ParseError(line_no, key.column, "expected a 'key:' directive, got '" + key.text + "'");
            const std::string name = key.text.substr(0, key.text.size() - 1);
            if (name == "delta") {
                if (i != 0)
                    throw ParseError(line_no, key.column, "'delta:' must start its own line");
                if (tokens.size() != 7)
                    throw ParseError(line_no, key.column,
                                     "delta line must read '<state> <symbol> -> <state> <symbol> <L|R>'");
                if (tokens[3].text != "->")
                    throw ParseError(line_no, tokens[3].column, "expected '->', got '" + tokens[3].text + "'");
                Move move;
                if (tokens[6].text == "L")
                    move = Move::Left;
                else if (tokens[6].text == "R")
                    move = Move::Right;
                else
                    throw ParseError(line_no, tokens[6].column, "direction must be L or R, got '" + tokens[6].text + "'");
                deltas.push_back({line_no, key.column,
                                  static_cast<State>(detail::parse_count(tokens[1], line_no, "a state")),
                                  detail::parse_symbol(tokens[2], line_no),
                                  {static_cast<State>(detail::parse_count(tokens[4], line_no, "a state")),
                                   detail::parse_symbol(tokens[5], line_no), move}});
                i = tokens.size();
                continue;
            }
            if (i + 1 >= tokens.size())
                throw ParseError(line_no, key.column, "missing value for '" + name + "'");
            const auto& value = tokens[i + 1];
            if (key_line.count(name))
                throw ParseError(line_no, key.column, "duplicate directive '" + name + "'");
            key_line[name] = line_no;
            if (name == "states") {
                states = detail::parse_count(value, line_no, "states");
            } else if (name == "start") {
                start = static_cast<State>(detail::parse_count(value, line_no, "start"));
            } else if (name == "accept") {
                accept = static_cast<State>(detail::parse_count(value, line_no, "accept"));
            } else if (name == "reject") {
                reject = static_cast<State>(detail::parse_count(value, line_no, "reject"));
            } else if (name == "input_alphabet" || name == "tape_alphabet") {
                for (std::size_t c = 0; c < value.text.size(); ++c)
                    if (detail::reserved_symbol(value.text[c]))
                        throw ParseError(line_no, value.column + c, "reserved character in alphabet");
                (name == "input_alphabet" ? sigma : gamma) = value.text;
            } else {
                throw ParseError(line_no, key.column, "unknown directive '" + name + "'");
            }
            i += 2;
        }
    }

    const std::pair<const char*, bool> required[] = {
        {"states", states.has_value()},         {"start", start.has_value()},
        {"accept", accept.has_value()},         {"reject", reject.has_value()},
        {"input_alphabet", sigma.has_value()}, {"tape_alphabet", gamma.has_value()},
    };
    for (auto [name, present] : required)
        if (!present)
            throw ParseError(0, 0, std::string("missing directive '") + name + "'");

    std::vector<std::optional<Action>> table(*states * gamma->size());
    std::vector<std::size_t> table_line(table.size(), 0);
    for (const auto& d : deltas) {
        const auto r = gamma->find(d.read);
        if (d.from >= *states)
            throw ParseError(d.line, d.column, "delta from unknown state " + std::to_string(d.from));
        if (r == std::string::npos)
            throw ParseError(d.line, d.column, std::string("delta reads unknown symbol '") + d.read + "'");
        if (d.from == *accept || d.from == *reject)
            throw ParseError(d.line, d.column, "delta defined on halting state " + std::to_string(d.from));
        const auto slot = d.from * gamma->size() + r;
        if (table[slot])
            throw ParseError(d.line, d.column, "duplicate delta for (state " + std::to_string(d.from) + ", symbol '"
                                                   + d.read + "'), first given on line "
                                                   + std::to_string(table_line[slot]));
        table[slot] = d.action;
        table_line[slot] = d.line;
        if (d.action.next >= *states)
            throw ParseError(d.line, d.column, "delta targets unknown state " + std::to_string(d.action.next));
        if (gamma->find(d.action.write) == std::string::npos)
            throw ParseError(d.line, d.column, std::string("delta writes unknown symbol '") + d.action.write + "'");
    }
    if (*accept != *reject && *states >= 3 && *start < *states && *accept < *states && *reject < *states) {
        for (State q = 0; q < *states; ++q) {
            if (q == *accept || q == *reject)
                continue;
            for (Symbol x : *gamma)
                if (!table[q * gamma->size() + gamma->find(x)])
                    throw ParseError(0, 0, "delta is not total: missing (state " + std::to_string(q) + ", symbol '"
                                               + x + "')");
        }
    }

    try {
        return {*states, *start, *accept, *reject, *sigma, *gamma, std::move(table)};
    } catch (const InvariantError& e) {
        const auto it = key_line.find(e.field());
        throw ParseError(it == key_line.end() ? 0 : it->second, 1, e.what());
    }
}

/// Writes `m` in the text format accepted by parse_machine.
inline std::string serialize_machine(const MachineDescription& m)
{
    std::ostringstream out;
    out << "states: " << m.state_count() << '\n'
        << "start: " << m.start() << "   accept: " << m.accept() << "   reject: " << m.reject() << '\n'
        << "input_alphabet: " << m.input_alphabet() << '\n'
        << "tape_alphabet: " << m.tape_alphabet() << '\n';
    for (State q = 0; q < m.state_count(); ++q) {
        if (m.is_halting(q))
            continue;
        for (Symbol x : m.tape_alphabet()) {
            const auto& a = m.action(q, x);
            out << "delta: " << q << ' ' << x << " -> " << a.next << ' ' << a.write << ' ' << move_letter(a.move)
                << '\n';
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Configurations and stepping
// ---------------------------------------------------------------------------

/// Machine state, head cell and the sparse tape (blank cells are absent).
struct Configuration {
    State state = 0;
    Cell head = 0;
    std::map<Cell, Symbol> tape;

    Symbol read() const
    {
        const auto it = tape.find(head);
        return it == tape.end() ? kBlank : it->second;
    }

    /// Tape from the leftmost to the rightmost non-blank cell, gaps as '_'.
    std::string render() const
    {
        if (tape.empty())
            return {};
        std::string out;
        Cell expect = tape.begin()->first;
        for (const auto& [cell, sym] : tape) {
            out.append(static_cast<std::size_t>(cell - expect), kBlank);
            out.push_back(sym);
            expect = cell + 1;
        }
        return out;
    }

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

inline void check_input(const MachineDescription& m, std::string_view input)
{
    for (std::size_t i = 0; i < input.size(); ++i)
        if (!m.in_input_alphabet(input[i]))
            throw DomainError(std::string("input symbol '") + input[i] + "' at position " + std::to_string(i)
                              + " is not in the input alphabet");
}

/// Initial configuration: q0, input on cells 1..|σ|, head on the blank cell 0.
inline Configuration initialize(const MachineDescription& m, std::string_view input)
{
    check_input(m, input);
    Configuration c{m.start(), 0, {}};
    for (std::size_t i = 0; i < input.size(); ++i)
        c.tape.emplace(static_cast<Cell>(i + 1), input[i]);
    return c;
}

inline Configuration step(const MachineDescription& m, const Configuration& c)
{
    if (m.is_halting(c.state))
        throw DomainError("step called on a halted configuration (state " + std::to_string(c.state) + ")");
    const Action& a = m.action(c.state, c.read());
    Configuration next = c;
    if (a.write == kBlank)
        next.tape.erase(c.head);
    else
        next.tape[c.head] = a.write;
    next.head += a.move == Move::Left ? -1 : 1;
    next.state = a.next;
    return next;
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

enum class UndefinedReason { BlankTape, NonInputSymbol };

struct HaltedOutput {
    std::string output;
    friend bool operator==(const HaltedOutput&, const HaltedOutput&) = default;
};

struct HaltedUndefined {
    UndefinedReason reason;
    friend bool operator==(const HaltedUndefined&, const HaltedUndefined&) = default;
};

struct FuelExhausted {
    friend bool operator==(const FuelExhausted&, const FuelExhausted&) = default;
};

struct RunOutcome {
    std::variant<HaltedOutput, HaltedUndefined, FuelExhausted> result;
    std::uint64_t steps = 0;
    /// Distinct cells scanned by executed transitions, plus the start cell.
    std::uint64_t space = 0;

    bool defined() const noexcept { return std::holds_alternative<HaltedOutput>(result); }
    bool halted() const noexcept { return !std::holds_alternative<FuelExhausted>(result); }
    bool exhausted() const noexcept { return std::holds_alternative<FuelExhausted>(result); }

    /// The output γ when defined, otherwise null.
    const std::string* output() const noexcept
    {
        const auto* h = std::get_if<HaltedOutput>(&result);
        return h ? &h->output : nullptr;
    }

    friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

inline std::string describe(const RunOutcome& r)
{
    if (const auto* out = r.output())
        return "HaltedOutput(" + *out + ")";
    if (const auto* u = std::get_if<HaltedUndefined>(&r.result))
        return u->reason == UndefinedReason::BlankTape ? "HaltedUndefined(blank-tape)"
                                                       : "HaltedUndefined(non-input-symbol)";
    return "FuelExhausted";
}

/// Direct-addressed simulation used by run() and every sweep. Semantics are
/// identical to repeated step() on a Configuration.
class Execution {
public:
    Execution(const MachineDescription& m, std::string_view input) : machine_(&m), state_(m.start())
    {
        check_input(m, input);
        cells_.assign(input.size() + 2 + 2 * kMargin, kBlank);
        scanned_.assign(cells_.size(), 0);
        origin_ = kMargin;
        for (std::size_t i = 0; i < input.size(); ++i)
            cells_[origin_ + 1 + i] = input[i];
        mark_scanned();
    }

    bool halted() const noexcept { return machine_->is_halting(state_); }
    State state() const noexcept { return state_; }
    Cell head() const noexcept { return head_; }
    std::uint64_t steps() const noexcept { return steps_; }
    std::uint64_t space() const noexcept { return space_; }

    Symbol read() const noexcept { return cells_[index(head_)]; }

    /// Executes one transition. Requires !halted().
    void step()
    {
        if (halted())
            throw DomainError("step called on a halted execution");
        mark_scanned();
        const Action& a = machine_->action_unchecked(state_, read());
        cells_[index(head_)] = a.write;
        head_ += a.move == Move::Left ? -1 : 1;
        state_ = a.next;
        ++steps_;
        ensure(head_);
    }

    /// Steps until halted or `fuel` total steps have been executed.
    void run_until(std::uint64_t fuel)
    {
        while (!halted() && steps_ < fuel)
            step();
    }

    /// Leftmost and rightmost non-blank cells, if any.
    std::optional<std::pair<Cell, Cell>> extent() const
    {
        std::size_t lo = 0;
        while (lo < cells_.size() && cells_[lo] == kBlank)
            ++lo;
        if (lo == cells_.size())
            return std::nullopt;
        std::size_t hi = cells_.size() - 1;
        while (cells_[hi] == kBlank)
            --hi;
        return std::pair{static_cast<Cell>(lo) - static_cast<Cell>(origin_),
                         static_cast<Cell>(hi) - static_cast<Cell>(origin_)};
    }

    /// Same as Configuration::render() for the current tape.
    std::string render() const
    {
        const auto ext = extent();
        if (!ext)
            return {};
        return std::string(cells_.begin() + static_cast<std::ptrdiff_t>(index(ext->first)),
                           cells_.begin() + static_cast<std::ptrdiff_t>(index(ext->second)) + 1);
    }

    Configuration configuration() const
    {
        Configuration c{state_, head_, {}};
        for (std::size_t i = 0; i < cells_.size(); ++i)
            if (cells_[i] != kBlank)
                c.tape.emplace(static_cast<Cell>(i) - static_cast<Cell>(origin_), cells_[i]);
        return c;
    }

    /// Classifies the current tape per the proper-function convention. Only
    /// meaningful once halted().
    RunOutcome outcome() const
    {
        RunOutcome r;
        r.steps = steps_;
        r.space = space_;
        if (!halted()) {
            r.result = FuelExhausted{};
            return r;
        }
        std::string out;
        for (Symbol s : cells_) {
            if (s == kBlank)
                continue;
            if (!machine_->in_input_alphabet(s)) {
                r.result = HaltedUndefined{UndefinedReason::NonInputSymbol};
                return r;
            }
            out.push_back(s);
        }
        if (out.empty())
            r.result = HaltedUndefined{UndefinedReason::BlankTape};
        else
            r.result = HaltedOutput{std::move(out)};
        return r;
    }

private:
    static constexpr std::size_t kMargin = 16;

    std::size_t index(Cell c) const noexcept { return static_cast<std::size_t>(c + static_cast<Cell>(origin_)); }

    void mark_scanned()
    {
        auto& s = scanned_[index(head_)];
        if (!s) {
            s = 1;
            ++space_;
        }
    }

    void ensure(Cell c)
    {
        if (c + static_cast<Cell>(origin_) < 0) {
            const std::size_t grow = std::max<std::size_t>(cells_.size(), kMargin);
            cells_.insert(cells_.begin(), grow, kBlank);
            scanned_.insert(scanned_.begin(), grow, 0);
            origin_ += grow;
        } else if (index(c) >= cells_.size()) {
            const std::size_t grow = std::max<std::size_t>(cells_.size(), kMargin);
            cells_.resize(cells_.size() + grow, kBlank);
            scanned_.resize(scanned_.size() + grow, 0);
        }
    }

    const MachineDescription* machine_;
    State state_;
    Cell head_ = 0;
    std::uint64_t steps_ = 0;
    std::uint64_t space_ = 0;
    std::size_t origin_ = 0;
    std::vector<Symbol> cells_;
    std::vector<std::uint8_t> scanned_;
};

/// Fuel-bounded run. Never throws on machine behaviour; only on inputs
/// outside Σ.
inline RunOutcome run(const MachineDescription& m, std::string_view input, std::uint64_t fuel)
{
    Execution e(m, input);
    e.run_until(fuel);
    return e.outcome();
}

/// Configurations from the initial one until halt or `fuel` steps.
inline std::vector<Configuration> trace(const MachineDescription& m, std::string_view input, std::uint64_t fuel)
{
    std::vector<Configuration> out;
    out.push_back(initialize(m, input));
    while (!m.is_halting(out.back().state) && out.size() <= fuel)
        out.push_back(step(m, out.back()));
    return out;
}

/// Every string over `alphabet` of length ≤ max_len, shortest first, then in
/// alphabet order.
inline std::vector<std::string> inputs_up_to(std::string_view alphabet, std::size_t max_len)
{
    std::vector<std::string> out{""};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (Symbol x : alphabet)
                out.push_back(out[i] + x);
        begin = end;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bounded equivalence
// ---------------------------------------------------------------------------

struct Equivalence {
    enum class Kind { Agree, Differ, Inconclusive };
    Kind kind = Kind::Agree;
    /// Differ: the separating input. Inconclusive: the first input on which a
    /// run ran out of fuel.
    std::string witness;

    friend bool operator==(const Equivalence&, const Equivalence&) = default;
};

inline const char* to_string(Equivalence::Kind k)
{
    switch (k) {
    case Equivalence::Kind::Agree: return "Agree";
    case Equivalence::Kind::Differ: return "Differ";
    case Equivalence::Kind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

/// Compares two outcomes as values of partial functions. nullopt: undecided.
inline std::optional<bool> same_value(const RunOutcome& a, const RunOutcome& b)
{
    if (a.exhausted() || b.exhausted())
        return std::nullopt;
    const auto* x = a.output();
    const auto* y = b.output();
    if (!x || !y)
        return !x && !y;
    return *x == *y;
}

/// φ_m1 ≃ φ_m2 checked on every σ with |σ| ≤ max_len.
inline Equivalence equiv_bounded(const MachineDescription& m1, const MachineDescription& m2, std::size_t max_len,
                                 std::uint64_t fuel)
{
    if (m1.input_alphabet() != m2.input_alphabet())
        throw DomainError("input alphabets differ: '" + m1.input_alphabet() + "' vs '" + m2.input_alphabet() + "'");
    std::optional<std::string> inconclusive;
    for (const auto& sigma : inputs_up_to(m1.input_alphabet(), max_len)) {
        const auto same = same_value(run(m1, sigma, fuel), run(m2, sigma, fuel));
        if (!same) {
            if (!inconclusive)
                inconclusive = sigma;
        } else if (!*same) {
            return {Equivalence::Kind::Differ, sigma};
        }
    }
    if (inconclusive)
        return {Equivalence::Kind::Inconclusive, *inconclusive};
    return {Equivalence::Kind::Agree, {}};
}

} // namespace traitlab

#endif
