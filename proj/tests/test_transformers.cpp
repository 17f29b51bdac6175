#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace traitlab;

namespace {

std::vector<MachineDescription> corpus(std::uint64_t seed, int random_count)
{
    std::vector<MachineDescription> out;
    for (auto& [name, m] : fixtures::all())
        out.push_back(m);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < random_count; ++i)
        out.push_back(support::random_machine(rng));
    return out;
}

} // namespace

TEST_CASE("pad")
{
    const auto echo = fixtures::echo();
    const auto p = pad(echo, 3);
    CHECK(p.state_count() == 6);
    CHECK(equiv_bounded(echo, p, 4, 100).kind == Equivalence::Kind::Agree);
    CHECK(index_of(pad(echo, 1)) != index_of(echo));

    std::set<std::string> indices;
    for (std::size_t k = 1; k <= 10; ++k)
        indices.insert(index_of(pad(echo, k))->str());
    CHECK(indices.size() == 10);
    CHECK_THROWS_AS(pad(echo, 0), DomainError);
}

TEST_CASE("padding keeps traces identical")
{
    for (const auto& m : corpus(31, 100))
        for (const auto& sigma : inputs_up_to(m.input_alphabet(), 2))
            CHECK(trace(pad(m, 2), sigma, 60) == trace(m, sigma, 60));
}

TEST_CASE("delay_inject")
{
    const auto echo = fixtures::echo();
    const auto r = run(delay_inject(echo, 4), "ab", 100);
    REQUIRE(r.output());
    CHECK(*r.output() == "ab");
    CHECK(r.steps == 5);
    CHECK(run(delay_inject(echo, 4), "a", 100).space == 3);
    CHECK(equiv_bounded(delay_inject(fixtures::looper(), 6), fixtures::looper(), 2, 200).kind
          == Equivalence::Kind::Inconclusive);
    CHECK_THROWS_AS(delay_inject(echo, 3), DomainError);
    CHECK_THROWS_AS(delay_inject(echo, 0), DomainError);
}

TEST_CASE("delay excursion returns to the original program on an untouched tape")
{
    for (const auto& m : corpus(32, 100)) {
        for (std::size_t d : {2u, 6u}) {
            const auto n = delay_inject(m, d);
            for (const auto& sigma : inputs_up_to(m.input_alphabet(), 2)) {
                const auto original = trace(m, sigma, 50);
                const auto delayed = trace(n, sigma, 50 + d);
                REQUIRE(delayed.size() == original.size() + d);
                for (std::size_t i = 0; i < original.size(); ++i)
                    CHECK(delayed[i + d] == original[i]);
                for (std::size_t i = 0; i <= d; ++i)
                    CHECK(delayed[i].tape == original[0].tape);
            }
        }
    }
}

TEST_CASE("exact delay arithmetic and composition")
{
    for (const auto& m : corpus(33, 150)) {
        for (const auto& sigma : inputs_up_to(m.input_alphabet(), 3)) {
            const auto base = run(m, sigma, 300);
            if (!base.halted())
                continue;
            for (std::size_t d : {2u, 4u, 8u})
                CHECK(run(delay_inject(m, d), sigma, 400).steps == base.steps + d);
            const auto twice = delay_inject(delay_inject(m, 4), 6);
            CHECK(run(twice, sigma, 400).steps == base.steps + 10);
            CHECK(run(delay_inject(m, 4), sigma, 400).space >= base.space);
        }
    }
}

TEST_CASE("leaky_wrap")
{
    const auto echo = fixtures::echo();
    const auto leaky = leaky_wrap(echo, "bb");
    CHECK(equiv_bounded(leaky, echo, 3, 500).kind == Equivalence::Kind::Agree);

    bool seen = false;
    for (const auto& c : trace(leaky, "a", 500))
        seen = seen || c.render().find("bb") != std::string::npos;
    CHECK(seen);
    CHECK_THROWS_AS(leaky_wrap(echo, ""), DomainError);
    CHECK_THROWS_AS(leaky_wrap(echo, "b_"), DomainError);

    SECTION("the string lands right after the input")
    {
        const auto t = trace(leaky, "ab", 500);
        const auto at = std::find_if(t.begin(), t.end(), [](const Configuration& c) { return c.tape.size() == 4; });
        REQUIRE(at != t.end());
        CHECK(at->tape == std::map<Cell, Symbol>{{1, 'a'}, {2, 'b'}, {3, 'b'}, {4, 'b'}});
    }
    SECTION("empty input: written from cell 1")
    {
        const auto t = trace(leaky, "", 500);
        const auto at = std::find_if(t.begin(), t.end(), [](const Configuration& c) { return c.tape.size() == 2; });
        REQUIRE(at != t.end());
        CHECK(at->tape == std::map<Cell, Symbol>{{1, 'b'}, {2, 'b'}});
    }
    SECTION("new symbols extend the tape alphabet")
    {
        const auto m = leaky_wrap(echo, "XY");
        CHECK(m.tape_alphabet() == "ab_XY");
        CHECK(equiv_bounded(m, echo, 3, 500).kind == Equivalence::Kind::Agree);
    }
    SECTION("wrapped machine resumes with head and tape restored")
    {
        for (const auto& m : corpus(34, 60)) {
            const std::string chi(2, m.input_alphabet()[0]);
            const auto w = leaky_wrap(m, chi);
            for (const auto& sigma : inputs_up_to(m.input_alphabet(), 2)) {
                const auto t = trace(w, sigma, 200);
                const auto entry = std::find_if(t.begin(), t.end(),
                                                [&](const Configuration& c) { return c.state == m.start(); });
                REQUIRE(entry != t.end());
                CHECK(*entry == initialize(m, sigma));
            }
        }
    }
}

TEST_CASE("canonicalize")
{
    const auto echo = fixtures::echo();
    const auto c = canonicalize(echo);
    CHECK(canonicalize(c.machine()) == c);
    CHECK(equiv_bounded(c.machine(), echo, 3, 100).kind == Equivalence::Kind::Agree);

    std::string eleven = "abcdefghijk";
    MachineBuilder big(3, 0, 1, 2, eleven, eleven + "_");
    big.set_passthrough(0, 1, Move::Right);
    CHECK_THROWS_AS(canonicalize(big.build()), DomainError);

    MachineBuilder halting_start(3, 1, 1, 2, "a", "a_");
    halting_start.set_passthrough(0, 1, Move::Right);
    CHECK_THROWS_AS(canonicalize(halting_start.build()), DomainError);
}

TEST_CASE("canonicalization is a bisimulation under the re-lettering")
{
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 300; ++trial) {
        const auto m = support::random_machine(rng);
        const auto cm = canonicalize_with_map(m);
        const auto& c = cm.form.machine();
        CHECK(canonicalize(c) == cm.form);
        for (const auto& sigma : inputs_up_to(m.input_alphabet(), 2)) {
            const auto a = trace(m, sigma, 40);
            const auto b = trace(c, reletter(sigma, cm.letters), 40);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(cm.state_map[a[i].state] == b[i].state);
                CHECK(a[i].head == b[i].head);
                CHECK(reletter(a[i].render(), cm.letters) == b[i].render());
            }
        }
    }
}

TEST_CASE("transformers preserve semantics and refresh the index")
{
    for (const auto& m : corpus(36, 40)) {
        const auto base = index_of(m);
        const MachineDescription variants[] = {pad(m, 1), pad(m, 4), delay_inject(m, 2), delay_inject(m, 6),
                                               space_inject(m, 3), leaky_wrap(m, std::string(1, m.input_alphabet()[0]))};
        for (const auto& v : variants) {
            CHECK(equiv_bounded(v, m, 3, 1000).kind != Equivalence::Kind::Differ);
            if (base)
                CHECK(index_of(v) != base);
        }
    }
    for (auto& [name, m] : fixtures::all()) {
        INFO(name);
        const MachineDescription variants[] = {pad(m, 2), delay_inject(m, 4), leaky_wrap(m, "bb"),
                                               canonicalize(m).machine()};
        for (const auto& v : variants)
            CHECK(equiv_bounded(v, m, 4, 1000).kind != Equivalence::Kind::Differ);
    }
}

TEST_CASE("receipts")
{
    const auto echo = fixtures::echo();
    const auto r = make_receipt(TransformKind::Pad, "2", echo, pad(echo, 2));
    REQUIRE(r.input_index);
    REQUIRE(r.output_index);
    CHECK(*r.input_index != *r.output_index);
    const std::string json = r.to_json().dump();
    CHECK(json.find("\"kind\":\"pad\"") < json.find("\"parameter\""));
    CHECK(json.find("\"parameter\"") < json.find("\"input_index\""));
    CHECK(json.find("\"input_index\"") < json.find("\"output_index\""));
    CHECK(json.find("\"input_index\":\"" + encode(canonicalize(echo)).str() + "\"") != std::string::npos);
}
