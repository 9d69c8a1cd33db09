#include "tfline/errors.hpp"
#include "tfline/hyperreal.hpp"

#include <doctest.h>

#include <cmath>

using namespace tfline;

namespace {

HyperrealSequence seq(HyperrealSequence::Generator g, std::uint64_t n_min = 1) {
    return HyperrealSequence(std::move(g), n_min);
}

double nd(std::uint64_t n) { return static_cast<double>(n); }

}  // namespace

TEST_CASE("zero and constant sequences") {
    CHECK(classify(HyperrealSequence::constant(0.0)).kind == VerdictKind::ZeroTail);
    const ClassificationVerdict c = classify(HyperrealSequence::constant(3.0));
    CHECK(c.kind == VerdictKind::Appreciable);
    CHECK(c.standard_part == 3.0);
    CHECK(c.error_bar == 0.0);
}

TEST_CASE("infinitesimal sequences") {
    CHECK(classify(seq([](auto n) { return 1.0 / nd(n); })).kind == VerdictKind::Infinitesimal);
    CHECK(classify(seq([](auto n) { return std::exp(-0.3 * nd(n)); })).kind ==
          VerdictKind::Infinitesimal);
    CHECK(classify(seq([](auto n) { return std::pow(-1.0, nd(n)) / (nd(n) * nd(n)); })).kind ==
          VerdictKind::Infinitesimal);
    CHECK(classify(HyperrealSequence::constant(1e-12)).kind == VerdictKind::Infinitesimal);
}

TEST_CASE("unlimited sequences") {
    CHECK(classify(seq([](auto n) { return nd(n); })).kind == VerdictKind::Unlimited);
    CHECK(classify(seq([](auto n) { return -nd(n) * nd(n); })).kind == VerdictKind::Unlimited);
    CHECK(classify(seq([](auto n) { return std::sqrt(nd(n)); })).kind == VerdictKind::Unlimited);
}

TEST_CASE("appreciable sequences carry a standard part and error bar") {
    const ClassificationVerdict v = classify(seq([](auto n) { return 2.0 + 1.0 / (nd(n) * nd(n)); }));
    REQUIRE(v.kind == VerdictKind::Appreciable);
    CHECK(std::abs(v.standard_part - 2.0) <= v.error_bar + 1e-15);
    CHECK(v.error_bar < 1e-3);
}

TEST_CASE("slow convergence widens the error bar") {
    const ClassificationVerdict v = classify(seq([](auto n) { return 1.0 + 1.0 / nd(n); }));
    REQUIRE(v.kind == VerdictKind::Appreciable);
    CHECK(std::abs(v.standard_part - 1.0) <= v.error_bar);
}

TEST_CASE("alternating sequence is filter dependent") {
    const ClassificationVerdict v = classify(seq([](auto n) { return n % 2 == 0 ? 1.0 : 0.0; }));
    REQUIRE(v.kind == VerdictKind::FilterAmbiguous);
    REQUIRE(v.clusters.size() == 2);
    CHECK(v.clusters[0] == 0.0);
    CHECK(v.clusters[1] == 1.0);

    const ClassificationVerdict w = classify(seq([](auto n) { return n % 3 == 0 ? -2.0 : 5.0; }));
    REQUIRE(w.kind == VerdictKind::FilterAmbiguous);
    CHECK(w.clusters == std::vector<double>{-2.0, 5.0});
}

TEST_CASE("irregular bounded sequence is inconclusive") {
    const ClassificationVerdict v = classify(seq([](auto n) { return std::sin(nd(n)); }));
    CHECK(v.kind == VerdictKind::Inconclusive);
    CHECK_FALSE(v.note.empty());
}

TEST_CASE("classification input checks") {
    const auto s = seq([](auto n) { return nd(n); }, 10);
    CHECK_THROWS_AS(classify(s, Window{5, 40}), ParameterError);
    CHECK_THROWS_AS(classify(s, Window{20, 27}), ParameterError);
    CHECK_THROWS_AS(s(9), ParameterError);
    CHECK(s(10) == 10.0);
    CHECK_THROWS_AS(classify_values({1.0, 2.0}, Window{1, 20}, 1e-9), ParameterError);
    CHECK(classify(seq([](auto) { return NAN; })).kind == VerdictKind::Inconclusive);
}

TEST_CASE("pointwise arithmetic") {
    const auto a = seq([](auto n) { return nd(n); }, 3);
    const auto b = seq([](auto n) { return 1.0 / nd(n); }, 7);
    const auto prod = a * b;
    CHECK(prod.n_min() == 7);
    CHECK(prod(50) == doctest::Approx(1.0));
    CHECK((a + b)(10) == doctest::Approx(10.1));
    CHECK((a - b)(10) == doctest::Approx(9.9));
    CHECK((a / b)(4 + 6) == doctest::Approx(100.0));
    CHECK(classify(b * b).kind == VerdictKind::Infinitesimal);
}

TEST_CASE("division reports every zero of the denominator") {
    const auto a = HyperrealSequence::constant(1.0);
    const auto b = seq([](auto n) { return n % 10 == 0 ? 0.0 : 1.0; });
    try {
        arithmetic(a, b, ArithmeticOp::Divide, Window{1, 35});
        FAIL("expected DivisionError");
    } catch (const DivisionError& e) {
        CHECK(e.offending() == std::vector<std::uint64_t>{10, 20, 30});
    }
}
