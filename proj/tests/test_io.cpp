#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "munorm/io.hpp"
#include "munorm/random.hpp"

using namespace munorm;
using namespace munorm::io;

TEST_CASE("complex scalars") {
    CHECK(complex_from_json(json(2.5), "z") == Complex(2.5, 0));
    CHECK(complex_from_json(json::parse("[1, -2]"), "z") == Complex(1, -2));
    CHECK_THROWS_WITH_AS(complex_from_json(json("x"), "z"), doctest::Contains("field 'z'"), ValidationError);
    CHECK_THROWS_AS(complex_from_json(json::parse("[1, 2, 3]"), "z"), ValidationError);
    CHECK(to_json(Complex(1, 2)) == json::parse("[1.0, 2.0]"));
}

TEST_CASE("malformed JSON reports line and column") {
    CHECK_THROWS_WITH_AS(parse_json("{\"weights\": [0.5,\n 0.5,,]}", "w.json"), doctest::Contains("w.json:2:"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(read_json_file("/nonexistent/file.json"), doctest::Contains("/nonexistent/file.json"),
                         ValidationError);
}

TEST_CASE("space and partition") {
    const auto s = space_from_json(parse_json(R"({"weights": [0.1, 0.2, 0.7]})"));
    CHECK(s.size() == 3);
    CHECK(space_from_json(to_json(s)) == s);
    CHECK_THROWS_WITH_AS(space_from_json(parse_json(R"({"w": []})")), doctest::Contains("weights"), ValidationError);
    CHECK_THROWS_AS(space_from_json(parse_json(R"({"weights": [0.5, 0.6]})")), ValidationError);

    const auto chi = partition_from_json(parse_json(R"({"blocks": [[3, 1], [2]]})"), 3);
    CHECK(chi == Partition(3, {{0, 2}, {1}}));
    CHECK(partition_from_json(to_json(chi), 3) == chi);
    CHECK_THROWS_AS(partition_from_json(parse_json(R"({"blocks": [[0, 1], [2]]})"), 3), ValidationError);
    CHECK_THROWS_AS(partition_from_json(parse_json(R"({"blocks": [[1, 2]]})"), 3), ValidationError);
}

TEST_CASE("matrices and maps") {
    Rng rng(50);
    const CMatrix M = random_matrix(rng, 3, 3);
    CHECK(matrix_from_json(to_json(M)) == M);
    const CMatrix R = matrix_from_json(parse_json(R"({"re": [[1, 2], [3, 4]]})"));
    CHECK(R(1, 0) == Complex(3, 0));
    CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"re": [[1, 2], [3]]})")), ValidationError);
    CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"re": [[1, 2]], "im": [[1]]})")), ValidationError);

    const auto s = MeasureSpace::uniform(3);
    const auto F = endomorphism_from_json(parse_json(R"({"map": [2, 3, 1]})"), s);
    CHECK(F.table() == std::vector<int>{1, 2, 0});
    CHECK_THROWS_AS(endomorphism_from_json(parse_json(R"({"map": [0, 1, 2]})"), s), ValidationError);

    bool orth = false;
    const CMatrix V = basis_from_json(parse_json(R"({"vectors": [[1, 0, 0], [[0, 1], 1, 0]], "orthonormalize": true})"), 3, &orth);
    CHECK(orth);
    CHECK(V.cols() == 2);
    CHECK(V(0, 1) == Complex(0, 1));
    CHECK_THROWS_AS(basis_from_json(parse_json(R"({"vectors": [[1, 0]]})"), 3, &orth), ValidationError);
}

TEST_CASE("sequences and band operators") {
    const auto s = sequence_from_json(parse_json(R"({"left": [0], "right": [1, [0, 2]], "middle": {"-1": 3}, "k0": 2})"));
    CHECK(s[-1] == Complex(3));
    CHECK(s[3] == Complex(0, 2));
    const auto back = sequence_from_json(to_json(s));
    for (circle::Index k = -6; k <= 6; ++k) CHECK(back[k] == s[k]);
    CHECK_THROWS_AS(sequence_from_json(parse_json(R"({"left": [], "right": [1]})")), ValidationError);

    Rng rng(51);
    for (int t = 0; t < 10; ++t) {
        const auto W = random_band_operator(rng, 4, 3, true);
        const auto V = band_from_json(to_json(W));
        CHECK(V.tau() == W.tau());
        CHECK(V.coeffs() == W.coeffs());
        CHECK(V.perturbation() == W.perturbation());
    }
    const auto C = band_from_json(parse_json(R"({"multiplier": {"-1": 1, "1": 1}})"));
    CHECK(C(0, 1) == Complex(1));
    CHECK(C(1, 0) == Complex(1));
    const auto D = band_from_json(parse_json(R"({"diagonal": {"left": [2], "right": [2]}})"));
    CHECK(D(5, 5) == Complex(2));
    CHECK_THROWS_AS(band_from_json(parse_json(R"({"tau": 1, "band": 1, "coeffs": [[1, 2]]})")), ValidationError);
    CHECK_THROWS_AS(band_from_json(parse_json(R"({"tau": 1, "band": 0, "coeffs": [[1]], "perturbation": [[0, 3, 1]]})")),
                    ValidationError);
}

TEST_CASE("entropy report serialization") {
    EntropyReport r;
    r.n = {1, 2};
    r.values = {std::log(2.0), 2 * std::log(2.0)};
    r.rates = {std::log(2.0), std::log(2.0)};
    r.differences = {std::log(2.0)};
    r.closed_form = std::log(2.0);
    r.finest_partition = true;
    const json bits = to_json(r, 1.0 / std::log(2.0));
    CHECK(bits["values"][1].get<double>() == doctest::Approx(2.0));
    CHECK(bits["closed_form"].get<double>() == doctest::Approx(1.0));
    CHECK(bits["finest_partition"] == true);
}
