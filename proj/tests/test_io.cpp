#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "qgamma/io.hpp"

using namespace qgamma;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const char* name)
      : path(std::filesystem::temp_directory_path() / name) {}
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

}  // namespace

TEST_CASE("state schema field names and round trip") {
  const State s = random_state(AlgebraShape({2, 3}), 5, true);
  const Json j = to_json(s);
  REQUIRE(j.contains("shape"));
  REQUIRE(j.contains("blocks"));
  CHECK(j["shape"] == Json::array({2, 3}));
  // complex entries as [re, im] pairs, row-major
  CHECK(j["blocks"][0].size() == 2);
  CHECK(j["blocks"][0][0][0].size() == 2);

  const State back = state_from_json(j);
  CHECK((back.as_element() - s.as_element()).frobenius_norm() <= 1e-14);
}

TEST_CASE("hermitian element round trip keeps off-diagonal phases") {
  const HermitianElement x = random_hermitian(AlgebraShape({3}), 9);
  const HermitianElement back = hermitian_from_json(to_json(x));
  CHECK((back - x).frobenius_norm() <= 1e-14);
}

TEST_CASE("gamma vector carries its index") {
  const GammaVector v = ell_gamma(random_state(AlgebraShape({2}), 1, true), 0.3);
  const Json j = to_json(v);
  CHECK(j["gamma"] == doctest::Approx(0.3));
  const GammaVector back = gamma_vector_from_json(j);
  CHECK(back.gamma() == doctest::Approx(0.3));
  CHECK((back.as_element() - v.as_element()).frobenius_norm() <= 1e-14);

  Json missing = j;
  missing.erase("gamma");
  CHECK_THROWS_AS(gamma_vector_from_json(missing), ParseError);
}

TEST_CASE("channel schema round trip") {
  const Channel ch = random_channel(2, 3, 2, 7);
  const Json j = to_json(ch);
  REQUIRE(j.contains("in_shape"));
  REQUIRE(j.contains("out_shape"));
  REQUIRE(j.contains("kraus"));
  const Channel back = channel_from_json(j);
  CHECK(back.trace_preserving());
  for (std::size_t i = 0; i < ch.kraus().size(); ++i) {
    CHECK((back.kraus()[i] - ch.kraus()[i]).norm() <= 1e-14);
  }
}

TEST_CASE("constraint set round trip") {
  const AlgebraShape shape({2});
  HermitianElement a = random_hermitian(shape, 3);
  const ConstraintSet set(0.4, {Constraint{a, 1.5}});
  const ConstraintSet back = constraint_set_from_json(to_json(set));
  CHECK(back.gamma() == doctest::Approx(0.4));
  CHECK(back.constraints().size() == 1);
  CHECK(back.constraints()[0].c == doctest::Approx(1.5));
  CHECK((back.constraints()[0].a - a).frobenius_norm() <= 1e-14);
}

TEST_CASE("malformed documents raise parse errors") {
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"shape":[2]})")), ParseError);
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"shape":[2],"blocks":[[[1,0]]]})")), ParseError);
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"shape":"x","blocks":[]})")), ParseError);
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"shape":[0],"blocks":[[]]})")), ParseError);
  CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"in_shape":[2]})")), ParseError);
  CHECK_THROWS_AS(constraint_set_from_json(Json::parse(R"({"gamma":0.5})")), ParseError);
  // non-hermitian and indefinite payloads surface the library errors
  const Json bad_herm = Json::parse(
      R"({"shape":[2],"blocks":[[[[0,0],[1,0]],[[0,0],[0,0]]]]})");
  CHECK_THROWS_AS(state_from_json(bad_herm), NonHermitianError);
}

TEST_CASE("file round trip and missing files") {
  const TempFile tmp("qgamma_io_test_state.json");
  const State s = random_state(AlgebraShape({2}), 11, true);
  save_json(tmp.path, to_json(s));
  const State loaded = load_state(tmp.path);
  CHECK((loaded.as_element() - s.as_element()).frobenius_norm() <= 1e-14);

  CHECK_THROWS_AS(load_state("/nonexistent/qgamma.json"), ParseError);

  // truncated document
  const TempFile broken("qgamma_io_test_broken.json");
  {
    std::FILE* f = std::fopen(broken.path.c_str(), "w");
    std::fputs("{\"shape\": [2", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_json(broken.path), ParseError);
}
