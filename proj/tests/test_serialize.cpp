#include <catch2/catch_amalgamated.hpp>

#include "rrrkit/probgen.hpp"
#include "rrrkit/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <string>

using namespace rrrkit;

TEST_CASE("instance serialization round-trips bit-faithfully") {
  SECTION("real gaussian") {
    RealInstance inst = gen_gaussian<Real>(3, 2, 41);
    const std::string text = serialize_instance(inst);
    const AnyInstance loaded = deserialize_instance(text);
    REQUIRE(std::holds_alternative<RealInstance>(loaded));
    const RealInstance& back = std::get<RealInstance>(loaded);
    CHECK(back.m() == 3);
    CHECK(back.n() == 2);
    CHECK(back.kind == InstanceKind::Gaussian);
    CHECK((back.A - inst.A).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.b - inst.b).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(back.x0.has_value());
    CHECK((*back.x0 - *inst.x0).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("complex dft with sparsity tag") {
    ComplexInstance inst = gen_sparse(8, 3, 43);
    const AnyInstance loaded = deserialize_instance(serialize_instance(inst));
    REQUIRE(std::holds_alternative<ComplexInstance>(loaded));
    const ComplexInstance& back = std::get<ComplexInstance>(loaded);
    CHECK(back.kind == InstanceKind::Sparse);
    CHECK(back.sparsity == 3);
    CHECK((back.A - inst.A).cwiseAbs().maxCoeff() == 0.0);
    CHECK((*back.x0 - *inst.x0).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("absent ground truth stays absent") {
    RealInstance inst = gen_gaussian<Real>(4, 2, 45);
    inst.x0.reset();
    const AnyInstance loaded = deserialize_instance(serialize_instance(inst));
    CHECK_FALSE(std::get<RealInstance>(loaded).x0.has_value());
  }
}

TEST_CASE("figure-scale instance preserves its dimensions through a file") {
  RealInstance inst = gen_gaussian<Real>(80, 50, 47);
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "rrrkit_test_inst.json";
  save_instance(inst, path.string());
  const AnyInstance loaded = load_instance(path.string());
  std::filesystem::remove(path);
  REQUIRE(std::holds_alternative<RealInstance>(loaded));
  CHECK(std::get<RealInstance>(loaded).m() == 80);
  CHECK(std::get<RealInstance>(loaded).n() == 50);
  CHECK((std::get<RealInstance>(loaded).A - inst.A).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("deserialization rejects malformed and invalid input") {
  RealInstance inst = gen_gaussian<Real>(3, 2, 49);
  const std::string text = serialize_instance(inst);

  SECTION("broken json carries a byte offset") {
    try {
      deserialize_instance(text.substr(0, text.size() / 2));
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.offset() > 0);
    }
  }
  SECTION("missing keys") {
    CHECK_THROWS_AS(deserialize_instance(R"({"field":"real"})"), parse_error);
    CHECK_THROWS_AS(deserialize_instance(R"({"m":1})"), parse_error);
  }
  SECTION("unknown field tag") {
    CHECK_THROWS_AS(deserialize_instance(R"({"field":"quaternion"})"), parse_error);
  }
  SECTION("negative magnitude fails validation naming the field") {
    nlohmann::json j = to_json(inst);
    j["b"][1] = -0.5;
    try {
      deserialize_instance(j.dump());
      FAIL("expected validation_error");
    } catch (const validation_error& e) {
      CHECK(e.field() == "b");
    }
  }
  SECTION("wrong entry shape for the declared field") {
    nlohmann::json j = to_json(inst);
    j["A"][0][0] = nlohmann::json::array({1.0, 2.0});  // complex pair in a real matrix
    CHECK_THROWS_AS(deserialize_instance(j.dump()), parse_error);
  }
  SECTION("planted signal inconsistent with magnitudes") {
    nlohmann::json j = to_json(inst);
    j["x0"][0] = 1e3;
    CHECK_THROWS_AS(deserialize_instance(j.dump()), validation_error);
  }
}
