#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fovlap/geometry.hpp"

using namespace fovlap;

namespace {

Vec3 random_position(StreamRng& rng) {
  return {200.0 * (rng.next_unit() - 0.5), 200.0 * (rng.next_unit() - 0.5),
          50.0 + 500.0 * rng.next_unit()};
}

}  // namespace

TEST_CASE("look_at points the camera z axis at the target", "[geometry]") {
  SECTION("nadir view") {
    const Rotation3 r = look_at({0, 0, 500}, {0, 0, 0});
    const Vec3 z = r.apply({0, 0, 1});
    CHECK(z.x == Catch::Approx(0.0).margin(1e-12));
    CHECK(z.y == Catch::Approx(0.0).margin(1e-12));
    CHECK(z.z == Catch::Approx(-1.0).margin(1e-12));
    // up hint [0,-1,0]: the camera y axis maps to -y in the setup frame
    const Vec3 y = r.apply({0, 1, 0});
    CHECK(y.y == Catch::Approx(-1.0).margin(1e-12));
    const Vec3 x = r.apply({1, 0, 0});
    CHECK(x.x == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("off-nadir station") {
    const Vec3 pos{100.0, 0.0, 499.27};
    const Rotation3 r = look_at(pos, {0, 0, 0});
    const Vec3 expected = normalized(-pos);  // boresight back toward the origin
    const Vec3 z = r.z_axis();
    CHECK(norm(z - expected) < 1e-12);
    CHECK(norm(pos) == Catch::Approx(509.2).margin(0.1));
  }

  SECTION("degenerate inputs") {
    CHECK_THROWS_AS(look_at({1, 2, 3}, {1, 2, 3}), DegenerateLookAt);
    CHECK_THROWS_AS(look_at({0, 0, 500}, {0, 0, 0}, {0, 0, 1}), DegenerateLookAt);
    CHECK_THROWS_AS(look_at({0, 0, 500}, {0, 0, 0}, {0, 0, -1}), DegenerateLookAt);
  }
}

TEST_CASE("look_at produces right-handed orthonormal rotations", "[geometry]") {
  StreamRng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 pos = random_position(rng);
    const Rotation3 r = look_at(pos, {0, 0, 0});
    CHECK(orthonormality_error(r) < 1e-9);
    CHECK(determinant(r) == Catch::Approx(1.0).margin(1e-9));
    // applying R to the camera z axis reproduces the unit boresight
    const Vec3 boresight = normalized(-pos);
    CHECK(norm(r.apply({0, 0, 1}) - boresight) < 1e-12);
  }
}

TEST_CASE("rodrigues matches the canonical rotations", "[geometry]") {
  SECTION("zero angle is the identity, exactly") {
    const Rotation3 r = rodrigues({{0.2672612419124244, 0.5345224838248488, 0.8017837257372732}, 0.0});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(r(i, j) == (i == j ? 1.0 : 0.0));
  }

  SECTION("90 degrees about z maps x to y") {
    const Rotation3 r = rodrigues({{0, 0, 1}, 90.0});
    const Vec3 v = r.apply({1, 0, 0});
    CHECK(v.x == Catch::Approx(0.0).margin(1e-12));
    CHECK(v.y == Catch::Approx(1.0).margin(1e-12));
    CHECK(v.z == Catch::Approx(0.0).margin(1e-12));
  }

  SECTION("non-unit axis is rejected") {
    CHECK_THROWS_AS(rodrigues({{0, 0, 2}, 10.0}), NonUnitAxis);
    CHECK_THROWS_AS(rodrigues({{0, 0, 0.9999}, 10.0}), NonUnitAxis);
  }
}

TEST_CASE("rodrigues inverse composition is the identity", "[geometry]") {
  StreamRng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 axis = sample_unit_sphere(rng);
    const double angle = 360.0 * (rng.next_unit() - 0.5);
    const Rotation3 fwd = rodrigues({axis, angle});
    const Rotation3 bwd = rodrigues({axis, -angle});
    CHECK(orthonormality_error(fwd) < 1e-9);
    const Rotation3 prod = fwd * bwd;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        CHECK(std::abs(prod(r, c) - (r == c ? 1.0 : 0.0)) < 1e-9);
  }
}

TEST_CASE("rotation-model sampler statistics", "[geometry][rng]") {
  StreamRng rng(99);
  const NoiseModel noise{2.0, ApeModel::rotation};
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  Vec3 axis_sum{};
  for (int i = 0; i < n; ++i) {
    const PerturbationSample p = sample_perturbation(noise, rng);
    CHECK(std::abs(norm(p.axis) - 1.0) < 1e-9);
    sum += p.angle_deg;
    sum_sq += p.angle_deg * p.angle_deg;
    axis_sum = axis_sum + p.axis;
  }
  const double mean = sum / n;
  const double stdev = std::sqrt(sum_sq / n - mean * mean);
  CHECK(std::abs(mean) < 3.0 * noise.ape_deg / std::sqrt(static_cast<double>(n)));
  CHECK(stdev == Catch::Approx(noise.ape_deg).epsilon(0.02));
  // axes uniform on the sphere: the mean axis vector vanishes
  CHECK(norm((1.0 / n) * axis_sum) < 0.02);
}

TEST_CASE("zero noise yields an exactly zero angle", "[geometry][rng]") {
  StreamRng rng(5);
  const PerturbationSample p = sample_perturbation(NoiseModel{0.0, ApeModel::rotation}, rng);
  CHECK(p.angle_deg == 0.0);
  StreamRng rng2(5);
  const PerturbationSample q =
      sample_pointing_perturbation(NoiseModel{0.0}, {0.3, -0.2, -0.9}, rng2);
  CHECK(q.angle_deg == 0.0);
}

TEST_CASE("pointing-model sampler realizes the APE as boresight error", "[geometry][rng]") {
  StreamRng rng(31337);
  const NoiseModel noise{2.0, ApeModel::pointing};
  const Vec3 boresight = normalized({0.2, -0.1, -0.95});
  const int n = 100000;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const PerturbationSample p = sample_pointing_perturbation(noise, boresight, rng);
    CHECK(std::abs(norm(p.axis) - 1.0) < 1e-9);
    CHECK(std::abs(dot(p.axis, boresight)) < 1e-9);
    const double deflection = angle_between_deg(boresight, rodrigues(p).apply(boresight));
    CHECK(deflection == Catch::Approx(std::abs(p.angle_deg)).margin(1e-9));
    sum_sq += deflection * deflection;
  }
  CHECK(std::sqrt(sum_sq / n) == Catch::Approx(noise.ape_deg).epsilon(0.02));
}

TEST_CASE("perturb composes the noise on top of the ideal rotation", "[geometry]") {
  const Rotation3 ideal = look_at({100, -30, 500}, {0, 0, 0});

  SECTION("identity delta returns the ideal") {
    const Rotation3 out = perturb(ideal, Rotation3::identity());
    for (int i = 0; i < 9; ++i) CHECK(out.m[i] == ideal.m[i]);
  }

  SECTION("boresight tilts by exactly the angle when the axis is perpendicular") {
    const Vec3 z = ideal.z_axis();
    const Vec3 axis = normalized(cross({0, 0, 1}, z));
    const double angle = 1.7;
    const Rotation3 noisy = perturb(ideal, rodrigues({axis, angle}));
    CHECK(angle_between_deg(z, noisy.z_axis()) == Catch::Approx(angle).margin(1e-9));
  }

  SECTION("tilt never exceeds the angle; composition stays orthonormal") {
    StreamRng rng(11);
    double sum_tilt = 0.0, sum_angle = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const PerturbationSample p = sample_perturbation(NoiseModel{2.0, ApeModel::rotation}, rng);
      const Rotation3 noisy = perturb(ideal, rodrigues(p));
      CHECK(orthonormality_error(noisy) < 1e-9);
      const double tilt = angle_between_deg(ideal.z_axis(), noisy.z_axis());
      CHECK(tilt <= std::abs(p.angle_deg) + 1e-9);
      sum_tilt += tilt;
      sum_angle += std::abs(p.angle_deg);
    }
    CHECK(sum_tilt < sum_angle);  // isotropic axes attenuate the boresight error
  }
}

TEST_CASE("identical stream ids replay bit-identical sequences", "[rng]") {
  StreamRng a(camera_stream(123, 45, 6));
  StreamRng b(camera_stream(123, 45, 6));
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());

  StreamRng c(camera_stream(123, 45, 6));
  StreamRng d(camera_stream(123, 45, 7));
  bool differs = false;
  for (int i = 0; i < 10; ++i) differs |= (c.next_u64() != d.next_u64());
  CHECK(differs);
}

TEST_CASE("perturbation replay is bit-identical", "[rng]") {
  const NoiseModel noise{1.5, ApeModel::rotation};
  StreamRng a(sample_stream(9, 1));
  StreamRng b(sample_stream(9, 1));
  for (int i = 0; i < 50; ++i) {
    const PerturbationSample pa = sample_perturbation(noise, a);
    const PerturbationSample pb = sample_perturbation(noise, b);
    REQUIRE(pa.angle_deg == pb.angle_deg);
    REQUIRE(pa.axis.x == pb.axis.x);
    REQUIRE(pa.axis.y == pb.axis.y);
    REQUIRE(pa.axis.z == pb.axis.z);
  }
}
