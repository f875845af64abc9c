#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqsurf/nice_module.hpp"
#include "eqsurf/surfaces.hpp"

namespace eqsurf {

struct CheckRecord {
  Bidegree cell;
  int expected = 0;
  int actual = 0;
  bool pass = true;
  std::string note;
};

struct VerificationReport {
  std::string check;
  std::vector<CheckRecord> records;

  bool pass() const;
  void add(CheckRecord r) { records.push_back(std::move(r)); }
};

/// Grows w in q until every column p in [pmin, pmax] (and p = 0..3) is
/// constant over the last three rows at both ends.
Window stabilized_window(const NiceModule& m, Window w = {});

/// Free shifts satisfy p >= q >= 0 and antipodal shifts s >= 0.
VerificationReport check_structure_theorem(const NiceModule& m);

/// Dimension bookkeeping of the forgetful long exact sequence in every cell:
/// b_p = coker(rho into (p, q+1)) + ker(rho out of (p, q)).
VerificationReport check_forgetful_les(const NiceModule& m, const std::array<int, 3>& betti, const Window& w);

/// tau : (f, g) -> (f, g+1) is bijective whenever g >= f.
VerificationReport check_tau_iso(const NiceModule& m, const Window& w);

/// Exactly one free summand with p >= 2, at (2,1) if there are fixed circles
/// and (2,2) otherwise. Throws for free or trivial surfaces.
VerificationReport check_topm2(const SurfaceDescriptor& d);

/// Bidegrees of module_generators(d) against the summands of cohomology(d).
VerificationReport check_generator_coverage(const SurfacePtr& d);

/// All applicable checks on one descriptor, in fixed order.
std::vector<VerificationReport> verify_surface(const SurfacePtr& d, const Window& w = {});

struct FuzzFailure {
  std::string surface;
  std::string check;
  std::string detail;
};

struct FuzzReport {
  std::uint64_t seed = 0;
  int depth = 0;
  int count = 0;
  int checks = 0;
  std::vector<std::string> surfaces;
  std::vector<FuzzFailure> failures;
  bool pass() const { return failures.empty(); }
};

/// Random well-formed descriptor with at most `depth` suffix operations.
/// Depth 0 draws spheres only; FM is never drawn when F = 0.
SurfacePtr random_surface(std::mt19937_64& rng, int depth);

FuzzReport fuzz_surfaces(std::uint64_t seed, int depth, int count);

nlohmann::ordered_json to_json(const VerificationReport& r);
nlohmann::ordered_json to_json(const FuzzReport& r);
std::string render_report(const VerificationReport& r);

}  // namespace eqsurf
