#include "xrl/model.hpp"

#include <cmath>

namespace xrl {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InvalidInputError(std::string(name) + " must be finite");
  }
}

}  // namespace

void Anthropometrics::validate() const {
  require_finite(standing_attach_height, "standing_attach_height");
  require_finite(crawling_attach_height, "crawling_attach_height");
  if (!(standing_attach_height > crawling_attach_height &&
        crawling_attach_height > 0.0)) {
    throw DegenerateGeometryError(
        "attachment heights must satisfy standing > crawling > 0");
  }
  if (!(hip_width > 0.0) || !(foot_width > 0.0)) {
    throw InvalidInputError("hip_width and foot_width must be positive");
  }
}

void LegGeometry::validate() const {
  require_finite(l1, "l1");
  require_finite(l2, "l2");
  if (!(l1 > 0.0) || !(l2 > l1)) {
    throw DegenerateGeometryError(
        "link lengths must satisfy 0 < l1 < l2 so the folded height is "
        "positive");
  }
}

LegGeometry solve_link_lengths(const Anthropometrics& anthro) {
  anthro.validate();
  return solve_link_lengths(anthro.standing_attach_height,
                            anthro.crawling_attach_height);
}

LegGeometry solve_link_lengths(double standing_height, double crawling_height) {
  LegGeometry geom{0.5 * (standing_height - crawling_height),
                   0.5 * (standing_height + crawling_height)};
  geom.validate();
  return geom;
}

LoadCase make_load_case(ScenarioKind kind, double robot_mass_kg,
                        double payload_mass_kg, double assist_force_n,
                        double assist_moment_arm_m) {
  if (robot_mass_kg < 0.0 || payload_mass_kg < 0.0 || assist_force_n < 0.0 ||
      assist_moment_arm_m < 0.0) {
    throw InvalidInputError("masses, forces and moment arms must be >= 0");
  }
  const double weight = (robot_mass_kg + payload_mass_kg) * kGravity;
  LoadCase load;
  switch (kind) {
    case ScenarioKind::kSquat:
      load.total_vertical_load = weight + assist_force_n;
      load.assist_force = assist_force_n;
      load.assist_moment_arm = assist_moment_arm_m;
      load.per_leg = true;
      break;
    case ScenarioKind::kStair:
      // Single-leg support, no assistive load applied to the operator.
      load.total_vertical_load = weight;
      load.assist_force = 0.0;
      load.assist_moment_arm = 0.0;
      load.per_leg = false;
      break;
  }
  return load;
}

}  // namespace xrl
