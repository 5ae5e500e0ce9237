#pragma once

#include "kmvol/lie_core.hpp"

#include <optional>
#include <string>

namespace kmvol {

enum class ClosedFormTag { pi_over_6, quarter_lob_pi3, eighth_lob_pi3, sixth_lob_pi4 };

std::string to_string(ClosedFormTag tag);

struct ClosedForm {
  ClosedFormTag tag;
  AlgebraId algebra;
};

/// Known analytic volumes: A1, A2, G2 and C2 (twisted partners included).
std::optional<ClosedForm> closed_form_volume(const AlgebraId& id);

}  // namespace kmvol
