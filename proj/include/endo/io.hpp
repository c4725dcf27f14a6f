#pragma once

#include <string>
#include <utility>

#include "endo/eigensystem.hpp"
#include "endo/point.hpp"

namespace endo {

/// point.json: { "n", "p", "N", "weight": [int], "refinement": [scalar],
/// "satake": { "<place>": [scalar] }, "mu_frob": { "p": scalar, ... } }.
/// Scalars use the canonical text format.  Throws parse_error on malformed
/// input; the returned point is validated.
ClassicalPoint point_from_json(const std::string& text);
std::string point_to_json(const ClassicalPoint& pt);

/// pair.json: { "z1": <point>, "z2": <point> } with matching contexts.
std::pair<ClassicalPoint, ClassicalPoint> pair_from_json(const std::string& text);

/// module.json: { "p", "N", "dim", "ops": { "<label>": [row-major scalar] },
/// "sub_labels": [label] }.
FiniteModule module_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace endo
