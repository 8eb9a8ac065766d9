#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "kuperberg/report.hpp"

namespace kuperberg {

enum class CurveKind { lower, upper };

struct CurveRecord {
  std::string id;
  CurveKind kind = CurveKind::lower;
  std::vector<std::string> order;  // point ids, from the base point along the orientation
  mpq_class theta;                 // total rotation of the tangent relative to b1
  mpq_class phi;                   // total rotation of b2 around b1

  friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
};

struct IntersectionPoint {
  std::string id;
  std::string lower;
  std::string upper;
  mpq_class theta_eta, theta_mu;
  mpq_class phi_eta, phi_mu;

  friend bool operator==(const IntersectionPoint&, const IntersectionPoint&) = default;
};

/// Combinatorial framed Heegaard diagram: curves, intersection points and the rotation numbers
/// the framing induces. Geometry is not represented.
struct FramedHeegaardDiagram {
  std::string name;
  std::size_t genus = 0;
  std::vector<CurveRecord> lower;
  std::vector<CurveRecord> upper;
  std::vector<IntersectionPoint> points;

  const CurveRecord* find_curve(std::string_view id) const;
  const IntersectionPoint* find_point(std::string_view id) const;
  std::size_t point_index(std::string_view id) const;

  friend bool operator==(const FramedHeegaardDiagram&, const FramedHeegaardDiagram&) = default;
};

/// Syntax only; semantic problems are left for validate. Throws SyntaxError, duplicate_point_id
/// and unknown_curve_ref.
///
///   name weeks                                         (optional)
///   genus 2
///   lower eta1 theta 1/2 phi 1/2 order p1 p2 p3
///   upper mu1 theta -1/2 phi 1/2 order p3 p1 p2
///   point p1 on eta1 mu1 theta_eta 0 theta_mu 3/4 phi_eta 0 phi_mu 0
FramedHeegaardDiagram parse_khd(std::string_view text);
FramedHeegaardDiagram load_khd(const std::string& path);
/// Canonical text: curves sorted by id, then points sorted by id (numeric suffixes compare as numbers).
std::string serialize_khd(const FramedHeegaardDiagram& d);

/// Every structural and admissibility condition, each violation reported separately.
Report validate(const FramedHeegaardDiagram& d);

struct PointExponent {
  std::string point;
  long s;  // power of S: 2(theta_eta(p) - theta_mu(p)) + 1/2
  long t;  // power of T: phi_eta(p) - phi_mu(p)
};

/// In the diagram's point order. Throws non_integral_exponent.
std::vector<PointExponent> rotation_exponents(const FramedHeegaardDiagram& d);

/// weeks, torus3, sphere3 or s1xs2; anything else throws unknown_diagram.
FramedHeegaardDiagram builtin_diagram(std::string_view name);
std::vector<std::string> builtin_diagram_names();

}  // namespace kuperberg
