#pragma once

// Finite-dimensional representations of a bound quiver, their submodules,
// subquotient windows, Loewy series, projectives/injectives and Hom spaces.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "virtmod/exactla.hpp"
#include "virtmod/quiver.hpp"

namespace virtmod::quivrep {

using QuiverPtr = std::shared_ptr<const BoundQuiver>;

class Representation {
 public:
  Representation() = default;
  /// maps[a] must have shape dims[target(a)] x dims[source(a)].
  Representation(QuiverPtr quiver, std::vector<std::size_t> dims, std::vector<Matrix> maps);

  const QuiverPtr& quiver_ptr() const { return quiver_; }
  const BoundQuiver& quiver() const { return *quiver_; }
  const Field& field() const { return quiver_->field(); }
  std::size_t vertex_count() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t v) const { return dims_[v]; }
  std::size_t total_dim() const;
  const Matrix& map(std::size_t arrow) const { return maps_[arrow]; }
  const std::vector<Matrix>& maps() const { return maps_; }

  /// Matrix of a path (traversal order), evaluated right-to-left.
  Matrix path_map(const Path& p, std::size_t start) const;

  friend bool operator==(const Representation& a, const Representation& b) {
    return a.quiver_ == b.quiver_ && a.dims_ == b.dims_ && a.maps_ == b.maps_;
  }

 private:
  QuiverPtr quiver_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> maps_;
};

struct RelationViolation {
  std::size_t relation = 0;
  Matrix value;
};

/// First relation whose evaluation is nonzero, if any.
std::optional<RelationViolation> validate(const Representation& m);

/// A vertex-graded subspace of a representation; a submodule when arrow-closed.
struct SubRep {
  std::vector<Subspace> spaces;

  std::size_t dim(std::size_t v) const { return spaces[v].dim(); }
  std::size_t total_dim() const;
  std::vector<std::size_t> dims() const;
  bool contains(const SubRep& other) const;
  bool is_zero() const { return total_dim() == 0; }

  friend bool operator==(const SubRep& a, const SubRep& b) { return a.spaces == b.spaces; }
  friend std::strong_ordering operator<=>(const SubRep& a, const SubRep& b);
};

SubRep zero_sub(const Representation& m);
SubRep whole(const Representation& m);
bool is_arrow_closed(const Representation& m, const SubRep& s);
SubRep operator+(const SubRep& a, const SubRep& b);
SubRep intersect(const SubRep& a, const SubRep& b);

/// Submodule generated by a vertex-homogeneous family of vectors.
SubRep generated(const Representation& m, const std::vector<std::pair<std::size_t, Vector>>& gens);
/// Smallest submodule containing the given graded subspace.
SubRep closure(const Representation& m, const SubRep& s);

/// Sum of arrow images of s (equals J*s).
SubRep radical_of(const Representation& m, const SubRep& s);
SubRep radical(const Representation& m);
SubRep socle(const Representation& m);
/// M = rad^0 M > rad M > ... > 0.
std::vector<SubRep> radical_series(const Representation& m);
/// 0 = soc_0 < soc_1 < ... < M.
std::vector<SubRep> socle_series(const Representation& m);
std::size_t loewy_length(const Representation& m);

/// The subquotient V/W on complement coordinates, together with the change
/// of basis maps that keep elements identified with their position in M.
struct Window {
  SubRep upper;
  SubRep lower;
  Representation rep;
  std::vector<Matrix> lift;     // per vertex: dim M_v x dim rep_v, basis of the complement
  std::vector<Matrix> project;  // per vertex: dim rep_v x dim M_v, valid on upper

  /// Preimage in M (containing `lower`) of a subspace of the window.
  SubRep to_ambient(const SubRep& inner) const;
  /// Image in the window of a subspace of M lying inside `upper`.
  SubRep from_ambient(const SubRep& outer) const;
};

/// Throws InputError unless W is contained in V and both are arrow-closed.
Window sub_quotient(const Representation& m, const SubRep& v, const SubRep& w);
/// The submodule N as a module of its own (N/0).
inline Window as_module(const Representation& m, const SubRep& n) {
  return sub_quotient(m, n, zero_sub(m));
}

Representation simple_module(const QuiverPtr& q, std::size_t v);
/// Basis: residue classes of paths starting at v; arrows append.
Representation projective_of_simple(const QuiverPtr& q, std::size_t v);
/// Dual of the residue classes of paths ending at v.
Representation injective_of_simple(const QuiverPtr& q, std::size_t v);
Representation direct_sum(const std::vector<Representation>& parts);

/// A homomorphism as one matrix per vertex (dim N_v x dim M_v).
struct Hom {
  std::vector<Matrix> blocks;

  std::size_t rank() const;
  bool is_zero() const;
  friend bool operator==(const Hom&, const Hom&) = default;
};

/// Basis of Hom(M, N).
std::vector<Hom> hom_space(const Representation& m, const Representation& n);
bool is_homomorphism(const Representation& m, const Representation& n, const Hom& f);
Hom compose(const Hom& g, const Hom& f);  // g o f
Hom identity_hom(const Representation& m);
Hom linear_combination(const Field& f, const std::vector<Hom>& basis, const Vector& coeffs);
SubRep image(const Hom& f, const Representation& codomain, const SubRep& s);
SubRep kernel(const Hom& f, const Representation& domain);

}  // namespace virtmod::quivrep
