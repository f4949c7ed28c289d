#pragma once

// Bound quivers and the residue bases of their path algebras.
//
// Path convention: a path is the list of its arrows in traversal order, as
// drawn (1 -a-> 2 -b-> 3 is {a, b}). On a representation it evaluates
// right-to-left as matrices: M(b) * M(a).

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "virtmod/exactla.hpp"

namespace virtmod::quivrep {

using exactla::Elem;
using exactla::Field;
using exactla::Matrix;
using exactla::Subspace;
using exactla::Vector;

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;
};

using Path = std::vector<std::size_t>;

struct PathTerm {
  Path path;
  Elem coeff = 1;
};

/// Formal linear combination of parallel paths of length >= 2.
using Relation = std::vector<PathTerm>;

/// e_to A e_from: residue classes of paths from -> to modulo the relation ideal.
struct PathBlock {
  std::vector<Path> paths;        // all paths of length < nilpotency bound, canonical order
  Subspace ideal;                 // ideal elements in path coordinates
  std::vector<std::size_t> basis; // indices into `paths` of the residue basis (non-pivots)

  std::size_t dim() const { return basis.size(); }
  /// Residue coordinates of a path-coordinate vector.
  Vector residue(const Vector& path_coords) const;
  /// Residue coordinates of one path (zero if it is too long).
  Vector residue_of(const Path& p) const;
  std::optional<std::size_t> index_of(const Path& p) const;

  std::map<Path, std::size_t> index;
};

class BoundQuiver {
 public:
  /// Validates arrow names, relation parallelism, admissibility and
  /// finite-dimensionality (throws InputError).
  BoundQuiver(Field field, std::vector<std::string> vertices, std::vector<Arrow> arrows,
              std::vector<Relation> relations, std::size_t max_nilpotency = 16);

  const Field& field() const { return field_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }

  std::optional<std::size_t> vertex_index(const std::string& name) const;
  std::optional<std::size_t> arrow_index(const std::string& name) const;
  /// Arrows a with source(a) == from and target(a) == to, in listed order.
  std::vector<std::size_t> arrows_between(std::size_t from, std::size_t to) const;

  /// Least N with J^N contained in the relation ideal.
  std::size_t nilpotency() const { return nilpotency_; }

  const PathBlock& block(std::size_t from, std::size_t to) const {
    return blocks_[from * vertex_count() + to];
  }

  std::string path_name(const Path& p) const;

 private:
  std::vector<PathBlock> truncated_blocks(std::size_t max_len) const;

  Field field_;
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<Relation> relations_;
  std::size_t nilpotency_ = 1;
  std::vector<PathBlock> blocks_;
};

}  // namespace virtmod::quivrep
