#pragma once

// Ext^1 between simple modules in coordinates: extension vectors relative to
// the arrow decomposition of the second radical layer of a projective cover,
// their sum and scalar actions, proportionality classes, and realizations as
// quotients of the projective cover and submodules of the injective hull.

#include <cstddef>
#include <string>
#include <vector>

#include "virtmod/representation.hpp"
#include "virtmod/vcat.hpp"

namespace virtmod::extspace {

using exactla::Elem;
using exactla::Field;
using exactla::Vector;
using quivrep::Hom;
using quivrep::QuiverPtr;
using quivrep::Representation;
using quivrep::SubRep;
using quivrep::Window;
using vcat::Subfactor;

struct ExtFrame {
  QuiverPtr quiver;
  std::size_t c = 0;  // head vertex
  std::size_t a = 0;  // socle vertex
  Representation p;   // projective cover of S_c
  Representation i;   // injective hull of S_a
  std::vector<std::size_t> arrows;  // arrows c -> a, in quiver order
  std::vector<Vector> summands;     // arrow vectors a_k e_c in p at vertex a (the A_k)
  SubRep rad;                       // rad P
  SubRep rad2;                      // rad^2 P
  SubRep n_pre;                     // preimage in P of the non-A part N of rad P / rad^2 P

  std::size_t m() const { return arrows.size(); }
  const Field& field() const { return quiver->field(); }
};

ExtFrame build_frame(const QuiverPtr& q, std::size_t c, std::size_t a);

/// dim Hom(rad P_c / rad^2 P_c, S_a), computed from the hom space.
std::size_t ext1_dimension(const QuiverPtr& q, std::size_t c, std::size_t a);

enum class Side { left, right };

struct Action {
  Side side;
  Elem scalar;
};

struct ExtVector {
  std::vector<Elem> coeffs;
  /// Scalar actions applied so far, in order (kept for audit only).
  std::vector<Action> history;

  bool is_split() const;
  friend bool operator==(const ExtVector& x, const ExtVector& y) { return x.coeffs == y.coeffs; }
};

ExtVector make_vector(const ExtFrame& f, std::vector<std::int64_t> coeffs);

/// Componentwise sum; throws InputError when the lengths differ.
ExtVector ext_sum(const ExtFrame& f, const ExtVector& x, const ExtVector& y);
/// Post-composition with alpha in End(S_a).
ExtVector act_left(const ExtFrame& f, Elem alpha, const ExtVector& e);
/// Pre-composition with gamma in End(S_c).
ExtVector act_right(const ExtFrame& f, const ExtVector& e, Elem gamma);

/// The complement of ker(alpha~) in Sigma A spanned by unit vectors at the
/// non-pivot positions of the kernel, as a subfactor of P over rad^2 P.
Subfactor support(const ExtFrame& f, const ExtVector& e);

struct QuotientRealization {
  SubRep kernel;  // L
  Subfactor e;    // P / L
};

/// L = N + ker(alpha~) over rad^2 P; E = P/L. Throws MathError on the split class.
QuotientRealization realize_as_quotient(const ExtFrame& f, const ExtVector& e);

/// The submodule of I_a generated by sum_k alpha_k a_k^* at vertex c and soc I_a.
SubRep realize_in_injective(const ExtFrame& f, const ExtVector& e);

struct PropClass {
  Side side = Side::left;
  std::vector<Elem> point;  // first nonzero entry is 1
  friend bool operator==(const PropClass&, const PropClass&) = default;
  friend auto operator<=>(const PropClass&, const PropClass&) = default;
};

PropClass prop_class(const ExtFrame& f, const ExtVector& e, Side side = Side::left);
/// All (p^m - 1)/(p - 1) classes in lexicographic order.
std::vector<PropClass> enumerate_classes(const ExtFrame& f, Side side = Side::left);

struct Pullback {
  Window u;  // P / N
  bool rad_is_sigma_a = false;
  bool subdirect = false;  // U embeds in the fiber product of the E_k over S_c
};

Pullback pullback_u(const ExtFrame& f);

/// A short exact sequence 0 -> S_a -iota-> E -pi-> S_c -> 0.
struct Extension {
  Representation e;
  Hom iota;
  Hom pi;
};

/// The extension P/L with iota fixed so that the class reads back as e.
Extension realize_extension(const ExtFrame& f, const ExtVector& e);
/// Reads the class of an extension through a lift P -> E of pi.
ExtVector read_class(const ExtFrame& f, const Extension& x);
ExtVector yoneda_roundtrip(const ExtFrame& f, const ExtVector& e);

}  // namespace virtmod::extspace
