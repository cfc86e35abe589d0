#ifndef LIEAX_TESTS_CORPUS_HPP
#define LIEAX_TESTS_CORPUS_HPP

#include <string>
#include <vector>

#include "lieax/algebroid.hpp"
#include "lieax/random.hpp"

// Shared test-bed algebras: the classical examples plus deterministic
// randomized validated algebroids built by unimodular frame changes of
// known-good bases.
namespace lieax::corpus {

inline AlgebraPtr standard_tm(std::size_t n) {
  std::vector<std::string> coords, frame;
  for (std::size_t i = 1; i <= n; ++i) {
    coords.push_back("x" + std::to_string(i));
    frame.push_back("t" + std::to_string(i));
  }
  CoordsPtr c = make_coords(coords);
  return std::make_shared<const FrameAlgebra>(c, frame, ExprMatrix::identity(c, n),
                                              std::map<std::array<std::size_t, 3>, ScalarExpr>{});
}

// so(3) over a point: [t1,t2]=t3, [t2,t3]=t1, [t3,t1]=t2.
inline AlgebraPtr so3() {
  CoordsPtr c = make_coords({});
  std::map<std::array<std::size_t, 3>, ScalarExpr> st;
  st.emplace(std::array<std::size_t, 3>{2, 0, 1}, ScalarExpr::one(c));   // L^3_12 = 1
  st.emplace(std::array<std::size_t, 3>{0, 1, 2}, ScalarExpr::one(c));   // L^1_23 = 1
  st.emplace(std::array<std::size_t, 3>{1, 0, 2}, -ScalarExpr::one(c));  // L^2_13 = -1
  return std::make_shared<const FrameAlgebra>(c, std::vector<std::string>{"t1", "t2", "t3"},
                                              ExprMatrix(c, 0, 3), std::move(st));
}

// Negative control: so(3) with an extra non-cyclic entry L^1_12 = 1, which
// breaks Jacobi on (1,2,3). (Scaling a purely cyclic 3-d table does NOT
// break Jacobi: every double bracket lands on [t_g, t_g] = 0.)
inline AlgebraPtr perturbed_so3() {
  CoordsPtr c = make_coords({});
  std::map<std::array<std::size_t, 3>, ScalarExpr> st;
  st.emplace(std::array<std::size_t, 3>{2, 0, 1}, ScalarExpr::one(c));
  st.emplace(std::array<std::size_t, 3>{0, 1, 2}, ScalarExpr::one(c));
  st.emplace(std::array<std::size_t, 3>{1, 0, 2}, -ScalarExpr::one(c));
  st.emplace(std::array<std::size_t, 3>{0, 0, 1}, ScalarExpr::one(c));  // L^1_12 = 1
  return std::make_shared<const FrameAlgebra>(c, std::vector<std::string>{"t1", "t2", "t3"},
                                              ExprMatrix(c, 0, 3), std::move(st));
}

// The cyclic table (L^3_12, L^1_23, L^2_31) = (2, 1, 1): a genuine Lie
// algebra despite the lopsided scaling.
inline AlgebraPtr scaled_cyclic_so3() {
  CoordsPtr c = make_coords({});
  std::map<std::array<std::size_t, 3>, ScalarExpr> st;
  st.emplace(std::array<std::size_t, 3>{2, 0, 1}, ScalarExpr::from_int(c, 2));
  st.emplace(std::array<std::size_t, 3>{0, 1, 2}, ScalarExpr::one(c));
  st.emplace(std::array<std::size_t, 3>{1, 0, 2}, -ScalarExpr::one(c));
  return std::make_shared<const FrameAlgebra>(c, std::vector<std::string>{"t1", "t2", "t3"},
                                              ExprMatrix(c, 0, 3), std::move(st));
}

// Heisenberg algebra over a point: [t1,t2] = t3.
inline AlgebraPtr heisenberg() {
  CoordsPtr c = make_coords({});
  std::map<std::array<std::size_t, 3>, ScalarExpr> st;
  st.emplace(std::array<std::size_t, 3>{2, 0, 1}, ScalarExpr::one(c));
  return std::make_shared<const FrameAlgebra>(c, std::vector<std::string>{"t1", "t2", "t3"},
                                              ExprMatrix(c, 0, 3), std::move(st));
}

// Transformation algebroid of the rotation action on R^3:
// X1 = x2 d3 - x3 d2, X2 = x3 d1 - x1 d3, X3 = x1 d2 - x2 d1, with
// [X1,X2] = -X3 cyclically.
inline AlgebraPtr so3_on_r3() {
  CoordsPtr c = make_coords({"x1", "x2", "x3"});
  ExprMatrix anchor(c, 3, 3);
  anchor.at(1, 0) = -ScalarExpr::coordinate(c, std::size_t{2});
  anchor.at(2, 0) = ScalarExpr::coordinate(c, std::size_t{1});
  anchor.at(0, 1) = ScalarExpr::coordinate(c, std::size_t{2});
  anchor.at(2, 1) = -ScalarExpr::coordinate(c, std::size_t{0});
  anchor.at(0, 2) = -ScalarExpr::coordinate(c, std::size_t{1});
  anchor.at(1, 2) = ScalarExpr::coordinate(c, std::size_t{0});
  std::map<std::array<std::size_t, 3>, ScalarExpr> st;
  st.emplace(std::array<std::size_t, 3>{2, 0, 1}, -ScalarExpr::one(c));
  st.emplace(std::array<std::size_t, 3>{0, 1, 2}, -ScalarExpr::one(c));
  st.emplace(std::array<std::size_t, 3>{1, 0, 2}, ScalarExpr::one(c));
  return std::make_shared<const FrameAlgebra>(c, std::vector<std::string>{"t1", "t2", "t3"},
                                              std::move(anchor), std::move(st));
}

// Rank-4 algebroid: TM R^3 plus an abelian generator with zero anchor.
inline AlgebraPtr tm3_plus_abelian() {
  CoordsPtr c = make_coords({"x1", "x2", "x3"});
  ExprMatrix anchor(c, 3, 4);
  for (std::size_t i = 0; i < 3; ++i) anchor.at(i, i) = ScalarExpr::one(c);
  return std::make_shared<const FrameAlgebra>(c, std::vector<std::string>{"t1", "t2", "t3", "t4"},
                                              std::move(anchor),
                                              std::map<std::array<std::size_t, 3>, ScalarExpr>{});
}

// Transformation algebroid of the affine action on R: X1 = d/dx, X2 = x d/dx,
// [X1, X2] = X1.
inline AlgebraPtr affine_r1() {
  CoordsPtr c = make_coords({"x1"});
  ExprMatrix anchor(c, 1, 2);
  anchor.at(0, 0) = ScalarExpr::one(c);
  anchor.at(0, 1) = ScalarExpr::coordinate(c, std::size_t{0});
  std::map<std::array<std::size_t, 3>, ScalarExpr> st;
  st.emplace(std::array<std::size_t, 3>{0, 0, 1}, ScalarExpr::one(c));
  return std::make_shared<const FrameAlgebra>(c, std::vector<std::string>{"t1", "t2"},
                                              std::move(anchor), std::move(st));
}

inline unsigned max_entry_degree(const FrameAlgebra& a) {
  unsigned d = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.rank(); ++j) {
      d = std::max(d, a.anchor().at(i, j).num().total_degree());
      d = std::max(d, a.anchor().at(i, j).den().total_degree());
    }
  }
  for (const auto& [k, e] : a.structure_table()) {
    (void)k;
    d = std::max(d, e.num().total_degree());
    d = std::max(d, e.den().total_degree());
  }
  return d;
}

// Deterministic randomized validated algebroid: a unimodular polynomial
// frame change applied to a known-good base, capped at rank <= 4, base
// dimension <= 3, coefficient degree <= 2.
inline AlgebraPtr random_validated_algebroid(std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    AlgebraPtr base;
    switch (rng.below(8)) {
      case 0: base = standard_tm(2); break;
      case 1: base = standard_tm(3); break;
      case 2: base = so3(); break;
      case 3: base = heisenberg(); break;
      case 4: base = affine_r1(); break;
      case 5: base = so3_on_r3(); break;
      case 6: base = tm3_plus_abelian(); break;
      default: base = standard_tm(1); break;
    }
    unsigned shears = 1 + static_cast<unsigned>(rng.below(2));
    ExprMatrix g = random_unimodular_matrix(base->coords(), base->rank(), 1, shears, rng);
    AlgebraPtr changed = frame_change(base, g);
    if (max_entry_degree(*changed) <= 2) return changed;
  }
  throw std::logic_error("failed to draw a degree-capped random algebroid");
}

// The acceptance corpus: standard TM over R^3, so(3) over a point, and five
// deterministic randomized validated algebroids.
inline std::vector<AlgebraPtr> acceptance_corpus() {
  std::vector<AlgebraPtr> out{standard_tm(3), so3()};
  for (std::uint64_t s = 1; s <= 5; ++s) out.push_back(random_validated_algebroid(1000 + s));
  return out;
}

}  // namespace lieax::corpus

#include "lieax/forms.hpp"

namespace lieax::corpus {

// Anchor-compatible morphism from a frame change: source = the changed
// algebra, target = the original, phi = G over the identity base map.
inline Morphism frame_change_morphism(const AlgebraPtr& target, const ExprMatrix& g) {
  AlgebraPtr source = frame_change(target, g);
  std::vector<ScalarExpr> id;
  for (std::size_t i = 0; i < target->dim(); ++i) {
    id.push_back(ScalarExpr::coordinate(target->coords(), i));
  }
  return make_morphism(source, target, g, id, id);
}

// Anchor-compatible morphism with identity frame map over a nontrivial base
// diffeomorphism y = fwd(x): target is the same algebroid written in the new
// coordinates.
inline Morphism base_change_morphism(const AlgebraPtr& source, const std::vector<ScalarExpr>& fwd,
                                     const std::vector<ScalarExpr>& inv, CoordsPtr new_coords) {
  AlgebraPtr target = base_change(source, fwd, inv, new_coords);
  ExprMatrix phi = ExprMatrix::identity(source->coords(), source->rank());
  return make_morphism(source, target, phi, fwd, inv);
}

// Affine base shift y_i = x_i + i + 1 on an algebra with base dimension >= 1.
inline Morphism shift_morphism(const AlgebraPtr& source) {
  std::size_t n = source->dim();
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
  CoordsPtr target_coords = make_coords(names);
  std::vector<ScalarExpr> fwd, inv;
  for (std::size_t i = 0; i < n; ++i) {
    fwd.push_back(ScalarExpr::coordinate(source->coords(), i) +
                  ScalarExpr::from_int(source->coords(), static_cast<long>(i + 1)));
    inv.push_back(ScalarExpr::coordinate(target_coords, i) -
                  ScalarExpr::from_int(target_coords, static_cast<long>(i + 1)));
  }
  return base_change_morphism(source, fwd, inv, target_coords);
}

}  // namespace lieax::corpus

#endif
