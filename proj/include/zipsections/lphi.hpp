#pragma once

#include <optional>
#include <vector>

#include "prep.hpp"

namespace zipsections {

// Symbolic, representation-independent description of the finite group
// scheme L_phi acting on P-representations. Invariance under each item is a
// linear condition that invariants() assembles exactly:
//  - weight_congruence: characters trivial on the relevant torus points; a
//    weight block survives untouched iff the weight lies in the lattice.
//  - torus_elements: explicit points t in T, acting on a weight-nu block by
//    the scalar prod_i t_i^{nu_i}; entries live in F_{p^k} given by
//    coefficient vectors over F_p and are embedded into the rep's field.
//  - unipotent_gens: root group points u_beta(c) acting by
//    sum_j c^j E^{(j)}_beta.
//  - infinitesimal: first-order data (beta, bound): E^{(j)}_beta v = 0 for
//    1 <= j < bound.
//  - explicit_elements: invertible matrices acting directly on the rep.
struct LphiDescription {
  std::optional<IntLattice> weight_congruence;
  std::vector<std::vector<std::vector<int>>> torus_elements;  // [elt][coord] = coeffs
  struct UnipotentGen {
    IVec root;
    std::vector<int> scalar_coeffs;  // element of F_{p^k}, coefficients over F_p
  };
  std::vector<UnipotentGen> unipotent_gens;
  struct Infinitesimal {
    IVec root;
    i64 bound = 1;
  };
  std::vector<Infinitesimal> infinitesimal;
  std::vector<FqMatrix> explicit_elements;

  // Degree of the field the scalar coefficients are written over.
  int scalar_degree = 1;
};

// Map a coefficient vector over F_{p^k} into the element of F (requires k | e).
inline Fq::elem resolve_scalar(const Fq& F, const std::vector<int>& coeffs, int k) {
  if ((int)coeffs.size() > k) throw std::invalid_argument("scalar has too many coefficients");
  if (k == 1) return F.from_int(coeffs.empty() ? 0 : coeffs[0]);
  if (F.e() % k != 0)
    throw std::invalid_argument("rep field does not contain the scalar field");
  Fq small(F.p(), k);
  std::vector<int> c = coeffs;
  c.resize(k, 0);
  return small.embed_into(F, small.from_coeffs(c));
}

// rho(u_beta(c)) = sum_{j>=0} c^j E^{(j)}_beta.
inline FqMatrix unipotent_matrix(const PRep& v, const IVec& root, Fq::elem c) {
  const Fq& F = *v.F;
  FqMatrix g = FqMatrix::identity(v.dim());
  Fq::elem cj = F.one();
  for (int j = 1; j <= v.max_level(root); ++j) {
    cj = F.mul(cj, c);
    if (!v.has_op(root, j) || F.is_zero(cj)) continue;
    g = mat_add(F, g, mat_scale(F, cj, v.op(root, j)));
  }
  return g;
}

// Group elements of the description materialized on v (everything except the
// congruence and infinitesimal parts, which are not single elements).
inline std::vector<FqMatrix> materialize_elements(const PRep& v, const LphiDescription& d) {
  const Fq& F = *v.F;
  std::vector<FqMatrix> out;
  for (const auto& t : d.torus_elements) {
    if ((int)t.size() != v.rank) throw std::invalid_argument("torus element has wrong length");
    std::vector<Fq::elem> coords;
    for (const auto& c : t) {
      Fq::elem x = resolve_scalar(F, c, d.scalar_degree);
      if (F.is_zero(x)) throw std::invalid_argument("torus coordinate is zero");
      coords.push_back(x);
    }
    FqMatrix g(v.dim(), v.dim());
    for (int i = 0; i < v.dim(); ++i) {
      Fq::elem s = F.one();
      for (int j = 0; j < v.rank; ++j) s = F.mul(s, F.pow(coords[j], v.weights[i][j]));
      g.at(i, i) = s;
    }
    out.push_back(g);
  }
  for (const auto& u : d.unipotent_gens)
    out.push_back(unipotent_matrix(v, u.root, resolve_scalar(F, u.scalar_coeffs, d.scalar_degree)));
  for (const auto& g : d.explicit_elements) {
    if (g.rows != v.dim() || g.cols != v.dim())
      throw std::invalid_argument("explicit element has wrong shape");
    if (mat_rank(F, g) != v.dim())
      throw std::invalid_argument("explicit element is not invertible");
    out.push_back(g);
  }
  return out;
}

// Exact invariant space v^{L_phi} as a subspace of v.
inline Subspace invariants(const PRep& v, const LphiDescription& d) {
  const Fq& F = *v.F;
  int n = v.dim();
  FqMatrix rows(0, n);
  auto add_rows = [&](const FqMatrix& m) {
    if (m.is_zero()) return;
    FqMatrix nr(rows.rows + m.rows, n);
    nr.a = rows.a;
    nr.a.insert(nr.a.end(), m.a.begin(), m.a.end());
    rows = std::move(nr);
  };
  if (d.weight_congruence) {
    if (d.weight_congruence->ambient() != v.rank)
      throw std::invalid_argument("congruence lattice has wrong rank");
    for (int i = 0; i < n; ++i) {
      if (d.weight_congruence->contains(v.weights[i])) continue;
      FqMatrix e(1, n);
      e.at(0, i) = F.one();
      add_rows(e);
    }
  }
  for (const auto& g : materialize_elements(v, d)) {
    FqMatrix m = g;
    for (int i = 0; i < n; ++i) m.at(i, i) = F.sub(m.at(i, i), F.one());
    add_rows(m);
  }
  for (const auto& inf : d.infinitesimal) {
    for (int j = 1; j < inf.bound; ++j) {
      if (!v.has_op(inf.root, j)) continue;
      add_rows(v.op(inf.root, j));
    }
  }
  if (rows.rows == 0) return Subspace::full(F, n);
  return Subspace::kernel_of(F, rows);
}

}  // namespace zipsections
