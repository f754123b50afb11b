#pragma once

#include <cstddef>
#include <map>

#include "bicat/morphisms.hpp"

namespace bicat {

// A lax functor z: [n] → B written out as cells.
//   vertex[i]            z_i
//   edge[e(i,j)]         z_{ij}: z_i → z_j, i ≤ j
//   face[f(i,j,k)]       ẑ_{ijk}: z_{jk}∘z_{ij} ⇒ z_{ik}, i ≤ j ≤ k
//   unit[i]              ẑ_i: 1_{z_i} ⇒ z_{ii}
struct GeometricSimplex {
  int n = 0;
  std::vector<ObjId> vertex;
  std::vector<OneId> edge;
  std::vector<TwoId> face;
  std::vector<TwoId> unit;

  static int e(int i, int j) { return j * (j + 1) / 2 + i; }
  static int f(int i, int j, int k) { return k * (k + 1) * (k + 2) / 6 + j * (j + 1) / 2 + i; }
  static int n_edges(int n) { return (n + 1) * (n + 2) / 2; }
  static int n_faces(int n) { return (n + 1) * (n + 2) * (n + 3) / 6; }

  OneId z(int i, int j) const { return edge[e(i, j)]; }
  TwoId zh(int i, int j, int k) const { return face[f(i, j, k)]; }

  std::vector<int> key() const;
  bool operator==(const GeometricSimplex& o) const = default;
};

// z∘σ for a monotone σ: [m] → [n], given as its values.
GeometricSimplex pull_back(const GeometricSimplex& z, const std::vector<int>& sigma);
// δ_k: [n−1] → [n] skipping k, and σ_k: [n+1] → [n] hitting k twice.
std::vector<int> coface(int n, int k);
std::vector<int> codegeneracy(int n, int k);

// The tetrahedron and unit equations; one violation per failing instance.
Report check_simplex(const Bicategory& B, const GeometricSimplex& z);

// A simplicial set truncated at dimension N, by index.
//   face[n][i][x]    d_i x for 1 ≤ n ≤ N
//   degen[n][i][x]   s_i x for n < N
struct SimplicialSet {
  int N = 0;
  std::vector<int> count;
  std::vector<std::vector<std::vector<int>>> face;
  std::vector<std::vector<std::vector<int>>> degen;
  std::vector<std::vector<char>> degenerate;

  std::vector<int> nondegenerate_counts() const;
};

// d d, d s and s s identities on every stored simplex, and that the
// degenerate flags are exactly the images of the degeneracies.
Report check_simplicial_identities(const SimplicialSet& X);

struct NerveOptions {
  int N = 3;
  // Enumeration stops with TruncationTooLarge once this many simplices
  // have been produced in total.
  std::size_t budget = 2000000;
  // Only simplices with z_{ii} = 1 and ẑ_i = 1.
  bool normalized = false;
};

struct Nerve {
  BicatPtr B;
  NerveOptions opt;
  std::vector<std::vector<GeometricSimplex>> simplices;
  std::vector<std::map<std::vector<int>, int>> index;
  SimplicialSet X;

  // Index of z, or -1.
  int find(const GeometricSimplex& z) const;
};
using NervePtr = std::shared_ptr<const Nerve>;

NervePtr nerve(BicatPtr B, NerveOptions opt = {});

// The classical nerve of a category: n-simplices are composable strings.
SimplicialSet category_nerve(const Category& C, int N);

// z ↦ F∘z, per dimension as indices into the target nerve. Throws
// IncoherentInput if an image is missing from the target.
using SimplicialMap = std::vector<std::vector<int>>;
SimplicialMap simplicial_map(const LaxFunctor& F, const Nerve& src, const Nerve& tgt);
Report check_simplicial_map(const SimplicialSet& X, const SimplicialSet& Y, const SimplicialMap& f);
SimplicialMap compose_maps(const SimplicialMap& g, const SimplicialMap& f);

struct Components {
  int count = 0;
  std::vector<int> label;           // vertex -> component
  std::vector<int> representative;  // component -> least vertex
};
Components pi0(const SimplicialSet& X);

// Normalized chains: basis = nondegenerate simplices in order.
struct ChainComplex {
  std::vector<std::vector<int>> basis;  // dim -> simplex indices
  // boundary[n] has rows = basis[n−1], columns = basis[n], dense, n ≥ 1.
  std::vector<std::vector<std::vector<long long>>> boundary;
};
ChainComplex normalized_chains(const SimplicialSet& X);

struct HomologyGroup {
  long long betti = 0;
  std::vector<std::string> torsion;  // invariant factors > 1, decimal
};
struct HomologyResult {
  std::vector<HomologyGroup> H;
  std::vector<long long> rank;  // rank[n] = rank of ∂_n
  bool big_integers = false;    // the int64 path overflowed
  std::string str() const;
};
// Degrees 0..kmax; needs X.N ≥ kmax + 1. force_big skips the int64 path.
HomologyResult homology(const SimplicialSet& X, int kmax, bool force_big = false);

// Whether f and g induce the same map H_k(X) → H_k(Y) for k ≤ kmax:
// f − g sends every cycle to a boundary.
Report same_induced_maps(const SimplicialSet& X, const SimplicialSet& Y, const SimplicialMap& f,
                         const SimplicialMap& g, int kmax);

}  // namespace bicat
