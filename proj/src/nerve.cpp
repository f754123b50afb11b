#include "bicat/nerve.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace bicat {

using BigInt = boost::multiprecision::cpp_int;

std::vector<int> GeometricSimplex::key() const {
  std::vector<int> k;
  k.reserve(1 + vertex.size() + edge.size() + face.size() + unit.size());
  k.push_back(n);
  k.insert(k.end(), vertex.begin(), vertex.end());
  k.insert(k.end(), edge.begin(), edge.end());
  k.insert(k.end(), face.begin(), face.end());
  k.insert(k.end(), unit.begin(), unit.end());
  return k;
}

GeometricSimplex pull_back(const GeometricSimplex& z, const std::vector<int>& sigma) {
  GeometricSimplex y;
  int m = int(sigma.size()) - 1;
  y.n = m;
  y.vertex.resize(m + 1);
  y.unit.resize(m + 1);
  y.edge.resize(GeometricSimplex::n_edges(m));
  y.face.resize(GeometricSimplex::n_faces(m));
  for (int i = 0; i <= m; ++i) {
    y.vertex[i] = z.vertex[sigma[i]];
    y.unit[i] = z.unit[sigma[i]];
  }
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i <= j; ++i) y.edge[y.e(i, j)] = z.z(sigma[i], sigma[j]);
  for (int k = 0; k <= m; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= j; ++i) y.face[y.f(i, j, k)] = z.zh(sigma[i], sigma[j], sigma[k]);
  return y;
}

std::vector<int> coface(int n, int k) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = i < k ? i : i + 1;
  return s;
}

std::vector<int> codegeneracy(int n, int k) {
  std::vector<int> s(n + 2);
  for (int i = 0; i < n + 2; ++i) s[i] = i <= k ? i : i - 1;
  return s;
}

namespace {

bool tetra_ok(const Bicategory& B, const GeometricSimplex& z, int i, int j, int k, int l) {
  TwoId lhs = B.vc(z.zh(i, k, l), B.vc(B.whisker_l(z.z(k, l), z.zh(i, j, k)), B.a(z.z(k, l), z.z(j, k), z.z(i, j))));
  TwoId rhs = B.vc(z.zh(i, j, l), B.whisker_r(z.zh(j, k, l), z.z(i, j)));
  return lhs == rhs;
}

bool right_unit_ok(const Bicategory& B, const GeometricSimplex& z, int i, int j) {
  return B.vc(z.zh(i, i, j), B.whisker_l(z.z(i, j), z.unit[i])) == B.r(z.z(i, j));
}

bool left_unit_ok(const Bicategory& B, const GeometricSimplex& z, int i, int j) {
  return B.vc(z.zh(i, j, j), B.whisker_r(z.unit[j], z.z(i, j))) == B.l(z.z(i, j));
}

// Extends an (n−1)-simplex by a last vertex, choosing z_{in} and ẑ_{ijn}
// for i = n down to 0 and checking every equation that involves vertex n
// as soon as its cells are chosen.
struct Extender {
  const Bicategory& B;
  const NerveOptions& opt;
  std::size_t& total;
  std::vector<GeometricSimplex>& out;
  GeometricSimplex z;
  int n = 0;

  void emit() {
    if (++total > opt.budget)
      throw TruncationTooLarge("nerve of " + B.name + " exceeds " + std::to_string(opt.budget) +
                               " simplices at dimension " + std::to_string(n));
    out.push_back(z);
  }

  bool level_ok(int i) const {
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k)
        if (!tetra_ok(B, z, i, j, k, n)) return false;
    return right_unit_ok(B, z, i, n) && left_unit_ok(B, z, i, n);
  }

  void faces(int i, int j) {
    if (j > n) {
      if (level_ok(i)) level(i - 1);
      return;
    }
    OneId s = B.comp(z.z(j, n), z.z(i, j));
    for (TwoId c : B.hom2(s, z.z(i, n))) {
      z.face[z.f(i, j, n)] = c;
      faces(i, j + 1);
    }
  }

  void level(int i) {
    if (i < 0) {
      emit();
      return;
    }
    ObjId zn = z.vertex[n];
    if (i == n) {
      OneId one = B.id1[zn];
      for (OneId e : B.hom(zn, zn)) {
        if (opt.normalized && e != one) continue;
        z.edge[z.e(n, n)] = e;
        for (TwoId u : B.hom2(one, e)) {
          if (opt.normalized && u != B.id2[one]) continue;
          z.unit[n] = u;
          faces(n, n);
        }
      }
      return;
    }
    for (OneId e : B.hom(z.vertex[i], zn)) {
      z.edge[z.e(i, n)] = e;
      faces(i, i);
    }
  }

  void extend(const GeometricSimplex& y) {
    n = y.n + 1;
    z = y;
    z.n = n;
    z.vertex.resize(n + 1);
    z.unit.resize(n + 1);
    z.edge.resize(GeometricSimplex::n_edges(n));
    z.face.resize(GeometricSimplex::n_faces(n));
    for (ObjId v = 0; v < B.n_obj(); ++v) {
      z.vertex[n] = v;
      level(n);
    }
  }
};

}  // namespace

Report check_simplex(const Bicategory& B, const GeometricSimplex& z) {
  Report r;
  for (int l = 0; l <= z.n; ++l)
    for (int k = 0; k <= l; ++k)
      for (int j = 0; j <= k; ++j)
        for (int i = 0; i <= j; ++i)
          if (!tetra_ok(B, z, i, j, k, l)) r.add("simplex.tetrahedron", {i, j, k, l});
  for (int j = 0; j <= z.n; ++j)
    for (int i = 0; i <= j; ++i) {
      if (!right_unit_ok(B, z, i, j)) r.add("simplex.right_unit", {i, j});
      if (!left_unit_ok(B, z, i, j)) r.add("simplex.left_unit", {i, j});
    }
  return r;
}

std::vector<int> SimplicialSet::nondegenerate_counts() const {
  std::vector<int> c(N + 1, 0);
  for (int n = 0; n <= N; ++n) c[n] = int(std::count(degenerate[n].begin(), degenerate[n].end(), 0));
  return c;
}

namespace {

// Fills the degenerate flags from the maps: x is degenerate iff x = s_k d_k x.
void mark_degenerate(SimplicialSet& X) {
  X.degenerate.assign(X.N + 1, {});
  for (int n = 0; n <= X.N; ++n) {
    X.degenerate[n].assign(X.count[n], 0);
    for (int x = 0; x < X.count[n] && n > 0; ++x)
      for (int k = 0; k < n; ++k)
        if (X.degen[n - 1][k][X.face[n][k][x]] == x) X.degenerate[n][x] = 1;
  }
}

}  // namespace

Report check_simplicial_identities(const SimplicialSet& X) {
  Report r;
  auto d = [&](int n, int i, int x) { return X.face[n][i][x]; };
  auto s = [&](int n, int i, int x) { return X.degen[n][i][x]; };
  for (int n = 2; n <= X.N; ++n)
    for (int x = 0; x < X.count[n]; ++x)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (d(n - 1, i, d(n, j, x)) != d(n - 1, j - 1, d(n, i, x))) r.add("simplicial.dd", {n, x, i, j});
  for (int n = 0; n + 1 <= X.N; ++n)
    for (int x = 0; x < X.count[n]; ++x)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n + 1; ++i) {
          int lhs = d(n + 1, i, s(n, j, x));
          int rhs;
          if (i == j || i == j + 1)
            rhs = x;
          else if (i < j)
            rhs = s(n - 1, j - 1, d(n, i, x));
          else
            rhs = s(n - 1, j, d(n, i - 1, x));
          if (lhs != rhs) r.add("simplicial.ds", {n, x, i, j});
        }
  for (int n = 0; n + 2 <= X.N; ++n)
    for (int x = 0; x < X.count[n]; ++x)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i)
          if (s(n + 1, i, s(n, j, x)) != s(n + 1, j + 1, s(n, i, x))) r.add("simplicial.ss", {n, x, i, j});
  for (int n = 0; n <= X.N; ++n) {
    std::vector<char> image(X.count[n], 0);
    if (n > 0)
      for (int k = 0; k < n; ++k)
        for (int y : X.degen[n - 1][k]) image[y] = 1;
    for (int x = 0; x < X.count[n]; ++x)
      if (image[x] != X.degenerate[n][x]) r.add("simplicial.degenerate_flag", {n, x});
  }
  return r;
}

int Nerve::find(const GeometricSimplex& z) const {
  if (z.n < 0 || z.n > X.N) return -1;
  auto it = index[z.n].find(z.key());
  return it == index[z.n].end() ? -1 : it->second;
}

NervePtr nerve(BicatPtr B, NerveOptions opt) {
  if (opt.N < 1) throw IncoherentInput("nerve needs N >= 1");
  auto R = std::make_shared<Nerve>();
  R->B = B;
  R->opt = opt;
  R->simplices.resize(opt.N + 1);
  R->index.resize(opt.N + 1);
  std::size_t total = 0;
  for (int n = 0; n <= opt.N; ++n) {
    Extender ext{*B, opt, total, R->simplices[n], {}, 0};
    if (n == 0) {
      GeometricSimplex empty;
      empty.n = -1;
      ext.extend(empty);
    } else {
      for (const auto& y : R->simplices[n - 1]) ext.extend(y);
    }
    for (int x = 0; x < int(R->simplices[n].size()); ++x) R->index[n][R->simplices[n][x].key()] = x;
  }

  SimplicialSet& X = R->X;
  X.N = opt.N;
  X.count.resize(opt.N + 1);
  X.face.assign(opt.N + 1, {});
  X.degen.assign(opt.N + 1, {});
  for (int n = 0; n <= opt.N; ++n) X.count[n] = int(R->simplices[n].size());
  auto locate = [&](const GeometricSimplex& y) {
    int i = R->find(y);
    if (i < 0) throw IncoherentInput("simplicial operator leaves the nerve of " + B->name);
    return i;
  };
  for (int n = 0; n <= opt.N; ++n) {
    const auto& Sn = R->simplices[n];
    if (n > 0) {
      X.face[n].assign(n + 1, std::vector<int>(Sn.size()));
      for (int k = 0; k <= n; ++k) {
        auto sigma = coface(n, k);
        for (std::size_t x = 0; x < Sn.size(); ++x) X.face[n][k][x] = locate(pull_back(Sn[x], sigma));
      }
    }
    if (n < opt.N) {
      X.degen[n].assign(n + 1, std::vector<int>(Sn.size()));
      for (int k = 0; k <= n; ++k) {
        auto sigma = codegeneracy(n, k);
        for (std::size_t x = 0; x < Sn.size(); ++x) X.degen[n][k][x] = locate(pull_back(Sn[x], sigma));
      }
    }
  }
  mark_degenerate(X);
  return R;
}

SimplicialSet category_nerve(const Category& C, int N) {
  // A simplex is (x_0, f_1, ..., f_n) with f_i: x_{i−1} → x_i.
  std::vector<std::vector<std::vector<int>>> S(N + 1);
  std::vector<std::map<std::vector<int>, int>> idx(N + 1);
  for (int x = 0; x < int(C.obj_label.size()); ++x) S[0].push_back({x});
  for (int n = 1; n <= N; ++n)
    for (const auto& y : S[n - 1]) {
      int last = n == 1 ? y[0] : C.mor[y.back()].second;
      for (int f = 0; f < int(C.mor.size()); ++f)
        if (C.mor[f].first == last) {
          auto z = y;
          z.push_back(f);
          S[n].push_back(z);
        }
    }
  for (int n = 0; n <= N; ++n)
    for (int x = 0; x < int(S[n].size()); ++x) idx[n][S[n][x]] = x;

  auto comp = [&](int g, int f) {
    auto it = C.comp.find(key2(g, f));
    if (it == C.comp.end()) throw MalformedTable("missing composite in category");
    return it->second;
  };
  auto vertex = [&](const std::vector<int>& z, int i) { return i == 0 ? z[0] : C.mor[z[i]].second; };

  SimplicialSet X;
  X.N = N;
  X.count.resize(N + 1);
  X.face.assign(N + 1, {});
  X.degen.assign(N + 1, {});
  for (int n = 0; n <= N; ++n) X.count[n] = int(S[n].size());
  for (int n = 1; n <= N; ++n) {
    X.face[n].assign(n + 1, std::vector<int>(S[n].size()));
    for (int x = 0; x < int(S[n].size()); ++x) {
      const auto& z = S[n][x];
      for (int k = 0; k <= n; ++k) {
        std::vector<int> y;
        if (k == 0) {
          y.push_back(vertex(z, 1));
          y.insert(y.end(), z.begin() + 2, z.end());
        } else if (k == n) {
          y.assign(z.begin(), z.end() - 1);
        } else {
          y.assign(z.begin(), z.begin() + k);
          y.push_back(comp(z[k + 1], z[k]));
          y.insert(y.end(), z.begin() + k + 2, z.end());
        }
        X.face[n][k][x] = idx[n - 1].at(y);
      }
    }
  }
  for (int n = 0; n < N; ++n) {
    X.degen[n].assign(n + 1, std::vector<int>(S[n].size()));
    for (int x = 0; x < int(S[n].size()); ++x) {
      const auto& z = S[n][x];
      for (int k = 0; k <= n; ++k) {
        std::vector<int> y(z.begin(), z.begin() + k + 1);
        y.push_back(C.id[vertex(z, k)]);
        y.insert(y.end(), z.begin() + k + 1, z.end());
        X.degen[n][k][x] = idx[n + 1].at(y);
      }
    }
  }
  mark_degenerate(X);
  return X;
}

SimplicialMap simplicial_map(const LaxFunctor& F, const Nerve& src, const Nerve& tgt) {
  const Bicategory& B = *F.tgt;
  int N = std::min(src.X.N, tgt.X.N);
  SimplicialMap m(N + 1);
  for (int n = 0; n <= N; ++n) {
    m[n].resize(src.simplices[n].size());
    for (std::size_t x = 0; x < src.simplices[n].size(); ++x) {
      const auto& z = src.simplices[n][x];
      GeometricSimplex y = z;
      for (auto& v : y.vertex) v = F.obj[v];
      for (auto& e : y.edge) e = F.one[e];
      for (int i = 0; i <= n; ++i) y.unit[i] = B.vc(F.two[z.unit[i]], F.unit[z.vertex[i]]);
      for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= k; ++j)
          for (int i = 0; i <= j; ++i)
            y.face[y.f(i, j, k)] = B.vc(F.two[z.zh(i, j, k)], F.hat(z.z(j, k), z.z(i, j)));
      int t = tgt.find(y);
      if (t < 0) throw IncoherentInput("image of a simplex under " + F.name + " is not in the target nerve");
      m[n][x] = t;
    }
  }
  return m;
}

Report check_simplicial_map(const SimplicialSet& X, const SimplicialSet& Y, const SimplicialMap& f) {
  Report r;
  int N = int(f.size()) - 1;
  for (int n = 0; n <= N; ++n)
    for (int x = 0; x < X.count[n]; ++x) {
      if (n > 0)
        for (int k = 0; k <= n; ++k)
          if (f[n - 1][X.face[n][k][x]] != Y.face[n][k][f[n][x]]) r.add("map.face", {n, x, k});
      if (n < N)
        for (int k = 0; k <= n; ++k)
          if (f[n + 1][X.degen[n][k][x]] != Y.degen[n][k][f[n][x]]) r.add("map.degeneracy", {n, x, k});
    }
  return r;
}

SimplicialMap compose_maps(const SimplicialMap& g, const SimplicialMap& f) {
  SimplicialMap h(std::min(f.size(), g.size()));
  for (std::size_t n = 0; n < h.size(); ++n) {
    h[n].resize(f[n].size());
    for (std::size_t x = 0; x < f[n].size(); ++x) h[n][x] = g[n][f[n][x]];
  }
  return h;
}

Components pi0(const SimplicialSet& X) {
  Components c;
  int V = X.N >= 0 && !X.count.empty() ? X.count[0] : 0;
  std::vector<int> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  if (X.N >= 1)
    for (int e = 0; e < X.count[1]; ++e) {
      int a = root(X.face[1][0][e]), b = root(X.face[1][1][e]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  c.label.assign(V, -1);
  std::map<int, int> comp_of_root;
  for (int v = 0; v < V; ++v) {
    int r = root(v);
    auto [it, fresh] = comp_of_root.emplace(r, c.count);
    if (fresh) {
      c.representative.push_back(v);
      ++c.count;
    }
    c.label[v] = it->second;
  }
  return c;
}

ChainComplex normalized_chains(const SimplicialSet& X) {
  ChainComplex C;
  C.basis.resize(X.N + 1);
  std::vector<std::vector<int>> pos(X.N + 1);
  for (int n = 0; n <= X.N; ++n) {
    pos[n].assign(X.count[n], -1);
    for (int x = 0; x < X.count[n]; ++x)
      if (!X.degenerate[n][x]) {
        pos[n][x] = int(C.basis[n].size());
        C.basis[n].push_back(x);
      }
  }
  C.boundary.resize(X.N + 1);
  for (int n = 1; n <= X.N; ++n) {
    auto& D = C.boundary[n];
    D.assign(C.basis[n - 1].size(), std::vector<long long>(C.basis[n].size(), 0));
    for (std::size_t col = 0; col < C.basis[n].size(); ++col) {
      int x = C.basis[n][col];
      for (int k = 0; k <= n; ++k) {
        int row = pos[n - 1][X.face[n][k][x]];
        if (row >= 0) D[row][col] += (k % 2 == 0) ? 1 : -1;
      }
    }
  }
  return C;
}

namespace {

// a − q·b, with int64 overflow raising OverflowGuard.
long long sub_mul(long long a, long long q, long long b) {
  long long p, r;
  if (__builtin_mul_overflow(q, b, &p) || __builtin_sub_overflow(a, p, &r)) throw OverflowGuard("int64 pivot overflow");
  return r;
}
BigInt sub_mul(const BigInt& a, const BigInt& q, const BigInt& b) { return a - q * b; }

long long add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowGuard("int64 pivot overflow");
  return r;
}
BigInt add(const BigInt& a, const BigInt& b) { return a + b; }

long long negate(long long a) {
  if (a == LLONG_MIN) throw OverflowGuard("int64 pivot overflow");
  return -a;
}
BigInt negate(const BigInt& a) { return -a; }

template <class T>
T magnitude(const T& a) {
  return a < 0 ? negate(a) : a;
}

template <class T>
using Mat = std::vector<std::vector<T>>;

template <class T>
Mat<T> identity_matrix(std::size_t n) {
  Mat<T> I(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = T(1);
  return I;
}

// D = U·M·V with D diagonal, d_0 | d_1 | ... positive. U and V are only
// accumulated when track is set.
template <class T>
struct Smith {
  std::vector<T> d;
  Mat<T> U, V;
};

template <class T>
Smith<T> smith(Mat<T> A, std::size_t rows, std::size_t cols, bool track) {
  Smith<T> S;
  if (track) {
    S.U = identity_matrix<T>(rows);
    S.V = identity_matrix<T>(cols);
  }
  auto row_op = [&](std::size_t i, std::size_t t, const T& q) {  // row_i −= q·row_t
    for (std::size_t j = 0; j < cols; ++j)
      if (A[t][j] != 0) A[i][j] = sub_mul(A[i][j], q, A[t][j]);
    if (track)
      for (std::size_t j = 0; j < rows; ++j)
        if (S.U[t][j] != 0) S.U[i][j] = sub_mul(S.U[i][j], q, S.U[t][j]);
  };
  auto col_op = [&](std::size_t j, std::size_t t, const T& q) {  // col_j −= q·col_t
    for (std::size_t i = 0; i < rows; ++i)
      if (A[i][t] != 0) A[i][j] = sub_mul(A[i][j], q, A[i][t]);
    if (track)
      for (std::size_t i = 0; i < cols; ++i)
        if (S.V[i][t] != 0) S.V[i][j] = sub_mul(S.V[i][j], q, S.V[i][t]);
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    std::swap(A[a], A[b]);
    if (track) std::swap(S.U[a], S.U[b]);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (auto& r : A) std::swap(r[a], r[b]);
    if (track)
      for (auto& r : S.V) std::swap(r[a], r[b]);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::size_t pi = rows, pj = cols;
      T best = 0;
      for (std::size_t i = t; i < rows && best != 1; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (A[i][j] != 0 && (pi == rows || magnitude(A[i][j]) < best)) {
            best = magnitude(A[i][j]);
            pi = i;
            pj = j;
            if (best == 1) break;
          }
      if (pi == rows) return S;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (A[i][t] != 0) {
          row_op(i, t, T(A[i][t] / A[t][t]));
          if (A[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (A[t][j] != 0) {
          col_op(j, t, T(A[t][j] / A[t][t]));
          if (A[t][j] != 0) clean = false;
        }
      if (!clean) continue;
      // The pivot must divide the rest; otherwise fold the offending row in.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows && best != 1; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (A[i][j] % A[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = 0; j < cols; ++j) A[t][j] = add(A[t][j], A[bad][j]);
      if (track)
        for (std::size_t j = 0; j < rows; ++j) S.U[t][j] = add(S.U[t][j], S.U[bad][j]);
    }
    if (A[t][t] < 0) {
      for (std::size_t j = 0; j < cols; ++j) A[t][j] = negate(A[t][j]);
      if (track)
        for (std::size_t j = 0; j < rows; ++j) S.U[t][j] = negate(S.U[t][j]);
    }
    S.d.push_back(A[t][t]);
  }
  return S;
}

template <class T>
Mat<T> convert(const std::vector<std::vector<long long>>& M) {
  Mat<T> A(M.size());
  for (std::size_t i = 0; i < M.size(); ++i) A[i].assign(M[i].begin(), M[i].end());
  return A;
}

template <class T>
std::string decimal(const T& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

template <class T>
HomologyResult homology_with(const ChainComplex& C, int kmax) {
  HomologyResult R;
  int top = kmax + 1;
  std::vector<std::vector<T>> diag(top + 1);
  R.rank.assign(top + 1, 0);
  for (int n = 1; n <= top; ++n) {
    auto S = smith<T>(convert<T>(C.boundary[n]), C.basis[n - 1].size(), C.basis[n].size(), false);
    diag[n] = S.d;
    R.rank[n] = (long long)S.d.size();
  }
  for (int k = 0; k <= kmax; ++k) {
    HomologyGroup g;
    g.betti = (long long)C.basis[k].size() - R.rank[k] - R.rank[k + 1];
    for (const T& d : diag[k + 1])
      if (d > 1) g.torsion.push_back(decimal(d));
    R.H.push_back(g);
  }
  return R;
}

void check_boundary_squares_to_zero(const ChainComplex& C, int top) {
  for (int n = 2; n <= top; ++n) {
    const auto& P = C.boundary[n - 1];
    const auto& Q = C.boundary[n];
    // Entries are bounded by n + 1 and columns have at most n + 1 nonzeros.
    for (std::size_t j = 0; j < C.basis[n].size(); ++j) {
      std::vector<long long> col(P.size(), 0);
      for (std::size_t k = 0; k < Q.size(); ++k)
        if (Q[k][j] != 0)
          for (std::size_t i = 0; i < P.size(); ++i) col[i] += P[i][k] * Q[k][j];
      for (long long v : col)
        if (v != 0) throw IncoherentInput("boundary does not square to zero in degree " + std::to_string(n));
    }
  }
}

}  // namespace

std::string HomologyResult::str() const {
  std::ostringstream s;
  for (std::size_t k = 0; k < H.size(); ++k) {
    if (k) s << ", ";
    s << "H" << k << "=";
    std::vector<std::string> parts;
    if (H[k].betti == 1)
      parts.push_back("Z");
    else if (H[k].betti > 1)
      parts.push_back("Z^" + std::to_string(H[k].betti));
    for (const auto& t : H[k].torsion) parts.push_back("Z/" + t);
    if (parts.empty()) parts.push_back("0");
    for (std::size_t i = 0; i < parts.size(); ++i) s << (i ? "+" : "") << parts[i];
  }
  return s.str();
}

HomologyResult homology(const SimplicialSet& X, int kmax, bool force_big) {
  if (kmax < 0 || X.N < kmax + 1)
    throw IncoherentInput("homology up to degree " + std::to_string(kmax) + " needs truncation >= " +
                          std::to_string(kmax + 1));
  ChainComplex C = normalized_chains(X);
  check_boundary_squares_to_zero(C, kmax + 1);
  if (!force_big) {
    try {
      return homology_with<long long>(C, kmax);
    } catch (const OverflowGuard&) {
    }
  }
  HomologyResult R = homology_with<BigInt>(C, kmax);
  R.big_integers = true;
  return R;
}

Report same_induced_maps(const SimplicialSet& X, const SimplicialSet& Y, const SimplicialMap& f,
                         const SimplicialMap& g, int kmax) {
  if (X.N < kmax + 1 || Y.N < kmax + 1 || int(f.size()) < kmax + 2 || int(g.size()) < kmax + 2)
    throw IncoherentInput("induced maps up to degree " + std::to_string(kmax) + " need truncation >= " +
                          std::to_string(kmax + 1));
  Report r;
  ChainComplex CX = normalized_chains(X), CY = normalized_chains(Y);
  for (int k = 0; k <= kmax; ++k) {
    std::vector<int> posY(Y.count[k], -1);
    for (std::size_t i = 0; i < CY.basis[k].size(); ++i) posY[CY.basis[k][i]] = int(i);
    std::size_t nx = CX.basis[k].size(), ny = CY.basis[k].size();

    // Integral basis of the k-cycles of X.
    Mat<BigInt> cycles;
    if (k == 0) {
      cycles = identity_matrix<BigInt>(nx);
    } else {
      auto S = smith<BigInt>(convert<BigInt>(CX.boundary[k]), CX.basis[k - 1].size(), nx, true);
      for (std::size_t c = S.d.size(); c < nx; ++c) {
        std::vector<BigInt> v(nx);
        for (std::size_t i = 0; i < nx; ++i) v[i] = S.V[i][c];
        cycles.push_back(v);
      }
    }

    auto Sy = smith<BigInt>(convert<BigInt>(CY.boundary[k + 1]), ny, CY.basis[k + 1].size(), true);
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      std::vector<BigInt> w(ny, 0);
      for (std::size_t i = 0; i < nx; ++i) {
        if (cycles[c][i] == 0) continue;
        int x = CX.basis[k][i];
        int fx = posY[f[k][x]], gx = posY[g[k][x]];
        if (fx >= 0) w[fx] += cycles[c][i];
        if (gx >= 0) w[gx] -= cycles[c][i];
      }
      bool boundary = true;
      for (std::size_t i = 0; i < ny && boundary; ++i) {
        BigInt y = 0;
        for (std::size_t j = 0; j < ny; ++j) y += Sy.U[i][j] * w[j];
        if (i < Sy.d.size() ? (y % Sy.d[i] != 0) : (y != 0)) boundary = false;
      }
      if (!boundary) r.add("homology.induced_map", {k, int(c)});
    }
  }
  return r;
}

}  // namespace bicat
