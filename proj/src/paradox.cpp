#include "tarski/paradox.hpp"

#include <algorithm>
#include <map>
#include <climits>
#include <queue>

namespace tarski {

bool verify_paradox(const ParadoxCert& cert, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const ClopenSet& U = cert.region;
  int total = static_cast<int>(cert.pieces.size());
  if (U.is_empty()) return fail("region U is empty");
  if (cert.split < 1 || cert.split >= total) return fail("split must leave both covers nonempty");
  for (const auto& p : cert.pieces) {
    if (!(*p.set.model() == *U.model())) return fail("piece model mismatch");
    if (p.set.is_empty()) return fail("piece is empty");
    if (!p.set.is_subset_of(U)) return fail("piece not contained in U");
  }
  ClopenSet c1 = ClopenSet::empty(U.model()), c2 = ClopenSet::empty(U.model());
  for (int i = 0; i < total; ++i) {
    if (i < cert.split)
      c1 = c1.set_union(cert.pieces[i].set);
    else
      c2 = c2.set_union(cert.pieces[i].set);
  }
  if (!(c1 == U)) return fail("first cover does not equal U");
  if (!(c2 == U)) return fail("second cover does not equal U");

  std::vector<ClopenSet> images;
  for (const auto& p : cert.pieces) images.push_back(p.set.translated(p.translator));
  for (const auto& img : images) {
    if (!img.is_subset_of(U)) return fail("translated piece leaves U");
  }
  for (size_t i = 0; i < images.size(); ++i) {
    for (size_t j = i + 1; j < images.size(); ++j) {
      if (!images[i].is_disjoint_from(images[j])) return fail("translated pieces not disjoint");
    }
  }
  return true;
}

std::optional<ParadoxCert> find_paradox(const ClopenSet& U, int radius, int max_pieces) {
  if (U.is_empty()) throw ClopenError("find_paradox: U is empty");
  if (radius < 1 || max_pieces < 2) throw ClopenError("find_paradox: bounds must be >= 1, >= 2");
  EmbedOptions opt;
  opt.radius = radius;
  opt.max_moves = max_pieces;
  opt.exact = false;
  opt.minimal_moves = true;  // piece-count-lexicographic search order
  auto emb = find_embedding({U, U}, {U}, opt);
  if (!emb) return std::nullopt;

  ParadoxCert cert;
  cert.region = U;
  for (const auto& m : emb->moves)
    if (m.src_level == 0) cert.pieces.push_back({m.piece, m.translator});
  cert.split = static_cast<int>(cert.pieces.size());
  for (const auto& m : emb->moves)
    if (m.src_level == 1) cert.pieces.push_back({m.piece, m.translator});

  std::string why;
  if (!verify_paradox(cert, &why))
    throw ClopenError("internal: searched certificate fails verification: " + why);
  return cert;
}

std::optional<ParadoxCert> find_paradox_with_atoms(const ClopenSet& U,
                                                   const std::vector<ClopenSet>& atoms_of_U,
                                                   const std::vector<Word>& translators,
                                                   int max_pieces) {
  if (U.is_empty()) throw ClopenError("find_paradox: U is empty");
  EmbedOptions opt;
  opt.max_moves = max_pieces;
  opt.exact = false;
  opt.translators = translators;
  opt.atoms_override = std::vector<std::vector<ClopenSet>>{atoms_of_U, atoms_of_U};
  auto emb = find_embedding({U, U}, {U}, opt);
  if (!emb) return std::nullopt;

  ParadoxCert cert;
  cert.region = U;
  for (const auto& m : emb->moves)
    if (m.src_level == 0) cert.pieces.push_back({m.piece, m.translator});
  cert.split = static_cast<int>(cert.pieces.size());
  for (const auto& m : emb->moves)
    if (m.src_level == 1) cert.pieces.push_back({m.piece, m.translator});
  std::string why;
  if (!verify_paradox(cert, &why))
    throw ClopenError("internal: searched certificate fails verification: " + why);
  return cert;
}

namespace {

// Dinic max flow on a small unit-ish network.
struct Flow {
  struct Edge {
    int to;
    long cap;
    size_t rev;
  };
  std::vector<std::vector<Edge>> g;
  std::vector<int> level, iter;

  explicit Flow(int n) : g(n) {}
  void add_edge(int a, int b, long cap) {
    g[a].push_back({b, cap, g[b].size()});
    g[b].push_back({a, 0, g[a].size() - 1});
  }
  bool bfs(int s, int t) {
    level.assign(g.size(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Edge& e : g[v]) {
        if (e.cap > 0 && level[e.to] < 0) {
          level[e.to] = level[v] + 1;
          q.push(e.to);
        }
      }
    }
    return level[t] >= 0;
  }
  long dfs(int v, int t, long f) {
    if (v == t) return f;
    for (int& i = iter[v]; i < static_cast<int>(g[v].size()); ++i) {
      Edge& e = g[v][i];
      if (e.cap > 0 && level[v] < level[e.to]) {
        long d = dfs(e.to, t, std::min(f, e.cap));
        if (d > 0) {
          e.cap -= d;
          g[e.to][e.rev].cap += d;
          return d;
        }
      }
    }
    return 0;
  }
  long max_flow(int s, int t) {
    long flow = 0;
    while (bfs(s, t)) {
      iter.assign(g.size(), 0);
      long f;
      while ((f = dfs(s, t, LONG_MAX)) > 0) flow += f;
    }
    return flow;
  }
  std::vector<bool> min_cut_side(int s) {
    std::vector<bool> vis(g.size(), false);
    std::queue<int> q;
    vis[s] = true;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Edge& e : g[v]) {
        if (e.cap > 0 && !vis[e.to]) {
          vis[e.to] = true;
          q.push(e.to);
        }
      }
    }
    return vis;
  }
};

}  // namespace

DoublingReport doubling_check(const ClopenSet& E, const std::vector<Word>& K, int radius) {
  if (E.kind() != ActionKind::SelfAction)
    throw ClopenError("doubling_check needs the self-action model");
  if (K.empty()) throw ClopenError("doubling_check: K must be nonempty");
  const GroupSpec& spec = E.spec();

  DoublingReport rep;
  std::vector<Word> window;
  for (const Word& g : ball(spec, radius))
    if (E.contains_point(g)) window.push_back(g);
  rep.window_size = static_cast<long>(window.size());
  if (window.empty()) {
    rep.empty_window = true;
    rep.slack = 0;
    return rep;
  }

  // right side: K.A n E
  std::map<Word, int, WordLess> right{WordLess{&spec}};
  std::vector<Word> right_words;
  for (const Word& a : window) {
    for (const Word& t : K) {
      Word img = multiply(spec, t, a);
      if (!E.contains_point(img)) continue;
      if (right.emplace(img, static_cast<int>(right_words.size())).second)
        right_words.push_back(img);
    }
  }

  int nl = static_cast<int>(window.size());
  int nr = static_cast<int>(right_words.size());
  int src = nl + nr, snk = nl + nr + 1;
  Flow flow(nl + nr + 2);
  for (int i = 0; i < nl; ++i) flow.add_edge(src, i, 2);
  for (int i = 0; i < nl; ++i) {
    for (const Word& t : K) {
      Word img = multiply(spec, t, window[i]);
      auto it = right.find(img);
      if (it != right.end()) flow.add_edge(i, nl + it->second, 1);
    }
  }
  for (int j = 0; j < nr; ++j) flow.add_edge(nl + j, snk, 1);

  rep.flow = flow.max_flow(src, snk);
  rep.slack = 2 * rep.window_size - rep.flow;

  if (rep.slack > 0) {
    // Min cut gives a Hall violator: source-side left vertices S with
    // |K.S n E| < 2|S|.
    auto side = flow.min_cut_side(src);
    for (int i = 0; i < nl; ++i)
      if (side[i]) rep.deficient_set.push_back(window[i]);
    for (int j = 0; j < nr; ++j)
      if (side[nl + j]) ++rep.deficient_neighbours;
  }
  return rep;
}

}  // namespace tarski
