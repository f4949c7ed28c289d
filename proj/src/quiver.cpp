#include "virtmod/quiver.hpp"

#include <algorithm>
#include <set>

#include "virtmod/error.hpp"

namespace virtmod::quivrep {

Vector PathBlock::residue(const Vector& path_coords) const {
  Vector reduced = ideal.reduce(path_coords);
  Vector out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) out[i] = reduced[basis[i]];
  return out;
}

std::optional<std::size_t> PathBlock::index_of(const Path& p) const {
  auto it = index.find(p);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Vector PathBlock::residue_of(const Path& p) const {
  Vector coords(paths.size(), 0);
  if (auto i = index_of(p)) coords[*i] = 1;
  return residue(coords);
}

namespace {

bool path_less(const Path& a, const Path& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

BoundQuiver::BoundQuiver(Field field, std::vector<std::string> vertices, std::vector<Arrow> arrows,
                         std::vector<Relation> relations, std::size_t max_nilpotency)
    : field_(field),
      vertices_(std::move(vertices)),
      arrows_(std::move(arrows)),
      relations_(std::move(relations)) {
  std::set<std::string> seen;
  for (const auto& v : vertices_)
    if (!seen.insert(v).second) throw InputError("duplicate vertex '" + v + "'");
  seen.clear();
  for (const auto& a : arrows_) {
    if (!seen.insert(a.name).second) throw InputError("duplicate arrow name '" + a.name + "'");
    if (a.source >= vertices_.size() || a.target >= vertices_.size())
      throw InputError("arrow '" + a.name + "' has an unknown endpoint");
  }
  for (std::size_t r = 0; r < relations_.size(); ++r) {
    const auto where = "relation " + std::to_string(r);
    auto& rel = relations_[r];
    if (rel.empty()) throw InputError(where + " is empty");
    std::optional<std::pair<std::size_t, std::size_t>> ends;
    for (auto& term : rel) {
      term.coeff %= field_.p();
      if (term.path.size() < 2)
        throw InputError(where + " contains a path of length < 2 (not admissible)");
      for (auto a : term.path)
        if (a >= arrows_.size()) throw InputError(where + " uses an unknown arrow");
      for (std::size_t k = 0; k + 1 < term.path.size(); ++k)
        if (arrows_[term.path[k]].target != arrows_[term.path[k + 1]].source)
          throw InputError(where + ": path " + path_name(term.path) + " does not compose");
      std::pair<std::size_t, std::size_t> e{arrows_[term.path.front()].source,
                                            arrows_[term.path.back()].target};
      if (ends && *ends != e) throw InputError(where + ": paths are not parallel");
      ends = e;
    }
  }

  for (std::size_t n = 1; n <= max_nilpotency; ++n) {
    auto blocks = truncated_blocks(n);
    bool contained = true;
    for (const auto& b : blocks) {
      for (std::size_t i = 0; i < b.paths.size() && contained; ++i) {
        if (b.paths[i].size() != n) continue;
        Vector unit(b.paths.size(), 0);
        unit[i] = 1;
        contained = b.ideal.contains(unit);
      }
      if (!contained) break;
    }
    if (contained) {
      nilpotency_ = n;
      blocks_ = truncated_blocks(n - 1);
      return;
    }
  }
  throw InputError("relations do not bound the path algebra: no power J^N with N <= " +
                   std::to_string(max_nilpotency) + " lies in the relation ideal");
}

std::vector<PathBlock> BoundQuiver::truncated_blocks(std::size_t max_len) const {
  const std::size_t nv = vertices_.size();
  auto end_of = [&](std::size_t start, const Path& p) {
    return p.empty() ? start : arrows_[p.back()].target;
  };

  // All paths of length <= max_len out of each vertex.
  std::vector<std::vector<Path>> from(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    std::vector<Path> frontier{Path{}};
    from[v].push_back({});
    for (std::size_t len = 1; len <= max_len; ++len) {
      std::vector<Path> next;
      for (const auto& p : frontier) {
        const std::size_t at = end_of(v, p);
        for (std::size_t a = 0; a < arrows_.size(); ++a) {
          if (arrows_[a].source != at) continue;
          Path q = p;
          q.push_back(a);
          next.push_back(std::move(q));
        }
      }
      for (const auto& p : next) from[v].push_back(p);
      frontier = std::move(next);
    }
    std::sort(from[v].begin(), from[v].end(), path_less);
  }

  std::vector<PathBlock> blocks(nv * nv);
  for (std::size_t s = 0; s < nv; ++s) {
    for (std::size_t t = 0; t < nv; ++t) {
      auto& b = blocks[s * nv + t];
      for (const auto& p : from[s])
        if (end_of(s, p) == t) {
          b.index.emplace(p, b.paths.size());
          b.paths.push_back(p);
        }
      std::vector<Vector> gens;
      for (const auto& rel : relations_) {
        const std::size_t rs = arrows_[rel.front().path.front()].source;
        const std::size_t rt = arrows_[rel.front().path.back()].target;
        std::size_t min_len = rel.front().path.size();
        for (const auto& term : rel) min_len = std::min(min_len, term.path.size());
        for (const auto& pre : from[s]) {
          if (end_of(s, pre) != rs || pre.size() + min_len > max_len) continue;
          for (const auto& suf : from[rt]) {
            if (end_of(rt, suf) != t || pre.size() + suf.size() + min_len > max_len) continue;
            Vector g(b.paths.size(), 0);
            bool nonzero = false;
            for (const auto& term : rel) {
              Path full = pre;
              full.insert(full.end(), term.path.begin(), term.path.end());
              full.insert(full.end(), suf.begin(), suf.end());
              if (full.size() > max_len) continue;
              auto i = b.index.at(full);
              g[i] = field_.add(g[i], term.coeff);
              nonzero = nonzero || g[i] != 0;
            }
            if (nonzero) gens.push_back(std::move(g));
          }
        }
      }
      b.ideal = Subspace::span(field_, b.paths.size(), gens);
      std::vector<bool> pivot(b.paths.size(), false);
      for (auto p : b.ideal.pivots()) pivot[p] = true;
      for (std::size_t i = 0; i < b.paths.size(); ++i)
        if (!pivot[i]) b.basis.push_back(i);
    }
  }
  return blocks;
}

std::optional<std::size_t> BoundQuiver::vertex_index(const std::string& name) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> BoundQuiver::arrow_index(const std::string& name) const {
  for (std::size_t a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].name == name) return a;
  return std::nullopt;
}

std::vector<std::size_t> BoundQuiver::arrows_between(std::size_t from, std::size_t to) const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].source == from && arrows_[a].target == to) out.push_back(a);
  return out;
}

std::string BoundQuiver::path_name(const Path& p) const {
  if (p.empty()) return "e";
  std::string s;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) s += '.';
    s += p[k] < arrows_.size() ? arrows_[p[k]].name : "?";
  }
  return s;
}

}  // namespace virtmod::quivrep
