#include <algorithm>

#include "augcat/errors.hpp"
#include "augcat/presheaf.hpp"

namespace augcat {

namespace {

class Search {
 public:
  Search(const Presheaf& X, const Presheaf& Y, const HomSearchOptions& opts,
         const std::function<bool(const Components&)>& visit)
      : X_(X), Y_(Y), C_(X.cat()), opts_(opts), visit_(visit) {
    cap_ = opts.cap >= 0 ? opts.cap : std::min(X.cap(), Y.cap());
    if (cap_ > X.cap() || cap_ > Y.cap()) throw TruncationError("map search above an available degree");
    val_.resize(C_.object_count());
    for (ObjId a = 0; a < C_.object_count(); ++a)
      if (C_.degree(a) <= cap_) val_[a].assign(X.size(a), -1);
    for (ObjId a = 0; a < C_.object_count(); ++a) {
      if (C_.degree(a) > cap_) continue;
      for (MorId u : C_.generators_into(a))
        if (C_.degree(C_.dom(u)) <= cap_) into_[a].push_back(C_.generator_index(u));
    }
    choose_generators();
    buckets_.resize(C_.generators().size());
  }

  std::uint64_t run() {
    if (opts_.fixed) {
      for (ObjId a = 0; a < C_.object_count(); ++a) {
        if (C_.degree(a) > cap_ || a >= static_cast<int>(opts_.fixed->size())) continue;
        const auto& fa = (*opts_.fixed)[a];
        for (int x = 0; x < static_cast<int>(fa.size()) && x < X_.size(a); ++x)
          if (fa[x] >= 0 && !assign(a, x, fa[x])) return 0;
      }
    }
    recurse(0);
    return found_;
  }

 private:
  void choose_generators() {
    std::vector<std::vector<char>> covered(C_.object_count());
    for (ObjId a = 0; a < C_.object_count(); ++a)
      if (C_.degree(a) <= cap_) covered[a].assign(X_.size(a), 0);
    const auto& order = C_.objects_by_degree();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const ObjId a = *it;
      if (C_.degree(a) > cap_) continue;
      for (int x = 0; x < X_.size(a); ++x) {
        if (covered[a][x]) continue;
        gens_.push_back({a, x});
        std::vector<std::pair<ObjId, int>> stack{{a, x}};
        covered[a][x] = 1;
        while (!stack.empty()) {
          auto [b, y] = stack.back();
          stack.pop_back();
          for (int gi : into_[b]) {
            const ObjId d = C_.dom(C_.generators()[gi]);
            const int z = X_.act_gen(gi, y);
            if (!covered[d][z]) {
              covered[d][z] = 1;
              stack.push_back({d, z});
            }
          }
        }
      }
    }
  }

  bool assign(ObjId a, int x, int y) {
    work_.clear();
    work_.push_back({a, x, y});
    while (!work_.empty()) {
      auto [b, u, v] = work_.back();
      work_.pop_back();
      int& slot = val_[b][u];
      if (slot == v) continue;
      if (slot >= 0) return false;
      if (opts_.allow && !opts_.allow(b, u, v)) return false;
      slot = v;
      trail_.push_back({b, u});
      for (int gi : into_[b]) {
        const ObjId d = C_.dom(C_.generators()[gi]);
        work_.push_back({d, X_.act_gen(gi, u), Y_.act_gen(gi, v)});
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [b, u] = trail_.back();
      trail_.pop_back();
      val_[b][u] = -1;
    }
  }

  // Returns false to stop the search.
  bool recurse(std::size_t i) {
    if (i == gens_.size()) {
      ++found_;
      if (!visit_(val_)) return false;
      return found_ < opts_.limit;
    }
    auto [a, x] = gens_[i];
    if (val_[a][x] >= 0) return recurse(i + 1);
    // Only values agreeing with an already assigned face can succeed; take
    // the smallest such candidate list.
    const std::vector<int>* cands = nullptr;
    for (int gi : into_[a]) {
      const ObjId d = C_.dom(C_.generators()[gi]);
      const int w = val_[d][X_.act_gen(gi, x)];
      if (w < 0) continue;
      const auto& b = bucket(gi, w);
      if (!cands || b.size() < cands->size()) cands = &b;
    }
    const int n = cands ? static_cast<int>(cands->size()) : Y_.size(a);
    for (int k = 0; k < n; ++k) {
      const int y = cands ? (*cands)[k] : k;
      if (++states_ > opts_.max_states)
        throw EnumerationLimit("map search exceeded " + std::to_string(opts_.max_states) + " states", states_);
      const std::size_t mark = trail_.size();
      if (assign(a, x, y) && !recurse(i + 1)) return false;
      undo(mark);
    }
    return true;
  }

  // Elements of Y at the codomain of generator gi whose face along gi is w.
  const std::vector<int>& bucket(int gi, int w) {
    auto& table = buckets_[gi];
    if (table.empty()) {
      const MorId u = C_.generators()[gi];
      table.resize(Y_.size(C_.dom(u)));
      for (int y = 0; y < Y_.size(C_.cod(u)); ++y) table[Y_.act_gen(gi, y)].push_back(y);
    }
    return table[w];
  }

  struct Item {
    ObjId b;
    int u;
    int v;
  };

  const Presheaf& X_;
  const Presheaf& Y_;
  const FiniteCategory& C_;
  const HomSearchOptions& opts_;
  const std::function<bool(const Components&)>& visit_;
  int cap_ = 0;
  Components val_;
  std::unordered_map<ObjId, std::vector<int>> into_;
  std::vector<std::pair<ObjId, int>> gens_;
  std::vector<Item> work_;
  std::vector<std::vector<std::vector<int>>> buckets_;
  std::vector<std::pair<ObjId, int>> trail_;
  std::uint64_t states_ = 0;
  std::uint64_t found_ = 0;
};

}  // namespace

std::uint64_t hom_search(const Presheaf& X, const Presheaf& Y, const HomSearchOptions& opts,
                         const std::function<bool(const Components&)>& visit) {
  if (X.shape_ptr()->cat != Y.shape_ptr()->cat) throw ArgumentError("presheaves live on different shapes");
  Search s(X, Y, opts, visit);
  return s.run();
}

std::vector<PresheafMap> hom_enumerate(const PresheafPtr& X, const PresheafPtr& Y, const HomSearchOptions& opts) {
  std::vector<PresheafMap> out;
  hom_search(*X, *Y, opts, [&](const Components& c) {
    out.push_back({X, Y, c});
    return true;
  });
  return out;
}

std::uint64_t hom_count(const Presheaf& X, const Presheaf& Y, const HomSearchOptions& opts) {
  return hom_search(X, Y, opts, [](const Components&) { return true; });
}

std::optional<PresheafMap> find_map(const PresheafPtr& X, const PresheafPtr& Y, const HomSearchOptions& opts) {
  std::optional<PresheafMap> out;
  hom_search(*X, *Y, opts, [&](const Components& c) {
    out = PresheafMap{X, Y, c};
    return false;
  });
  return out;
}

}  // namespace augcat
