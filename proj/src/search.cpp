#include "surfemb/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <climits>
#include <cstdlib>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

namespace surfemb {

SearchBudget SearchBudget::from_env() {
  return from_env(SearchBudget{});
}

SearchBudget SearchBudget::from_env(SearchBudget base) {
  if (const char* s = std::getenv("SURFEMB_MAX_NODES")) base.max_nodes = std::strtoull(s, nullptr, 10);
  if (const char* s = std::getenv("SURFEMB_TIME_LIMIT")) base.time_limit_seconds = std::strtod(s, nullptr);
  if (const char* s = std::getenv("SURFEMB_WORKERS")) base.workers = std::max(1, std::atoi(s));
  return base;
}

SearchBudget SearchBudget::unlimited() {
  SearchBudget b;
  b.max_nodes = 0;
  b.time_limit_seconds = 0;
  return b;
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::embeddable: return "embeddable";
    case Decision::not_embeddable: return "not-embeddable";
    case Decision::unknown: return "unknown";
  }
  return "?";
}

std::string to_string(PredicateVerdict v) {
  switch (v) {
    case PredicateVerdict::holds: return "holds";
    case PredicateVerdict::counterexample: return "counterexample";
    case PredicateVerdict::unknown: return "unknown";
  }
  return "?";
}

int euler_genus_lower_bound(const Graph& g) {
  int n = g.order();
  int m = static_cast<int>(g.size());
  if (m < 3) return 0;
  // eg >= 2 - n + m - floor(2m/3)
  return std::max(0, 2 - n + m - (2 * m) / 3);
}

namespace {

using Clock = std::chrono::steady_clock;

enum class LeafAction { keep_going, stop_subtree, stop_all };

// Shared, read-only description of the graph in the layout the engine uses.
struct Problem {
  int n = 0, m = 0, width = 0;
  std::vector<int> deg;
  std::vector<int> nbr;  // n*width
  std::vector<int> eid;  // n*width
  std::vector<std::array<int, 2>> ends;
  std::vector<std::array<int, 2>> endpos;
  std::vector<char> tree;
  int root = 0;
  bool signed_search = false;
  int max_excess = 0;
  const Graph* graph = nullptr;

  Problem(const Graph& g, bool signed_, int excess) : signed_search(signed_), max_excess(excess), graph(&g) {
    n = g.order();
    m = static_cast<int>(g.size());
    width = std::max(1, g.max_degree());
    deg.assign(n, 0);
    nbr.assign(static_cast<std::size_t>(n) * width, -1);
    eid.assign(static_cast<std::size_t>(n) * width, -1);
    ends.resize(m);
    endpos.resize(m);
    for (Vertex v = 0; v < n; ++v) {
      const auto& ns = g.neighbors(v);
      deg[v] = static_cast<int>(ns.size());
      for (int k = 0; k < deg[v]; ++k) {
        nbr[v * width + k] = ns[k];
        eid[v * width + k] = g.edge_id(v, ns[k]);
      }
    }
    for (int e = 0; e < m; ++e) {
      auto [a, b] = g.edges()[e];
      ends[e] = {a, b};
      endpos[e] = {local(a, b), local(b, a)};
    }
    for (Vertex v = 0; v < n; ++v)
      if (deg[v] > deg[root]) root = v;
    tree.assign(m, 0);
    std::vector<char> seen(n, 0);
    std::deque<Vertex> queue{root};
    seen[root] = 1;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (int k = 0; k < deg[v]; ++k) {
        Vertex w = nbr[v * width + k];
        if (!seen[w]) {
          seen[w] = 1;
          tree[eid[v * width + k]] = 1;
          queue.push_back(w);
        }
      }
    }
  }

  int local(Vertex v, Vertex w) const {
    for (int k = 0; k < deg[v]; ++k)
      if (nbr[v * width + k] == w) return k;
    return -1;
  }
};

struct Control {
  std::uint64_t max_nodes = 0;
  Clock::time_point deadline{};
  bool has_deadline = false;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop_all{false};
  std::atomic<bool> budget_hit{false};
  std::atomic<int> best_subtree{INT_MAX};
};

struct Leaf {
  int subtree = 0;
  int faces = 0;
  bool has_negative = false;
  std::function<RotationEmbedding()> build;
};

using LeafFn = std::function<LeafAction(const Leaf&)>;

// Depth-first construction of rotations (and signatures) driven by face
// tracing: the open face is extended one corner at a time, branching on the
// successor at that corner whenever it is not yet fixed. Each complete
// assignment is reached along exactly one path.
class Engine {
 public:
  Engine(const Problem& p, Control& ctl, const LeafFn& leaf, int subtree)
      : p_(p), ctl_(ctl), leaf_(leaf), subtree_(subtree) {
    succ_.assign(static_cast<std::size_t>(p.n) * p.width, -1);
    pred_.assign(static_cast<std::size_t>(p.n) * p.width, -1);
    sig_.assign(p.m, 0);
    for (int e = 0; e < p.m; ++e)
      if (!p.signed_search || p.tree[e]) sig_[e] = 1;
    used_.assign(2 * static_cast<std::size_t>(p.m), 0);
    symmetric_ = p.deg[p.root] >= 3;
  }

  // Explores the subtree below the forced prefix. Returns false when stopped by the budget.
  bool run(const std::vector<int>& prefix) {
    prefix_ = prefix;
    dfs(0);
    flush_nodes();
    return !budget_stopped_;
  }

  void collect(int split, std::vector<std::vector<int>>& out) {
    collecting_ = true;
    split_ = split;
    out_ = &out;
    dfs(0);
    flush_nodes();
  }

 private:
  struct Walker {
    int v = 0, k = 0, dir = 1;
    int sv = 0, sk = 0, sdir = 1;
    int len = 0;
    int faces = 0;
    int excess = 0;
    int used_sides = 0;
    int cursor = 0;
    bool open = false;
  };

  int& succ(int v, int k) { return succ_[v * p_.width + k]; }
  int& pred(int v, int k) { return pred_[v * p_.width + k]; }

  void set(int& slot, int value) {
    trail_.emplace_back(&slot, slot);
    slot = value;
  }
  void set(char& slot, char value) {
    ctrail_.emplace_back(&slot, slot);
    slot = value;
  }
  std::pair<std::size_t, std::size_t> mark() const { return {trail_.size(), ctrail_.size()}; }
  void undo(std::pair<std::size_t, std::size_t> m) {
    while (trail_.size() > m.first) {
      *trail_.back().first = trail_.back().second;
      trail_.pop_back();
    }
    while (ctrail_.size() > m.second) {
      *ctrail_.back().first = ctrail_.back().second;
      ctrail_.pop_back();
    }
  }

  bool stopped() const {
    return local_stop_ || ctl_.stop_all.load(std::memory_order_relaxed) ||
           subtree_ > ctl_.best_subtree.load(std::memory_order_relaxed);
  }

  void count_node() {
    if (++pending_ < 1024) return;
    flush_nodes();
    if (ctl_.max_nodes && ctl_.nodes.load(std::memory_order_relaxed) > ctl_.max_nodes) budget_stop();
    if (ctl_.has_deadline && Clock::now() > ctl_.deadline) budget_stop();
  }
  void flush_nodes() {
    ctl_.nodes.fetch_add(pending_, std::memory_order_relaxed);
    pending_ = 0;
  }
  void budget_stop() {
    budget_stopped_ = true;
    ctl_.budget_hit = true;
    ctl_.stop_all = true;
  }

  // Side 0 of edge (a,b), a<b, is traversed a->b with local orientation +1.
  int side_index(int e, int from, int dir) const {
    if (from == p_.ends[e][0]) return 2 * e + (dir > 0 ? 0 : 1);
    return 2 * e + (-dir * sig_[e] > 0 ? 0 : 1);
  }

  bool forced(int depth, int alt) const {
    return depth >= static_cast<int>(prefix_.size()) || prefix_[depth] == alt;
  }

  bool record_split(int depth) {
    if (!collecting_ || depth < split_) return false;
    out_->push_back(path_);
    return true;
  }

  bool excess_ok(int len_lower_bound) const {
    return w_.excess + std::max(0, len_lower_bound - 3) <= p_.max_excess;
  }

  // Would setting the corner (arrival edge kw at w, orientation d) -> f leave
  // the rotation at w a partial permutation without premature cycles?
  bool legal(int w, int kw, int f, int d) {
    int dw = p_.deg[w];
    int from, to;
    if (d > 0) {
      if (pred(w, f) >= 0) return false;
      from = kw;
      to = f;
    } else {
      if (succ(w, f) >= 0) return false;
      from = f;
      to = kw;
    }
    // Link from -> to. `to` starts a chain; follow it.
    int x = to, len = 1;
    while (succ(w, x) >= 0) {
      x = succ(w, x);
      ++len;
      if (len > dw) return false;
    }
    if (x == from && len != dw) return false;
    if (symmetric_ && w == p_.root) {
      int s0 = succ(w, 0), p0 = pred(w, 0);
      if (from == 0) s0 = to;
      if (to == 0) p0 = from;
      if (s0 >= 0 && p0 >= 0 && s0 > p0) return false;
    }
    return true;
  }

  void link(int w, int kw, int f, int d) {
    if (d > 0) {
      set(succ(w, kw), f);
      set(pred(w, f), kw);
    } else {
      set(succ(w, f), kw);
      set(pred(w, kw), f);
    }
  }

  void leaf(int depth) {
    if (collecting_) {
      (void)depth;
      out_->push_back(path_);
      return;
    }
    Leaf info;
    info.subtree = subtree_;
    info.faces = w_.faces;
    info.has_negative = std::find(sig_.begin(), sig_.end(), -1) != sig_.end();
    info.build = [this] { return build_embedding(); };
    LeafAction a = leaf_(info);
    if (a == LeafAction::stop_subtree) local_stop_ = true;
    if (a == LeafAction::stop_all) {
      local_stop_ = true;
      ctl_.stop_all = true;
    }
  }

  RotationEmbedding build_embedding() {
    std::vector<std::vector<Vertex>> rot(p_.n);
    for (Vertex v = 0; v < p_.n; ++v) {
      int k = 0;
      for (int i = 0; i < p_.deg[v]; ++i) {
        rot[v].push_back(p_.nbr[v * p_.width + k]);
        k = succ(v, k);
      }
    }
    return RotationEmbedding(*p_.graph, std::move(rot), sig_);
  }

  void descend(int depth, int alt) {
    path_.push_back(alt);
    dfs(depth + 1);
    path_.pop_back();
  }

  void dfs(int depth) {
    if (stopped()) return;
    count_node();
    for (;;) {
      if (!w_.open) {
        if (w_.used_sides == 2 * p_.m) {
          leaf(depth);
          return;
        }
        while (used_[w_.cursor]) ++w_.cursor;
        int e = w_.cursor >> 1;
        w_.sv = p_.ends[e][0];
        w_.sk = p_.endpos[e][0];
        w_.sdir = (w_.cursor & 1) ? -1 : 1;
        w_.v = w_.sv;
        w_.k = w_.sk;
        w_.dir = w_.sdir;
        w_.len = 0;
        w_.open = true;
      }
      int e = p_.eid[w_.v * p_.width + w_.k];
      if (sig_[e] == 0) {
        if (record_split(depth)) return;
        for (int alt = 0; alt < 2; ++alt) {
          if (!forced(depth, alt)) continue;
          auto m = mark();
          Walker saved = w_;
          set(sig_[e], alt == 0 ? 1 : -1);
          descend(depth, alt);
          undo(m);
          w_ = saved;
          if (stopped()) return;
        }
        return;
      }
      int side = side_index(e, w_.v, w_.dir);
      if (used_[side]) return;
      set(used_[side], 1);
      ++w_.used_sides;
      ++w_.len;
      bool at_a = w_.v == p_.ends[e][0];
      int w = p_.ends[e][at_a ? 1 : 0];
      int kw = p_.endpos[e][at_a ? 1 : 0];
      int d = w_.dir * sig_[e];
      int nk = d > 0 ? succ(w, kw) : pred(w, kw);
      if (nk >= 0) {
        if (w == w_.sv && nk == w_.sk && d == w_.sdir) {
          ++w_.faces;
          w_.excess += w_.len - 3;
          w_.open = false;
          if (w_.excess > p_.max_excess) return;
          continue;
        }
        int z = p_.nbr[w * p_.width + nk];
        if (!excess_ok(z == w_.sv ? w_.len + 1 : w_.len + 2)) return;
        w_.v = w;
        w_.k = nk;
        w_.dir = d;
        continue;
      }

      // Branch on the successor at this corner. Closing move first, then
      // moves heading back to the face's start vertex, then the rest.
      int cands[64];
      int nc = 0;
      int dw = p_.deg[w];
      bool can_close = w == w_.sv && d == w_.sdir;
      if (can_close) cands[nc++] = w_.sk;
      for (int pass = 0; pass < 2; ++pass)
        for (int f = 0; f < dw; ++f) {
          if (can_close && f == w_.sk) continue;
          bool toward_start = p_.nbr[w * p_.width + f] == w_.sv;
          if ((pass == 0) == toward_start) cands[nc++] = f;
        }
      if (record_split(depth)) return;
      for (int alt = 0; alt < nc; ++alt) {
        if (!forced(depth, alt)) continue;
        int f = cands[alt];
        if (!legal(w, kw, f, d)) continue;
        bool closes = can_close && f == w_.sk;
        if (!closes) {
          int z = p_.nbr[w * p_.width + f];
          if (!excess_ok(z == w_.sv ? w_.len + 1 : w_.len + 2)) continue;
          int fe = p_.eid[w * p_.width + f];
          if (sig_[fe] != 0 && used_[side_index(fe, w, d)]) continue;
        }
        auto m = mark();
        Walker saved = w_;
        link(w, kw, f, d);
        if (closes) {
          ++w_.faces;
          w_.excess += w_.len - 3;
          w_.open = false;
        } else {
          w_.v = w;
          w_.k = f;
          w_.dir = d;
        }
        if (w_.excess <= p_.max_excess) descend(depth, alt);
        undo(m);
        w_ = saved;
        if (stopped()) return;
      }
      return;
    }
  }

  const Problem& p_;
  Control& ctl_;
  const LeafFn& leaf_;
  int subtree_;

  std::vector<int> succ_, pred_, sig_;
  std::vector<char> used_;
  std::vector<std::pair<int*, int>> trail_;
  std::vector<std::pair<char*, char>> ctrail_;
  Walker w_;
  bool symmetric_ = false;

  std::vector<int> prefix_;
  std::vector<int> path_;
  bool collecting_ = false;
  int split_ = 0;
  std::vector<std::vector<int>>* out_ = nullptr;

  std::uint64_t pending_ = 0;
  bool local_stop_ = false;
  bool budget_stopped_ = false;
};

void init_control(Control& ctl, const SearchBudget& b, Clock::time_point start, std::uint64_t nodes_spent) {
  if (b.max_nodes) ctl.max_nodes = b.max_nodes > nodes_spent ? b.max_nodes - nodes_spent : 1;
  if (b.time_limit_seconds > 0) {
    ctl.has_deadline = true;
    ctl.deadline =
        start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(b.time_limit_seconds));
  }
}

// Runs the search, splitting it into prefix-defined subtrees when more than
// one worker is requested. Subtree indices follow the sequential DFS order.
void drive(const Problem& p, const SearchBudget& b, Control& ctl, const LeafFn& leaf, bool parallel) {
  if (!parallel || b.workers <= 1) {
    Engine eng(p, ctl, leaf, 0);
    eng.run({});
    return;
  }
  std::vector<std::vector<int>> prefixes;
  {
    Engine splitter(p, ctl, leaf, 0);
    splitter.collect(std::max(1, b.split_depth), prefixes);
  }
  if (ctl.stop_all) return;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= prefixes.size()) return;
      if (ctl.stop_all || static_cast<int>(i) > ctl.best_subtree) continue;
      Engine eng(p, ctl, leaf, static_cast<int>(i));
      eng.run(prefixes[i]);
    }
  };
  std::vector<std::thread> pool;
  int threads = std::min<int>(b.workers, static_cast<int>(std::max<std::size_t>(1, prefixes.size())));
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

// Room for face lengths above 3 when the Euler genus may be at most eg.
int max_excess_for(const Graph& g, int eg) {
  int n = g.order(), m = static_cast<int>(g.size());
  int min_faces = 2 - n + m - eg;
  return 2 * m - 3 * min_faces;
}

RotationEmbedding trivial_embedding(const Graph& g) {
  std::vector<std::vector<Vertex>> rot(g.order());
  for (Vertex v = 0; v < g.order(); ++v) rot[v] = g.neighbors(v);
  return RotationEmbedding(g, std::move(rot));
}

void require_connected(const Graph& g) {
  if (g.order() < 1) throw SearchError("search needs at least one vertex");
  if (!g.connected()) throw SearchError("search needs a connected graph");
}

struct FindResult {
  std::optional<RotationEmbedding> witness;
  bool complete = false;
  bool pruned_by_count = false;
  std::uint64_t nodes = 0;
  std::uint64_t accepted_surface = 0;
};

using LeafFilter = std::function<bool(const Leaf&)>;

// First embedding (in DFS order) with Euler genus <= eg passing `accept`.
FindResult find_embedding(const Graph& g, bool signed_search, int eg, const LeafFilter& accept, const SearchBudget& b,
                          Clock::time_point start, std::uint64_t nodes_spent) {
  FindResult out;
  int excess = max_excess_for(g, eg);
  if (excess < 0) {
    out.complete = true;
    out.pruned_by_count = true;
    return out;
  }
  Problem p(g, signed_search, excess);
  Control ctl;
  init_control(ctl, b, start, nodes_spent);
  std::mutex mu;
  std::map<int, RotationEmbedding> found;
  LeafFn leaf = [&](const Leaf& l) {
    if (!accept(l)) return LeafAction::keep_going;
    RotationEmbedding emb = l.build();
    std::lock_guard lock(mu);
    found.emplace(l.subtree, std::move(emb));
    int cur = ctl.best_subtree.load();
    while (l.subtree < cur && !ctl.best_subtree.compare_exchange_weak(cur, l.subtree)) {
    }
    return LeafAction::stop_subtree;
  };
  drive(p, b, ctl, leaf, true);
  out.nodes = ctl.nodes;
  if (!found.empty()) {
    out.witness = found.begin()->second;
    out.complete = true;
  } else {
    out.complete = !ctl.budget_hit;
  }
  return out;
}

std::uint64_t remaining_nodes(const SearchBudget& b, std::uint64_t spent) {
  if (!b.max_nodes) return 0;
  return b.max_nodes > spent ? b.max_nodes - spent : 1;
}

bool exhausted(const SearchBudget& b, Clock::time_point start, std::uint64_t spent) {
  if (b.max_nodes && spent >= b.max_nodes) return true;
  if (b.time_limit_seconds > 0 &&
      std::chrono::duration<double>(Clock::now() - start).count() >= b.time_limit_seconds)
    return true;
  return false;
}

void check_witness(const RotationEmbedding& w, SurfaceSpec s) {
  SurfaceSpec got = surface_of(w);
  bool ok = s.orientable ? (got.orientable && got.euler_genus() <= s.euler_genus())
                         : (got.orientable ? got.euler_genus() <= s.genus - 1 : got.genus <= s.genus);
  if (!ok) throw SearchError("internal error: witness lies on " + got.name() + ", not within " + s.name());
}

// Twisting an edge whose two sides lie on different faces merges those faces:
// the result is nonorientable with Euler genus one higher. Trees have no such
// edge and are returned unchanged.
RotationEmbedding add_crosscap(const RotationEmbedding& emb) {
  std::size_t faces = trace_faces(emb).size();
  for (std::size_t e = 0; e < emb.graph().size(); ++e) {
    std::vector<int> sig = emb.signature();
    sig[e] = -sig[e];
    RotationEmbedding twisted(emb.graph(), emb.rotation(), sig);
    if (trace_faces(twisted).size() + 1 == faces) return twisted;
  }
  return emb;
}

SearchOutcome embeds_on_at(const Graph& g, SurfaceSpec s, const SearchBudget& b, Clock::time_point start) {
  require_connected(g);
  if (s.genus < 0 || (!s.orientable && s.genus < 1)) throw SearchError("invalid surface " + s.name());
  SearchOutcome out;
  if (g.size() <= 1) {
    out.decision = Decision::embeddable;
    out.witness = trivial_embedding(g);
    return out;
  }
  if (g.max_degree() > 64) throw SearchError("maximum degree above 64 is not supported");
  std::uint64_t spent = 0;
  bool all_by_count = true;
  auto any = [](const Leaf&) { return true; };
  auto conclude = [&](const FindResult& r) {
    spent += r.nodes;
    all_by_count = all_by_count && r.pruned_by_count;
    if (r.witness) {
      check_witness(*r.witness, s);
      out.decision = Decision::embeddable;
      out.witness = s.orientable || !is_orientable(*r.witness) ? *r.witness : add_crosscap(*r.witness);
      check_witness(*out.witness, s);
      return true;
    }
    if (!r.complete) {
      out.decision = Decision::unknown;
      return true;
    }
    return false;
  };
  bool done = false;
  if (s.orientable) {
    done = conclude(find_embedding(g, false, 2 * s.genus, any, b, start, spent));
  } else {
    done = conclude(find_embedding(g, false, s.genus - 1, any, b, start, spent));
    if (!done) {
      if (exhausted(b, start, spent)) {
        out.decision = Decision::unknown;
        done = true;
      } else {
        auto nonorientable = [](const Leaf& l) { return l.has_negative; };
        done = conclude(find_embedding(g, true, s.genus, nonorientable, b, start, spent));
      }
    }
  }
  if (!done) {
    out.decision = Decision::not_embeddable;
    out.proof = all_by_count ? "edge-count bound" : "exhausted search";
  }
  out.nodes = spent;
  return out;
}

int cycle_rank(const Graph& g) {
  return static_cast<int>(g.size()) - g.order() + 1;
}

}  // namespace

SearchOutcome embeds_on(const Graph& g, SurfaceSpec s, const SearchBudget& budget) {
  return embeds_on_at(g, s, budget, Clock::now());
}

GenusResult min_orientable_genus(const Graph& g, const SearchBudget& budget) {
  require_connected(g);
  auto start = Clock::now();
  GenusResult r;
  int lb = euler_genus_lower_bound(g);
  r.lower = (lb + 1) / 2;
  r.upper = std::max(0, cycle_rank(g) / 2);
  for (int h = r.lower; h <= r.upper; ++h) {
    SearchBudget b = budget;
    b.max_nodes = remaining_nodes(budget, r.nodes);
    SearchOutcome o = embeds_on_at(g, {true, h}, b, start);
    r.nodes += o.nodes;
    if (o.decision == Decision::embeddable) {
      r.exact = true;
      r.genus = r.lower = r.upper = h;
      r.witness = o.witness;
      return r;
    }
    if (o.decision == Decision::unknown) return r;
    r.lower = h + 1;
  }
  throw SearchError("internal error: no orientable embedding up to the cycle-rank bound");
}

GenusResult min_nonorientable_genus(const Graph& g, const SearchBudget& budget) {
  require_connected(g);
  auto start = Clock::now();
  GenusResult r;
  r.lower = std::max(1, euler_genus_lower_bound(g));
  r.upper = std::max(1, cycle_rank(g));
  for (int k = r.lower; k <= r.upper; ++k) {
    SearchBudget b = budget;
    b.max_nodes = remaining_nodes(budget, r.nodes);
    SearchOutcome o = embeds_on_at(g, {false, k}, b, start);
    r.nodes += o.nodes;
    if (o.decision == Decision::embeddable) {
      r.exact = true;
      r.genus = r.lower = r.upper = k;
      r.witness = o.witness;
      return r;
    }
    if (o.decision == Decision::unknown) return r;
    r.lower = k + 1;
  }
  throw SearchError("internal error: no embedding up to the cycle-rank bound");
}

GenusResult min_euler_genus(const Graph& g, const SearchBudget& budget) {
  require_connected(g);
  auto start = Clock::now();
  GenusResult r;
  r.lower = euler_genus_lower_bound(g);
  r.upper = std::max(0, cycle_rank(g));
  if (g.size() <= 1) {
    r.exact = true;
    r.genus = r.lower = r.upper = 0;
    r.witness = trivial_embedding(g);
    return r;
  }
  if (g.max_degree() > 64) throw SearchError("maximum degree above 64 is not supported");
  auto any = [](const Leaf&) { return true; };
  for (int t = r.lower; t <= r.upper; ++t) {
    FindResult f = find_embedding(g, true, t, any, budget, start, r.nodes);
    r.nodes += f.nodes;
    if (f.witness) {
      if (euler_genus(*f.witness) != t) throw SearchError("internal error: witness genus mismatch");
      r.exact = true;
      r.genus = r.lower = r.upper = t;
      r.witness = f.witness;
      return r;
    }
    if (!f.complete) return r;
    r.lower = t + 1;
  }
  throw SearchError("internal error: no embedding up to the cycle-rank bound");
}

GenusResult min_euler_genus_by_components(const Graph& g, const SearchBudget& budget) {
  GenusResult total;
  total.exact = true;
  for (const auto& comp : connected_components(g)) {
    GenusResult r = min_euler_genus(g.induced(comp), budget);
    total.nodes += r.nodes;
    total.lower += r.lower;
    total.upper += r.upper;
    total.exact = total.exact && r.exact;
  }
  if (total.exact) total.genus = total.lower;
  return total;
}

namespace {

bool on_surface(const Leaf& l, int n, int m, SurfaceSpec s) {
  int eg = 2 - n + m - l.faces;
  if (eg != s.euler_genus()) return false;
  return s.orientable ? !l.has_negative : l.has_negative;
}

}  // namespace

EnumerationResult enumerate_embeddings(const Graph& g, SurfaceSpec s, const EmbeddingVisitor& visitor,
                                       const SearchBudget& budget) {
  require_connected(g);
  EnumerationResult r;
  if (g.size() <= 1) {
    r.complete = true;
    if (s == SurfaceSpec::sphere()) {
      ++r.visited;
      if (!visitor(trivial_embedding(g))) {
        r.stopped_by_visitor = true;
        r.complete = false;
      }
    }
    return r;
  }
  if (g.max_degree() > 64) throw SearchError("maximum degree above 64 is not supported");
  int excess = max_excess_for(g, s.euler_genus());
  if (excess < 0) {
    r.complete = true;
    return r;
  }
  int n = g.order(), m = static_cast<int>(g.size());
  Problem p(g, !s.orientable, excess);
  Control ctl;
  init_control(ctl, budget, Clock::now(), 0);
  LeafFn leaf = [&](const Leaf& l) {
    if (!on_surface(l, n, m, s)) return LeafAction::keep_going;
    ++r.visited;
    if (!visitor(l.build())) {
      r.stopped_by_visitor = true;
      return LeafAction::stop_all;
    }
    return LeafAction::keep_going;
  };
  drive(p, budget, ctl, leaf, false);
  r.nodes = ctl.nodes;
  r.complete = !ctl.budget_hit && !r.stopped_by_visitor;
  return r;
}

PredicateOutcome all_embeddings_satisfy(const Graph& g, SurfaceSpec s,
                                        const std::function<bool(const RotationEmbedding&)>& predicate,
                                        const SearchBudget& budget) {
  require_connected(g);
  PredicateOutcome out;
  if (g.size() <= 1) {
    out.verdict = PredicateVerdict::holds;
    if (s == SurfaceSpec::sphere()) {
      out.visited = 1;
      RotationEmbedding t = trivial_embedding(g);
      if (!predicate(t)) {
        out.verdict = PredicateVerdict::counterexample;
        out.counterexample = t;
      }
    }
    return out;
  }
  int n = g.order(), m = static_cast<int>(g.size());
  std::atomic<std::uint64_t> visited{0};
  LeafFilter violates = [&](const Leaf& l) {
    if (!on_surface(l, n, m, s)) return false;
    ++visited;
    RotationEmbedding emb = l.build();
    return !predicate(emb);
  };
  FindResult f = find_embedding(g, !s.orientable, s.euler_genus(), violates, budget, Clock::now(), 0);
  out.visited = visited;
  if (f.witness) {
    out.verdict = PredicateVerdict::counterexample;
    out.counterexample = f.witness;
  } else {
    out.verdict = f.complete ? PredicateVerdict::holds : PredicateVerdict::unknown;
  }
  return out;
}

}  // namespace surfemb
