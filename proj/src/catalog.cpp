#include "poset_pursuit/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <tuple>

#include "poset_pursuit/errors.hpp"

namespace pursuit {

namespace {

using Rel = std::vector<std::pair<std::string, std::string>>;

FinitePoset scorpion(bool with_three_prime) {
  std::vector<std::string> pts{"0", "1", "2", "3", "1'", "2'"};
  Rel rel{{"1", "0"}, {"2", "0"}, {"3", "0"}, {"1", "1'"}, {"2", "2'"}};
  if (with_three_prime) {
    pts.push_back("3'");
    rel.emplace_back("3", "3'");
  }
  return FinitePoset(pts, rel);
}

FinitePoset cone_v(int m) {
  std::vector<std::string> pts{"a"};
  Rel rel;
  for (int i = 0; i < m; ++i) {
    pts.push_back("c" + std::to_string(i));
    rel.emplace_back(pts.back(), "a");
  }
  return FinitePoset(pts, rel);
}

FinitePoset cone_op_w(int m) {
  std::vector<std::string> pts{"a"};
  Rel rel;
  for (int i = 0; i <= m; ++i) {
    pts.push_back("b" + std::to_string(i));
    rel.emplace_back("a", pts.back());
  }
  return FinitePoset(pts, rel);
}

FinitePoset fence(int l) {
  std::vector<std::string> pts;
  Rel rel;
  for (int i = 0; i <= l; ++i) pts.push_back("a" + std::to_string(i));
  for (int i = 0; i < l; ++i) {
    if (i % 2 == 0)
      rel.emplace_back(pts[i], pts[i + 1]);
    else
      rel.emplace_back(pts[i + 1], pts[i]);
  }
  return FinitePoset(pts, rel);
}

FinitePoset chain(int n) {
  std::vector<std::string> pts;
  Rel rel;
  for (int i = 0; i < n; ++i) pts.push_back("x" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) rel.emplace_back(pts[i], pts[i + 1]);
  return FinitePoset(pts, rel);
}

int parse_param(const std::string& s, int lo, int hi) {
  int v = std::stoi(s);
  if (v < lo || v > hi) throw PreconditionError("catalog parameter out of range: " + s);
  return v;
}

}  // namespace

FinitePoset catalog(std::string_view raw) {
  std::string name(raw);
  if (!name.empty() && name[0] == '@') name.erase(0, 1);
  bool op = false;
  if (name.size() > 2 && name.ends_with("op") && name != "Yoke") {
    op = true;
    name.resize(name.size() - 2);
  }
  FinitePoset x;
  static const std::regex family(R"((\w+)\((\d+)\))");
  std::smatch m;
  if (name == "S21") {
    x = scorpion(false);
  } else if (name == "S30") {
    x = scorpion(true);
  } else if (name == "Yoke" || name == "Y") {
    x = FinitePoset({"a", "b", "c", "d"}, {{"d", "c"}, {"c", "a"}, {"c", "b"}});
  } else if (name == "Pseudocircle") {
    x = FinitePoset({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
  } else if (name == "Fractal6") {
    x = FinitePoset({"a", "b", "c", "d", "e", "f"},
                    {{"e", "d"}, {"f", "d"}, {"e", "a"}, {"f", "c"}, {"d", "b"}});
  } else if (name == "FigE") {
    x = FinitePoset({"a", "b", "x", "y"}, {{"b", "a"}, {"a", "x"}, {"a", "y"}});
  } else if (std::regex_match(name, m, family)) {
    const std::string fam = m[1];
    if (fam == "ConeV")
      x = cone_v(parse_param(m[2], 0, 63));
    else if (fam == "ConeOpW")
      x = cone_op_w(parse_param(m[2], 0, 62));
    else if (fam == "Fence")
      x = fence(parse_param(m[2], 0, 63));
    else if (fam == "Chain")
      x = chain(parse_param(m[2], 1, 64));
    else
      throw PreconditionError("unknown catalog family '" + fam + "'");
  } else {
    throw PreconditionError("unknown catalog space '" + std::string(raw) + "'");
  }
  return op ? opposite(x) : x;
}

std::vector<std::string> catalog_sample_names() {
  return {"S21",       "S21op",     "S30",      "S30op",      "Yoke",     "Yokeop",
          "Pseudocircle", "Fractal6", "FigE",   "ConeV(2)",   "ConeV(3)", "ConeOpW(2)",
          "Fence(4)",  "Fence(5)",  "Chain(3)", "Chain(1)"};
}

std::string canonical_code(const FinitePoset& x) {
  const int n = x.size();
  using Key = std::tuple<int, int, int>;
  std::vector<Key> key(n);
  for (int i = 0; i < n; ++i) key[i] = {x.rank(i), x.down(i).size(), x.up(i).size()};
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return key[a] < key[b]; });
  // Blocks of equal invariant key may be permuted freely.
  std::vector<std::pair<int, int>> blocks;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && key[perm[j]] == key[perm[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  std::string best;
  auto encode = [&] {
    std::string code;
    for (int i = 0; i < n; ++i) {
      auto [r, d, u] = key[perm[i]];
      code += std::to_string(r) + "." + std::to_string(d) + "." + std::to_string(u) + ":";
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) code += x.leq(perm[i], perm[j]) ? '1' : '0';
    return code;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      std::string c = encode();
      if (best.empty() || c < best) best = c;
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(perm.begin() + lo, perm.begin() + hi);
    do {
      rec(b + 1);
    } while (std::next_permutation(perm.begin() + lo, perm.begin() + hi));
  };
  rec(0);
  return std::to_string(n) + "|" + best;
}

std::vector<FinitePoset> enumerate_posets(int n, int cap) {
  if (n < 0 || n > cap) throw PreconditionError("enumeration size exceeds cap");
  std::vector<std::vector<PointSet>> level{{}};  // down-set tables, 0 points
  for (int k = 1; k <= n; ++k) {
    std::map<std::string, std::vector<PointSet>> next;
    for (const auto& downs : level) {
      std::vector<std::string> names;
      for (int i = 0; i < k - 1; ++i) names.push_back("p" + std::to_string(i));
      FinitePoset base = FinitePoset::from_down_sets(names, downs);
      // New point k-1 is maximal; its strict down-set is any down-closed set.
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (k - 1)); ++bits) {
        PointSet s(bits);
        if (!base.is_open(s)) continue;
        auto d = downs;
        d.push_back(s | PointSet::single(k - 1));
        auto nm = names;
        nm.push_back("p" + std::to_string(k - 1));
        FinitePoset cand = FinitePoset::from_down_sets(nm, d);
        next.emplace(canonical_code(cand), d);
      }
    }
    level.clear();
    for (auto& [code, d] : next) level.push_back(std::move(d));
  }
  std::vector<FinitePoset> out;
  for (const auto& d : level) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    out.push_back(FinitePoset::from_down_sets(names, d));
  }
  return out;
}

}  // namespace pursuit
