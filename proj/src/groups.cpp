#include "spinelab/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "spinelab/error.hpp"

namespace spinelab {

namespace {

std::string idx(int a) { return std::to_string(a); }

}  // namespace

bool FiniteGroup::is_abelian() const {
  for (int g = 0; g < order; ++g)
    for (int h = g + 1; h < order; ++h)
      if (table[g][h] != table[h][g]) return false;
  return true;
}

std::vector<int> FiniteGroup::center() const {
  std::vector<int> z;
  for (int g = 0; g < order; ++g) {
    bool central = true;
    for (int h = 0; h < order && central; ++h) central = table[g][h] == table[h][g];
    if (central) z.push_back(g);
  }
  return z;
}

bool group_axioms(const std::vector<std::vector<int>>& table) {
  try {
    build_group(table, "check");
    return true;
  } catch (const Error&) {
    return false;
  }
}

FiniteGroup build_group(const std::vector<std::vector<int>>& table, const std::string& name) {
  const int m = static_cast<int>(table.size());
  if (m == 0) fail_input("NotSquare", "empty table");
  for (int r = 0; r < m; ++r) {
    if (static_cast<int>(table[r].size()) != m)
      fail_input("NotSquare", "row " + idx(r) + " has " + idx(int(table[r].size())) + " entries");
    for (int c = 0; c < m; ++c)
      if (table[r][c] < 0 || table[r][c] >= m)
        fail_input("NotClosed", "entry [" + idx(r) + "][" + idx(c) + "] = " + idx(table[r][c]));
  }

  int e = -1;
  for (int x = 0; x < m && e < 0; ++x) {
    bool ok = true;
    for (int y = 0; y < m && ok; ++y) ok = table[x][y] == y && table[y][x] == y;
    if (ok) e = x;
  }
  if (e < 0) fail_input("NoIdentity", "no two-sided identity in table of order " + idx(m));

  std::vector<int> inv(m, -1);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y)
      if (table[x][y] == e && table[y][x] == e) {
        inv[x] = y;
        break;
      }
    if (inv[x] < 0) fail_input("NoInverse", "element " + idx(x) + " has no inverse");
  }

  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          fail_input("NotAssociative", "triple (" + idx(a) + "," + idx(b) + "," + idx(c) + ")");

  // Swap labels e and 0 so the identity is 0.
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[0], perm[e]);
  FiniteGroup g;
  g.order = m;
  g.name = name;
  g.table.assign(m, std::vector<int>(m));
  g.inverses.assign(m, 0);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) g.table[perm[a]][perm[b]] = perm[table[a][b]];
    g.inverses[perm[a]] = perm[inv[a]];
  }
  return g;
}

FiniteGroup cyclic(int k) {
  if (k < 1) fail_input("InvalidOrder", "cyclic order must be positive, got " + idx(k));
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) t[i][j] = (i + j) % k;
  return build_group(t, "C" + idx(k));
}

FiniteGroup symmetric(int k) {
  if (k < 2 || k > 4) fail_input("InvalidOrder", "symmetric degree must be in 2..4, got " + idx(k));
  std::vector<std::vector<int>> perms;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < int(perms.size()); ++i) index[perms[i]] = i;
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(k);
      for (int x = 0; x < k; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index[c];
    }
  return build_group(t, "S" + idx(k));
}

bool FactorSystem::operator==(const FactorSystem& o) const {
  if (factors.size() != o.factors.size()) return false;
  for (size_t i = 0; i < factors.size(); ++i)
    if (factors[i].table != o.factors[i].table) return false;
  return true;
}

FactorSystem make_system(std::vector<FiniteGroup> factors) {
  if (factors.size() < 2) fail_input("TooFewFactors", "need at least 2 factors");
  // Repeated names like C2,C2 are disambiguated by position.
  std::map<std::string, int> seen;
  for (auto& f : factors) {
    int c = seen[f.name]++;
    if (c > 0) f.name += "#" + idx(c + 1);
  }
  FactorSystem sys;
  sys.factors = std::move(factors);
  return sys;
}

FactorSystem parse_factor_spec(const std::string& spec) {
  std::vector<FiniteGroup> fs;
  size_t start = 0;
  while (start <= spec.size()) {
    size_t comma = spec.find(',', start);
    if (comma == std::string::npos) comma = spec.size();
    std::string tok = spec.substr(start, comma - start);
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.size() < 2 || (tok[0] != 'C' && tok[0] != 'S'))
      fail_input("ParseError", "bad factor token '" + tok + "'");
    int k = 0;
    try {
      size_t used = 0;
      k = std::stoi(tok.substr(1), &used);
      if (used != tok.size() - 1) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail_input("ParseError", "bad factor token '" + tok + "'");
    }
    fs.push_back(tok[0] == 'C' ? cyclic(k) : symmetric(k));
    start = comma + 1;
  }
  return make_system(std::move(fs));
}

}  // namespace spinelab
