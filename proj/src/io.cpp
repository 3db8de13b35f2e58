#include "flexi/io.hpp"

#include "flexi/rng.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace flexi {

namespace {

constexpr int kGraph6MaxN = 258047;

void ensure(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

} // namespace

Graph parse_graph6(const std::string& raw) {
  std::string s = raw;
  if (s.starts_with(">>graph6<<")) s = s.substr(10);
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  ensure(!s.empty(), "graph6: empty input");
  for (unsigned char ch : s)
    ensure(ch >= 63 && ch <= 126, "graph6: byte outside the printable range 63..126");

  std::size_t pos = 0;
  long long n;
  if (s[0] != '~') {
    n = s[0] - 63;
    pos = 1;
  } else {
    ensure(s.size() >= 4, "graph6: truncated extended header");
    ensure(s[1] != '~', "graph6: vertex counts above 258047 are not supported");
    n = 0;
    for (int i = 1; i <= 3; ++i) n = (n << 6) | (s[i] - 63);
    pos = 4;
    ensure(n <= kGraph6MaxN, "graph6: vertex count too large");
  }
  const long long bits = n * (n - 1) / 2;
  const long long bytes = (bits + 5) / 6;
  ensure(static_cast<long long>(s.size()) - static_cast<long long>(pos) == bytes,
         "graph6: edge bit block has the wrong length");

  std::vector<std::pair<int, int>> edges;
  long long bit = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      const int byte = s[pos + bit / 6] - 63;
      if ((byte >> (5 - bit % 6)) & 1) edges.emplace_back(i, j);
    }
  }
  // padding must be zero
  for (long long b = bits; b < bytes * 6; ++b) {
    const int byte = s[pos + b / 6] - 63;
    ensure(((byte >> (5 - b % 6)) & 1) == 0, "graph6: nonzero padding bits");
  }
  return build_graph(static_cast<int>(n), edges);
}

std::string to_graph6(const Graph& g) {
  ensure(g.n <= kGraph6MaxN, "graph6: vertex count too large");
  std::string out;
  if (g.n <= 62) {
    out.push_back(static_cast<char>(g.n + 63));
  } else {
    out.push_back('~');
    out.push_back(static_cast<char>(((g.n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((g.n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((g.n & 63) + 63));
  }
  const long long bits = static_cast<long long>(g.n) * (g.n - 1) / 2;
  std::string body((bits + 5) / 6, 0);
  long long bit = 0;
  for (int j = 1; j < g.n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      if (g.has_edge(i, j)) body[bit / 6] |= static_cast<char>(1 << (5 - bit % 6));
    }
  }
  for (char& ch : body) ch = static_cast<char>(ch + 63);
  return out + body;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

int parse_int(const std::string& token, const std::string& what) {
  std::size_t used = 0;
  int value;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected " + what + ", got '" + token + "'");
  }
  ensure(used == token.size(), "expected " + what + ", got '" + token + "'");
  return value;
}

// Strip comments, return nonempty lines.
std::vector<std::string> document_lines(const std::string& doc) {
  std::vector<std::string> lines;
  std::istringstream in(doc);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (tokenize(line).empty()) continue;
    lines.push_back(line);
  }
  return lines;
}

} // namespace

Embedding parse_embedding(const std::string& doc) {
  const auto lines = document_lines(doc);
  ensure(!lines.empty(), "embedding document: empty");
  auto header = tokenize(lines[0]);
  ensure(header.size() == 2 && header[0] == "V", "embedding document: first line must be 'V <n>'");
  const int n = parse_int(header[1], "vertex count");
  ensure(n >= 1, "embedding document: vertex count must be positive");

  std::vector<std::vector<int>> rotation(n);
  std::vector<char> seen(n, 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto tokens = tokenize(lines[i]);
    ensure(tokens.size() >= 2 && tokens[0] == "R",
           "embedding document: expected 'R <v>: <neighbors>'");
    std::string vt = tokens[1];
    ensure(!vt.empty() && vt.back() == ':', "embedding document: vertex must be followed by ':'");
    vt.pop_back();
    const int v = parse_int(vt, "vertex id");
    ensure(v >= 0 && v < n, "embedding document: vertex id out of range");
    ensure(!seen[v], "embedding document: duplicate rotation line for vertex " + std::to_string(v));
    seen[v] = 1;
    for (std::size_t t = 2; t < tokens.size(); ++t) {
      const int u = parse_int(tokens[t], "neighbor id");
      ensure(u >= 0 && u < n, "embedding document: neighbor id out of range");
      ensure(u != v, "embedding document: loop at vertex " + std::to_string(v));
      rotation[v].push_back(u);
    }
  }
  for (int v = 0; v < n; ++v)
    ensure(seen[v], "embedding document: missing rotation line for vertex " + std::to_string(v));

  // symmetry: u in R(v) must imply v in R(u); edges come from the rotations
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    for (int u : rotation[v]) {
      ensure(std::find(rotation[u].begin(), rotation[u].end(), v) != rotation[u].end(),
             "embedding document: edge " + std::to_string(v) + "-" + std::to_string(u) +
                 " is not symmetric");
      if (v < u) edges.emplace_back(v, u);
    }
  return make_embedding(build_graph(n, edges), std::move(rotation));
}

std::string serialize_embedding(const Embedding& emb) {
  std::string out = "V " + std::to_string(emb.graph.n) + "\n";
  for (int v = 0; v < emb.graph.n; ++v) {
    out += "R " + std::to_string(v) + ":";
    for (int u : emb.rotation[v]) out += " " + std::to_string(u);
    out += "\n";
  }
  return out;
}

long long parse_weight_micro(const std::string& text) {
  ensure(!text.empty(), "weight: empty");
  std::size_t pos = 0;
  ensure(text[0] != '-', "weight: must be nonnegative");
  if (text[0] == '+') pos = 1;
  std::string whole, frac;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
    whole.push_back(text[pos++]);
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      frac.push_back(text[pos++]);
  }
  ensure(pos == text.size(), "weight: malformed number '" + text + "'");
  ensure(!whole.empty() || !frac.empty(), "weight: malformed number '" + text + "'");
  ensure(frac.size() <= 6, "weight: at most six fractional digits are representable");
  ensure(whole.size() <= 12, "weight: integer part too large");
  long long value = 0;
  for (char ch : whole) value = value * 10 + (ch - '0');
  long long micro = value * 1'000'000;
  frac.resize(6, '0');
  long long f = 0;
  for (char ch : frac) f = f * 10 + (ch - '0');
  return micro + f;
}

std::string format_weight_micro(long long micro) {
  std::string out = std::to_string(micro / 1'000'000);
  long long rest = micro % 1'000'000;
  if (rest != 0) {
    std::string frac = std::to_string(rest);
    frac.insert(frac.begin(), 6 - frac.size(), '0');
    while (frac.back() == '0') frac.pop_back();
    out += "." + frac;
  }
  return out;
}

RequestData parse_requests(const std::string& doc, const Graph& g) {
  RequestData data;
  data.lists.lists.assign(g.n, {});
  std::vector<char> have_list(g.n, 0);
  struct PendingWeight {
    int v, c;
    long long micro;
  };
  std::vector<PendingWeight> pending;
  for (const auto& line : document_lines(doc)) {
    auto tokens = tokenize(line);
    if (tokens[0] == "L") {
      ensure(tokens.size() >= 3, "request document: list line needs at least one color");
      std::string vt = tokens[1];
      ensure(!vt.empty() && vt.back() == ':', "request document: vertex must be followed by ':'");
      vt.pop_back();
      const int v = parse_int(vt, "vertex id");
      ensure(v >= 0 && v < g.n, "request document: unknown vertex " + std::to_string(v));
      ensure(!have_list[v], "request document: duplicate list for vertex " + std::to_string(v));
      have_list[v] = 1;
      for (std::size_t t = 2; t < tokens.size(); ++t) {
        const int c = parse_int(tokens[t], "color");
        ensure(c >= 0, "request document: colors must be nonnegative");
        data.lists.lists[v].push_back(c);
      }
      auto& list = data.lists.lists[v];
      std::sort(list.begin(), list.end());
      ensure(std::adjacent_find(list.begin(), list.end()) == list.end(),
             "request document: duplicate color in a list");
    } else if (tokens[0] == "W") {
      ensure(tokens.size() == 4, "request document: weight line must be 'W <v> <c> <weight>'");
      const int v = parse_int(tokens[1], "vertex id");
      ensure(v >= 0 && v < g.n, "request document: unknown vertex " + std::to_string(v));
      const int c = parse_int(tokens[2], "color");
      pending.push_back({v, c, parse_weight_micro(tokens[3])});
    } else {
      throw std::invalid_argument("request document: unknown line '" + line + "'");
    }
  }
  for (int v = 0; v < g.n; ++v)
    ensure(have_list[v], "request document: missing list for vertex " + std::to_string(v));
  for (const auto& p : pending) {
    const auto& list = data.lists.lists[p.v];
    ensure(std::binary_search(list.begin(), list.end(), p.c),
           "request document: requested color " + std::to_string(p.c) +
               " is not on the list of vertex " + std::to_string(p.v));
    data.weights.weights[{p.v, p.c}] += p.micro;
  }
  return data;
}

std::string serialize_requests(const RequestData& data) {
  std::string out;
  for (std::size_t v = 0; v < data.lists.lists.size(); ++v) {
    out += "L " + std::to_string(v) + ":";
    for (int c : data.lists.lists[v]) out += " " + std::to_string(c);
    out += "\n";
  }
  for (const auto& [pair, micro] : data.weights.weights)
    out += "W " + std::to_string(pair.first) + " " + std::to_string(pair.second) + " " +
           format_weight_micro(micro) + "\n";
  return out;
}

Embedding generate_c4_free_planar(int n, std::uint64_t seed) {
  ensure(n >= 1, "generator: need at least one vertex");
  if (n == 1) return make_embedding(build_graph(1, {}), {{}});
  if (n == 2) return make_embedding(build_graph(2, {{0, 1}}), {{1}, {0}});

  SplitMix64 rng(seed);
  // random triangulation of the sphere by iterated face splits
  std::vector<std::array<int, 3>> faces{{0, 1, 2}, {0, 2, 1}};
  for (int v = 3; v < n; ++v) {
    const std::size_t pick = rng.below(faces.size());
    const auto [a, b, c] = faces[pick];
    faces[pick] = {a, b, v};
    faces.push_back({b, c, v});
    faces.push_back({c, a, v});
  }
  std::vector<std::vector<int>> walks;
  walks.reserve(faces.size());
  for (const auto& f : faces) walks.push_back({f[0], f[1], f[2]});
  Embedding emb = embedding_from_faces(n, walks);

  // repair: delete one random edge of each 4-cycle found; deletions strictly
  // shrink the edge set, and the remaining three cycle edges keep the
  // endpoints connected
  while (const auto cycle = find_four_cycle(emb.graph)) {
    const int k = static_cast<int>(rng.below(4));
    const int u = (*cycle)[k];
    const int v = (*cycle)[(k + 1) % 4];
    std::erase(emb.graph.adj[u], v);
    std::erase(emb.graph.adj[v], u);
    std::erase(emb.rotation[u], v);
    std::erase(emb.rotation[v], u);
  }
  // revalidate the rotation system and Euler count after surgery
  return make_embedding(std::move(emb.graph), std::move(emb.rotation));
}

} // namespace flexi
