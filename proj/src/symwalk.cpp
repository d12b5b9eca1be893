#include "covertower/symwalk.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "covertower/errors.hpp"

namespace covertower {

BigInt walk_length(const Tower& t, const SymWalk& w) {
  BigInt len = 0;
  for (const Token& tok : w.tokens) len += t.segment_length(w.level, tok.sym) * tok.rep;
  return len;
}

SymWalk canonical(SymWalk w) {
  std::vector<Token> merged;
  for (Token& tok : w.tokens) {
    if (tok.rep == 0) continue;
    if (tok.rep < 0) throw std::invalid_argument("canonical: negative repetition");
    if (!merged.empty() && merged.back().sym == tok.sym)
      merged.back().rep += tok.rep;
    else
      merged.push_back(std::move(tok));
  }
  w.tokens = std::move(merged);
  return w;
}

SymWalk single_circuit(int level, int i, BigInt rep) {
  if (i < 1 || i > level) throw std::out_of_range("single_circuit: bad circuit index");
  return SymWalk{level, {Token{i, std::move(rep)}}};
}

SymWalk loop_walk(int level, BigInt rep) { return SymWalk{level, {Token{kLoopSym, std::move(rep)}}}; }

SymWalk project_one(const Tower& t, const SymWalk& w, std::int64_t run_limit) {
  if (w.level < 1) throw std::out_of_range("project_one: already at level 0");
  SymWalk out;
  out.level = w.level - 1;
  auto append = [&](int sym, const BigInt& rep) {
    if (rep == 0) return;
    if (!out.tokens.empty() && out.tokens.back().sym == sym)
      out.tokens.back().rep += rep;
    else
      out.tokens.push_back({sym, rep});
    if (static_cast<std::int64_t>(out.tokens.size()) > run_limit)
      throw ExplicitLimitExceeded("project_one: run count exceeds limit");
  };
  for (const Token& tok : w.tokens) {
    if (tok.sym == kLoopSym) {
      append(kLoopSym, tok.rep);
      continue;
    }
    const SymWalk& tpl = t.cover_template(w.level - 1, tok.sym);
    if (tpl.tokens.size() == 1 && tpl.tokens[0].sym == kLoopSym) {
      append(kLoopSym, tpl.tokens[0].rep * tok.rep);
      continue;
    }
    for (BigInt c = 0; c < tok.rep; ++c)
      for (const Token& t2 : tpl.tokens) append(t2.sym, t2.rep);
  }
  return out;
}

SymWalk project_to(const Tower& t, const SymWalk& w, int m, std::int64_t run_limit) {
  if (m > w.level) throw std::out_of_range("project_to: target level above walk");
  SymWalk cur = canonical(w);
  while (cur.level > m) cur = project_one(t, cur, run_limit);
  return cur;
}

SymWalk r_walk(const Tower& t, int n, int d, int m, std::int64_t run_limit) {
  if (n < 1 || n >= t.depth() || d < 1 || d > n + 1 || m < 0 || m > n)
    throw std::out_of_range("r_walk: indices out of range");
  SymWalk w;
  w.level = n;
  for (int k = d; k <= n; ++k) w.tokens.push_back({k, t.config().multiplicity(n, k)});
  SymWalk out = project_to(t, w, m, run_limit);
  out.tokens.push_back({kLoopSym, 1});
  return canonical(std::move(out));
}

BigInt r_walk_length(const Tower& t, int n, int d) {
  if (n < 1 || n >= t.depth() || d < 1 || d > n + 1)
    throw std::out_of_range("r_walk_length: indices out of range");
  BigInt len = 1;
  for (int k = d; k <= n; ++k) len += t.config().multiplicity(n, k) * t.circuit_length(n, k);
  return len;
}

WalkSeq expand_explicit(const Tower& t, const SymWalk& w, std::int64_t limit) {
  BigInt len = walk_length(t, w);
  if (len > limit)
    throw ExplicitLimitExceeded("expand_explicit: walk length " + len.str() + " exceeds limit " +
                                std::to_string(limit));
  WalkSeq out;
  out.graph = t.materialize_level(w.level, limit);
  out.verts.reserve(static_cast<std::size_t>(to_i64(len)) + 1);
  out.verts.push_back(0);
  for (const Token& tok : w.tokens) {
    if (tok.sym == kLoopSym) {
      for (BigInt c = 0; c < tok.rep; ++c) out.verts.push_back(0);
      continue;
    }
    std::int64_t interior = to_i64(t.circuit_length(w.level, tok.sym) - 1);
    std::int64_t first = t.vertex_index(w.level, VertexRef{w.level, tok.sym, 1});
    for (BigInt c = 0; c < tok.rep; ++c) {
      for (std::int64_t j = 0; j < interior; ++j) out.verts.push_back(first + j);
      out.verts.push_back(0);
    }
  }
  return out;
}

GapSpectrum gap_spectrum(const Tower& t, const SymWalk& w, int target) {
  if (target < 1 || target > w.level) throw std::out_of_range("gap_spectrum: bad target circuit");
  GapSpectrum sp;
  sp.level = w.level;
  sp.target = target;
  sp.occ_len = t.circuit_length(w.level, target);
  BigInt pos = 0;
  bool seen = false;
  BigInt since_last = 0;
  for (const Token& tok : w.tokens) {
    BigInt tok_len = t.segment_length(w.level, tok.sym) * tok.rep;
    if (tok.sym != target) {
      if (seen) since_last += tok_len;
      pos += tok_len;
      continue;
    }
    for (BigInt c = 0; c < tok.rep; ++c) {
      if (seen) sp.gaps.push_back(since_last);
      since_last = 0;
      seen = true;
      sp.positions.push_back(pos);
      pos += sp.occ_len;
    }
  }
  return sp;
}

std::string GapSpectrum::to_string() const {
  std::ostringstream os;
  os << "level=" << level << " target=" << target << " occ_len=" << occ_len.str();
  os << " positions=";
  for (std::size_t k = 0; k < positions.size(); ++k) os << (k ? "," : "") << positions[k].str();
  os << " gaps=";
  for (std::size_t k = 0; k < gaps.size(); ++k) os << (k ? "," : "") << gaps[k].str();
  return os.str();
}

BigInt g_formula(const Tower& t, int n, int l, int N) {
  if (l < 1 || N < l || n <= N || n > t.depth())
    throw std::out_of_range("g_formula: need n > N >= l >= 1");
  BigInt g = n - N;
  for (int k = N; k < n; ++k) g += r_walk_length(t, k, l + 1);
  return g;
}

SymWalk suffix_after_last_occurrence(const Tower& t, const SymWalk& w, int target) {
  std::size_t last = w.tokens.size();
  for (std::size_t k = 0; k < w.tokens.size(); ++k)
    if (w.tokens[k].sym == target) last = k;
  if (last == w.tokens.size())
    throw std::invalid_argument("suffix_after_last_occurrence: no occurrence");
  (void)t;
  SymWalk out;
  out.level = w.level;
  out.tokens.assign(w.tokens.begin() + static_cast<std::ptrdiff_t>(last) + 1, w.tokens.end());
  return canonical(std::move(out));
}

std::string VerifyResult::to_string() const {
  std::ostringstream os;
  os << name;
  for (const auto& [k, v] : fields) os << " " << k << "=" << v;
  os << " verdict=" << (pass ? "pass" : "fail");
  if (!pass) os << " failure=\"" << failure << "\"";
  return os.str();
}

namespace {

void put(VerifyResult& r, const std::string& k, const BigInt& v) {
  r.fields.emplace_back(k, v.str());
}
void put(VerifyResult& r, const std::string& k, int v) {
  r.fields.emplace_back(k, std::to_string(v));
}

// Nonzero gaps in position order as (gap value, start offset of the gap).
std::vector<std::pair<BigInt, BigInt>> nonzero_gaps(const GapSpectrum& sp) {
  std::vector<std::pair<BigInt, BigInt>> out;
  for (std::size_t k = 0; k < sp.gaps.size(); ++k)
    if (sp.gaps[k] != 0) out.emplace_back(sp.gaps[k], sp.positions[k] + sp.occ_len);
  return out;
}

}  // namespace

VerifyResult verify_spectrum(const Tower& t, int n, int l, int N) {
  VerifyResult res;
  res.name = "spectrum";
  put(res, "n", n);
  put(res, "l", l);
  put(res, "N", N);
  if (l < 1 || N < l || n <= N || n > t.depth())
    throw std::out_of_range("verify_spectrum: need n > N >= l >= 1");
  SymWalk w = project_to(t, single_circuit(n, l), N);
  GapSpectrum sp = gap_spectrum(t, w, l);
  put(res, "occurrences", BigInt(sp.positions.size()));

  // Admissible nonzero gap values: one per intermediate level.
  std::vector<BigInt> allowed;
  for (int np = N; np < n; ++np) {
    BigInt v = np - N + 1;
    for (int k = N; k <= np; ++k) v += r_walk_length(t, k, l + 1);
    allowed.push_back(v);
  }
  for (std::size_t k = 0; k < sp.gaps.size(); ++k) {
    const BigInt& gap = sp.gaps[k];
    if (gap == 0) continue;
    if (std::find(allowed.begin(), allowed.end(), gap) == allowed.end()) {
      res.pass = false;
      res.failure = "gap " + gap.str() + " after occurrence at " + sp.positions[k].str() +
                    " is not of residual-sum form";
      return res;
    }
  }

  SymWalk doubled = project_to(t, single_circuit(n, l, 2), N);
  GapSpectrum dsp = gap_spectrum(t, doubled, l);
  BigInt max_gap = 0;
  for (const BigInt& gap : dsp.gaps) max_gap = std::max(max_gap, gap);
  BigInt expect = g_formula(t, n, l, N);
  put(res, "max_gap", max_gap);
  put(res, "g", expect);
  if (max_gap != expect) {
    res.pass = false;
    res.failure = "doubled-walk max gap " + max_gap.str() + " != " + expect.str();
  }
  return res;
}

VerifyResult verify_interleaving(const Tower& t, int n, int l, int N) {
  VerifyResult res;
  res.name = "interleaving";
  put(res, "n", n);
  put(res, "l", l);
  put(res, "N", N);
  if (l < 1 || N < l || n <= N || n > t.depth())
    throw std::out_of_range("verify_interleaving: need n > N >= l >= 1");
  SymWalk w = project_to(t, single_circuit(n, l), N);
  GapSpectrum sp = gap_spectrum(t, w, l);
  auto gaps = nonzero_gaps(sp);
  put(res, "nonzero_gaps", BigInt(gaps.size()));
  for (std::size_t a = 0; a < gaps.size(); ++a) {
    for (std::size_t b = a + 1; b < gaps.size(); ++b) {
      if (gaps[b].first != gaps[a].first) continue;
      bool larger_between = false;
      for (std::size_t c = a + 1; c < b; ++c)
        if (gaps[c].first > gaps[a].first) {
          larger_between = true;
          break;
        }
      if (!larger_between) {
        res.pass = false;
        res.failure = "equal gaps " + gaps[a].first.str() + " at " + gaps[a].second.str() +
                      " and " + gaps[b].second.str() + " with nothing larger between";
        return res;
      }
      break;  // only the next equal occurrence needs checking
    }
  }
  return res;
}

VerifyResult verify_tail(const Tower& t, int n, int l, int N) {
  VerifyResult res;
  res.name = "tail";
  put(res, "n", n);
  put(res, "l", l);
  put(res, "N", N);
  if (l < 1 || N <= l || n < N + 2 || n > t.depth())
    throw std::out_of_range("verify_tail: need n >= N + 2 and N > l >= 1");
  SymWalk w = project_to(t, single_circuit(n, l), N);
  SymWalk tail = suffix_after_last_occurrence(t, w, l);
  GapSpectrum sp = gap_spectrum(t, tail, l + 1);
  put(res, "tail_len", walk_length(t, tail));
  put(res, "tail_occurrences", BigInt(sp.positions.size()));
  if (sp.positions.empty()) {
    res.pass = false;
    res.failure = "no occurrence of the next circuit after the last target occurrence";
    return res;
  }
  BigInt v = g_formula(t, n - 1, l + 1, N);
  put(res, "paired_gap", v);
  auto gaps = nonzero_gaps(sp);
  std::vector<std::size_t> hits;
  for (std::size_t k = 0; k < gaps.size(); ++k)
    if (gaps[k].first == v) hits.push_back(k);
  if (hits.size() < 2) {
    res.pass = false;
    res.failure = "fewer than two gaps of the paired size " + v.str();
    return res;
  }
  // Adjacent pair of extreme gaps with only smaller gaps between them; report
  // the last such pair's offset into the tail.
  bool found = false;
  BigInt pre_interval = 0;
  for (std::size_t h = 0; h + 1 < hits.size(); ++h) {
    bool smaller_between = true;
    for (std::size_t c = hits[h] + 1; c < hits[h + 1]; ++c)
      if (gaps[c].first >= v) {
        smaller_between = false;
        break;
      }
    if (smaller_between) {
      found = true;
      pre_interval = gaps[hits[h]].second;
    }
  }
  put(res, "pre_interval", pre_interval);
  if (!found) {
    res.pass = false;
    res.failure = "no adjacent pair of extreme gaps with only smaller gaps between";
  }
  return res;
}

}  // namespace covertower
