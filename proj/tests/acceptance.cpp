// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is non-zero when a criterion fails for any reason other than a
// certificate computed in this run showing the criterion cannot hold as
// stated (printed as "FAIL (unattainable)").

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "latwire/analysis.hpp"
#include "latwire/errors.hpp"
#include "latwire/oracle.hpp"
#include "latwire/rational.hpp"
#include "latwire/serialize.hpp"
#include "latwire/tree.hpp"
#include "latwire/wiring.hpp"

#ifndef LATWIRE_GOLDEN_DIR
#define LATWIRE_GOLDEN_DIR "tests/golden"
#endif

using namespace latwire;

namespace {

enum class Status { pass, fail, unattainable };

struct Outcome {
  Status status = Status::pass;
  std::string detail;
  std::vector<std::string> notes;
};

std::int64_t ceil_seven_thirds(std::int64_t n) { return (7 * n + 2) / 3; }

Rational q(long long p, long long d = 1) { return Rational(p) / Rational(d); }

std::string plan_text(const LeafCounts& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

// ------------------------------------------------------------ corpus 1-3

struct CorpusStats {
  std::size_t trees = 0;
  std::size_t bound_violations = 0;
  std::size_t invalid = 0;
  std::size_t quadrant_failures = 0;
  std::size_t formula_mismatches = 0;
  Rational worst_ratio = 0;
  std::string worst_tree;
  std::string first_problem;
};

CorpusStats run_corpus() {
  CorpusStats st;
  auto check = [&](const OrderedTree& t) {
    ++st.trees;
    const auto trace = wire_with_trace(t);
    const auto& w = trace.wiring;
    const auto n = static_cast<std::int64_t>(t.size());
    const auto vol = volume(w);
    auto note = [&](const char* what) {
      if (st.first_problem.empty()) st.first_problem = std::string(what) + " on " + to_text(t).substr(0, 80);
    };
    if (vol > ceil_seven_thirds(n)) {
      ++st.bound_violations;
      note("bound");
    }
    const auto report = validate_k_wiring(w, 1);
    if (!report.valid() || report.k_vertex != 1 || report.k_edge != 1) {
      ++st.invalid;
      note("1-wiring");
    }
    for (const auto& step : trace.steps)
      if (!quadrant_separated(step)) {
        ++st.quadrant_failures;
        note("quadrant");
        break;
      }
    if (vol != volume_by_formula(w, t)) {
      ++st.formula_mismatches;
      note("formula");
    }
    const Rational ratio = Rational(vol) / n;
    if (ratio > st.worst_ratio) {
      st.worst_ratio = ratio;
      st.worst_tree = n <= 40 ? to_text(t) : "random n=" + std::to_string(n);
    }
  };
  for (int n = 1; n <= 12; ++n)
    for (const auto& t : enumerate_trees(n)) check(t);
  for (std::int64_t n : {100, 1000, 10000})
    for (std::uint64_t seed = 0; seed < 1000; ++seed) check(random_tree(n, seed));
  return st;
}

// ------------------------------------------------------------ criteria

Outcome criterion_4() {
  const Reduction r4 = reduce(generate_sn(4));
  const Rational target = q(21, 16);
  const auto plan = spiral_plan(4);
  Outcome out;
  Rational prev_gap = -1;
  bool monotone = true;
  Rational last_gap;
  std::ostringstream gaps;
  for (int e = 10; e <= 16; ++e) {
    const std::int64_t total = std::int64_t{1} << e;
    const auto counts = realize_plan(r4, plan, total);
    const auto g = analysis_tree(r4, counts);
    const Rational ratio = Rational(volume(wire(g))) / Rational(static_cast<std::int64_t>(g.size()));
    const Rational gap = abs(ratio - target);
    if (prev_gap >= 0 && !(gap < prev_gap)) monotone = false;
    gaps << (e == 10 ? "" : " ") << "2^" << e << ":" << to_decimal(gap);
    prev_gap = gap;
    last_gap = gap;
  }
  const bool close = last_gap < q(1, 100);
  out.status = close && monotone ? Status::pass : Status::fail;
  out.detail = "gap at 2^16 = " + to_decimal(last_gap) + " (< 0.01: " + (close ? "yes" : "no") +
               "), strictly shrinking: " + (monotone ? "yes" : "no");
  out.notes.push_back("gaps " + gaps.str());
  return out;
}

Outcome criterion_5() {
  const Reduction r4 = reduce(generate_sn(4));
  const std::size_t A = 0, B = 1, off = kSpiralLeafOffset;
  auto support_ok = [&](const LeafCounts& p) {
    return p[A] > 0 && p[B] > 0 && p[off + 0] > 0 && p[off + 1] == 0 && p[off + 2] > 0 && p[off + 3] > 0;
  };
  Outcome out;
  std::size_t feasible = 0, matching = 0;
  for (std::int64_t n = 0; n <= 16; ++n) {
    if (count_legal_plans(r4, n) == 0) {
      // Independent confirmation through the brute-force enumerator.
      bool confirmed = false;
      try {
        exhaustive_vr(r4, n);
      } catch (const NoLegalPlanError&) {
        confirmed = true;
      }
      if (!confirmed) return {Status::fail, "plan counters disagree at N = " + std::to_string(n), {}};
      continue;
    }
    ++feasible;
    const auto e = exhaustive_vr(r4, n);
    if (support_ok(e.plan)) ++matching;
  }
  LeafCounts base = legalizing_base(r4);
  const auto minimum = std::accumulate(base.begin(), base.end(), std::int64_t{0});
  if (feasible == 0) {
    out.status = Status::unattainable;
    out.detail = "no legal plan exists for any N <= 16 (both enumerators agree); smallest legal total is " +
                 std::to_string(minimum) + ", at " + plan_text(base);
  } else {
    out.status = matching == feasible ? Status::pass : Status::fail;
    out.detail = std::to_string(matching) + "/" + std::to_string(feasible) + " feasible N match the support";
  }
  // Same question where plans exist.
  std::size_t beyond = 0, beyond_ok = 0;
  std::ostringstream lines;
  for (std::int64_t n = minimum; n <= 64; n += 4) {
    const auto e = estimate_vr(r4, n, SearchStrategy::exhaustive);
    if (n <= 36) {
      const auto ref = exhaustive_vr(r4, n, 5'000'000);
      if (ref.plan != e.plan || ref.volume != e.volume)
        return {Status::fail, "exhaustive searches disagree at N = " + std::to_string(n), {}};
    }
    if (n >= 36) {
      ++beyond;
      if (support_ok(e.plan)) ++beyond_ok;
    }
    lines << " N=" << n << ":" << plan_text(e.plan);
  }
  out.notes.push_back("argmax plans [A,B,s0,s1,s2,s3]:" + lines.str());
  out.notes.push_back("support {A,B,0,2,3} with s1 = 0 holds for " + std::to_string(beyond_ok) + "/" +
                      std::to_string(beyond) + " totals in 36..64");
  if (beyond_ok != beyond && out.status == Status::unattainable) out.status = Status::fail;
  return out;
}

Outcome criterion_6() {
  const auto t = recurrence_table(30);
  const Rational limit = q(7, 3);
  bool monotone = true, bounded = true;
  for (std::size_t n = 1; n < t.bound.size(); ++n) {
    if (t.bound[n] < t.bound[n - 1]) monotone = false;
    if (t.bound[n] > limit) bounded = false;
  }
  if (t.bound[0] > limit) bounded = false;
  const bool initial = t.bound[0] == 1 && t.bound[1] == 1 && t.bound[2] == q(4, 3);
  const Rational gap = limit - t.bound[30];
  const bool close = gap < q(1, 1000);
  Outcome out;
  out.detail = std::string("monotone: ") + (monotone ? "yes" : "no") + ", <= 7/3: " + (bounded ? "yes" : "no") +
               ", V(0..2) = 1,1,4/3: " + (initial ? "yes" : "no") + ", 7/3 - V(30) = " + to_decimal(gap) +
               " (< 0.001: " + (close ? "yes" : "no") + ")";
  if (!monotone || !bounded || !initial) {
    out.status = Status::fail;
  } else if (!close) {
    // 7/3 - V(n) decays like ((1 + sqrt 5) / 4)^n ~ 0.809^n; V(30) is exact.
    out.status = Status::unattainable;
    int reach = 30;
    const auto longer = recurrence_table(60);
    while (reach < 60 && !(limit - longer.bound[static_cast<std::size_t>(reach)] < q(1, 1000))) ++reach;
    out.notes.push_back("exact 7/3 - V(30) = " + to_fraction_string(gap));
    out.notes.push_back("first n with 7/3 - V(n) < 0.001 is " + std::to_string(reach));
  } else {
    out.status = Status::pass;
  }
  return out;
}

Outcome criterion_7() {
  const Rational four_thirds = q(4, 3);
  bool ok = true;
  for (int n = 3; n <= 20; ++n)
    if (vsn_sum(n) > four_thirds) ok = false;
  const bool differ = vsn_sum(4) != vsn_closed_form(4);
  Outcome out;
  out.status = ok ? Status::pass : Status::fail;
  out.detail = std::string("vsn_sum(n) <= 4/3 for n = 3..20: ") + (ok ? "yes" : "no") + "; n = 4: sum " +
               to_fraction_string(vsn_sum(4)) + " vs closed form " + to_fraction_string(vsn_closed_form(4)) +
               (differ ? " (discrepancy)" : " (agree)");
  std::ostringstream s;
  for (int n = 3; n <= 8; ++n)
    s << " n=" << n << ":" << to_fraction_string(vsn_sum(n)) << "|" << to_fraction_string(vsn_closed_form(n));
  out.notes.push_back("sum|closed" + s.str());
  return out;
}

Outcome criterion_8() {
  std::size_t trees = 0, broken = 0, explored = 0;
  std::string first;
  try {
    for (int n = 1; n <= 6; ++n)
      for (const auto& t : enumerate_trees(n)) {
        ++trees;
        const auto constructed = volume(wire(t));
        const auto seeded = optimal_wiring(t);
        OracleOptions scratch;
        scratch.seed_with_construction = false;
        scratch.box_half_width = seeded.box_half_width + 2;
        const auto fresh = optimal_wiring(t, scratch);
        explored += fresh.explored;
        const bool ok = n <= seeded.best_volume && seeded.best_volume <= constructed &&
                        constructed <= ceil_seven_thirds(n) && fresh.best_volume == seeded.best_volume &&
                        validate_k_wiring(fresh.witness, 1).valid() && volume(fresh.witness) == fresh.best_volume;
        if (!ok) {
          ++broken;
          if (first.empty()) first = to_text(t);
        }
      }
  } catch (const BudgetError& e) {
    return {Status::fail, std::string("budget exceeded: ") + e.what(), {}};
  }
  Outcome out;
  out.status = broken == 0 ? Status::pass : Status::fail;
  out.detail = std::to_string(trees) + " trees, " + std::to_string(broken) + " violations" +
               (first.empty() ? "" : " (first " + first + ")") + "; searches from scratch explored " +
               std::to_string(explored) + " nodes";
  return out;
}

Outcome criterion_9() {
  const Reduction r4 = reduce(generate_sn(4));
  const std::size_t off = kSpiralLeafOffset;
  const LeafCounts two_ahead{400, 200, 80, 10, 40, 30};
  const LeafCounts one_ahead{400, 200, 40, 30, 20, 10};
  const Rational v1 = marginal_volume(r4, off + 1, two_ahead);
  const Rational v2 = marginal_volume(r4, off + 2, one_ahead);
  Outcome out;
  out.status = v1 == 1 && v2 == 1 ? Status::pass : Status::fail;
  out.detail = "s2 > s1: v1 = " + to_fraction_string(v1) + "; s1 > s2: v2 = " + to_fraction_string(v2);
  std::ostringstream s;
  for (const auto& c : spiral_leaf_costs(4, two_ahead))
    s << " v" << c.leaf_index << "=" << (c.v_empirical ? to_fraction_string(*c.v_empirical) : "-") << "<="
      << to_fraction_string(c.v_upper);
  out.notes.push_back("costs at " + plan_text(two_ahead) + ":" + s.str());
  return out;
}

Outcome criterion_10() {
  const auto b4 = generate_bn(4);
  const auto trace = wire_with_trace(b4);
  const auto& w = trace.wiring;
  const std::set<GridPoint> distinct(w.vertices.begin(), w.vertices.end());
  const auto& step = trace.steps[1];
  const bool first_ok = step.first && step.first->min.x >= 0 && step.first->min.y >= 1;
  const bool second_ok = step.second && step.second->min.x >= 1 && step.second->max.y <= 0;

  std::ifstream in(std::string(LATWIRE_GOLDEN_DIR) + "/b4_embedding.json");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string golden = ss.str();
  while (!golden.empty() && (golden.back() == '\n' || golden.back() == '\r')) golden.pop_back();
  const bool golden_ok = !golden.empty() && embedding_to_json(w) == golden;

  Outcome out;
  out.status = distinct.size() == 32 && first_ok && second_ok && golden_ok ? Status::pass : Status::fail;
  out.detail = std::to_string(distinct.size()) + " distinct vertex images; first child in {x>=0,y>=1}: " +
               (first_ok ? "yes" : "no") + "; second child in {x>=1,y<=0}: " + (second_ok ? "yes" : "no") +
               "; golden JSON: " + (golden_ok ? "match" : "MISMATCH");
  out.notes.push_back("volume(wire(B_4)) = " + std::to_string(volume(w)));
  return out;
}

}  // namespace

int main() {
  int hard_failures = 0, unattainable = 0, passed = 0;
  auto report = [&](int id, const char* title, const Outcome& o, double seconds) {
    const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "FAIL (unattainable)";
    std::printf("[%s] %2d %s: %s [%.2fs]\n", tag, id, title, o.detail.c_str(), seconds);
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
    if (o.status == Status::pass) ++passed;
    if (o.status == Status::fail) ++hard_failures;
    if (o.status == Status::unattainable) ++unattainable;
  };
  auto timed = [&](int id, const char* title, const std::function<Outcome()>& f) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {Status::fail, std::string("exception: ") + e.what(), {}};
    }
    report(id, title, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  };

  const auto start = std::chrono::steady_clock::now();
  const CorpusStats corpus = run_corpus();
  const double corpus_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string tail = corpus.first_problem.empty() ? "" : " (first " + corpus.first_problem + ")";
  report(1, "bound vol <= ceil(7n/3)",
         {corpus.bound_violations == 0 && corpus_seconds < 120 ? Status::pass : Status::fail,
          std::to_string(corpus.trees) + " trees, " + std::to_string(corpus.bound_violations) +
              " violations, worst vol/n = " + to_decimal(corpus.worst_ratio) + " on " + corpus.worst_tree + tail,
          {}},
         corpus_seconds);
  report(2, "1-wiring validity",
         {corpus.invalid == 0 && corpus.quadrant_failures == 0 ? Status::pass : Status::fail,
          std::to_string(corpus.invalid) + " invalid, " + std::to_string(corpus.quadrant_failures) +
              " quadrant failures over " + std::to_string(corpus.trees) + " trees",
          {}},
         0.0);
  report(3, "volume formula agreement",
         {corpus.formula_mismatches == 0 ? Status::pass : Status::fail,
          std::to_string(corpus.formula_mismatches) + " mismatches over " + std::to_string(corpus.trees) + " trees",
          {}},
         0.0);
  timed(4, "S_4 ratio -> 21/16", criterion_4);
  timed(5, "exhaustive argmax support on reduce(S_4), N <= 16", criterion_5);
  timed(6, "V(n) recurrence", criterion_6);
  timed(7, "spiral bound 4/3", criterion_7);
  timed(8, "oracle sandwich n <= 6", criterion_8);
  timed(9, "shadowing", criterion_9);
  timed(10, "B_4 structure and golden file", criterion_10);

  std::printf("summary: %d passed, %d failed, %d failed as unattainable\n", passed, hard_failures, unattainable);
  return hard_failures == 0 ? 0 : 1;
}
