// Acceptance gate: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "test_support.hpp"
#include "unimod/unimod.hpp"

namespace {

using namespace unimod;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& why) {
    if (!condition && pass) {
      pass = false;
      detail = why;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<VerificationRow> g_rows;
double g_total_seconds = 0;

const VerificationRow* find_row(const std::string& ring, const std::string& form) {
  for (const auto& row : g_rows)
    if (row.ring_label == ring && row.form_label == form) return &row;
  return nullptr;
}

Outcome ac1() {
  Outcome o;
  const auto start = Clock::now();
  double non_galois = 0;
  for (const auto& ring : testing::catalog_rings()) {
    const auto ring_start = Clock::now();
    auto report = verify_theorem(*ring);
    if (ring->spec().kind != RingKind::galois) non_galois += seconds_since(ring_start);
    for (auto& row : report.rows) g_rows.push_back(std::move(row));
  }
  g_total_seconds = seconds_since(start);
  sort_rows(g_rows);
  o.require(g_rows.size() == 24, "expected 24 rows, got " + std::to_string(g_rows.size()));
  for (const auto& row : g_rows) {
    o.require(row.match(), row.ring_label + " " + row.form_label + ": brute force " + std::to_string(row.brute_force) +
                               " vs formula " + std::to_string(row.theoretical));
  }
  o.require(g_total_seconds < 300, "total runtime over 5 minutes");
  o.require(non_galois < 60, "22 non-Galois rows over 60 s");
  std::ostringstream d;
  d << g_rows.size() << " rows, total " << std::fixed << std::setprecision(2) << g_total_seconds
    << " s, without GR(9,2) " << non_galois << " s";
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome ac2() {
  Outcome o;
  for (const auto* form : {"hyperbolic", "nonsquare"}) {
    const auto* row = find_row("Z_3", form);
    o.require(row && row->brute_force == 2 && row->theoretical == 2, std::string("F_3 ") + form + " is not 2");
  }
  if (o.pass) o.detail = "S(F_3,2) = 2 for both forms";
  return o;
}

Outcome ac3() {
  Outcome o;
  for (const auto* ring : {"Z_7", "Z_9"}) {
    const auto* row = find_row(ring, "hyperbolic");
    o.require(row != nullptr, std::string(ring) + " row missing");
    if (!row) continue;
    o.require(!row->det_square, std::string(ring) + " det is square");
    o.require(row->disc_square, std::string(ring) + " discriminant is non-square");
    o.require(row->brute_force == row->ring_card - row->ideal_card, std::string(ring) + " S != |R|-|M|");
  }
  // det and discriminant differ by -1, so the classes split exactly where -1 is a non-square.
  std::set<std::string> flagged, expected;
  for (const auto& row : g_rows)
    if (row.det_square != row.disc_square) flagged.insert(row.ring_label);
  for (const auto& ring : testing::catalog_rings())
    if (!ring->is_square(-ring->one())) expected.insert(ring->label());
  o.require(flagged == expected, "flagged rows do not match the rings where -1 is a non-square");
  std::string names;
  for (const auto& label : flagged) names += (names.empty() ? "" : ", ") + label;
  if (o.pass) o.detail = "det-class != disc-class flagged on both rows of " + names;
  return o;
}

Outcome ac4() {
  Outcome o;
  std::mt19937_64 rng(4);
  std::size_t seeds = 0;
  for (const auto& ring : testing::catalog_rings()) {
    const auto hyp = hyperbolic_form(*ring);
    const auto w = construct_hyperbolic_witness(hyp);
    o.require(w.size() == ring->unit_count(), ring->label() + ": hyperbolic witness size");
    o.require(is_orthogonal_set(hyp, w), ring->label() + ": hyperbolic witness not orthogonal");
    o.require(is_inclusion_maximal(hyp, w), ring->label() + ": hyperbolic witness not inclusion-maximal");
    const auto non = nonsquare_form(*ring);
    for (int k = 0; k < 50;) {
      const RingVector seed({testing::random_element(*ring, rng), testing::random_element(*ring, rng)});
      if (!is_unimodular(seed)) continue;
      ++k;
      ++seeds;
      const auto pair = construct_pair_witness(non, seed);
      o.require(pair.size() == 2 && pair.contains(seed) && is_orthogonal_set(non, pair),
                ring->label() + ": pair witness fails for seed " + format_vector(seed));
    }
  }
  if (o.pass) o.detail = "12 hyperbolic witnesses, " + std::to_string(seeds) + " pair seeds";
  return o;
}

Outcome ac5() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::size_t random_forms = 0, exhaustive_forms = 0;
  for (const auto& ring : testing::catalog_rings()) {
    for (int k = 0; k < 100; ++k, ++random_forms) {
      const auto b = testing::random_symmetric_nondegenerate(*ring, 2, rng);
      const auto c = canonicalize(b);
      o.require(ring->is_unit(c.transform.matrix().determinant()), ring->label() + ": det P not a unit");
      o.require(c.transform.transport(b).matrix() == c.form.matrix(*ring),
                ring->label() + ": P^T B P differs for " + format_matrix(b.matrix()));
    }
  }
  for (const auto& ring : testing::small_rings(9)) {
    const auto group = testing::all_invertible_2x2(*ring);
    const auto square_orbit = testing::congruence_orbit(canonical_form(*ring, 2, true).matrix(*ring), group);
    const auto non_orbit = testing::congruence_orbit(canonical_form(*ring, 2, false).matrix(*ring), group);
    const auto card = ring->cardinality();
    std::set<std::uint64_t> classes;
    for (std::uint64_t a = 0; a < card; ++a)
      for (std::uint64_t b = 0; b < card; ++b)
        for (std::uint64_t d = 0; d < card; ++d) {
          Matrix m(*ring, 2);
          m(0, 0) = ring->from_code(a);
          m(0, 1) = m(1, 0) = ring->from_code(b);
          m(1, 1) = ring->from_code(d);
          const BilinearForm f(m);
          if (!is_nondegenerate(f)) continue;
          ++exhaustive_forms;
          const auto c = canonicalize(f);
          classes.insert(c.form.u.code());
          const auto codes = testing::entry_codes(m);
          const bool in_square = square_orbit.count(codes) > 0;
          o.require(in_square != (non_orbit.count(codes) > 0), ring->label() + ": orbits overlap or miss a form");
          o.require(in_square == (c.form.u == ring->one()), ring->label() + ": class disagrees with orbit search");
          o.require(c.transform.transport(f).matrix() == c.form.matrix(*ring), ring->label() + ": P^T B P differs");
        }
    o.require(classes.size() == 2, ring->label() + ": expected exactly two classes");
  }
  if (o.pass) {
    o.detail = std::to_string(random_forms) + " random forms, " + std::to_string(exhaustive_forms) +
               " exhaustive forms over |R| <= 9, two classes each";
  }
  return o;
}

Outcome ac6() {
  Outcome o;
  for (const auto& ring : testing::catalog_rings()) {
    const auto label = ring->label();
    const auto units = testing::exhaustive_units(*ring);
    const auto ideal = ring->enumerate(Which::maximal_ideal);
    std::set<std::uint64_t> ideal_codes;
    for (const auto& m : ideal) ideal_codes.insert(m.code());
    for (std::uint64_t c = 0; c < ring->cardinality(); ++c) {
      o.require((units.count(c) > 0) != (ideal_codes.count(c) > 0), label + ": units are not R \\ M");
    }
    const auto squares = testing::exhaustive_unit_squares(*ring);
    o.require(squares.size() == ring->unit_count() / 2, label + ": unit squares do not have index 2");
    for (const auto& u : ring->enumerate(Which::units)) {
      for (const auto& m : ideal) o.require(ring->is_unit(u + m), label + ": u + m not a unit");
      if (u * u == ring->one()) o.require(u == ring->one() || u == -ring->one(), label + ": extra involution");
      o.require(ring->is_square(u) == (squares.count(u.code()) > 0), label + ": residue criterion disagrees");
    }
  }
  if (o.pass) o.detail = "12 rings exhaustive";
  return o;
}

Outcome ac7() {
  Outcome o;
  std::ostringstream counts;
  const std::vector<std::shared_ptr<const LocalRing>> rings = {
      make_ring(RingSpec::zps(5, 1)), make_ring(RingSpec::zps(3, 2)), make_ring(RingSpec::ext(3, {1, 0, 1}))};
  for (const auto& ring : rings) {
    const auto form = hyperbolic_form(*ring);
    const auto sets = enumerate_maximum_sets(form);
    for (const auto& s : sets) {
      const auto u = unit_multiple_parameter(form, s);
      o.require(u && *u * *u == ring->one(), ring->label() + ": maximum set outside {(ux,x)}: " + format_set(s));
    }
    counts << ring->label() << " hyperbolic " << sets.size() << " sets; ";
  }
  const auto z9 = make_ring(RingSpec::zps(3, 2));
  const BilinearForm f(Matrix::from_ints(*z9, {{1, 0}, {0, -2}}));
  const auto sets = enumerate_maximum_sets(f);
  for (const auto& s : sets) {
    o.require(s.size() == 2, "Z_9 diag(1,-2): maximum set of size " + std::to_string(s.size()));
    o.require(matches_pair_family(f, s), "Z_9 diag(1,-2): set outside the pair family: " + format_set(s));
  }
  counts << "Z_9 diag(1,-2) " << sets.size() << " sets of size 2";
  if (o.pass) o.detail = counts.str();
  return o;
}

std::string run_cli(const std::string& args) {
  const auto out = std::filesystem::temp_directory_path() / ("unimod_acceptance_" + std::to_string(::getpid()));
  const std::string command = std::string(UNIMOD_CLI_PATH) + " " + args + " >" + out.string() + " 2>/dev/null";
  const int status = std::system(command.c_str());
  std::ifstream in(out, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::filesystem::remove(out);
  return (WIFEXITED(status) ? std::to_string(WEXITSTATUS(status)) : "signal") + "\n" + buf.str();
}

Outcome ac8() {
  Outcome o;
  const auto first = run_cli("verify --seq");
  const auto second = run_cli("verify --seq");
  o.require(first.rfind("0\n", 0) == 0, "sequential verify did not exit 0");
  o.require(first == second, "sequential verify runs differ");
  const auto in_process = render(verification_table(g_rows, false), "csv");
  o.require(first == "0\n" + in_process, "CLI report differs from the in-process run");

  SearchOptions parallel;
  parallel.parallel = true;
  parallel.threads = 4;
  for (const auto& ring : testing::catalog_rings()) {
    for (const bool square : {true, false}) {
      const BilinearForm form(canonical_form(*ring, 2, square).matrix(*ring));
      const auto result = max_orthogonal_set(form, 2, parallel);
      const auto* row = find_row(ring->label(), square ? "hyperbolic" : "nonsquare");
      o.require(row && row->brute_force == result.max_size, ring->label() + ": parallel max_size differs");
    }
  }
  if (o.pass) o.detail = "two sequential CLI runs byte-identical; 24 parallel max_size values reproduced";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 oracle suite, 24 rows", ac1},        {"AC2 field cross-check F_3", ac2},
      {"AC3 det/discriminant discrepancy", ac3}, {"AC4 witness constructions", ac4},
      {"AC5 canonicalization soundness", ac5},   {"AC6 unit-group properties", ac6},
      {"AC7 maximum-set catalog", ac7},          {"AC8 determinism", ac8},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << ": " << outcome.detail << std::endl;
  }
  std::cout << (failures ? "FAIL" : "PASS") << ": " << criteria.size() - failures << "/" << criteria.size()
            << " criteria" << std::endl;
  return failures ? 1 : 0;
}
