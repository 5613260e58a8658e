// unimod: batch driver for local-ring canonicalization, orthogonal-set search
// and closed-form verification.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage/config/ring/form
// errors (including TooLarge), 3 search timeout.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "unimod/unimod.hpp"

namespace {

using namespace unimod;

constexpr int kExitMismatch = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTimeout = 3;

struct Flags {
  std::string config_path;
  std::string format;
  std::string out;
  double timeout_secs = 0;
  std::uint64_t max_card = 0;
  bool seq = false;
  bool timings = false;
  int n = 2;
  std::string ring;
  std::string form;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::validation_error, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const Flags& flags, const std::string& content) {
  if (flags.out.empty()) {
    std::cout << content;
  } else {
    write_atomically(flags.out, content);
  }
}

RingOptions ring_options(const Flags& flags) {
  RingOptions options;
  if (flags.max_card) options.max_card = flags.max_card;
  return options;
}

SearchOptions search_options(const Flags& flags, double config_timeout = 60.0) {
  SearchOptions options;
  const double secs = flags.timeout_secs > 0 ? flags.timeout_secs : config_timeout;
  options.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(secs * 1000.0));
  options.parallel = !flags.seq;
  if (flags.max_card) options.enumerate_max_card = flags.max_card;
  return options;
}

std::shared_ptr<const LocalRing> ring_from(const Flags& flags) {
  if (flags.ring.empty()) throw Error(Errc::validation_error, "--ring is required");
  return make_ring(parse_ring_spec(flags.ring), ring_options(flags));
}

std::string format_or(const Flags& flags, std::string fallback) {
  return flags.format.empty() ? fallback : flags.format;
}

std::string elapsed_ms(std::chrono::duration<double> d) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << d.count() * 1000.0;
  return out.str();
}

int cmd_ring_info(const Flags& flags) {
  const auto ring = ring_from(flags);
  std::set<std::uint64_t> squares;
  for (const auto& u : ring->enumerate(Which::units)) squares.insert((u * u).code());
  Table table;
  table.columns = {"ring", "spec", "card_R", "card_M", "characteristic", "residue_order", "z", "unit_squares"};
  table.rows.push_back({ring->label(), ring->spec_string(), std::to_string(ring->cardinality()),
                        std::to_string(ring->maximal_ideal_size()), std::to_string(ring->characteristic()),
                        std::to_string(ring->residue_field_order()), ring->format(ring->canonical_nonsquare()),
                        std::to_string(squares.size())});
  emit(flags, render(table, format_or(flags, "text")));
  return 0;
}

int cmd_canon(const Flags& flags) {
  const auto ring = ring_from(flags);
  if (flags.form.empty()) throw Error(Errc::validation_error, "--form is required");
  const BilinearForm form(parse_matrix(*ring, flags.form));
  const auto canon = canonicalize(form);
  const Matrix canonical = canon.form.matrix(*ring);
  const bool verified = canon.transform.transport(form).matrix() == canonical;
  const Element det = determinant(form);
  Table table;
  table.columns = {"ring", "form", "det", "det_class", "disc_class", "u", "canonical", "P", "verified"};
  table.rows.push_back({ring->label(), format_matrix(form.matrix()), ring->format(det),
                        std::string(square_class_name(ring->is_square(det))),
                        std::string(square_class_name(discriminant_class(form).is_square())),
                        ring->format(canon.form.u), format_matrix(canonical),
                        format_matrix(canon.transform.matrix()), verified ? "true" : "false"});
  emit(flags, render(table, format_or(flags, "text")));
  return verified ? 0 : kExitMismatch;
}

int cmd_search(const Flags& flags) {
  const auto ring = ring_from(flags);
  if (flags.n != 2 && flags.n != 3) throw Error(Errc::unsupported_dimension, "--n must be 2 or 3");
  const auto n = static_cast<std::size_t>(flags.n);
  const BilinearForm form =
      flags.form.empty() ? hyperbolic_form(*ring, n) : BilinearForm(parse_matrix(*ring, flags.form));
  if (form.dimension() != n) throw Error(Errc::dimension_mismatch, "--form does not have dimension --n");
  const auto result = max_orthogonal_set(form, n, search_options(flags));
  Table table;
  table.columns = {"ring", "n", "form", "max_size", "theoretical_S", "witness", "node_count", "elapsed_ms"};
  table.rows.push_back({ring->label(), std::to_string(n), format_matrix(form.matrix()),
                        std::to_string(result.max_size), n == 2 ? std::to_string(theoretical_S(form)) : "",
                        format_set(result.witness), std::to_string(result.node_count),
                        flags.timings ? elapsed_ms(result.elapsed) : ""});
  emit(flags, render(table, format_or(flags, "text")));
  return 0;
}

int cmd_enumerate(const Flags& flags) {
  const auto ring = ring_from(flags);
  const BilinearForm form =
      flags.form.empty() ? hyperbolic_form(*ring, 2) : BilinearForm(parse_matrix(*ring, flags.form));
  auto options = search_options(flags);
  options.parallel = false;
  const auto sets = enumerate_maximum_sets(form, options);
  Table table;
  table.columns = {"ring", "form", "index", "size", "family", "set"};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    table.rows.push_back({ring->label(), format_matrix(form.matrix()), std::to_string(i),
                          std::to_string(sets[i].size()), std::string(family_name(classify_family(form, sets[i]))),
                          format_set(sets[i])});
  }
  emit(flags, render(table, format_or(flags, "csv")));
  return 0;
}

int cmd_verify(Flags flags) {
  CatalogConfig config = parse_config(flags.config_path.empty() ? std::string(default_catalog_text())
                                                                : read_file(flags.config_path));
  if (flags.max_card) config.max_card = flags.max_card;
  if (flags.format.empty()) flags.format = config.format;
  if (flags.out.empty()) flags.out = config.out;
  const auto options = search_options(flags, config.timeout_secs);

  std::vector<VerificationRow> rows;
  for (const auto& spec : config.rings) {
    const auto ring = make_ring(spec, config.ring_options());
    auto report = verify_theorem(*ring, options);
    for (auto& row : report.rows) rows.push_back(std::move(row));
  }
  sort_rows(rows);
  emit(flags, render(verification_table(rows, flags.timings), flags.format));
  const bool pass = std::all_of(rows.begin(), rows.end(), [](const VerificationRow& r) { return r.match(); });
  std::cerr << (pass ? "PASS" : "FAIL") << ": " << rows.size() << " rows\n";
  return pass ? 0 : kExitMismatch;
}

void add_common(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "text"}))
      ->envname("UNIMOD_FORMAT");
  cmd->add_option("--out", flags.out, "Write output to PATH (atomically) instead of stdout")->envname("UNIMOD_OUT");
  cmd->add_option("--max-card", flags.max_card, "Enumeration bound on ring/vector counts")
      ->envname("UNIMOD_MAX_CARD");
}

void add_ring(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--ring", flags.ring, "Ring spec, e.g. 'kind=\"Zps\" p=3 s=2'")->envname("UNIMOD_RING");
}

void add_form(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--form", flags.form, "Form matrix, row-major, e.g. '1,0;0,-1'")->envname("UNIMOD_FORM");
}

void add_search(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--timeout", flags.timeout_secs, "Search budget in seconds per (ring, form)")
      ->envname("UNIMOD_TIMEOUT");
  cmd->add_flag("--seq", flags.seq, "Force sequential search")->envname("UNIMOD_SEQ");
  cmd->add_flag("--timings", flags.timings, "Fill the elapsed_ms column")->envname("UNIMOD_TIMINGS");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unimodular orthogonal sets over finite local rings"};
  app.require_subcommand(1);
  Flags flags;

  auto* ring_info = app.add_subcommand("ring-info", "Ring cardinalities, characteristic and canonical non-square");
  add_ring(ring_info, flags);
  add_common(ring_info, flags);

  auto* canon = app.add_subcommand("canon", "Canonicalize a symmetric bilinear form");
  add_ring(canon, flags);
  add_form(canon, flags);
  add_common(canon, flags);

  auto* search = app.add_subcommand("search", "Exact maximum unimodular orthogonal set");
  add_ring(search, flags);
  add_form(search, flags);
  add_common(search, flags);
  add_search(search, flags);
  search->add_option("--n", flags.n, "Dimension (3 is exploratory)")
      ->check(CLI::IsMember({2, 3}))
      ->envname("UNIMOD_N");

  auto* verify = app.add_subcommand("verify", "Check the closed form for S(R,2) over a ring catalog");
  verify->add_option("--config", flags.config_path, "Catalog file (default: built-in catalog)")
      ->envname("UNIMOD_CONFIG");
  add_common(verify, flags);
  add_search(verify, flags);

  auto* enumerate = app.add_subcommand("enumerate", "List every maximum orthogonal set with its family tag");
  add_ring(enumerate, flags);
  add_form(enumerate, flags);
  add_common(enumerate, flags);
  add_search(enumerate, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*ring_info) return cmd_ring_info(flags);
    if (*canon) return cmd_canon(flags);
    if (*search) return cmd_search(flags);
    if (*verify) return cmd_verify(flags);
    if (*enumerate) return cmd_enumerate(flags);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return err.code() == Errc::timeout ? kExitTimeout : kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
